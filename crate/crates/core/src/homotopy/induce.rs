use crate::error::{Error, Result};
use crate::graded::{canonical_tuples, perm::koszul_unchecked, GradedSpace, HomogeneousMap, MultiMap, Sign, ShuffleTable, TensorMap};
use crate::structures::{AInfinityStructure, Dga, Dgla, Generator, LInfinityStructure};

use crate::structures::LMorphismToAbelian;

fn check_eta(space: &GradedSpace, eta: &HomogeneousMap) -> Result<()> {
    if eta.source() != space || eta.target() != space {
        return Err(Error::SpaceMismatch);
    }
    if eta.degree() != -1 {
        return Err(Error::DegreeMismatch(format!("η has degree {}, expected -1", eta.degree())));
    }
    Ok(())
}

/// `dη + ηd`.
pub fn homotopy_commutator(d: &HomogeneousMap, eta: &HomogeneousMap) -> HomogeneousMap {
    d.compose(eta).and_then(|a| a.add(&eta.compose(d)?)).expect("same space, degree 0")
}

/// The L∞-structure `μ_1 = d`, `μ_2 = (dη + ηd)[ , ]`,
/// `μ_n = (-1)^n Σ_{σ ∈ Sh(n-1,n)} (-1)^σ e(σ) η[μ_{n-1}(...), v_{σ(n)}]`,
/// for an arbitrary degree −1 map `η`. Higher operations are generated on
/// demand up to `arity_cap`.
pub fn induce_linfinity(a: &Dgla, eta: &HomogeneousMap, arity_cap: usize) -> Result<LInfinityStructure> {
    let g = a.space();
    check_eta(g, eta)?;
    if !a.check().is_valid() {
        return Err(Error::InvalidDgla);
    }
    let h = homotopy_commutator(a.d(), eta);
    let mu2 = a.bracket().map_values(g, 0, |v| h.apply(v));
    LInfinityStructure::new(
        g,
        vec![MultiMap::from_linear(a.d()), mu2],
        arity_cap.max(2),
        Generator::Induced { bracket: a.bracket().clone(), eta: eta.clone() },
    )
}

/// The closed form
/// `μ_3 = -η[μ_2(v_1,v_2),v_3] + (-1)^{ṽ_2ṽ_3} η[μ_2(v_1,v_3),v_2] - (-1)^{ṽ_1(ṽ_2+ṽ_3)} η[μ_2(v_2,v_3),v_1]`.
pub fn explicit_mu3(a: &Dgla, eta: &HomogeneousMap) -> Result<MultiMap> {
    let g = a.space();
    check_eta(g, eta)?;
    let h = homotopy_commutator(a.d(), eta);
    let mu2 = a.bracket().map_values(g, 0, |v| h.apply(v));
    let br = |x: &crate::graded::Vector, k: usize| {
        let mut acc = g.zero_vector();
        a.bracket().accumulate_first(&mut acc, x, &[k], &crate::scalar::one());
        eta.apply(&acc)
    };
    let mut out = MultiMap::exterior(3, g, -1);
    for t in canonical_tuples(g, 3) {
        let (p, q, r) = (g.degree(t[0]), g.degree(t[1]), g.degree(t[2]));
        let mut v = br(&mu2.eval_basis(&[t[0], t[1]]), t[2]).scaled(&-crate::scalar::one());
        v.add_scaled(&br(&mu2.eval_basis(&[t[0], t[2]]), t[1]), &Sign::koszul(q, r).to_scalar());
        v.add_scaled(&br(&mu2.eval_basis(&[t[1], t[2]]), t[0]), &-Sign::koszul(p, q + r).to_scalar());
        out.insert_canonical(t, v);
    }
    Ok(out)
}

/// The operations `m_n = (1 - (dη + ηd)) λ_n`, `m_1 = d`, built from
/// `ρ_n = ηλ_n` with `ρ_1 = -Id` and
/// `λ_n = Σ_{k+l=n} Σ_{σ ∈ Sh(k,n)} (-1)^{σ̃+r} e(σ) [ρ_k(...), ρ_l(...)]`,
/// `r = k + 1 + (l-1)(ṽ_{σ(1)} + ... + ṽ_{σ(k)})`.
/// Also returns `λ_2, ..., λ_n`.
pub fn complementary_structure(a: &Dgla, eta: &HomogeneousMap, max_arity: usize) -> Result<(LInfinityStructure, Vec<MultiMap>)> {
    let g = a.space();
    check_eta(g, eta)?;
    if !a.check().is_valid() {
        return Err(Error::InvalidDgla);
    }
    let h = homotopy_commutator(a.d(), eta);
    let one_minus_h = HomogeneousMap::identity(g).sub(&h)?;
    let mut rho: Vec<MultiMap> = vec![MultiMap::from_linear(&HomogeneousMap::identity(g).scaled(&-crate::scalar::one()))];
    // ρ_1 has degree 0 as a map; later ρ_n have degree 1 - n
    let mut lambdas = Vec::new();
    let mut ops = vec![MultiMap::from_linear(a.d())];
    for n in 2..=max_arity {
        let tuples = canonical_tuples(g, n);
        let values = crate::par::map(&tuples, |t| {
            let degrees: Vec<i32> = t.iter().map(|&i| g.degree(i)).collect();
            let mut acc = g.zero_vector();
            for k in 1..n {
                let l = n - k;
                for sh in ShuffleTable::get(k, n) {
                    let first: Vec<usize> = sh.images[..k].iter().map(|&p| t[p]).collect();
                    let second: Vec<usize> = sh.images[k..].iter().map(|&p| t[p]).collect();
                    let x = rho[k - 1].eval_basis(&first);
                    let y = rho[l - 1].eval_basis(&second);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let block: i64 = first.iter().map(|&i| g.degree(i) as i64).sum();
                    let r = (k + 1) as i64 + (l as i64 - 1) * block;
                    let sign = sh.parity * Sign::power(r) * koszul_unchecked(&sh.images, &degrees);
                    acc.add_scaled(&a.br(&x, &y), &sign.to_scalar());
                }
            }
            acc
        });
        let mut lambda = MultiMap::exterior(n, g, 2 - n as i32);
        for (t, v) in tuples.into_iter().zip(values) {
            lambda.insert_canonical(t, v);
        }
        rho.push(lambda.map_values(g, 1 - n as i32, |v| eta.apply(v)));
        ops.push(lambda.map_values(g, 2 - n as i32, |v| one_minus_h.apply(v)));
        lambdas.push(lambda);
    }
    let l = LInfinityStructure::new(g, ops, max_arity, Generator::Stored)?;
    Ok((l, lambdas))
}

/// `m_1 = d`, `m_2 = (dη + ηd)(a_1 a_2)`,
/// `m_n = η((-1)^n m_{n-1}(a_1,...,a_{n-1}) a_n + (-1)^{(n-1)ã_1} a_1 m_{n-1}(a_2,...,a_n))`.
pub fn induce_ainfinity(a: &Dga, eta: &HomogeneousMap, max_arity: usize) -> Result<AInfinityStructure> {
    let g = a.space();
    check_eta(g, eta)?;
    if !a.check().is_valid() {
        return Err(Error::InvalidDga);
    }
    let h = homotopy_commutator(a.d(), eta);
    let mut m1 = TensorMap::new(1, g, 1);
    for i in 0..g.dim() {
        m1.set(&[i], a.d().column(i))?;
    }
    let mut ops = vec![m1];
    if max_arity >= 2 {
        let mut m2 = TensorMap::new(2, g, 0);
        for (t, v) in a.product().values() {
            m2.set(t, h.apply(v))?;
        }
        ops.push(m2);
    }
    for n in 3..=max_arity {
        let prev = &ops[n - 2];
        let tuples = crate::structures::all_tuples(g.dim(), n);
        let sign_last = Sign::power(n as i64).to_scalar();
        let values = crate::par::map(&tuples, |t| {
            let mut acc = g.zero_vector();
            let left = prev.eval_basis(&t[..n - 1]);
            if !left.is_zero() {
                a.product().accumulate_with_vector(&mut acc, &[], &left, &t[n - 1..], &sign_last);
            }
            let right = prev.eval_basis(&t[1..]);
            if !right.is_zero() {
                let s = Sign::power((n as i64 - 1) * g.degree(t[0]) as i64).to_scalar();
                a.product().accumulate_with_vector(&mut acc, &t[..1], &right, &[], &s);
            }
            eta.apply(&acc)
        });
        let mut m = TensorMap::new(n, g, 2 - n as i32);
        for (t, v) in tuples.iter().zip(values) {
            if !v.is_zero() {
                m.set(t, v)?;
            }
        }
        ops.push(m);
    }
    AInfinityStructure::new(g, ops)
}

/// `K_1 = id`, `K_2 = η[ , ]`, `K_{≥3} = 0`, into `(g, d, 0)`.
pub fn kuranishi_morphism(a: &Dgla, eta: &HomogeneousMap) -> Result<LMorphismToAbelian> {
    let g = a.space();
    check_eta(g, eta)?;
    let k1 = MultiMap::from_linear(&HomogeneousMap::identity(g));
    let k2 = a.bracket().map_values(g, -1, |v| eta.apply(v));
    LMorphismToAbelian::new(g, vec![k1, k2], a.d().clone())
}
