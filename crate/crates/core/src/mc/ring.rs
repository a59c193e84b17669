//! Graded-commutative local coefficient algebras `B = k ⊕ m` with nilpotent
//! maximal ideal `m`.
//!
//! Every ring exposes a basis whose element 0 is the unit; the other basis
//! elements span `m`. Products are returned as sparse combinations.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::Sign;
use crate::scalar::{one, Scalar};

pub type Product<'a> = Cow<'a, [(usize, Scalar)]>;

pub trait CoefficientRing: Send + Sync {
    /// Size of the basis, unit included.
    fn len(&self) -> usize;

    fn degree(&self, index: usize) -> i32;

    /// Filtration weight: 0 for the unit, at least 1 on `m`. For truncated
    /// polynomial rings this is the monomial degree.
    fn weight(&self, index: usize) -> usize;

    fn label(&self, index: usize) -> String;

    /// Product of two basis elements of `m` (both indices nonzero).
    fn mul_ideal(&self, a: usize, b: usize) -> Product<'_>;

    /// Largest number of factors from `m` with a possibly nonzero product.
    fn nilpotency_bound(&self) -> usize;

    fn mul(&self, a: usize, b: usize) -> Product<'_> {
        if a == 0 {
            Cow::Owned(vec![(b, one())])
        } else if b == 0 {
            Cow::Owned(vec![(a, one())])
        } else {
            self.mul_ideal(a, b)
        }
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub type SharedRing = Arc<dyn CoefficientRing>;

/// Element of a coefficient ring, as a sparse combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement(BTreeMap<usize, Scalar>);

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self(BTreeMap::from([(index, one())]))
    }

    pub fn terms(&self) -> &BTreeMap<usize, Scalar> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(index).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&index);
        }
    }

    pub fn add_scaled(&mut self, other: &RingElement, c: &Scalar) {
        for (i, x) in &other.0 {
            self.add_term(*i, &(x * c));
        }
    }

    pub fn mul(&self, other: &RingElement, ring: &dyn CoefficientRing) -> RingElement {
        let mut out = RingElement::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                for (c, z) in ring.mul(*a, *b).iter() {
                    out.add_term(*c, &(x * y * z));
                }
            }
        }
        out
    }

    /// Coefficient vector in the ring basis.
    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); len];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn format(&self, ring: &dyn CoefficientRing) -> String {
        let mut out = String::new();
        for (i, c) in &self.0 {
            let label = ring.label(*i);
            let negative = c < &Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if *i == 0 {
                out.push_str(&magnitude.to_string());
            } else if magnitude == one() {
                out.push_str(&label);
            } else {
                out.push_str(&format!("{magnitude}*{label}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A finite-dimensional local algebra given by an explicit multiplication
/// table on a basis of its maximal ideal.
#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    labels: Vec<String>,
    degrees: Vec<i32>,
    weights: Vec<usize>,
    table: HashMap<(usize, usize), Vec<(usize, Scalar)>>,
    bound: usize,
}

impl ArtinAlgebra {
    /// `ideal` lists the basis of `m` (label, degree); `products` gives
    /// `m_i * m_j` for basis indices of `m` counted from 0. Missing products
    /// are zero. The table is validated: associativity, graded
    /// commutativity, degree compatibility and nilpotency.
    pub fn new<S: Into<String>>(
        ideal: Vec<(S, i32)>,
        products: Vec<((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<Self> {
        let mut labels = vec!["1".to_string()];
        let mut degrees = vec![0];
        for (l, d) in ideal {
            labels.push(l.into());
            degrees.push(d);
        }
        let n = labels.len();
        let mut table: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
        for ((a, b), terms) in products {
            let (a, b) = (a + 1, b + 1);
            if a >= n || b >= n {
                return Err(Error::InvalidAlgebra(format!("product index ({}, {}) out of range", a - 1, b - 1)));
            }
            let mut combined: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (c, x) in terms {
                let c = c + 1;
                if c >= n {
                    return Err(Error::InvalidAlgebra(format!("product result index {} out of range", c - 1)));
                }
                if degrees[c] != degrees[a] + degrees[b] && !x.is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} * {} cannot contain {}",
                        labels[a], labels[b], labels[c]
                    )));
                }
                *combined.entry(c).or_insert_with(Scalar::zero) += x;
            }
            let terms: Vec<(usize, Scalar)> = combined.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            if !terms.is_empty() {
                table.insert((a, b), terms);
            }
        }
        let mut alg = Self { labels, degrees, weights: vec![1; n], table, bound: 0 };
        alg.weights[0] = 0;
        alg.validate()?;
        Ok(alg)
    }

    /// `k[ε]/(ε²)` with `ε` of degree 0.
    pub fn dual_numbers() -> Self {
        Self::new(vec![("e", 0)], vec![]).expect("valid table")
    }

    /// `k[t]/(t^p)` with `t` of degree 0, `p ≥ 2`.
    pub fn truncated_line(p: usize) -> Self {
        let ideal: Vec<(String, i32)> = (1..p).map(|k| (power_label("t", k), 0)).collect();
        let mut products = Vec::new();
        for a in 1..p {
            for b in 1..p {
                if a + b < p {
                    products.push(((a - 1, b - 1), vec![(a + b - 1, one())]));
                }
            }
        }
        let mut alg = Self::new(ideal, products).expect("valid table");
        for k in 1..p {
            alg.weights[k] = k;
        }
        alg
    }

    /// `k[θ]/(θ²)` with `θ` of the given (typically odd) degree.
    pub fn exterior_line(degree: i32) -> Self {
        Self::new(vec![("th", degree)], vec![]).expect("valid table")
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.labels.len();
        let basis = |i: usize| RingElement::basis(i);
        for a in 1..n {
            for b in 1..n {
                // graded commutativity
                let ab = basis(a).mul(&basis(b), self);
                let ba = basis(b).mul(&basis(a), self);
                let mut expected = RingElement::zero();
                expected.add_scaled(&ba, &Sign::koszul(self.degrees[a], self.degrees[b]).to_scalar());
                if ab != expected {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} and {} do not graded-commute",
                        self.labels[a], self.labels[b]
                    )));
                }
                for c in 1..n {
                    let left = ab.mul(&basis(c), self);
                    let right = basis(a).mul(&basis(b).mul(&basis(c), self), self);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "product is not associative on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        // nilpotency: span of products of k ideal elements must reach zero
        let mut power: Vec<RingElement> = (1..n).map(basis).collect();
        let mut k = 1;
        while !power.is_empty() {
            if k > n {
                return Err(Error::InvalidAlgebra("maximal ideal is not nilpotent".into()));
            }
            let mut next = Vec::new();
            for p in &power {
                for b in 1..n {
                    let q = p.mul(&basis(b), self);
                    if !q.is_zero() && !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
            self.bound = k;
            power = next;
            k += 1;
        }
        if n == 1 {
            self.bound = 0;
        }
        Ok(())
    }

    pub fn ideal_dim(&self) -> usize {
        self.labels.len() - 1
    }

    /// Nilpotency index `p`: `m^p = 0` and `m^{p-1} ≠ 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.bound + 1
    }
}

fn power_label(base: &str, k: usize) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}^{k}")
    }
}

impl CoefficientRing for ArtinAlgebra {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn degree(&self, index: usize) -> i32 {
        self.degrees[index]
    }

    fn weight(&self, index: usize) -> usize {
        self.weights[index]
    }

    fn label(&self, index: usize) -> String {
        self.labels[index].clone()
    }

    fn mul_ideal(&self, a: usize, b: usize) -> Product<'_> {
        match self.table.get(&(a, b)) {
            Some(t) => Cow::Borrowed(t.as_slice()),
            None => Cow::Borrowed(&[]),
        }
    }

    fn nilpotency_bound(&self) -> usize {
        self.bound
    }
}

/// Graded-commutative polynomials in parameters `t_1, ..., t_r` truncated
/// above total degree `order`. Odd parameters square to zero; monomials are
/// normalized with parameters in frame order, tracking Koszul signs.
#[derive(Clone, Debug)]
pub struct PolynomialRing {
    names: Vec<String>,
    param_degrees: Vec<i32>,
    order: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    degrees: Vec<i32>,
}

impl PolynomialRing {
    pub fn new<S: Into<String>>(params: Vec<(S, i32)>, order: usize) -> Self {
        let (names, param_degrees): (Vec<String>, Vec<i32>) =
            params.into_iter().map(|(n, d)| (n.into(), d)).unzip();
        let r = names.len();
        let mut monomials = vec![vec![0u32; r]];
        for total in 1..=order {
            let mut layer = Vec::new();
            exponent_vectors(&param_degrees, total, 0, &mut vec![0; r], &mut layer);
            // graded lexicographic: within a total degree, larger leading exponents first
            layer.sort_by(|a, b| b.cmp(a));
            monomials.extend(layer);
        }
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let degrees = monomials
            .iter()
            .map(|m| m.iter().zip(&param_degrees).map(|(&e, &d)| e as i32 * d).sum())
            .collect();
        Self { names, param_degrees, order, monomials, index, degrees }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_params(&self) -> usize {
        self.names.len()
    }

    pub fn param_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn param_degree(&self, i: usize) -> i32 {
        self.param_degrees[i]
    }

    /// Basis index of the parameter `t_i` itself.
    pub fn param_index(&self, i: usize) -> Option<usize> {
        let mut e = vec![0; self.names.len()];
        e[i] = 1;
        self.index.get(&e).copied()
    }

    pub fn exponents(&self, index: usize) -> &[u32] {
        &self.monomials[index]
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Evaluates a monomial at a point given as floating values; used for
    /// plotting only.
    pub fn eval_monomial_f64(&self, index: usize, point: &[f64]) -> f64 {
        self.monomials[index]
            .iter()
            .zip(point)
            .map(|(&e, &x)| x.powi(e as i32))
            .product()
    }
}

fn exponent_vectors(degrees: &[i32], remaining: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == degrees.len() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let max = if degrees[pos] % 2 != 0 { remaining.min(1) } else { remaining };
    for e in 0..=max {
        cur[pos] = e as u32;
        exponent_vectors(degrees, remaining - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl CoefficientRing for PolynomialRing {
    fn len(&self) -> usize {
        self.monomials.len()
    }

    fn degree(&self, index: usize) -> i32 {
        self.degrees[index]
    }

    fn weight(&self, index: usize) -> usize {
        self.monomials[index].iter().map(|&e| e as usize).sum()
    }

    fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self.monomials[index]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| power_label(&self.names[i], e as usize))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn mul_ideal(&self, a: usize, b: usize) -> Product<'_> {
        let (x, y) = (&self.monomials[a], &self.monomials[b]);
        let mut sign = Sign::Plus;
        let mut exps = Vec::with_capacity(x.len());
        for i in 0..x.len() {
            let odd = self.param_degrees[i] % 2 != 0;
            if odd && x[i] + y[i] > 1 {
                return Cow::Borrowed(&[]);
            }
            exps.push(x[i] + y[i]);
        }
        // move odd factors of y left past odd factors of x with larger index
        for j in 0..y.len() {
            if y[j] == 1 && self.param_degrees[j] % 2 != 0 {
                for i in j + 1..x.len() {
                    if x[i] == 1 && self.param_degrees[i] % 2 != 0 {
                        sign = -sign;
                    }
                }
            }
        }
        match self.index.get(&exps) {
            Some(&c) => Cow::Owned(vec![(c, sign.to_scalar())]),
            None => Cow::Borrowed(&[]),
        }
    }

    fn nilpotency_bound(&self) -> usize {
        if self.monomials.len() == 1 {
            0
        } else {
            self.order
        }
    }
}

/// Graded tensor product `A ⊗ B` of two coefficient rings, with
/// `(a ⊗ b)(a' ⊗ b') = (-1)^{|b||a'|} aa' ⊗ bb'`. Basis index of `a ⊗ b` is
/// `a * |B| + b`, so the unit stays at index 0.
pub struct TensorRing {
    left: SharedRing,
    right: SharedRing,
}

impl TensorRing {
    pub fn new(left: SharedRing, right: SharedRing) -> Self {
        Self { left, right }
    }

    pub fn split(&self, index: usize) -> (usize, usize) {
        (index / self.right.len(), index % self.right.len())
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        a * self.right.len() + b
    }

    pub fn left(&self) -> &SharedRing {
        &self.left
    }

    pub fn right(&self) -> &SharedRing {
        &self.right
    }
}

impl CoefficientRing for TensorRing {
    fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    fn degree(&self, index: usize) -> i32 {
        let (a, b) = self.split(index);
        self.left.degree(a) + self.right.degree(b)
    }

    fn weight(&self, index: usize) -> usize {
        let (a, b) = self.split(index);
        self.left.weight(a) + self.right.weight(b)
    }

    fn label(&self, index: usize) -> String {
        match self.split(index) {
            (0, 0) => "1".into(),
            (a, 0) => self.left.label(a),
            (0, b) => self.right.label(b),
            (a, b) => format!("{}*{}", self.left.label(a), self.right.label(b)),
        }
    }

    fn mul_ideal(&self, x: usize, y: usize) -> Product<'_> {
        let (a, b) = self.split(x);
        let (c, d) = self.split(y);
        let sign = Sign::koszul(self.right.degree(b), self.left.degree(c)).to_scalar();
        let left = self.left.mul(a, c);
        if left.is_empty() {
            return Cow::Borrowed(&[]);
        }
        let right = self.right.mul(b, d);
        let mut out = Vec::with_capacity(left.len() * right.len());
        for (p, u) in left.iter() {
            for (q, v) in right.iter() {
                out.push((self.join(*p, *q), &sign * u * v));
            }
        }
        Cow::Owned(out)
    }

    fn nilpotency_bound(&self) -> usize {
        self.left.nilpotency_bound() + self.right.nilpotency_bound()
    }
}

/// The ground field itself (`m = 0`).
pub struct GroundField;

impl CoefficientRing for GroundField {
    fn len(&self) -> usize {
        1
    }
    fn degree(&self, _: usize) -> i32 {
        0
    }
    fn weight(&self, _: usize) -> usize {
        0
    }
    fn label(&self, _: usize) -> String {
        "1".into()
    }
    fn mul_ideal(&self, _: usize, _: usize) -> Product<'_> {
        Cow::Borrowed(&[])
    }
    fn nilpotency_bound(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn truncated_line_nilpotency() {
        let b = ArtinAlgebra::truncated_line(3);
        assert_eq!(b.ideal_dim(), 2);
        assert_eq!(b.nilpotency_index(), 3);
        assert_eq!(b.mul(1, 1).to_vec(), vec![(2, one())]);
        assert!(b.mul(1, 2).is_empty());
        assert_eq!(ArtinAlgebra::dual_numbers().nilpotency_index(), 2);
        assert_eq!(ArtinAlgebra::exterior_line(1).nilpotency_index(), 2);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // non-commuting even elements
        let r = ArtinAlgebra::new(vec![("a", 0), ("b", 0), ("c", 0)], vec![((0, 1), vec![(2, int(1))])]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
        // a*a = a is not nilpotent
        let r = ArtinAlgebra::new(vec![("a", 0)], vec![((0, 0), vec![(0, int(1))])]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
        // degree violation
        let r = ArtinAlgebra::new(vec![("a", 0), ("b", 1)], vec![((0, 0), vec![(1, int(1))])]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn odd_parameters_anticommute() {
        let ring = PolynomialRing::new(vec![("s", 1), ("t", 1), ("u", 0)], 3);
        let s = ring.param_index(0).unwrap();
        let t = ring.param_index(1).unwrap();
        let st = ring.mul(s, t).to_vec();
        let ts = ring.mul(t, s).to_vec();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].0, ts[0].0);
        assert_eq!(st[0].1, -ts[0].1.clone());
        assert!(ring.mul(s, s).is_empty());
        assert_eq!(ring.label(st[0].0), "s*t");
    }

    #[test]
    fn polynomial_ring_is_associative_and_truncated() {
        let ring = PolynomialRing::new(vec![("a", 0), ("b", 1), ("c", -1)], 3);
        let n = ring.len();
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    let l = RingElement::basis(x).mul(&RingElement::basis(y), &ring).mul(&RingElement::basis(z), &ring);
                    let r = RingElement::basis(x).mul(&RingElement::basis(y).mul(&RingElement::basis(z), &ring), &ring);
                    assert_eq!(l, r);
                }
            }
        }
        assert!((0..n).all(|i| ring.weight(i) <= 3));
    }

    #[test]
    fn tensor_ring_signs() {
        let odd: SharedRing = Arc::new(ArtinAlgebra::exterior_line(1));
        let t = TensorRing::new(odd.clone(), odd);
        // (θ⊗1)(1⊗θ') = θ⊗θ' ; (1⊗θ')(θ⊗1) = -θ⊗θ'
        let a = t.join(1, 0);
        let b = t.join(0, 1);
        assert_eq!(t.mul(a, b).to_vec(), vec![(t.join(1, 1), one())]);
        assert_eq!(t.mul(b, a).to_vec(), vec![(t.join(1, 1), -one())]);
    }
}
