//! Shared machinery for identities of the shape
//! `Σ_{k+l=n+1} Σ_{σ ∈ Sh(k,n)} ± outer_l(inner_k(...), ...)`.

use crate::graded::{Sign, ShuffleTable};

/// A family of operations that can be evaluated on basis tuples and fed
/// its own outputs in the first slot.
pub(crate) trait OpFamily: Sync {
    type Value: Clone + Send;

    fn zero(&self) -> Self::Value;

    fn is_zero(value: &Self::Value) -> bool;

    /// `acc += sign * op_n(e_tuple)`, tuple in any order.
    fn accumulate_basis(&self, n: usize, acc: &mut Self::Value, tuple: &[usize], sign: Sign);

    /// `acc += sign * op_n(first, e_rest...)`.
    fn accumulate_first(&self, n: usize, acc: &mut Self::Value, first: &Self::Value, rest: &[usize], sign: Sign);

    /// Whether `op_n` is identically zero; lets sums skip whole blocks.
    fn vanishes(&self, n: usize) -> bool;
}

/// `Σ_{k+l=n+1} Σ_{σ ∈ Sh(k,n)} (-1)^{σ̃ + k(l-1)} e(σ) outer_l(inner_k(e_{σ(1..k)}), e_{σ(k+1..n)})`.
pub(crate) fn shuffle_composite<I, O>(inner: &I, outer: &O, tuple: &[usize], degrees: &[i32]) -> O::Value
where
    I: OpFamily<Value = O::Value>,
    O: OpFamily,
{
    let n = tuple.len();
    let tuple_degrees: Vec<i32> = tuple.iter().map(|&i| degrees[i]).collect();
    let mut acc = outer.zero();
    let mut first = Vec::with_capacity(n);
    let mut rest = Vec::with_capacity(n);
    for k in 1..=n {
        let l = n + 1 - k;
        if inner.vanishes(k) || outer.vanishes(l) {
            continue;
        }
        let block_sign = Sign::power((k * (l - 1)) as i64);
        for sh in ShuffleTable::get(k, n) {
            first.clear();
            rest.clear();
            first.extend(sh.images[..k].iter().map(|&p| tuple[p]));
            rest.extend(sh.images[k..].iter().map(|&p| tuple[p]));
            let mut inner_value = inner.zero();
            inner.accumulate_basis(k, &mut inner_value, &first, Sign::Plus);
            if I::is_zero(&inner_value) {
                continue;
            }
            let sign = block_sign * sh.parity * crate::graded::perm::koszul_unchecked(&sh.images, &tuple_degrees);
            outer.accumulate_first(l, &mut acc, &inner_value, &rest, sign);
        }
    }
    acc
}

/// Nonzero defects found at one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityDefects<V> {
    pub arity: usize,
    pub tuples_checked: usize,
    pub defects: Vec<(Vec<usize>, V)>,
}

/// Result of an exhaustive identity check over canonical basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport<V> {
    pub per_arity: Vec<ArityDefects<V>>,
}

impl<V> DefectReport<V> {
    pub fn is_valid(&self) -> bool {
        self.per_arity.iter().all(|a| a.defects.is_empty())
    }

    pub fn defect_count(&self) -> usize {
        self.per_arity.iter().map(|a| a.defects.len()).sum()
    }

    pub fn tuples_checked(&self) -> usize {
        self.per_arity.iter().map(|a| a.tuples_checked).sum()
    }

    pub fn max_arity(&self) -> usize {
        self.per_arity.last().map_or(0, |a| a.arity)
    }

    /// Lowest arity with a nonzero defect.
    pub fn first_failing_arity(&self) -> Option<usize> {
        self.per_arity.iter().find(|a| !a.defects.is_empty()).map(|a| a.arity)
    }

    pub fn defects_at(&self, arity: usize) -> &[(Vec<usize>, V)] {
        self.per_arity.iter().find(|a| a.arity == arity).map_or(&[], |a| a.defects.as_slice())
    }
}

/// Evaluates `defect` on every tuple and keeps the nonzero values, in input
/// order.
pub(crate) fn collect_defects<V: Send>(
    arity: usize,
    tuples: Vec<Vec<usize>>,
    defect: impl Fn(&[usize]) -> V + Sync + Send,
    is_zero: impl Fn(&V) -> bool + Sync + Send,
) -> ArityDefects<V> {
    let values = crate::par::map(&tuples, |t| defect(t));
    let tuples_checked = tuples.len();
    let defects = tuples.into_iter().zip(values).filter(|(_, v)| !is_zero(v)).collect();
    ArityDefects { arity, tuples_checked, defects }
}
