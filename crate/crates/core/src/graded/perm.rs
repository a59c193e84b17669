use std::ops::{Mul, MulAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// A sign `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn power(exponent: i64) -> Self {
        if exponent.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `(-1)^(a*b)`, the Koszul factor for passing degree `a` over degree `b`.
    pub fn koszul(a: i32, b: i32) -> Self {
        Self::power(i64::from(a) * i64::from(b))
    }

    pub fn to_scalar(self) -> Scalar {
        int(self.to_i64())
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A permutation of `{0, ..., n-1}` stored by its image array: the
/// permuted list of `(v_0, ..., v_{n-1})` is `(v_{σ(0)}, ..., v_{σ(n-1)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Every permutation of `n` elements, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `(-1)^σ`.
    pub fn parity(&self) -> Sign {
        Sign::power(self.inversions() as i64)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`. Permuting a list by `self`
    /// and then the result by `other` permutes the original by `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Permutation(inv)
    }

    /// The permuted list `(items[σ(0)], ..., items[σ(n-1)])`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i].clone()).collect()
    }
}

/// Koszul sign `e(σ)` defined by
/// `v_{σ(1)} ∧ ... ∧ v_{σ(n)} = (-1)^σ e(σ) v_1 ∧ ... ∧ v_n`
/// for homogeneous generators of the given degrees. It is the product of
/// `(-1)^{|v_a||v_b|}` over the pairs that the permutation reorders.
pub fn koszul_sign(perm: &Permutation, degrees: &[i32]) -> Result<Sign> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch { expected: perm.len(), found: degrees.len() });
    }
    Ok(koszul_unchecked(perm.images(), degrees))
}

pub(crate) fn koszul_unchecked(images: &[usize], degrees: &[i32]) -> Sign {
    let mut sign = Sign::Plus;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                sign *= Sign::koszul(degrees[images[i]], degrees[images[j]]);
            }
        }
    }
    sign
}

/// A `(k, n-k)` shuffle: `σ(0) < ... < σ(k-1)` and `σ(k) < ... < σ(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shuffle {
    perm: Permutation,
    split: usize,
}

impl Shuffle {
    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn first_block(&self) -> &[usize] {
        &self.perm.images()[..self.split]
    }

    pub fn second_block(&self) -> &[usize] {
        &self.perm.images()[self.split..]
    }
}

/// All `(k, n-k)` shuffles, ordered lexicographically by their first block.
pub fn shuffles(k: usize, n: usize) -> Result<Vec<Shuffle>> {
    if k == 0 || k > n {
        return Err(Error::ShuffleOutOfRange { k, n });
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..k).collect();
    loop {
        let mut images = chosen.clone();
        images.extend((0..n).filter(|i| !chosen.contains(i)));
        out.push(Shuffle { perm: Permutation(images), split: k });
        // next k-combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| chosen[i] < n - k + i) else {
            break;
        };
        chosen[i] += 1;
        for j in i + 1..k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Shuffles for small `n`, precomputed once with their parities.
pub struct ShuffleTable;

pub struct CachedShuffle {
    pub images: Vec<usize>,
    pub split: usize,
    pub parity: Sign,
}

const CACHE_LIMIT: usize = 12;

impl ShuffleTable {
    /// The `(k, n-k)` shuffles with parity. Panics on `k` out of range.
    pub fn get(k: usize, n: usize) -> &'static [CachedShuffle] {
        static TABLE: OnceLock<Vec<Vec<Vec<CachedShuffle>>>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            (0..=CACHE_LIMIT)
                .map(|n| {
                    (0..=n)
                        .map(|k| {
                            if k == 0 {
                                return Vec::new();
                            }
                            shuffles(k, n)
                                .unwrap()
                                .into_iter()
                                .map(|s| CachedShuffle {
                                    parity: s.perm.parity(),
                                    split: s.split,
                                    images: s.perm.0,
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        });
        assert!(n <= CACHE_LIMIT, "arity {n} exceeds the shuffle cache");
        assert!(k >= 1 && k <= n, "shuffle split {k} out of range for {n}");
        &table[n][k]
    }
}
