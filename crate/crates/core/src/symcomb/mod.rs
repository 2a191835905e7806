//! Symmetric-group combinatorics: integer partitions, cycle types, the
//! centralizer order z_mu, class functions with exact rational values,
//! character polynomials, Murnaghan–Nakayama character values, and
//! standard Young tableaux with descent sets and major index.

mod charpoly;
mod mn;
mod syt;

pub use charpoly::CharacterPolynomial;
pub use mn::{character_table, mn_character, CharacterTable};
pub use syt::{syt_enumerate, syt_maj_distribution, SytData, Tableau};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::{q_int, Q, Z};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymcombError {
    #[error("operands defined on different symmetric groups: n={0} vs n={1}")]
    SizeMismatch(u32, u32),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

/// A partition of a nonnegative integer, stored with weakly decreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The cycle type with these parts as cycle lengths.
    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(&self.parts)
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut col = 0u32;
        loop {
            let count = self.parts.iter().filter(|&&p| p > col).count() as u32;
            if count == 0 {
                break;
            }
            parts.push(count);
            col += 1;
        }
        Partition { parts }
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula. An independent count of the same quantity is given by
    /// exhaustive enumeration in [`syt_enumerate`].
    pub fn hook_length_dim(&self) -> u128 {
        let n = self.size();
        if n == 0 {
            return 1;
        }
        let conj = self.conjugate();
        let mut numer: u128 = 1;
        for k in 1..=u128::from(n) {
            numer *= k;
        }
        let mut denom: u128 = 1;
        for (r, &row_len) in self.parts.iter().enumerate() {
            for c in 0..row_len as usize {
                let arm = row_len as u128 - c as u128 - 1;
                let leg = conj.parts[c] as u128 - r as u128 - 1;
                denom *= arm + leg + 1;
            }
        }
        debug_assert_eq!(numer % denom, 0);
        numer / denom
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A cycle type: `count(i)` is the number of i-cycles, i >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleType {
    /// counts[k] = number of (k+1)-cycles; no trailing zeros.
    counts: Vec<u32>,
}

impl CycleType {
    /// Builds from the vector `counts[k]` = number of (k+1)-cycles.
    pub fn new(counts: impl Into<Vec<u32>>) -> Self {
        let mut counts = counts.into();
        while counts.last() == Some(&0) {
            counts.pop();
        }
        CycleType { counts }
    }

    pub fn empty() -> Self {
        CycleType { counts: Vec::new() }
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let mut counts = Vec::new();
        for &p in parts {
            assert!(p > 0, "cycle lengths must be positive");
            let idx = (p - 1) as usize;
            if counts.len() <= idx {
                counts.resize(idx + 1, 0);
            }
            counts[idx] += 1;
        }
        CycleType { counts }
    }

    /// Number of i-cycles (i is 1-indexed).
    pub fn count(&self, i: u32) -> u32 {
        assert!(i >= 1);
        self.counts.get((i - 1) as usize).copied().unwrap_or(0)
    }

    /// Total size n = sum of i * count(i).
    pub fn n(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as u32 + 1) * c)
            .sum()
    }

    /// Total number of cycles.
    pub fn num_cycles(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Iterates over (cycle length, count) pairs with nonzero count.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k as u32 + 1, c))
    }

    /// Length of the longest cycle, or 0 for the empty type.
    pub fn max_part(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (len, c) in self.iter_nonzero() {
            for _ in 0..c {
                parts.push(len);
            }
        }
        Partition::new(parts)
    }

    /// Sign of any permutation with this cycle type.
    pub fn sign(&self) -> i32 {
        let even_cycles: u32 = self
            .iter_nonzero()
            .filter(|(len, _)| len % 2 == 0)
            .map(|(_, c)| c)
            .sum();
        if even_cycles.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// True when all cycle lengths are distinct.
    pub fn has_distinct_lengths(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Adds `count` cycles of length `len` in place.
    pub fn add_cycles(&mut self, len: u32, count: u32) {
        if count == 0 {
            return;
        }
        let idx = (len - 1) as usize;
        if self.counts.len() <= idx {
            self.counts.resize(idx + 1, 0);
        }
        self.counts[idx] += count;
    }

    /// Disjoint union of two cycle types.
    pub fn union(&self, other: &CycleType) -> CycleType {
        let mut out = self.clone();
        for (len, c) in other.iter_nonzero() {
            out.add_cycles(len, c);
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition())
    }
}

/// All partitions of n in descending lexicographic order: (n) first,
/// (1,...,1) last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for first in (1..=top).rev() {
            prefix.push(first);
            go(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// p(n), the number of partitions of n, via the pentagonal number recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut total: i128 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            total += sign * table[i - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                total += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = u64::try_from(total).expect("partition count is nonnegative");
    }
    table[n]
}

/// z_mu = prod_i i^{mu_i} * mu_i!, the centralizer order of the class mu.
pub fn z_mu(mu: &CycleType) -> u128 {
    let mut z: u128 = 1;
    for (len, count) in mu.iter_nonzero() {
        for _ in 0..count {
            z *= u128::from(len);
        }
        for k in 1..=u128::from(count) {
            z *= k;
        }
    }
    z
}

/// A class function on S_n with exact rational values, stored densely over
/// all cycle types of n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: u32,
    values: BTreeMap<CycleType, Q>,
}

impl ClassFunction {
    pub fn from_fn(n: u32, f: impl Fn(&CycleType) -> Q) -> Self {
        let values = enumerate_partitions(n)
            .into_iter()
            .map(|lambda| {
                let mu = lambda.cycle_type();
                let v = f(&mu);
                (mu, v)
            })
            .collect();
        ClassFunction { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, mu: &CycleType) -> &Q {
        self.values
            .get(mu)
            .unwrap_or_else(|| panic!("cycle type {mu} is not a class of S_{}", self.n))
    }

    pub fn values(&self) -> &BTreeMap<CycleType, Q> {
        &self.values
    }

    /// The constant function 1 (character of the trivial representation).
    pub fn trivial(n: u32) -> Self {
        Self::from_fn(n, |_| Q::one())
    }

    /// The sign character.
    pub fn sign(n: u32) -> Self {
        Self::from_fn(n, |mu| q_int(mu.sign() as i64))
    }

    /// Indicator of permutations with no cycle shorter than n/k.
    /// For k = 1 this is the indicator of n-cycles.
    pub fn chi_k(n: u32, k: u32) -> Self {
        assert!(k >= 1);
        Self::from_fn(n, |mu| {
            let ok = mu.iter_nonzero().all(|(len, _)| len * k >= n);
            if ok {
                Q::one()
            } else {
                Q::zero()
            }
        })
    }

    /// Indicator of permutations whose cycle lengths are pairwise distinct.
    pub fn chi_distinct(n: u32) -> Self {
        Self::from_fn(n, |mu| {
            if mu.has_distinct_lengths() {
                Q::one()
            } else {
                Q::zero()
            }
        })
    }

    /// Character of the k-th exterior power of the permutation representation
    /// Q^n: the coefficient of t^k in prod_l (1 - (-t)^l)^{mu_l}.
    pub fn permutation_exterior(n: u32, k: u32) -> Result<Self, SymcombError> {
        if k > n {
            return Err(SymcombError::OutOfRange(format!(
                "exterior power {k} of an {n}-dimensional representation"
            )));
        }
        Ok(Self::from_fn(n, |mu| {
            q_int(exterior_trace(mu, k))
        }))
    }

    /// Character of V_k, the k-th exterior power of the quotient Q^n / Q of
    /// the permutation representation by its invariant line.
    pub fn reduced_exterior(n: u32, k: u32) -> Result<Self, SymcombError> {
        if n == 0 || k > n - 1 {
            return Err(SymcombError::OutOfRange(format!(
                "reduced exterior power {k} for n = {n}"
            )));
        }
        // wedge^k(Q^n) = wedge^k(Q^n/Q) + wedge^{k-1}(Q^n/Q)
        let mut current = Self::trivial(n);
        for j in 1..=k {
            let full = Self::permutation_exterior(n, j)?;
            current = Self::from_fn(n, |mu| full.value(mu) - current.value(mu));
        }
        Ok(current)
    }

    /// The n-cycle indicator written through the alternating sum
    /// (1/n) sum_k (-1)^k chi_{V_k}; equals `chi_k(n, 1)` pointwise.
    pub fn chi1_via_exterior(n: u32) -> Result<Self, SymcombError> {
        if n == 0 {
            return Err(SymcombError::OutOfRange("n = 0".into()));
        }
        let mut acc = ClassFunction::from_fn(n, |_| Q::zero());
        for k in 0..n {
            let vk = Self::reduced_exterior(n, k)?;
            let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
            acc = Self::from_fn(n, |mu| acc.value(mu) + &sign * vk.value(mu));
        }
        let scale = Q::new(Z::one(), Z::from(n));
        Ok(Self::from_fn(n, |mu| &scale * acc.value(mu)))
    }

    /// Irreducible character chi_lambda as a class function.
    pub fn irreducible(lambda: &Partition) -> Result<Self, SymcombError> {
        let n = lambda.size();
        let mut values = BTreeMap::new();
        for mu_part in enumerate_partitions(n) {
            let mu = mu_part.cycle_type();
            let v = mn_character(lambda, &mu)?;
            values.insert(mu, q_int(v));
        }
        Ok(ClassFunction { n, values })
    }

    /// A canonical hex digest of the value table, usable as a cache key.
    pub fn canonical_id(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("n={};", self.n).as_bytes());
        for lambda in enumerate_partitions(self.n) {
            let mu = lambda.cycle_type();
            let v = self.value(&mu);
            hasher.update(format!("{}={}/{};", lambda, v.numer(), v.denom()).as_bytes());
        }
        let digest = hasher.finalize();
        let mut out = String::with_capacity(64);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

/// Trace of a permutation of cycle type mu on the k-th exterior power of the
/// permutation representation: [t^k] prod_l (1 - (-t)^l)^{mu_l}.
fn exterior_trace(mu: &CycleType, k: u32) -> i64 {
    let cap = k as usize;
    let mut poly = vec![0i64; cap + 1];
    poly[0] = 1;
    for (len, count) in mu.iter_nonzero() {
        for _ in 0..count {
            // multiply by 1 - (-t)^len, truncated at degree cap
            let l = len as usize;
            let sign = if len % 2 == 0 { -1 } else { 1 };
            let mut next = poly.clone();
            for d in 0..=cap {
                if d + l <= cap {
                    next[d + l] += sign * poly[d];
                }
            }
            poly = next;
        }
    }
    poly[cap]
}

/// The S_n inner product sum_mu f(mu) g(mu) / z_mu, both functions real-valued.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Q, SymcombError> {
    if f.n() != g.n() {
        return Err(SymcombError::SizeMismatch(f.n(), g.n()));
    }
    let mut total = Q::zero();
    for (mu, fv) in f.values() {
        let z = Q::new(Z::one(), Z::from(z_mu(mu)));
        total += fv * g.value(mu) * z;
    }
    Ok(total)
}
