//! Statistics of maximal tori in GL_n(F_q) through the coinvariant algebra
//! R[x_1..x_n]: the multiplicity of V_lambda in the graded piece R_i is the
//! number of standard Young tableaux of shape lambda with major index i, and
//!
//!   sum_{T in T_n(F_q)} chi(T) = sum_i q^{n^2 - n - i} <chi, R_i>.
//!
//! A brute-force enumerator of Frobenius-stable line configurations serves
//! as the oracle for n in {2, 3}: a maximal torus over F_q is a Frobenius
//! stable set of n independent lines in F_bar_q^n, and the orbit sizes of
//! the lines give the cycle type of sigma_T.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ffpoly::{self, ext_frobenius, Fq, FqContext};
use crate::glcount::factor_prime_power;
use crate::lseries::QLaurent;
use crate::symcomb::{
    character_table, enumerate_partitions, syt_maj_distribution, z_mu,
    CharacterPolynomial, ClassFunction, CycleType, Partition, SymcombError,
};
use crate::{q_int, Q, Z};

#[derive(Debug, Error)]
pub enum ToristatError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("brute-force torus enumeration supports n in {{2, 3}}, got {0}")]
    Unsupported(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Ffpoly(#[from] ffpoly::FfpolyError),
    #[error(transparent)]
    Symcomb(#[from] SymcombError),
}

/// Multiplicities <V_lambda, R_i> for all lambda of n, as major-index
/// tableau counts; row sums recover the tableau counts of each shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTable {
    n: u32,
    rows: BTreeMap<Partition, Vec<u64>>,
}

impl GradedTable {
    pub fn build(n: u32) -> Self {
        let rows = enumerate_partitions(n)
            .into_iter()
            .map(|lambda| {
                let dist = syt_maj_distribution(&lambda);
                (lambda, dist)
            })
            .collect();
        GradedTable { n, rows }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Top grading binom(n, 2).
    pub fn top_degree(&self) -> u32 {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[u64]> {
        self.rows.get(lambda).map(Vec::as_slice)
    }

    /// <V_lambda, R_i>.
    pub fn r_multiplicity(&self, lambda: &Partition, i: u32) -> Result<u64, ToristatError> {
        if i > self.top_degree() {
            return Err(ToristatError::OutOfRange(format!(
                "grading {i} exceeds binom({}, 2)",
                self.n
            )));
        }
        let row = self.rows.get(lambda).ok_or_else(|| {
            ToristatError::OutOfRange(format!("{lambda} is not a partition of {}", self.n))
        })?;
        Ok(row.get(i as usize).copied().unwrap_or(0))
    }

    /// dim R_i = sum_lambda dim(V_lambda) * <V_lambda, R_i>.
    pub fn dims(&self) -> Vec<u128> {
        let top = self.top_degree() as usize;
        let mut dims = vec![0u128; top + 1];
        for (lambda, row) in &self.rows {
            let d = lambda.hook_length_dim();
            for (i, &c) in row.iter().enumerate() {
                dims[i] += d * u128::from(c);
            }
        }
        dims
    }

    /// JSON form: {"n": n, "rows": {"<parts comma-joined>": [counts...]}}.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = serde_json::Map::new();
        for (lambda, counts) in &self.rows {
            let key = lambda
                .parts()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            rows.insert(
                key,
                serde_json::Value::Array(
                    counts
                        .iter()
                        .map(|&c| serde_json::Value::from(c))
                        .collect(),
                ),
            );
        }
        serde_json::json!({ "n": self.n, "rows": rows })
    }
}

/// <V_lambda, R_i> without building a full table.
pub fn r_multiplicity(lambda: &Partition, i: u32, n: u32) -> Result<u64, ToristatError> {
    if lambda.size() != n {
        return Err(ToristatError::OutOfRange(format!(
            "{lambda} is not a partition of {n}"
        )));
    }
    GradedTable::build(n).r_multiplicity(lambda, i)
}

/// <chi, R_i> for i = 0..=binom(n,2): decompose chi against the irreducible
/// characters and weight by the major-index counts.
pub fn chi_graded_multiplicities(
    chi: &ClassFunction,
    table: &GradedTable,
) -> Result<Vec<Q>, ToristatError> {
    let n = table.n();
    let chars = character_table(n);
    let top = table.top_degree() as usize;
    let mut out = vec![Q::zero(); top + 1];
    for lambda in chars.lambdas() {
        // <chi, chi_lambda>_n
        let mut coeff = Q::zero();
        for mu_part in enumerate_partitions(n) {
            let mu = mu_part.cycle_type();
            let value = chars.value(lambda, &mu).expect("table is complete");
            if value == 0 {
                continue;
            }
            coeff += chi.value(&mu) * q_int(value) / q_int(z_mu(&mu) as i64);
        }
        if coeff.is_zero() {
            continue;
        }
        let row = table.row(lambda).expect("table is complete");
        for (i, &c) in row.iter().enumerate() {
            if c != 0 {
                out[i] += &coeff * q_int(c as i64);
            }
        }
    }
    Ok(out)
}

/// sum_T chi(T) as a Laurent polynomial in symbolic q:
/// sum_i q^{n^2 - n - i} <chi, R_i>.
pub fn tori_statistic_poly(chi: &ClassFunction) -> Result<QLaurent, ToristatError> {
    let n = chi.n();
    let table = GradedTable::build(n);
    let mults = chi_graded_multiplicities(chi, &table)?;
    let shift = i64::from(n) * i64::from(n) - i64::from(n);
    let mut acc = QLaurent::zero();
    for (i, m) in mults.into_iter().enumerate() {
        if !m.is_zero() {
            acc = acc.add(&QLaurent::monomial(shift - i as i64, m));
        }
    }
    Ok(acc)
}

/// sum over maximal tori of chi(sigma_T), exactly, at an integer q.
pub fn tori_statistic(chi: &ClassFunction, q: u64) -> Result<Q, ToristatError> {
    Ok(tori_statistic_poly(chi)?.eval(q))
}

/// Normalized quadratic statistic q^{-(n^2-n)} sum_T (binom(X_1,2)-X_2)(T)
/// as a Laurent polynomial in q^{-1}: sum_i <wedge^2 Q^n, R_i> q^{-i}.
pub fn tori_quadratic_excess_poly(n: u32) -> Result<QLaurent, ToristatError> {
    assert!(n >= 2);
    let chi = CharacterPolynomial::quadratic_excess().to_class_function(n);
    let shift = i64::from(n) * i64::from(n) - i64::from(n);
    Ok(tori_statistic_poly(&chi)?.shift(-shift))
}

/// The normalized quadratic statistic at an integer q.
pub fn tori_quadratic_excess(q: u64, n: u32) -> Result<Q, ToristatError> {
    Ok(tori_quadratic_excess_poly(n)?.eval(q))
}

/// Closed-form count of irreducible maximal tori:
/// (q^{binom(n,2)} / n) (q - 1)(q^2 - 1) ... (q^{n-1} - 1),
/// as a polynomial in q with rational coefficients.
pub fn pnt_tori_formula_poly(n: u32) -> QLaurent {
    assert!(n >= 1);
    let mut acc = QLaurent::monomial(
        i64::from(n) * i64::from(n - 1) / 2,
        Q::new(Z::one(), Z::from(n)),
    );
    for j in 1..n {
        let factor = QLaurent::monomial(i64::from(j), Q::one()).sub(&QLaurent::one());
        acc = acc.mul(&factor);
    }
    acc
}

/// The closed-form irreducible-torus count at an integer q.
pub fn pnt_tori_formula(q: u64, n: u32) -> Z {
    let v = pnt_tori_formula_poly(n).eval(q);
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// The irreducible-torus count through the cohomological route: the
/// n-cycle indicator paired against the graded table.
pub fn pnt_tori_chi1(q: u64, n: u32) -> Result<Q, ToristatError> {
    let chi = ClassFunction::chi_k(n, 1);
    tori_statistic(&chi, q)
}

/// Brute-force enumeration of the maximal tori in GL_n(F_q) for n in
/// {2, 3}: Frobenius-stable unordered sets of n independent lines over
/// F_{q^{lcm(1..n)}}, keyed by the cycle type of the Frobenius permutation
/// of the lines. Lines are normalized projectively (first nonzero
/// coordinate 1) and orbits computed by repeated Frobenius.
pub fn tori_bruteforce(q: u64, n: u32) -> Result<BTreeMap<CycleType, u64>, ToristatError> {
    if n != 2 && n != 3 {
        return Err(ToristatError::Unsupported(n));
    }
    let (p, e) = factor_prime_power(q).ok_or(ToristatError::NotPrimePower(q))?;
    let m: u32 = if n == 2 { 2 } else { 6 }; // lcm(1..n)
    let big = ffpoly::make_field(p, e * m)?;

    // subfield F_{q^d} inside the big field: fixed points of x -> x^{q^d}
    let subfield = |d: u32| -> Vec<Fq> {
        let qd = q.pow(d);
        big.elements()
            .filter(|&x| big.pow_elem(x, qd) == x)
            .collect()
    };

    // orbits[d - 1]: representatives (lexicographically least member) of
    // Frobenius orbits of exact size d, each expanded to its d lines
    let mut orbits: Vec<Vec<Vec<Vec<Fq>>>> = Vec::new();
    for d in 1..=n {
        let elems = subfield(d);
        let mut reps: Vec<Vec<Vec<Fq>>> = Vec::new();
        for line in normalized_lines(n, &elems) {
            let mut orbit = vec![line.clone()];
            loop {
                let prev = orbit.last().unwrap();
                let next: Vec<Fq> = prev.iter().map(|&x| ext_frobenius(&big, x, q)).collect();
                if next == line {
                    break;
                }
                orbit.push(next);
            }
            if orbit.len() as u32 != d {
                continue;
            }
            if orbit.iter().min() != Some(&line) {
                continue;
            }
            reps.push(orbit);
        }
        orbits.push(reps);
    }

    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for lambda in enumerate_partitions(n) {
        // multiplicity of each orbit size in this torus type
        let mut size_mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &part in lambda.parts() {
            *size_mult.entry(part).or_insert(0) += 1;
        }
        // choose distinct orbits per size, unordered within a size
        let choices_per_size: Vec<Vec<Vec<usize>>> = size_mult
            .iter()
            .map(|(&size, &mult)| combinations(orbits[size as usize - 1].len(), mult as usize))
            .collect();
        let mut total = 0u64;
        cartesian(&choices_per_size, &mut |selection| {
            let mut lines: Vec<&Vec<Fq>> = Vec::with_capacity(n as usize);
            for ((&size, _), combo) in size_mult.iter().zip(selection) {
                for &orbit_idx in combo {
                    for line in &orbits[size as usize - 1][orbit_idx] {
                        lines.push(line);
                    }
                }
            }
            if det_nonzero(&big, &lines) {
                total += 1;
            }
        });
        counts.insert(lambda.cycle_type(), total);
    }
    Ok(counts)
}

/// Normalized projective representatives over the given coordinate set:
/// zeros, then a leading 1, then arbitrary coordinates.
fn normalized_lines(n: u32, elems: &[Fq]) -> Vec<Vec<Fq>> {
    let mut out = Vec::new();
    for lead in 0..n as usize {
        let tail = n as usize - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut line = vec![Fq::ZERO; lead];
            line.push(Fq::ONE);
            for &i in &idx {
                line.push(elems[i]);
            }
            out.push(line);
            // odometer
            let mut pos = 0;
            while pos < tail {
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if tail == 0 || pos == tail {
                break;
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

fn cartesian<'a>(choices: &'a [Vec<Vec<usize>>], visit: &mut impl FnMut(Vec<&'a Vec<usize>>)) {
    fn go<'a>(
        choices: &'a [Vec<Vec<usize>>],
        at: usize,
        current: &mut Vec<&'a Vec<usize>>,
        visit: &mut impl FnMut(Vec<&'a Vec<usize>>),
    ) {
        if at == choices.len() {
            visit(current.clone());
            return;
        }
        for combo in &choices[at] {
            current.push(combo);
            go(choices, at + 1, current, visit);
            current.pop();
        }
    }
    go(choices, 0, &mut Vec::new(), visit);
}

/// Nonvanishing of the determinant of the matrix whose rows are the line
/// representatives, by Gaussian elimination in the extension field.
fn det_nonzero(ctx: &FqContext, rows: &[&Vec<Fq>]) -> bool {
    let n = rows.len();
    let mut m: Vec<Vec<Fq>> = rows.iter().map(|r| (*r).clone()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != Fq::ZERO);
        let pivot = match pivot {
            Some(p) => p,
            None => return false,
        };
        m.swap(col, pivot);
        let inv = ctx.inv(m[col][col]);
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col] == Fq::ZERO {
                continue;
            }
            let factor = ctx.mul(row[col], inv);
            for (c, &pv) in pivot_row.iter().enumerate().skip(col) {
                let sub = ctx.mul(factor, pv);
                row[c] = ctx.sub(row[c], sub);
            }
        }
    }
    true
}
