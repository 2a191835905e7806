//! Both sides of the twisted Grothendieck–Lefschetz identity for monic
//! squarefree polynomials over F_q:
//!
//!   sum_{f in Conf_n(F_q)} chi(sigma_f)
//!     = sum_i (-1)^i q^{n-i} <chi, H^i(P_n; Q)>
//!
//! The left side is a brute-force weighted count over the enumeration
//! stream; the right side comes from `braidcoh`. Also here: expected-value
//! statistics, recovery of multiplicities from counts over several primes
//! (exact linear solve), the prime-counting suite (irreducible counts,
//! no-small-factor counts vs. no-small-cycle proportions), distinct-degree
//! counts, and the type-B demo count.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::braidcoh::{BraidcohError, MultiplicityCache};
use crate::ffpoly::{
    self, degree_profile, is_squarefree, sigma_cycle_type, FfpolyError, FqContext, FqPoly,
};
use crate::lseries::QLaurent;
use crate::symcomb::{enumerate_partitions, z_mu, ClassFunction, CycleType, SymcombError};
use crate::{q_display, q_pow, Q, Z};

#[derive(Debug, Error)]
pub enum GlcountError {
    #[error("enumeration of {needed} polynomials exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("operation requires odd characteristic")]
    CharTwo,
    #[error("need at least {0} distinct prime powers, got {1}")]
    NotEnoughPoints(usize, usize),
    #[error(transparent)]
    Ffpoly(#[from] FfpolyError),
    #[error(transparent)]
    Symcomb(#[from] SymcombError),
    #[error(transparent)]
    Braidcoh(#[from] BraidcohError),
}

/// Default enumeration budget: refuse to enumerate more items than this.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

fn check_budget(ctx: &FqContext, n: u32, budget: u64) -> Result<u128, GlcountError> {
    let needed = ffpoly::monic_count(ctx, n);
    if needed > u128::from(budget) {
        return Err(GlcountError::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Counts of squarefree degree-n polynomials by Frobenius cycle type. The
/// fold is chunk-partitioned; with `jobs > 1` chunks run on a local thread
/// pool and are merged by commutative integer addition, so the result is
/// identical for every chunking and parallelism degree.
pub fn profile_distribution(
    ctx: &FqContext,
    n: u32,
    budget: u64,
    jobs: usize,
) -> Result<BTreeMap<CycleType, u64>, GlcountError> {
    let total = check_budget(ctx, n, budget)?;
    let fold_chunk = |start: u128, end: u128| -> Result<BTreeMap<CycleType, u64>, GlcountError> {
        ffpoly::fold_monic_range(
            ctx,
            n,
            start,
            end,
            Ok(BTreeMap::new()),
            |acc: Result<BTreeMap<CycleType, u64>, GlcountError>, f: &FqPoly| {
                let mut map = acc?;
                if is_squarefree(ctx, f)? {
                    let profile = degree_profile(ctx, f)?;
                    *map.entry(sigma_cycle_type(&profile)).or_insert(0) += 1;
                }
                Ok(map)
            },
        )
    };
    if jobs <= 1 {
        return fold_chunk(0, total);
    }
    let chunk_count = (jobs as u128 * 8).min(total.max(1));
    let bounds: Vec<(u128, u128)> = (0..chunk_count)
        .map(|c| {
            (
                total * c / chunk_count,
                total * (c + 1) / chunk_count,
            )
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let partials: Vec<Result<BTreeMap<CycleType, u64>, GlcountError>> = pool.install(|| {
        bounds
            .par_iter()
            .map(|&(start, end)| fold_chunk(start, end))
            .collect()
    });
    let mut merged = BTreeMap::new();
    for partial in partials {
        for (mu, count) in partial? {
            *merged.entry(mu).or_insert(0) += count;
        }
    }
    Ok(merged)
}

/// Brute-force weighted count: sum of chi(sigma_f) over monic squarefree
/// degree-n polynomials, with n taken from the class function.
pub fn lhs_conf_sum(
    chi: &ClassFunction,
    ctx: &FqContext,
    budget: u64,
    jobs: usize,
) -> Result<Q, GlcountError> {
    let dist = profile_distribution(ctx, chi.n(), budget, jobs)?;
    Ok(weighted_total(chi, &dist))
}

/// Applies a class function to a precomputed profile distribution.
pub fn weighted_total(chi: &ClassFunction, dist: &BTreeMap<CycleType, u64>) -> Q {
    let mut total = Q::zero();
    for (mu, &count) in dist {
        total += chi.value(mu) * crate::q_int(count as i64);
    }
    total
}

/// Cohomological side as a Laurent polynomial in symbolic q:
/// sum_i (-1)^i q^{n-i} <chi, H^i(P_n)>.
pub fn rhs_conf_sum_poly(
    chi: &ClassFunction,
    cache: &mut MultiplicityCache,
) -> Result<QLaurent, GlcountError> {
    let n = chi.n();
    let mut acc = QLaurent::zero();
    for i in 0..=n {
        let mult = cache.ls_multiplicity(chi, i)?;
        if mult.is_zero() {
            continue;
        }
        let signed = if i % 2 == 0 { mult } else { -mult };
        acc = acc.add(&QLaurent::monomial(i64::from(n) - i64::from(i), signed));
    }
    Ok(acc)
}

/// Cohomological side evaluated at an integer q.
pub fn rhs_conf_sum(
    chi: &ClassFunction,
    q: u64,
    cache: &mut MultiplicityCache,
) -> Result<Q, GlcountError> {
    Ok(rhs_conf_sum_poly(chi, cache)?.eval(q))
}

/// The two sides of the identity at one (chi, q, n), with the exact
/// equality flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub q: u64,
    pub n: u32,
    pub chi_id: String,
    pub lhs: Q,
    pub rhs: Q,
    pub matches: bool,
}

impl CountReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q,
            "n": self.n,
            "chi_id": self.chi_id,
            "lhs": q_display(&self.lhs),
            "rhs": q_display(&self.rhs),
            "match": self.matches,
        })
    }
}

/// Computes both sides and reports exact equality.
pub fn verify_gl(
    chi: &ClassFunction,
    ctx: &FqContext,
    budget: u64,
    jobs: usize,
    cache: &mut MultiplicityCache,
) -> Result<CountReport, GlcountError> {
    let lhs = lhs_conf_sum(chi, ctx, budget, jobs)?;
    let rhs = rhs_conf_sum(chi, ctx.q(), cache)?;
    Ok(CountReport {
        q: ctx.q(),
        n: chi.n(),
        chi_id: chi.canonical_id(),
        matches: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Average of the statistic over Conf_n(F_q): lhs / (q^n - q^{n-1}).
pub fn expected_statistic(
    chi: &ClassFunction,
    ctx: &FqContext,
    budget: u64,
    jobs: usize,
) -> Result<Q, GlcountError> {
    let n = chi.n();
    assert!(n >= 2, "expectation needs n >= 2 so the count is q^n - q^{{n-1}}");
    let lhs = lhs_conf_sum(chi, ctx, budget, jobs)?;
    let count = q_pow(ctx.q(), i64::from(n)) - q_pow(ctx.q(), i64::from(n) - 1);
    Ok(lhs / count)
}

/// Recovers a_0..a_n from brute-force counts over at least n+1 distinct
/// prime powers, solving sum_i (-1)^i a_i q^{n-i} = lhs(q) exactly. Any
/// extra points are used as consistency checks.
pub fn fit_multiplicities(
    chi: &ClassFunction,
    qs: &[u64],
    budget: u64,
    jobs: usize,
) -> Result<Vec<Q>, GlcountError> {
    let n = chi.n() as usize;
    if qs.len() < n + 1 {
        return Err(GlcountError::NotEnoughPoints(n + 1, qs.len()));
    }
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let ctx = field_for_prime_power(q)?;
        let lhs = lhs_conf_sum(chi, &ctx, budget, jobs)?;
        let mut row = Vec::with_capacity(n + 2);
        for i in 0..=n {
            let coeff = q_pow(q, (n - i) as i64);
            row.push(if i % 2 == 0 { coeff } else { -coeff });
        }
        row.push(lhs);
        rows.push(row);
    }
    let solution = solve_exact(&mut rows[..n + 1].to_vec())?;
    // remaining rows must be consistent with the solution
    for row in &rows[n + 1..] {
        let mut acc = Q::zero();
        for (i, a) in solution.iter().enumerate() {
            acc += &row[i] * a;
        }
        if acc != row[n + 1] {
            return Err(GlcountError::SingularSystem);
        }
    }
    Ok(solution)
}

/// Builds F_q for a prime power q.
pub fn field_for_prime_power(q: u64) -> Result<FqContext, GlcountError> {
    let (p, e) = factor_prime_power(q).ok_or(FfpolyError::NotPrime(q))?;
    Ok(ffpoly::make_field(p, e)?)
}

/// Splits q into (p, e) with p prime, or None when q is not a prime power.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    for d in 2..=q {
        if d * d > q {
            break;
        }
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    let mut e = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Some((p, e))
    } else {
        None
    }
}

fn solve_exact(rows: &mut [Vec<Q>]) -> Result<Vec<Q>, GlcountError> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(GlcountError::SingularSystem)?;
        rows.swap(col, pivot);
        let inv = Q::one() / rows[col][col].clone();
        for v in rows[col][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                let delta = &factor * pv;
                row[c] -= delta;
            }
        }
    }
    Ok(rows.iter().map(|r| r[n].clone()).collect())
}

/// Number-theoretic Moebius function.
pub fn moebius(n: u32) -> i32 {
    assert!(n >= 1);
    let mut m = n;
    let mut factors = 0;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed-form count of monic irreducible polynomials of degree n:
/// (1/n) sum_{l | n} mu(n/l) q^l.
pub fn irreducible_count_formula(q: u64, n: u32) -> Z {
    let mut total = Z::zero();
    for l in 1..=n {
        if !n.is_multiple_of(l) {
            continue;
        }
        total += Z::from(moebius(n / l)) * crate::z_pow(q, l);
    }
    let n_z = Z::from(n);
    debug_assert!((&total % &n_z).is_zero());
    total / n_z
}

/// Brute-force count of monic irreducible polynomials of degree n: the
/// chi_1-weighted count (the only squarefree f with an n-cycle profile are
/// the irreducible ones).
pub fn irreducible_count_brute(
    ctx: &FqContext,
    n: u32,
    budget: u64,
    jobs: usize,
) -> Result<u64, GlcountError> {
    let dist = profile_distribution(ctx, n, budget, jobs)?;
    let target = CycleType::from_parts(&[n]);
    Ok(dist.get(&target).copied().unwrap_or(0))
}

/// Phi(n, k): monic squarefree degree-n polynomials with no irreducible
/// factor of degree < n/k.
pub fn phi_nk(ctx: &FqContext, n: u32, k: u32, budget: u64, jobs: usize) -> Result<u64, GlcountError> {
    assert!(k >= 1);
    let dist = profile_distribution(ctx, n, budget, jobs)?;
    Ok(dist
        .iter()
        .filter(|(mu, _)| mu.iter_nonzero().all(|(len, _)| len * k >= n))
        .map(|(_, &c)| c)
        .sum())
}

/// pi(n, k): proportion of permutations in S_n with no cycle shorter than
/// n/k, as sum of 1/z_mu over cycle types with all parts >= n/k.
pub fn pi_nk(n: u32, k: u32) -> Q {
    assert!(k >= 1);
    let mut total = Q::zero();
    for lambda in enumerate_partitions(n) {
        if lambda.parts().iter().all(|&p| p * k >= n) {
            total += Q::new(Z::one(), Z::from(z_mu(&lambda.cycle_type())));
        }
    }
    total
}

/// The explicit error bound asserted for |Phi(n,k) - pi(n,k) q^n|: the
/// nonzero contributions start at i = ceil(n/2k) by the vanishing window,
/// each is at most p(n) in absolute value, and the geometric tail sums to
/// q^{n - ceil(n/2k)} * q/(q-1); the factor 2 absorbs the alternation.
pub fn phi_pi_bound(q: u64, n: u32, k: u32) -> Q {
    let p_n = crate::symcomb::partition_count(n);
    let i0 = n.div_ceil(2 * k);
    crate::q_int(2)
        * crate::q_int(p_n as i64)
        * q_pow(q, i64::from(n) - i64::from(i0))
        * Q::new(Z::from(q), Z::from(q - 1))
}

/// D_q(n): monic degree-n polynomials whose irreducible factors have
/// pairwise distinct degrees (such polynomials are automatically
/// squarefree).
pub fn distinct_degree_count(
    ctx: &FqContext,
    n: u32,
    budget: u64,
    jobs: usize,
) -> Result<u64, GlcountError> {
    let dist = profile_distribution(ctx, n, budget, jobs)?;
    Ok(dist
        .iter()
        .filter(|(mu, _)| mu.has_distinct_lengths())
        .map(|(_, &c)| c)
        .sum())
}

/// Count of monic squarefree degree-n f with f(0) != 0 and
/// gcd(f(T), f(-T)) constant: the polynomials whose roots avoid 0 and are
/// disjoint from their negatives (type-B braid arrangement points).
/// Requires odd characteristic.
pub fn bn_type_count(ctx: &FqContext, n: u32, budget: u64) -> Result<u64, GlcountError> {
    if ctx.p() == 2 {
        return Err(GlcountError::CharTwo);
    }
    let total = check_budget(ctx, n, budget)?;
    let init: Result<u64, GlcountError> = Ok(0);
    ffpoly::fold_monic_range(ctx, n, 0, total, init, |acc, f| {
        let count = acc?;
        if f.coeff(0) == ffpoly::Fq::ZERO {
            return Ok(count);
        }
        if !is_squarefree(ctx, f)? {
            return Ok(count);
        }
        let reflected = f.reflect(ctx);
        let g = f.gcd(ctx, &reflected);
        if g.degree() == Some(0) {
            Ok(count + 1)
        } else {
            Ok(count)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::make_field;
    use crate::symcomb::CharacterPolynomial;
    use crate::{q_int, q_ratio};
    use num_traits::Signed;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn squarefree_totals_via_trivial_weight() {
        let f3 = make_field(3, 1).unwrap();
        let chi = ClassFunction::trivial(3);
        assert_eq!(lhs_conf_sum(&chi, &f3, B, 1).unwrap(), q_int(18));
        let f11 = make_field(11, 1).unwrap();
        assert_eq!(
            lhs_conf_sum(&ClassFunction::trivial(3), &f11, B, 1).unwrap(),
            q_int(1210)
        );
    }

    #[test]
    fn linear_factor_totals() {
        let x1_5 = CharacterPolynomial::x1().to_class_function(5);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(lhs_conf_sum(&x1_5, &f3, B, 1).unwrap(), q_int(120));
        let f11 = make_field(11, 1).unwrap();
        assert_eq!(lhs_conf_sum(&x1_5, &f11, B, 1).unwrap(), q_int(134200));
    }

    #[test]
    fn rhs_polynomials() {
        let mut cache = MultiplicityCache::new();
        // trivial weight: q^n - q^{n-1}
        for n in 2..=6u32 {
            let chi = ClassFunction::trivial(n);
            let poly = rhs_conf_sum_poly(&chi, &mut cache).unwrap();
            let want = QLaurent::monomial(n as i64, Q::one())
                .sub(&QLaurent::monomial(n as i64 - 1, Q::one()));
            assert_eq!(poly, want, "n = {n}");
        }
        // X_1 at n = 5: q^5 - 2q^4 + 2q^3 - 2q^2 + q
        let chi = CharacterPolynomial::x1().to_class_function(5);
        let poly = rhs_conf_sum_poly(&chi, &mut cache).unwrap();
        assert_eq!(poly.eval(3), q_int(120));
        assert_eq!(poly.eval(11), q_int(134200));
        // quadratic excess at n = 5 evaluated at q=3: -12
        let chi = CharacterPolynomial::quadratic_excess().to_class_function(5);
        let poly = rhs_conf_sum_poly(&chi, &mut cache).unwrap();
        assert_eq!(poly.eval(3), q_int(-12));
    }

    #[test]
    fn verify_gl_matches() {
        let mut cache = MultiplicityCache::new();
        let f3 = make_field(3, 1).unwrap();
        let report = verify_gl(
            &CharacterPolynomial::x1().to_class_function(5),
            &f3,
            B,
            1,
            &mut cache,
        )
        .unwrap();
        assert!(report.matches);
        assert_eq!(report.lhs, q_int(120));
        let json = report.to_json();
        assert_eq!(json["lhs"], "120");
        assert_eq!(json["match"], true);

        // sign statistic sums to zero for n in 2..6 (Moebius average)
        for n in 2..=6u32 {
            let report = verify_gl(&ClassFunction::sign(n), &f3, B, 1, &mut cache).unwrap();
            assert!(report.matches, "n = {n}");
            assert_eq!(report.lhs, Q::zero(), "n = {n}");
        }

        // quadratic excess at (F_3, 5): both sides equal -12
        let report = verify_gl(
            &CharacterPolynomial::quadratic_excess().to_class_function(5),
            &f3,
            B,
            1,
            &mut cache,
        )
        .unwrap();
        assert!(report.matches);
        assert_eq!(report.lhs, q_int(-12));
    }

    #[test]
    fn gl_identity_small_grid() {
        let mut cache = MultiplicityCache::new();
        for q in [2u64, 3, 4] {
            let ctx = field_for_prime_power(q).unwrap();
            for n in 2..=4u32 {
                let chis = vec![
                    ClassFunction::trivial(n),
                    CharacterPolynomial::x1().to_class_function(n),
                    ClassFunction::sign(n),
                    ClassFunction::chi_distinct(n),
                ];
                for chi in chis {
                    let report = verify_gl(&chi, &ctx, B, 1, &mut cache).unwrap();
                    assert!(report.matches, "q = {q}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn expected_linear_factors() {
        // 20/27 at (F_3, 5) and 1220/1331 at (F_11, 5)
        let f3 = make_field(3, 1).unwrap();
        let chi = CharacterPolynomial::x1().to_class_function(5);
        assert_eq!(expected_statistic(&chi, &f3, B, 1).unwrap(), q_ratio(20, 27));
        let f11 = make_field(11, 1).unwrap();
        assert_eq!(
            expected_statistic(&chi, &f11, B, 1).unwrap(),
            q_ratio(1220, 1331)
        );
        // alternating closed form 1 - 1/q + ... +- 1/q^{n-2}
        for n in 3..=5u32 {
            let chi = CharacterPolynomial::x1().to_class_function(n);
            let got = expected_statistic(&chi, &f3, B, 1).unwrap();
            let mut want = Q::zero();
            for j in 0..=n - 2 {
                let term = q_pow(3, -(j as i64));
                want += if j % 2 == 0 { term } else { -term };
            }
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn fit_recovers_multiplicities() {
        // trivial statistic at n = 4 over 5 primes: a = (1,1,0,0,0)
        let chi = ClassFunction::trivial(4);
        let a = fit_multiplicities(&chi, &[2, 3, 5, 7, 11], B, 1).unwrap();
        let want: Vec<Q> = [1, 1, 0, 0, 0].iter().map(|&v| q_int(v)).collect();
        assert_eq!(a, want);
        // under-determined input is rejected
        assert!(matches!(
            fit_multiplicities(&chi, &[2, 3], B, 1),
            Err(GlcountError::NotEnoughPoints(5, 2))
        ));
    }

    #[test]
    fn fit_agrees_with_ls_multiplicity() {
        let mut cache = MultiplicityCache::new();
        for n in 2..=4u32 {
            let chi = CharacterPolynomial::x1().to_class_function(n);
            let qs: Vec<u64> = [2u64, 3, 4, 5, 7, 8, 9, 11][..(n as usize + 2)].to_vec();
            let fitted = fit_multiplicities(&chi, &qs, B, 1).unwrap();
            for (i, a) in fitted.iter().enumerate() {
                let direct = cache.ls_multiplicity(&chi, i as u32).unwrap();
                assert_eq!(a, &direct, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(8), Some((2, 3)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(7), Some((7, 1)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }

    #[test]
    fn moebius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(moebius(i as u32 + 1), w, "n = {}", i + 1);
        }
    }

    #[test]
    fn irreducible_counts_both_ways() {
        assert_eq!(irreducible_count_formula(2, 2), Z::from(1));
        assert_eq!(irreducible_count_formula(3, 3), Z::from(8));
        assert_eq!(irreducible_count_formula(5, 1), Z::from(5));
        for q in [2u64, 3] {
            let ctx = make_field(q, 1).unwrap();
            for n in 1..=6u32 {
                let brute = irreducible_count_brute(&ctx, n, B, 1).unwrap();
                assert_eq!(
                    Z::from(brute),
                    irreducible_count_formula(q, n),
                    "q = {q}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn phi_and_pi() {
        // Phi(n, 1) counts irreducibles; pi(n, 1) = 1/n
        let f3 = make_field(3, 1).unwrap();
        for n in 2..=5u32 {
            assert_eq!(
                phi_nk(&f3, n, 1, B, 1).unwrap(),
                irreducible_count_brute(&f3, n, B, 1).unwrap()
            );
            assert_eq!(pi_nk(n, 1), Q::new(Z::one(), Z::from(n)));
        }
        // bound check on a small grid
        for q in [2u64, 3] {
            let ctx = make_field(q, 1).unwrap();
            for n in 4..=6u32 {
                for k in 1..=2u32 {
                    let phi = q_int(phi_nk(&ctx, n, k, B, 1).unwrap() as i64);
                    let diff = phi - pi_nk(n, k) * q_pow(q, n as i64);
                    let abs = if diff.is_negative() { -diff } else { diff };
                    assert!(
                        abs <= phi_pi_bound(q, n, k),
                        "q = {q}, n = {n}, k = {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn distinct_degree_counts() {
        let f3 = make_field(3, 1).unwrap();
        // D_q(1) = q
        assert_eq!(distinct_degree_count(&f3, 1, B, 1).unwrap(), 3);
        // D_q(2): only the irreducible quadratics (degrees 1+1 collide)
        assert_eq!(distinct_degree_count(&f3, 2, B, 1).unwrap(), 3);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(distinct_degree_count(&f2, 2, B, 1).unwrap(), 1);
        // the Grothendieck-Lefschetz specialization: D_q(n) equals the
        // cohomological sum for chi_distinct
        let mut cache = MultiplicityCache::new();
        for q in [2u64, 3] {
            let ctx = make_field(q, 1).unwrap();
            for n in 1..=5u32 {
                let d = distinct_degree_count(&ctx, n, B, 1).unwrap();
                let rhs = rhs_conf_sum(&ClassFunction::chi_distinct(n), q, &mut cache).unwrap();
                assert_eq!(q_int(d as i64), rhs, "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn bn_type_counts() {
        // n = 1: the only excluded root is 0
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(bn_type_count(&f3, 1, B).unwrap(), 2);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(bn_type_count(&f5, 1, B).unwrap(), 4);
        // characteristic 2 is rejected
        let f2 = make_field(2, 1).unwrap();
        assert!(matches!(
            bn_type_count(&f2, 2, B),
            Err(GlcountError::CharTwo)
        ));
        // n = 2 over F_3 by hand: squarefree quadratics with f(0) != 0 and
        // no pair of opposite roots: (T-1)(T+1) = T^2-1 excluded, (T-1)(T-2)
        // has roots {1, 2} = {1, -1} excluded too; irreducible quadratics
        // with nonzero constant term remain, plus nothing else. Over F_3 the
        // irreducible quadratics are T^2+1, T^2+T+2, T^2+2T+2; T^2+1 has
        // roots {i, -i}, a forbidden opposite pair. So the count is 2.
        assert_eq!(bn_type_count(&f3, 2, B).unwrap(), 2);
    }

    #[test]
    fn budget_guard_trips() {
        let f5 = make_field(5, 1).unwrap();
        let err = profile_distribution(&f5, 4, 100, 1).unwrap_err();
        assert!(matches!(err, GlcountError::BudgetExceeded { needed: 625, budget: 100 }));
    }

    #[test]
    fn parallel_fold_is_deterministic() {
        let f3 = make_field(3, 1).unwrap();
        let sequential = profile_distribution(&f3, 5, B, 1).unwrap();
        for jobs in [2usize, 3, 7] {
            let parallel = profile_distribution(&f3, 5, B, jobs).unwrap();
            assert_eq!(sequential, parallel, "jobs = {jobs}");
        }
    }

    #[test]
    fn power_saving_convergence() {
        // |q^{-n} lhs(P) - L| <= C q^{(deg P - n)/2}, squared to stay in Q.
        // C = 2 covers the whole tested grid; the largest observed ratio is
        // below 1.7 (attained at small n).
        use crate::lseries::{residue_ratio, WeightTag};
        let c_squared = q_int(4);
        for (poly, tag) in [
            (CharacterPolynomial::x1(), WeightTag::X1),
            (CharacterPolynomial::quadratic_excess(), WeightTag::PQuad),
        ] {
            let (rn, rd) = residue_ratio(tag);
            for q in [3u64, 5] {
                // L = residue ratio * (1 - 1/q), the n -> infinity limit of
                // q^{-n} sum_f P(f)
                let limit = rn.eval(q) / rd.eval(q) * (Q::one() - q_pow(q, -1));
                let ctx = make_field(q, 1).unwrap();
                for n in 4..=6u32 {
                    let chi = poly.to_class_function(n);
                    let lhs = lhs_conf_sum(&chi, &ctx, B, 1).unwrap();
                    let diff = lhs * q_pow(q, -(n as i64)) - &limit;
                    let bound_sq = &c_squared * q_pow(q, poly.degree() as i64 - n as i64);
                    assert!(
                        &diff * &diff <= bound_sq,
                        "P = {poly}, q = {q}, n = {n}: diff = {diff}"
                    );
                }
            }
        }
    }
}
