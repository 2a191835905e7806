//! Formal series in t = q^{-s} whose coefficients are Laurent polynomials in
//! a symbolic q with exact rational coefficients. Covers the zeta function of
//! F_q[T], the L-function of squarefree polynomials, the weighted
//! L-functions for the linear-factor and quadratic statistics, stable
//! coefficient extraction, and residue ratios at s = 1.
//!
//! With t = q^{-s}:
//!   zeta(s) = 1/(1 - q t)
//!   L(s)    = zeta(s)/zeta(2s) = (1 - q t^2)/(1 - q t)
//!   L(X_1, s)          = q t/(1 + t) * L(s)
//!   L(X_2, s)          = (q^2 - q)/2 * t^2/(1 + t^2) * L(s)
//!   L(binom(X_1,2), s) = (q^2 - q)/2 * t^2/(1 + t)^2 * L(s)

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::{Q, Z};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LseriesError {
    #[error("series coefficient has not stabilized at t-degree {0}")]
    NotStabilized(u32),
    #[error("denominator constant term is not invertible")]
    NonUnitDenominator,
    #[error("stable coefficient at q-exponent -{0} is not an integer")]
    NonIntegerCoefficient(u32),
}

/// Sparse Laurent polynomial in q with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QLaurent {
    coeffs: BTreeMap<i64, Q>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Q::one())
    }

    /// c * q^exp.
    pub fn monomial(exp: i64, c: Q) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QLaurent { coeffs }
    }

    pub fn from_int(v: i64) -> Self {
        Self::monomial(0, crate::q_int(v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> Q {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    /// (exponent, coefficient) pairs, ascending by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            let entry = out.coeffs.entry(e).or_insert_with(Q::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(&e);
            }
        }
        out
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &QLaurent) -> QLaurent {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                let entry = out.coeffs.entry(ea + eb).or_insert_with(Q::zero);
                *entry += ca * cb;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &Q) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by q^shift.
    pub fn shift(&self, shift: i64) -> QLaurent {
        QLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Inverse of a single-term Laurent polynomial.
    pub fn invert_monomial(&self) -> Option<QLaurent> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&e, c) = self.coeffs.iter().next().unwrap();
        Some(QLaurent::monomial(-e, Q::one() / c.clone()))
    }

    /// Evaluates at an integer q.
    pub fn eval(&self, q: u64) -> Q {
        let mut total = Q::zero();
        for (&e, c) in &self.coeffs {
            total += c * crate::q_pow(q, e);
        }
        total
    }

    /// JSON object mapping q-exponents (as decimal strings) to `a/b` values,
    /// keys in descending exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (&e, c) in self.coeffs.iter().rev() {
            map.insert(e.to_string(), serde_json::Value::String(crate::q_display(c)));
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", crate::q_display(&mag))?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A rational function in t with QLaurent coefficients, expanded on demand
/// as a power series in t; the expansion is cached.
#[derive(Debug, Clone)]
pub struct RationalSeriesT {
    num: Vec<QLaurent>,
    den: Vec<QLaurent>,
    expansion: RefCell<Vec<QLaurent>>,
}

impl RationalSeriesT {
    /// num and den are dense in t, lowest degree first. The constant term of
    /// den must be an invertible (single-term) Laurent polynomial.
    pub fn new(num: Vec<QLaurent>, den: Vec<QLaurent>) -> Result<Self, LseriesError> {
        let unit = den
            .first()
            .and_then(QLaurent::invert_monomial)
            .is_some();
        if !unit {
            return Err(LseriesError::NonUnitDenominator);
        }
        Ok(RationalSeriesT {
            num,
            den,
            expansion: RefCell::new(Vec::new()),
        })
    }

    pub fn numerator(&self) -> &[QLaurent] {
        &self.num
    }

    pub fn denominator(&self) -> &[QLaurent] {
        &self.den
    }

    /// The coefficient of t^n in the power-series expansion.
    pub fn coefficient(&self, n: u32) -> QLaurent {
        self.expand_to(n);
        self.expansion.borrow()[n as usize].clone()
    }

    fn expand_to(&self, n: u32) {
        let mut cache = self.expansion.borrow_mut();
        let d0_inv = self.den[0].invert_monomial().expect("checked at construction");
        while cache.len() <= n as usize {
            let k = cache.len();
            let mut acc = self.num.get(k).cloned().unwrap_or_else(QLaurent::zero);
            for j in 1..=k.min(self.den.len() - 1) {
                acc = acc.sub(&self.den[j].mul(&cache[k - j]));
            }
            cache.push(acc.mul(&d0_inv));
        }
    }

    /// Multiplies the expansion back by the denominator; returns the
    /// reconstructed numerator coefficients of t^0..t^upto.
    pub fn remultiply(&self, upto: u32) -> Vec<QLaurent> {
        self.expand_to(upto);
        let cache = self.expansion.borrow();
        (0..=upto as usize)
            .map(|k| {
                let mut acc = QLaurent::zero();
                for j in 0..=k.min(self.den.len() - 1) {
                    acc = acc.add(&self.den[j].mul(&cache[k - j]));
                }
                acc
            })
            .collect()
    }
}

/// zeta(s) = 1/(1 - q t): the coefficient of t^n is q^n.
pub fn zeta() -> RationalSeriesT {
    let q = QLaurent::monomial(1, Q::one());
    RationalSeriesT::new(vec![QLaurent::one()], vec![QLaurent::one(), q.neg()])
        .expect("unit denominator")
}

/// L(s) = zeta(s)/zeta(2s) = (1 - q t^2)/(1 - q t): the coefficient of t^n
/// is the number of monic squarefree polynomials of degree n.
pub fn conf_l() -> RationalSeriesT {
    let q = QLaurent::monomial(1, Q::one());
    RationalSeriesT::new(
        vec![QLaurent::one(), QLaurent::zero(), q.neg()],
        vec![QLaurent::one(), q.neg()],
    )
    .expect("unit denominator")
}

/// The weighted statistics with closed-form L-functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightTag {
    /// Number of linear factors.
    X1,
    /// Number of irreducible quadratic factors.
    X2,
    /// Number of reducible quadratic factors binom(X_1, 2).
    BinomX1Choose2,
    /// Quadratic excess binom(X_1, 2) - X_2.
    PQuad,
}

/// Prefactor L(tag, s)/L(s) as a rational function of t with QLaurent
/// coefficients: (numerator, denominator), dense in t.
fn prefactor(tag: WeightTag) -> (Vec<QLaurent>, Vec<QLaurent>) {
    let q = QLaurent::monomial(1, Q::one());
    let half_q2_minus_q = q.mul(&q).sub(&q).scale(&crate::q_ratio(1, 2));
    match tag {
        WeightTag::X1 => (
            // q t / (1 + t)
            vec![QLaurent::zero(), q],
            vec![QLaurent::one(), QLaurent::one()],
        ),
        WeightTag::X2 => (
            // (q^2 - q)/2 * t^2 / (1 + t^2)
            vec![QLaurent::zero(), QLaurent::zero(), half_q2_minus_q],
            vec![QLaurent::one(), QLaurent::zero(), QLaurent::one()],
        ),
        WeightTag::BinomX1Choose2 => (
            // (q^2 - q)/2 * t^2 / (1 + t)^2
            vec![QLaurent::zero(), QLaurent::zero(), half_q2_minus_q],
            vec![QLaurent::one(), QLaurent::from_int(2), QLaurent::one()],
        ),
        WeightTag::PQuad => {
            let (bn, bd) = prefactor(WeightTag::BinomX1Choose2);
            let (xn, xd) = prefactor(WeightTag::X2);
            // bn/bd - xn/xd = (bn*xd - xn*bd) / (bd*xd)
            let num = tpoly_sub(&tpoly_mul(&bn, &xd), &tpoly_mul(&xn, &bd));
            let den = tpoly_mul(&bd, &xd);
            (num, den)
        }
    }
}

fn tpoly_mul(a: &[QLaurent], b: &[QLaurent]) -> Vec<QLaurent> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QLaurent::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn tpoly_sub(a: &[QLaurent], b: &[QLaurent]) -> Vec<QLaurent> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), QLaurent::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].sub(y);
    }
    out
}

/// The weighted L-function L(tag, s) = prefactor(tag) * L(s).
pub fn weighted_l(tag: WeightTag) -> RationalSeriesT {
    let (pn, pd) = prefactor(tag);
    let q = QLaurent::monomial(1, Q::one());
    let l_num = vec![QLaurent::one(), QLaurent::zero(), q.neg()];
    let l_den = vec![QLaurent::one(), q.neg()];
    RationalSeriesT::new(tpoly_mul(&pn, &l_num), tpoly_mul(&pd, &l_den))
        .expect("unit denominator")
}

/// Stabilized coefficients of [t^n] L(tag, s) / q^n: entry i holds
/// a_i = (-1)^i * (coefficient of q^{-i}), for i = 0..=i_max, taken at
/// n = 2 * i_max + 4 after asserting the window agrees with n + 1.
pub fn stable_coefficients(tag: WeightTag, i_max: u32) -> Result<Vec<Z>, LseriesError> {
    let series = weighted_l(tag);
    let n = 2 * i_max + 4;
    let at_n = series.coefficient(n).shift(-(n as i64));
    let at_n1 = series.coefficient(n + 1).shift(-(n as i64) - 1);
    let mut out = Vec::with_capacity(i_max as usize + 1);
    for i in 0..=i_max {
        let c_n = at_n.coefficient(-(i as i64));
        let c_n1 = at_n1.coefficient(-(i as i64));
        if c_n != c_n1 {
            return Err(LseriesError::NotStabilized(i));
        }
        let signed = if i % 2 == 0 { c_n } else { -c_n };
        if !signed.is_integer() {
            return Err(LseriesError::NonIntegerCoefficient(i));
        }
        out.push(signed.to_integer());
    }
    Ok(out)
}

/// lim_{s -> 1} L(tag, s)/L(s) as an exact rational function of q, returned
/// as a (numerator, denominator) pair of Laurent polynomials: the prefactor
/// evaluated at t = q^{-1}.
pub fn residue_ratio(tag: WeightTag) -> (QLaurent, QLaurent) {
    let (pn, pd) = prefactor(tag);
    (eval_at_inverse_q(&pn), eval_at_inverse_q(&pd))
}

fn eval_at_inverse_q(poly: &[QLaurent]) -> QLaurent {
    let mut acc = QLaurent::zero();
    for (k, c) in poly.iter().enumerate() {
        acc = acc.add(&c.shift(-(k as i64)));
    }
    acc
}

/// Equality of two rational functions given as (num, den) pairs, by
/// cross-multiplication.
pub fn ratio_eq(a: &(QLaurent, QLaurent), b: &(QLaurent, QLaurent)) -> bool {
    a.0.mul(&b.1) == b.0.mul(&a.1)
}
