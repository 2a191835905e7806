//! Exact-arithmetic library for counting identities on two families:
//! monic squarefree polynomials over F_q, and maximal tori in GL_n(F_q).
//!
//! One side of each identity is a brute-force weighted point count; the
//! other side is a cohomology multiplicity computed from symmetric-group
//! combinatorics (induced characters of centralizers for the pure braid
//! group, major-index tableau counts for the coinvariant algebra, or a
//! formal L-series expansion). Everything is exact: `BigRational`
//! coefficients, cyclotomic sums certified rational by reduction mod a
//! cyclotomic polynomial, and no floating point anywhere.
//!
//! Module map:
//! - [`ffpoly`]: finite fields, monic-polynomial enumeration, squarefree
//!   testing, distinct-degree factorization.
//! - [`symcomb`]: partitions, cycle types, character polynomials,
//!   Murnaghan–Nakayama characters, standard Young tableaux.
//! - [`braidcoh`]: multiplicities in the cohomology of the pure braid
//!   group via the Lehrer–Solomon decomposition.
//! - [`glcount`]: both sides of the twisted Grothendieck–Lefschetz count
//!   for squarefree polynomials, plus fitting and prime-counting checks.
//! - [`toristat`]: maximal-tori statistics via the coinvariant algebra,
//!   with a brute-force torus enumerator for tiny n.
//! - [`lseries`]: formal series in t = q^{-s} with Laurent-polynomial
//!   coefficients in q; zeta, weighted L-functions, stable coefficients.

pub mod braidcoh;
pub mod ffpoly;
pub mod glcount;
pub mod lseries;
pub mod symcomb;
pub mod toristat;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact integer used throughout.
pub type Z = BigInt;
/// Exact rational used throughout.
pub type Q = BigRational;

/// `n` as an exact rational.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// `a/b` as an exact rational.
pub fn q_ratio(a: i64, b: i64) -> Q {
    Q::new(Z::from(a), Z::from(b))
}

/// `base^exp` as an exact integer.
pub fn z_pow(base: u64, exp: u32) -> Z {
    Z::from(base).pow(exp)
}

/// `base^exp` as an exact rational, allowing negative exponents.
pub fn q_pow(base: u64, exp: i64) -> Q {
    let mag = Z::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Q::from_integer(mag)
    } else {
        Q::new(Z::from(1), mag)
    }
}

/// Formats a rational as `a/b`, or just `a` when integral.
pub fn q_display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a/b` or `a` into a rational.
pub fn q_parse(s: &str) -> Option<Q> {
    let mut it = s.splitn(2, '/');
    let numer: Z = it.next()?.trim().parse().ok()?;
    let denom: Z = match it.next() {
        Some(d) => d.trim().parse().ok()?,
        None => Z::from(1),
    };
    if denom == Z::from(0) {
        return None;
    }
    Some(Q::new(numer, denom))
}
