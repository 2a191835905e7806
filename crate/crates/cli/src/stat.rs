//! The statistic registry: small names for the built-in class functions and
//! character polynomials, plus a JSON literal form for arbitrary character
//! polynomials.
//!
//! Grammar:
//!   1 | one | trivial      constant 1
//!   x1                     X_1 (number of linear factors / fixed lines)
//!   x2                     X_2 (irreducible quadratic factors / 2-cycles)
//!   quad                   binom(X_1,2) - X_2 (quadratic excess)
//!   sign                   sign of the Frobenius permutation
//!   chi1                   indicator of irreducible f / irreducible tori
//!   chik:<k>               indicator of no cycle shorter than n/k
//!   distinct               indicator of pairwise distinct cycle lengths
//!   plambda:<p1,p2,...>    the character polynomial P_lambda
//!   {"<exps>": "<coeff>"}  JSON object: keys are comma-separated exponents
//!                          of X_1, X_2, ...; values are rationals "a/b"

use lefcount::symcomb::{CharacterPolynomial, ClassFunction, Partition};
use lefcount::{q_parse, Q};

#[derive(Debug, Clone)]
pub enum Stat {
    Trivial,
    X1,
    X2,
    Quad,
    Sign,
    Chi1,
    ChiK(u32),
    Distinct,
    PLambda(Partition),
    Custom(CharacterPolynomial, String),
}

impl Stat {
    pub fn parse(text: &str) -> Result<Stat, String> {
        let s = text.trim();
        match s {
            "1" | "one" | "trivial" => return Ok(Stat::Trivial),
            "x1" | "X1" => return Ok(Stat::X1),
            "x2" | "X2" => return Ok(Stat::X2),
            "quad" => return Ok(Stat::Quad),
            "sign" => return Ok(Stat::Sign),
            "chi1" => return Ok(Stat::Chi1),
            "distinct" => return Ok(Stat::Distinct),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("chik:") {
            let k: u32 = k
                .parse()
                .map_err(|_| format!("bad k in chik:<k>: {k:?}"))?;
            if k == 0 {
                return Err("chik requires k >= 1".into());
            }
            return Ok(Stat::ChiK(k));
        }
        if let Some(parts) = s.strip_prefix("plambda:") {
            let parsed: Result<Vec<u32>, _> =
                parts.split(',').map(|p| p.trim().parse()).collect();
            let parts = parsed.map_err(|_| format!("bad partition in plambda: {parts:?}"))?;
            if parts.is_empty() || parts.contains(&0) {
                return Err("plambda requires positive parts".into());
            }
            return Ok(Stat::PLambda(Partition::new(parts)));
        }
        if s.starts_with('{') {
            return parse_custom(s);
        }
        Err(format!(
            "unknown statistic {s:?}; expected 1|x1|x2|quad|sign|chi1|chik:<k>|distinct|plambda:<parts> or a JSON object"
        ))
    }

    /// Stable name used in reports.
    pub fn name(&self) -> String {
        match self {
            Stat::Trivial => "1".into(),
            Stat::X1 => "x1".into(),
            Stat::X2 => "x2".into(),
            Stat::Quad => "quad".into(),
            Stat::Sign => "sign".into(),
            Stat::Chi1 => "chi1".into(),
            Stat::ChiK(k) => format!("chik:{k}"),
            Stat::Distinct => "distinct".into(),
            Stat::PLambda(p) => {
                let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
                format!("plambda:{}", parts.join(","))
            }
            Stat::Custom(_, desc) => format!("custom:{desc}"),
        }
    }

    /// The underlying character polynomial, when there is one valid for
    /// every n at once.
    pub fn char_poly(&self) -> Option<CharacterPolynomial> {
        match self {
            Stat::Trivial => Some(CharacterPolynomial::one()),
            Stat::X1 => Some(CharacterPolynomial::x1()),
            Stat::X2 => Some(CharacterPolynomial::x2()),
            Stat::Quad => Some(CharacterPolynomial::quadratic_excess()),
            Stat::PLambda(p) => CharacterPolynomial::p_lambda(p).ok(),
            Stat::Custom(p, _) => Some(p.clone()),
            Stat::Sign | Stat::Chi1 | Stat::ChiK(_) | Stat::Distinct => None,
        }
    }

    /// The induced class function on S_n.
    pub fn class_function(&self, n: u32) -> Result<ClassFunction, String> {
        Ok(match self {
            Stat::Sign => ClassFunction::sign(n),
            Stat::Chi1 => ClassFunction::chi_k(n, 1),
            Stat::ChiK(k) => ClassFunction::chi_k(n, *k),
            Stat::Distinct => ClassFunction::chi_distinct(n),
            other => other
                .char_poly()
                .ok_or_else(|| format!("{} has no character polynomial", other.name()))?
                .to_class_function(n),
        })
    }
}

fn parse_custom(s: &str) -> Result<Stat, String> {
    let value: serde_json::Value =
        serde_json::from_str(s).map_err(|e| format!("bad JSON statistic: {e}"))?;
    let obj = value
        .as_object()
        .ok_or("JSON statistic must be an object")?;
    let mut poly = CharacterPolynomial::zero();
    for (key, coeff) in obj {
        let coeff_s = coeff
            .as_str()
            .map(str::to_string)
            .or_else(|| coeff.as_i64().map(|v| v.to_string()))
            .ok_or_else(|| format!("coefficient for {key:?} must be a string or integer"))?;
        let c: Q = q_parse(&coeff_s).ok_or_else(|| format!("bad rational {coeff_s:?}"))?;
        let exps: Result<Vec<u32>, _> = key.split(',').map(|p| p.trim().parse()).collect();
        let exps = exps.map_err(|_| format!("bad exponent vector {key:?}"))?;
        let mut term = CharacterPolynomial::constant(c);
        for (idx, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = &term * &CharacterPolynomial::variable(idx as u32 + 1);
            }
        }
        poly = &poly + &term;
    }
    let desc = poly.canonical_desc();
    Ok(Stat::Custom(poly, desc))
}

/// Weight tags accepted by the `stable` command.
pub fn parse_weight_tag(s: &str) -> Result<lefcount::lseries::WeightTag, String> {
    use lefcount::lseries::WeightTag;
    match s {
        "x1" | "X1" => Ok(WeightTag::X1),
        "x2" | "X2" => Ok(WeightTag::X2),
        "binomx12" | "binomx1_2" => Ok(WeightTag::BinomX1Choose2),
        "quad" => Ok(WeightTag::PQuad),
        _ => Err(format!(
            "unknown series tag {s:?}; expected x1|x2|binomx12|quad"
        )),
    }
}
