//! Character polynomials P in Q[X_1, X_2, ...], inducing the class function
//! sigma -> P(c_1(sigma), c_2(sigma), ...) on every S_n at once. The degree
//! convention is deg X_k = k. Two bases are carried: plain monomials, and
//! products of binomials binom(X, mu) = prod_i binom(X_i, mu_i); conversion
//! between them is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::{q_int, Q, Z};

use super::{enumerate_partitions, ClassFunction, CycleType};

/// Sparse polynomial in X_1, X_2, ... with exact rational coefficients,
/// stored in the monomial basis. Keys are exponent vectors (index k holds
/// the exponent of X_{k+1}) with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterPolynomial {
    terms: BTreeMap<Vec<u32>, Q>,
}

fn trim(mut exps: Vec<u32>) -> Vec<u32> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

impl CharacterPolynomial {
    pub fn zero() -> Self {
        CharacterPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        CharacterPolynomial { terms }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The variable X_k (k >= 1).
    pub fn variable(k: u32) -> Self {
        assert!(k >= 1, "variables are X_1, X_2, ...");
        let mut exps = vec![0; k as usize];
        exps[(k - 1) as usize] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Q::one());
        CharacterPolynomial { terms }
    }

    /// binom(X_k, m) expanded into monomials.
    pub fn binomial(k: u32, m: u32) -> Self {
        let mut acc = Self::one();
        let x = Self::variable(k);
        for t in 0..m {
            let factor = &x - &Self::constant(q_int(t as i64));
            acc = &acc * &factor;
        }
        let mut m_fact = Q::one();
        for t in 1..=m {
            m_fact *= q_int(t as i64);
        }
        acc.scale(&(Q::one() / m_fact))
    }

    /// binom(X, mu) = prod_i binom(X_i, mu_i).
    pub fn binomial_basis_element(mu: &CycleType) -> Self {
        let mut acc = Self::one();
        for (len, count) in mu.iter_nonzero() {
            acc = &acc * &Self::binomial(len, count);
        }
        acc
    }

    /// Builds a polynomial from binomial-basis terms (mu, coefficient).
    pub fn from_binomial_terms(terms: &[(CycleType, Q)]) -> Self {
        let mut acc = Self::zero();
        for (mu, c) in terms {
            acc = &acc + &Self::binomial_basis_element(mu).scale(c);
        }
        acc
    }

    /// Expresses the polynomial in the binomial basis binom(X, mu). The
    /// result is exact and round-trips through [`from_binomial_terms`].
    pub fn binomial_terms(&self) -> Vec<(CycleType, Q)> {
        // X^m = sum_j S2(m, j) * j! * binom(X, j), per variable.
        let max_exp = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let s2 = stirling2_table(max_exp);
        let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            // expand each variable's power; take the cartesian product
            let mut partials: Vec<(Vec<u32>, Q)> = vec![(Vec::new(), coeff.clone())];
            for &e in exps {
                let mut next = Vec::new();
                if e == 0 {
                    for (mu, c) in &partials {
                        let mut mu = mu.clone();
                        mu.push(0);
                        next.push((mu, c.clone()));
                    }
                } else {
                    for (j, &s2_val) in s2[e as usize].iter().enumerate().take(e as usize + 1).skip(1) {
                        let mut factor = Q::from_integer(Z::from(s2_val));
                        for t in 1..=j {
                            factor *= q_int(t as i64);
                        }
                        if factor.is_zero() {
                            continue;
                        }
                        for (mu, c) in &partials {
                            let mut mu = mu.clone();
                            mu.push(j as u32);
                            next.push((mu, c * &factor));
                        }
                    }
                }
                partials = next;
            }
            for (mu, c) in partials {
                let key = trim(mu);
                let entry = acc.entry(key).or_insert_with(Q::zero);
                *entry += c;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| (CycleType::new(mu), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CharacterPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Degree with the convention deg X_k = k; the zero polynomial has
    /// degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|exps| {
                exps.iter()
                    .enumerate()
                    .map(|(k, &e)| (k as u32 + 1) * e)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    /// Substitutes X_i <- mu_i.
    pub fn eval(&self, mu: &CycleType) -> Q {
        let mut total = Q::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (k, &e) in exps.iter().enumerate() {
                if e > 0 {
                    let x = q_int(mu.count(k as u32 + 1) as i64);
                    for _ in 0..e {
                        term *= &x;
                    }
                }
            }
            total += term;
        }
        total
    }

    /// The induced class function on S_n.
    pub fn to_class_function(&self, n: u32) -> ClassFunction {
        ClassFunction::from_fn(n, |mu| self.eval(mu))
    }

    /// X_1, the fixed-point count.
    pub fn x1() -> Self {
        Self::variable(1)
    }

    /// X_2, the 2-cycle count.
    pub fn x2() -> Self {
        Self::variable(2)
    }

    /// binom(X_1, 2) - X_2: the character of the second exterior power of
    /// the permutation representation (quadratic excess).
    pub fn quadratic_excess() -> Self {
        &Self::binomial(1, 2) - &Self::x2()
    }

    /// P_lambda = sum_{mu of size d} chi_lambda(c_mu) binom(X, mu), the
    /// unique character polynomial of degree <= d with (P_lambda)_d =
    /// chi_lambda and (P_lambda)_n = 0 for n < d.
    pub fn p_lambda(lambda: &super::Partition) -> Result<Self, super::SymcombError> {
        let d = lambda.size();
        let mut terms = Vec::new();
        for mu_part in enumerate_partitions(d) {
            let mu = mu_part.cycle_type();
            let chi = super::mn_character(lambda, &mu)?;
            if chi != 0 {
                terms.push((mu, q_int(chi)));
            }
        }
        Ok(Self::from_binomial_terms(&terms))
    }

    /// A canonical plain-text form, usable in hashes and reports.
    pub fn canonical_desc(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (exps, coeff) in &self.terms {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("({}/{})", coeff.numer(), coeff.denom()));
            for (k, &e) in exps.iter().enumerate() {
                if e == 1 {
                    out.push_str(&format!("*X{}", k + 1));
                } else if e > 1 {
                    out.push_str(&format!("*X{}^{}", k + 1, e));
                }
            }
        }
        out
    }
}

fn stirling2_table(max_n: usize) -> Vec<Vec<u128>> {
    let mut s = vec![vec![0u128; max_n + 1]; max_n + 1];
    s[0][0] = 1;
    for n in 1..=max_n {
        for k in 1..=n {
            s[n][k] = s[n - 1][k - 1] + (k as u128) * s[n - 1][k];
        }
    }
    s
}

impl std::ops::Add for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn add(self, rhs: Self) -> CharacterPolynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Q::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        CharacterPolynomial { terms }
    }
}

impl std::ops::Sub for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn sub(self, rhs: Self) -> CharacterPolynomial {
        self + &rhs.scale(&-Q::one())
    }
}

impl std::ops::Mul for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn mul(self, rhs: Self) -> CharacterPolynomial {
        let mut terms: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let mut e = vec![0u32; len];
                for (i, &v) in ea.iter().enumerate() {
                    e[i] += v;
                }
                for (i, &v) in eb.iter().enumerate() {
                    e[i] += v;
                }
                let entry = terms.entry(trim(e)).or_insert_with(Q::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        CharacterPolynomial { terms }
    }
}

impl fmt::Display for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_desc())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcomb::{inner_product, Partition};
    use crate::{q_ratio, Q};

    #[test]
    fn degree_convention() {
        assert_eq!(CharacterPolynomial::variable(3).degree(), 3);
        assert_eq!(CharacterPolynomial::quadratic_excess().degree(), 2);
        let p = &CharacterPolynomial::binomial(1, 2) * &CharacterPolynomial::variable(2);
        assert_eq!(p.degree(), 4);
        assert_eq!(CharacterPolynomial::zero().degree(), 0);
    }

    #[test]
    fn eval_examples() {
        let x1 = CharacterPolynomial::x1();
        assert_eq!(x1.eval(&CycleType::from_parts(&[1, 1, 1])), q_int(3));
        // binom(X_1,2) - X_2 at (2,1,1): binom(2,2) - 1 = 0
        let p = CharacterPolynomial::quadratic_excess();
        assert_eq!(p.eval(&CycleType::from_parts(&[2, 1, 1])), Q::zero());
        assert_eq!(
            CharacterPolynomial::one().eval(&CycleType::from_parts(&[5])),
            Q::one()
        );
    }

    #[test]
    fn binomial_round_trip() {
        let polys = vec![
            CharacterPolynomial::quadratic_excess(),
            CharacterPolynomial::binomial(1, 3),
            &(&CharacterPolynomial::variable(1) * &CharacterPolynomial::variable(1))
                + &CharacterPolynomial::variable(3).scale(&q_ratio(-2, 3)),
            CharacterPolynomial::p_lambda(&Partition::new(vec![2, 1])).unwrap(),
        ];
        for p in polys {
            let round = CharacterPolynomial::from_binomial_terms(&p.binomial_terms());
            assert_eq!(round, p);
        }
    }

    #[test]
    fn p_lambda_small_shapes() {
        // lambda = (1): P = X_1
        let p1 = CharacterPolynomial::p_lambda(&Partition::new(vec![1])).unwrap();
        assert_eq!(p1, CharacterPolynomial::x1());
        // lambda = (2): P = binom(X_1,2) + X_2
        let p2 = CharacterPolynomial::p_lambda(&Partition::new(vec![2])).unwrap();
        let want = &CharacterPolynomial::binomial(1, 2) + &CharacterPolynomial::x2();
        assert_eq!(p2, want);
        // lambda = (1,1): P = binom(X_1,2) - X_2, and (P)_2 is the sign character
        let p11 = CharacterPolynomial::p_lambda(&Partition::new(vec![1, 1])).unwrap();
        assert_eq!(p11, CharacterPolynomial::quadratic_excess());
        let as_class = p11.to_class_function(2);
        assert_eq!(as_class, crate::symcomb::ClassFunction::sign(2));
        // (P_lambda)_n = 0 for n < d
        let p3 = CharacterPolynomial::p_lambda(&Partition::new(vec![2, 1])).unwrap();
        for n in 0..3 {
            for v in p3.to_class_function(n).values().values() {
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn expectations_of_character_polynomials() {
        // <X_1, 1>_n = 1 for n >= 1
        for n in 1..=8 {
            let f = CharacterPolynomial::x1().to_class_function(n);
            let got = inner_product(&f, &ClassFunction::trivial(n)).unwrap();
            assert_eq!(got, Q::one(), "n = {n}");
        }
        // <X_k, 1>_n = 1/k for n >= k
        for k in 1..=4u32 {
            for n in k..=8 {
                let f = CharacterPolynomial::variable(k).to_class_function(n);
                let got = inner_product(&f, &ClassFunction::trivial(n)).unwrap();
                assert_eq!(got, q_ratio(1, k as i64), "k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn binomial_expectation_is_one_over_z() {
        // <binom(X, mu), 1>_n = 1/z_mu for all n >= |mu|
        use crate::symcomb::{enumerate_partitions, z_mu};
        for d in 1..=6u32 {
            for lambda in enumerate_partitions(d) {
                let mu = lambda.cycle_type();
                let p = CharacterPolynomial::binomial_basis_element(&mu);
                for n in d..=8 {
                    let f = p.to_class_function(n);
                    let got = inner_product(&f, &ClassFunction::trivial(n)).unwrap();
                    let want = Q::new(Z::one(), Z::from(z_mu(&mu)));
                    assert_eq!(got, want, "mu = {mu}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn factorial_moments_are_poissonian() {
        // <binom(X_i, k), 1>_n = (1/i)^k / k! for n >= k * i
        for i in 1..=3u32 {
            for k in 1..=3u32 {
                let p = CharacterPolynomial::binomial(i, k);
                for n in (k * i)..=8 {
                    let f = p.to_class_function(n);
                    let got = inner_product(&f, &ClassFunction::trivial(n)).unwrap();
                    let mut want = Q::one();
                    for _ in 0..k {
                        want /= q_int(i as i64);
                    }
                    for t in 1..=k {
                        want /= q_int(t as i64);
                    }
                    assert_eq!(got, want, "i = {i}, k = {k}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn inner_products_stabilize_at_degree_sum() {
        // <P, Q>_n is constant once n >= deg P + deg Q
        let test_set = vec![
            CharacterPolynomial::one(),
            CharacterPolynomial::x1(),
            CharacterPolynomial::x2(),
            CharacterPolynomial::quadratic_excess(),
            CharacterPolynomial::binomial(1, 3),
            &CharacterPolynomial::variable(4) + &CharacterPolynomial::binomial(2, 2),
        ];
        for p in &test_set {
            for q in &test_set {
                let start = p.degree() + q.degree();
                let reference = inner_product(
                    &p.to_class_function(start),
                    &q.to_class_function(start),
                )
                .unwrap();
                for n in start..=start + 3 {
                    let got = inner_product(
                        &p.to_class_function(n),
                        &q.to_class_function(n),
                    )
                    .unwrap();
                    assert_eq!(got, reference, "P = {p}, Q = {q}, n = {n}");
                }
            }
        }
    }
}
