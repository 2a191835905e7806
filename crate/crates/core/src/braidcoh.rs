//! Multiplicities of class functions in the cohomology of the pure braid
//! group P_n, computed exactly from the Lehrer–Solomon decomposition
//!
//!   H^i(P_n; C) = (+)_mu Ind_{Z(c_mu)}^{S_n} (xi_mu)
//!
//! over cycle types mu of n with exactly n - i cycles, where Z(c_mu) is the
//! product of wreath products (Z/j wr S_{mu_j}) and xi_mu is the
//! one-dimensional character sending a generator of each Z/j factor to
//! eta_j = (-1)^{j+1} e^{2 pi i / j} and restricting to S_{mu_j} as the sign
//! representation for even j. By Frobenius reciprocity each summand
//! contributes (1/z_mu) sum_{g in Z(c_mu)} chi(g) conj(xi_mu(g)).
//!
//! Values of xi_mu live in Q(zeta_m); sums are certified rational by
//! polynomial reduction mod the m-th cyclotomic polynomial rather than by
//! floating-point rounding.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::symcomb::{enumerate_partitions, z_mu, CharacterPolynomial, ClassFunction, CycleType};
use crate::{q_display, q_parse, Q, Z};

#[derive(Debug, Error)]
pub enum BraidcohError {
    #[error("cyclotomic sum did not reduce to a rational: {0}")]
    NonRationalResult(String),
    #[error("cache I/O failed: {0}")]
    CacheIo(String),
}

/// Exact element of Q(zeta_m), stored as a sparse map exponent -> rational
/// with exponents reduced mod m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    m: u32,
    coeffs: BTreeMap<u32, Q>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1);
        Cyclotomic {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(m: u32) -> Self {
        Self::root(m, 0, Q::one())
    }

    /// coeff * zeta_m^exp.
    pub fn root(m: u32, exp: i64, coeff: Q) -> Self {
        let mut c = Self::zero(m);
        c.add_term(exp, coeff);
        c
    }

    pub fn from_rational(m: u32, value: Q) -> Self {
        Self::root(m, 0, value)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn add_term(&mut self, exp: i64, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let e = exp.rem_euclid(self.m as i64) as u32;
        let entry = self.coeffs.entry(e).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, rhs.m, "mixed cyclotomic moduli");
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e as i64, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, rhs.m, "mixed cyclotomic moduli");
        let mut out = Cyclotomic::zero(self.m);
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea as i64 + eb as i64, ca * cb);
            }
        }
        out
    }

    /// Complex conjugation: zeta^e -> zeta^{-e}.
    pub fn conj(&self) -> Cyclotomic {
        let mut out = Cyclotomic::zero(self.m);
        for (&e, c) in &self.coeffs {
            out.add_term(-(e as i64), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Cyclotomic {
        let mut out = Cyclotomic::zero(self.m);
        for (&e, v) in &self.coeffs {
            out.add_term(e as i64, v * c);
        }
        out
    }

    /// Reduces mod the m-th cyclotomic polynomial and returns the value when
    /// the remainder is a constant; otherwise the element is irrational.
    pub fn to_rational(&self) -> Result<Q, BraidcohError> {
        let phi = cyclotomic_polynomial(self.m);
        let deg_phi = phi.len() - 1;
        // dense coefficient vector of the representative polynomial
        let mut dense = vec![Q::zero(); self.m as usize];
        for (&e, c) in &self.coeffs {
            dense[e as usize] = c.clone();
        }
        // remainder mod phi_m (phi is monic)
        let mut r = dense;
        while r.len() > deg_phi {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() - deg_phi;
            for (i, pc) in phi.iter().take(deg_phi).enumerate() {
                let delta = &lead * pc;
                r[shift + i] -= delta;
            }
        }
        while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.iter().skip(1).all(|c| c.is_zero()) {
            Ok(r.first().cloned().unwrap_or_else(Q::zero))
        } else {
            Err(BraidcohError::NonRationalResult(format!(
                "residue of degree {} mod Phi_{}",
                r.len() - 1,
                self.m
            )))
        }
    }
}

/// The m-th cyclotomic polynomial, dense with lowest degree first, computed
/// by exact division of x^m - 1 by the Phi_d for proper divisors d.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Q> {
    assert!(m >= 1);
    let mut num = vec![Q::zero(); m as usize + 1];
    num[0] = -Q::one();
    num[m as usize] = Q::one();
    for d in 1..m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = poly_div_exact(&num, &phi_d);
    }
    num
}

fn poly_div_exact(num: &[Q], den: &[Q]) -> Vec<Q> {
    // den monic; the division is exact
    let mut rem: Vec<Q> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![Q::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let lead = rem[shift + dd].clone();
        if lead.is_zero() {
            continue;
        }
        quot[shift] = lead.clone();
        for (i, dc) in den.iter().enumerate() {
            let delta = &lead * dc;
            rem[shift + i] -= delta;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quot
}

/// An element of the centralizer Z(c_mu) = prod_j (Z/j wr S_{mu_j}): per
/// cycle length j with mu_j > 0, a twist vector in (Z/j)^{mu_j} and a
/// permutation of the mu_j blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerElement {
    pub components: Vec<WreathComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathComponent {
    /// Cycle length j.
    pub cycle_len: u32,
    /// Twists in Z/j, one per block.
    pub twists: Vec<u32>,
    /// Permutation of the blocks (image form: perm[k] is where block k goes).
    pub perm: Vec<u32>,
}

/// The identity element of Z(c_mu).
pub fn centralizer_identity(mu: &CycleType) -> CentralizerElement {
    CentralizerElement {
        components: mu
            .iter_nonzero()
            .map(|(j, count)| WreathComponent {
                cycle_len: j,
                twists: vec![0; count as usize],
                perm: (0..count).collect(),
            })
            .collect(),
    }
}

/// Visits every element of Z(c_mu) exactly once, as a direct product
/// enumeration over the wreath components; z_mu visits in total.
pub fn for_each_centralizer_element(mu: &CycleType, mut visit: impl FnMut(&CentralizerElement)) {
    let mut element = centralizer_identity(mu);
    let num_components = element.components.len();

    fn recurse(
        element: &mut CentralizerElement,
        idx: usize,
        total: usize,
        visit: &mut impl FnMut(&CentralizerElement),
    ) {
        if idx == total {
            visit(element);
            return;
        }
        let j = element.components[idx].cycle_len;
        let blocks = element.components[idx].twists.len();
        let mut perms = Vec::new();
        build_perms(&mut (0..blocks as u32).collect::<Vec<_>>(), 0, &mut perms);
        for perm in &perms {
            element.components[idx].perm = perm.clone();
            // odometer over twist vectors in (Z/j)^{blocks}
            element.components[idx].twists = vec![0; blocks];
            loop {
                recurse(element, idx + 1, total, visit);
                let mut pos = 0;
                loop {
                    if pos == blocks {
                        break;
                    }
                    element.components[idx].twists[pos] += 1;
                    if element.components[idx].twists[pos] < j {
                        break;
                    }
                    element.components[idx].twists[pos] = 0;
                    pos += 1;
                }
                if pos == blocks {
                    break;
                }
            }
        }
    }

    fn build_perms(scratch: &mut Vec<u32>, at: usize, out: &mut Vec<Vec<u32>>) {
        if at == scratch.len() {
            out.push(scratch.clone());
            return;
        }
        for i in at..scratch.len() {
            scratch.swap(at, i);
            build_perms(scratch, at + 1, out);
            scratch.swap(at, i);
        }
    }

    recurse(&mut element, 0, num_components, &mut visit);
}

fn perm_sign(perm: &[u32]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at] as usize;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// xi_mu(g) as (sign, exponent of zeta_m): the value is always a root of
/// unity times +-1 because xi_mu is a product of one-dimensional characters.
fn xi_sign_exp(g: &CentralizerElement, m: u32) -> (i32, u32) {
    let mut sign = 1i32;
    let mut exp: u64 = 0;
    for comp in &g.components {
        let j = comp.cycle_len;
        let twist_sum: u64 = comp.twists.iter().map(|&t| u64::from(t)).sum();
        // eta_j = (-1)^{j+1} zeta_j; eta_j^t = (-1)^{(j+1) t} zeta_m^{t m / j}
        if (u64::from(j) + 1) * twist_sum % 2 == 1 {
            sign = -sign;
        }
        exp = (exp + twist_sum * u64::from(m / j)) % u64::from(m);
        if j % 2 == 0 && perm_sign(&comp.perm) < 0 {
            sign = -sign;
        }
    }
    (sign, exp as u32)
}

/// The order of roots of unity needed for xi_mu: lcm of the cycle lengths.
pub fn xi_modulus(mu: &CycleType) -> u32 {
    let mut m = 1u32;
    for (j, _) in mu.iter_nonzero() {
        m = num_integer::lcm(m, j);
    }
    m
}

/// xi_mu(g) as an exact cyclotomic number.
pub fn xi_value(mu: &CycleType, g: &CentralizerElement) -> Cyclotomic {
    let m = xi_modulus(mu);
    let (sign, exp) = xi_sign_exp(g, m);
    let coeff = if sign >= 0 { Q::one() } else { -Q::one() };
    Cyclotomic::root(m, exp as i64, coeff)
}

/// Cycle type of the image of g in S_n: a perm-cycle of length l among the
/// j-blocks, with total twist t along it, contributes gcd(j, t) cycles of
/// length l * j / gcd(j, t).
pub fn wreath_image_cycle_type(g: &CentralizerElement) -> CycleType {
    let mut image = CycleType::empty();
    for comp in &g.components {
        let j = comp.cycle_len;
        let blocks = comp.perm.len();
        let mut seen = vec![false; blocks];
        for start in 0..blocks {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut twist: u64 = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                twist += u64::from(comp.twists[at]);
                at = comp.perm[at] as usize;
                len += 1;
            }
            let t = (twist % u64::from(j)) as u32;
            let d = num_integer::gcd(j, t);
            image.add_cycles(len * j / d, d);
        }
    }
    image
}

/// <chi, Ind_{Z(c_mu)}^{S_n} xi_mu> by direct summation over the
/// centralizer; the cyclotomic total must reduce to a rational.
pub fn induced_multiplicity(chi: &ClassFunction, mu: &CycleType) -> Result<Q, BraidcohError> {
    let m = xi_modulus(mu);
    // accumulate sum_g chi(image(g)) * conj(xi(g)) as exponent -> rational
    let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
    for_each_centralizer_element(mu, |g| {
        let image = wreath_image_cycle_type(g);
        let chi_val = chi.value(&image);
        if chi_val.is_zero() {
            return;
        }
        let (sign, exp) = xi_sign_exp(g, m);
        // conjugate: negate the exponent
        let conj_exp = (m - exp) % m;
        let term = if sign >= 0 {
            chi_val.clone()
        } else {
            -chi_val.clone()
        };
        let entry = acc.entry(conj_exp).or_insert_with(Q::zero);
        *entry += term;
    });
    let mut total = Cyclotomic::zero(m);
    for (e, c) in acc {
        total.add_term(e as i64, c);
    }
    let z = Q::from_integer(Z::from(z_mu(mu)));
    Ok(total.to_rational()? / z)
}

/// <chi, H^i(P_n; Q)>: sum of induced multiplicities over cycle types of n
/// with exactly n - i cycles.
pub fn ls_multiplicity(chi: &ClassFunction, i: u32) -> Result<Q, BraidcohError> {
    let n = chi.n();
    if i >= n.max(1) {
        // H^i(P_n) = 0 for i >= n (and for i >= 1 when n <= 1)
        return Ok(Q::zero());
    }
    let mut total = Q::zero();
    for lambda in enumerate_partitions(n) {
        let mu = lambda.cycle_type();
        if mu.num_cycles() != n - i {
            continue;
        }
        total += induced_multiplicity(chi, &mu)?;
    }
    Ok(total)
}

/// dim H^i(P_n) = number of permutations of S_n with n - i cycles (an
/// unsigned Stirling number of the first kind).
pub fn dim_hi(i: u32, n: u32) -> u128 {
    if i >= n.max(1) {
        return 0;
    }
    let fact: u128 = (1..=u128::from(n)).product();
    enumerate_partitions(n)
        .iter()
        .map(|p| p.cycle_type())
        .filter(|mu| mu.num_cycles() == n - i)
        .map(|mu| fact / z_mu(&mu))
        .sum()
}

/// Stable multiplicity <P, H^i(PConf(C))>: the value of
/// <P, H^i(P_n)> at the edge of the stable range n = 2i + deg P.
pub fn stable_multiplicity(p: &CharacterPolynomial, i: u32) -> Result<Q, BraidcohError> {
    let n_star = 2 * i + p.degree();
    let chi = p.to_class_function(n_star.max(1));
    ls_multiplicity(&chi, i)
}

/// Persistent store of computed multiplicities, keyed by
/// (class-function digest, i, n). Serializes to a JSON object whose keys
/// are `chi_id:i:n` and whose values are rationals as `a/b` strings.
#[derive(Debug, Default, Clone)]
pub struct MultiplicityCache {
    entries: BTreeMap<(String, u32, u32), Q>,
}

impl MultiplicityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, chi_id: &str, i: u32, n: u32) -> Option<&Q> {
        self.entries.get(&(chi_id.to_string(), i, n))
    }

    pub fn insert(&mut self, chi_id: String, i: u32, n: u32, value: Q) {
        self.entries.insert((chi_id, i, n), value);
    }

    /// Cached wrapper around [`ls_multiplicity`].
    pub fn ls_multiplicity(
        &mut self,
        chi: &ClassFunction,
        i: u32,
    ) -> Result<Q, BraidcohError> {
        let id = chi.canonical_id();
        if let Some(v) = self.get(&id, i, chi.n()) {
            return Ok(v.clone());
        }
        let v = ls_multiplicity(chi, i)?;
        self.insert(id, i, chi.n(), v.clone());
        Ok(v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for ((id, i, n), v) in &self.entries {
            map.insert(format!("{id}:{i}:{n}"), serde_json::Value::String(q_display(v)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, BraidcohError> {
        let obj = value
            .as_object()
            .ok_or_else(|| BraidcohError::CacheIo("cache root must be an object".into()))?;
        let mut entries = BTreeMap::new();
        for (key, v) in obj {
            let parts: Vec<&str> = key.rsplitn(3, ':').collect();
            if parts.len() != 3 {
                return Err(BraidcohError::CacheIo(format!("bad cache key {key}")));
            }
            let n: u32 = parts[0]
                .parse()
                .map_err(|_| BraidcohError::CacheIo(format!("bad n in {key}")))?;
            let i: u32 = parts[1]
                .parse()
                .map_err(|_| BraidcohError::CacheIo(format!("bad i in {key}")))?;
            let id = parts[2].to_string();
            let s = v
                .as_str()
                .ok_or_else(|| BraidcohError::CacheIo(format!("bad value for {key}")))?;
            let q = q_parse(s)
                .ok_or_else(|| BraidcohError::CacheIo(format!("bad rational {s}")))?;
            entries.insert((id, i, n), q);
        }
        Ok(MultiplicityCache { entries })
    }

    pub fn load(path: &Path) -> Result<Self, BraidcohError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BraidcohError::CacheIo(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| BraidcohError::CacheIo(format!("{}: {e}", path.display())))?;
        Self::from_json(&value)
    }

    pub fn save(&self, path: &Path) -> Result<(), BraidcohError> {
        let text = serde_json::to_string_pretty(&self.to_json())
            .map_err(|e| BraidcohError::CacheIo(e.to_string()))?;
        std::fs::write(path, text)
            .map_err(|e| BraidcohError::CacheIo(format!("{}: {e}", path.display())))
    }
}
