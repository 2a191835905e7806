//! Finite fields F_{p^e} with a fixed monic irreducible modulus, monic
//! polynomial enumeration, squarefree testing, and degree-profile extraction
//! by distinct-degree factorization.
//!
//! Field elements are indices into multiplication/addition tables built once
//! per context; the index encodes the coefficient vector of the element in
//! F_p[x]/(modulus) as little-endian base-p digits. This keeps the inner
//! enumeration loops allocation-free. Fields beyond q ~ 10^3 are out of
//! scope and rejected at construction.

use thiserror::Error;

use crate::symcomb::CycleType;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FfpolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be >= 1, got {0}")]
    BadDegree(u32),
    #[error("field size {0} exceeds the supported table-driven range")]
    FieldTooLarge(u128),
    #[error("the zero polynomial has no squarefree test")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic")]
    NotMonic,
}

/// Largest supported field size; tables are q^2 entries.
const MAX_Q: u128 = 4096;

/// An element of F_q, as an index into the owning context's tables.
/// Index k encodes the coefficient vector (k mod p, (k/p) mod p, ...) of the
/// canonical reduced representative in F_p[x]/(modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);
}

/// The field F_{p^e} with its modulus and arithmetic tables.
pub struct FqContext {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus over F_p, lowest degree first, length e+1.
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl std::fmt::Debug for FqContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FqContext")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Deterministic Miller–Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Polynomial helpers over F_p (dense, lowest degree first, no trailing
// zeros), used only for modulus selection and table construction.
mod fppoly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = mod_inv(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % p;
            let shift = dr - dm;
            for i in 0..=dm {
                let sub = (c * m[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn powmod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &make_monic(&y, p), p);
            // rem expects a monic-ish divisor; normalize y first
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            make_monic(&x, p)
        }
    }

    pub fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
        let mut v = a.to_vec();
        trim(&mut v);
        if let Some(&lead) = v.last() {
            if lead != 1 {
                let c = mod_inv(lead, p);
                for x in &mut v {
                    *x = (*x * c) % p;
                }
            }
        }
        v
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // p prime, a != 0 mod p
        let mut pow = p - 2;
        let mut acc = 1u64;
        let mut base = a % p;
        while pow > 0 {
            if pow & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            pow >>= 1;
        }
        acc
    }

    /// Rabin irreducibility test over F_p: f of degree d is irreducible iff
    /// x^{p^d} = x mod f and gcd(x^{p^{d/r}} - x, f) = 1 for each prime r | d.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let xq = powmod(&x, (p as u128).pow(d as u32), f, p);
        let mut diff = xq.clone();
        // xq - x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if !diff.is_empty() {
            return false;
        }
        let mut primes = Vec::new();
        let mut m = d;
        let mut r = 2;
        while r * r <= m {
            if m.is_multiple_of(r) {
                primes.push(r);
                while m.is_multiple_of(r) {
                    m /= r;
                }
            }
            r += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for r in primes {
            let sub = d / r;
            let xs = powmod(&x, (p as u128).pow(sub as u32), f, p);
            let mut diff = xs.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Constructs F_{p^e} with the first monic irreducible modulus of degree e
/// in the enumeration order (coefficients as a little-endian base-p
/// counter, the same order used for elements and polynomials), which makes
/// the modulus deterministic.
pub fn make_field(p: u64, e: u32) -> Result<FqContext, FfpolyError> {
    if e < 1 {
        return Err(FfpolyError::BadDegree(e));
    }
    if !is_prime(p) {
        return Err(FfpolyError::NotPrime(p));
    }
    let q128 = (p as u128).pow(e);
    if q128 > MAX_Q {
        return Err(FfpolyError::FieldTooLarge(q128));
    }
    let q = q128 as u64;

    // scan monic degree-e polynomials in counter order for the first
    // irreducible one; for e = 1 the modulus is x itself
    let modulus: Vec<u64> = if e == 1 {
        vec![0, 1]
    } else {
        let mut found = None;
        'scan: for idx in 0..q {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut k = idx;
            for _ in 0..e {
                f.push(k % p);
                k /= p;
            }
            f.push(1);
            if fppoly::is_irreducible(&f, p) {
                found = Some(f);
                break 'scan;
            }
        }
        found.expect("an irreducible polynomial of every degree exists over F_p")
    };

    // element index <-> coefficient vector
    let decode = |k: u64| -> Vec<u64> {
        let mut v = Vec::with_capacity(e as usize);
        let mut k = k;
        for _ in 0..e {
            v.push(k % p);
            k /= p;
        }
        v
    };
    let encode = |v: &[u64]| -> u32 {
        let mut acc = 0u64;
        for &c in v.iter().rev() {
            acc = acc * p + c;
        }
        acc as u32
    };

    let qs = q as usize;
    let mut add = vec![0u32; qs * qs];
    let mut mul = vec![0u32; qs * qs];
    let mut neg = vec![0u32; qs];
    for a in 0..q {
        let va = decode(a);
        let vneg: Vec<u64> = va.iter().map(|&c| (p - c) % p).collect();
        neg[a as usize] = encode(&vneg);
        for b in a..q {
            let vb = decode(b);
            let vsum: Vec<u64> = va.iter().zip(&vb).map(|(&x, &y)| (x + y) % p).collect();
            let s = encode(&vsum);
            add[a as usize * qs + b as usize] = s;
            add[b as usize * qs + a as usize] = s;
            let vprod = fppoly::mulmod(&va, &vb, &modulus, p);
            let mut padded = vprod;
            padded.resize(e as usize, 0);
            let m = encode(&padded);
            mul[a as usize * qs + b as usize] = m;
            mul[b as usize * qs + a as usize] = m;
        }
    }
    let mut ctx = FqContext {
        p,
        e,
        q,
        modulus,
        add,
        mul,
        neg,
        inv: Vec::new(),
    };
    let mut inv = vec![0u32; qs];
    for a in 1..q {
        inv[a as usize] = ctx.pow_elem(Fq(a as u32), q - 2).0;
    }
    ctx.inv = inv;
    Ok(ctx)
}

impl FqContext {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The modulus over F_p, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != Fq::ZERO, "division by zero in F_q");
        Fq(self.inv[a.0 as usize])
    }

    pub fn pow_elem(&self, base: Fq, mut exp: u64) -> Fq {
        let mut acc = Fq::ONE;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// The residue m mod p as a field element.
    pub fn from_int(&self, m: u64) -> Fq {
        Fq((m % self.p) as u32)
    }

    /// Coefficient vector of an element in F_p[x]/(modulus).
    pub fn element_coeffs(&self, a: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut k = a.0 as u64;
        for _ in 0..self.e {
            v.push(k % self.p);
            k /= self.p;
        }
        v
    }

    /// Element with the given coefficient vector (entries reduced mod p).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Fq {
        assert!(coeffs.len() <= self.e as usize);
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = acc * self.p + c % self.p;
        }
        Fq(acc as u32)
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u32).map(Fq)
    }
}

/// x^q computed by square-and-multiply; `ctx_big` is F_{q^m} over the same p.
pub fn ext_frobenius(ctx_big: &FqContext, x: Fq, q: u64) -> Fq {
    ctx_big.pow_elem(x, q)
}

/// Polynomial over F_q, lowest degree first, no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<Fq>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly {
            coeffs: vec![Fq::ONE],
        }
    }

    /// The monomial T.
    pub fn t() -> Self {
        FqPoly {
            coeffs: vec![Fq::ZERO, Fq::ONE],
        }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fq::ONE)
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn add(&self, ctx: &FqContext, rhs: &FqPoly) -> FqPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(ctx.add(self.coeff(i), rhs.coeff(i)));
        }
        FqPoly::new(out)
    }

    pub fn sub(&self, ctx: &FqContext, rhs: &FqPoly) -> FqPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(ctx.sub(self.coeff(i), rhs.coeff(i)));
        }
        FqPoly::new(out)
    }

    pub fn mul(&self, ctx: &FqContext, rhs: &FqPoly) -> FqPoly {
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Fq::ZERO {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        FqPoly::new(out)
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem(&self, ctx: &FqContext, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = ctx.inv(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fq::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = ctx.mul(rem[dr], lead_inv);
            if c != Fq::ZERO {
                let shift = dr - dd;
                quot[shift] = c;
                for i in 0..=dd {
                    let sub = ctx.mul(c, divisor.coeffs[i]);
                    rem[shift + i] = ctx.sub(rem[shift + i], sub);
                }
            }
            while rem.last() == Some(&Fq::ZERO) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (FqPoly::new(quot), FqPoly::new(rem))
    }

    pub fn rem(&self, ctx: &FqContext, divisor: &FqPoly) -> FqPoly {
        self.divrem(ctx, divisor).1
    }

    pub fn make_monic(&self, ctx: &FqContext) -> FqPoly {
        match self.coeffs.last() {
            None => FqPoly::zero(),
            Some(&lead) if lead == Fq::ONE => self.clone(),
            Some(&lead) => {
                let c = ctx.inv(lead);
                FqPoly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, ctx: &FqContext, rhs: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.make_monic(ctx)
    }

    pub fn derivative(&self, ctx: &FqContext) -> FqPoly {
        if self.coeffs.len() <= 1 {
            return FqPoly::zero();
        }
        let out: Vec<Fq> = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &a)| ctx.mul(ctx.from_int(i as u64 + 1), a))
            .collect();
        FqPoly::new(out)
    }

    /// self^exp mod m.
    pub fn powmod(&self, ctx: &FqContext, mut exp: u64, m: &FqPoly) -> FqPoly {
        let mut acc = FqPoly::one().rem(ctx, m);
        let mut base = self.rem(ctx, m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(ctx, &base).rem(ctx, m);
            }
            base = base.mul(ctx, &base).rem(ctx, m);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, ctx: &FqContext, x: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// f(-T).
    pub fn reflect(&self, ctx: &FqContext) -> FqPoly {
        FqPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| if i % 2 == 1 { ctx.neg(a) } else { a })
                .collect(),
        )
    }
}

/// Numbers of irreducible factors of each degree of a monic squarefree
/// polynomial: `d[i]` (1-indexed through [`DegreeProfile::count`]) is the
/// number of degree-i factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    d: Vec<u32>,
    n: u32,
}

impl DegreeProfile {
    pub fn count(&self, i: u32) -> u32 {
        assert!(i >= 1);
        self.d.get((i - 1) as usize).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.n
    }
}

/// The cycle type of the Frobenius permutation on the roots: mu_i = d_i.
pub fn sigma_cycle_type(profile: &DegreeProfile) -> CycleType {
    CycleType::new(profile.d.clone())
}

/// True iff gcd(f, f') is constant. A nonzero f with f' = 0 and positive
/// degree is a p-th power, hence not squarefree.
pub fn is_squarefree(ctx: &FqContext, f: &FqPoly) -> Result<bool, FfpolyError> {
    if f.is_zero() {
        return Err(FfpolyError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let fd = f.derivative(ctx);
    if fd.is_zero() {
        return Ok(false);
    }
    let g = f.gcd(ctx, &fd);
    Ok(g.degree() == Some(0))
}

/// Degree profile of a monic squarefree polynomial by distinct-degree
/// factorization: iterated gcd(T^{q^i} - T, f).
pub fn degree_profile(ctx: &FqContext, f: &FqPoly) -> Result<DegreeProfile, FfpolyError> {
    if f.is_zero() {
        return Err(FfpolyError::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(FfpolyError::NotMonic);
    }
    if !is_squarefree(ctx, f)? {
        return Err(FfpolyError::NotSquarefree);
    }
    let n = f.degree().unwrap() as u32;
    let mut d = vec![0u32; n as usize];
    let mut v = f.clone();
    let mut h = FqPoly::t().rem(ctx, f);
    let t = FqPoly::t();
    let mut i = 1u32;
    while let Some(dv) = v.degree() {
        if dv == 0 {
            break;
        }
        if dv < 2 * i as usize {
            // remainder is a single irreducible factor
            d[dv - 1] += 1;
            break;
        }
        h = h.powmod(ctx, ctx.q, f);
        let diff = h.sub(ctx, &t);
        let g = diff.gcd(ctx, &v);
        if let Some(dg) = g.degree() {
            if dg > 0 {
                debug_assert_eq!(dg % i as usize, 0);
                d[(i - 1) as usize] += (dg / i as usize) as u32;
                v = v.divrem(ctx, &g).0;
            }
        }
        i += 1;
    }
    Ok(DegreeProfile { d, n })
}

/// Number of monic polynomials of degree n.
pub fn monic_count(ctx: &FqContext, n: u32) -> u128 {
    (ctx.q as u128).pow(n)
}

/// The monic degree-n polynomial with the given enumeration index: the
/// coefficients a_0..a_{n-1} are the little-endian base-q digits of `idx`.
pub fn monic_by_index(ctx: &FqContext, n: u32, idx: u128) -> FqPoly {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut k = idx;
    let q = ctx.q as u128;
    for _ in 0..n {
        coeffs.push(Fq((k % q) as u32));
        k /= q;
    }
    debug_assert_eq!(k, 0, "index out of range");
    coeffs.push(Fq::ONE);
    FqPoly { coeffs }
}

/// Folds `f` over the monic degree-n polynomials with indices in
/// [start, end), in order, reusing one buffer. This is the primitive that
/// enumeration streams and chunked parallel consumers are built on.
pub fn fold_monic_range<T>(
    ctx: &FqContext,
    n: u32,
    start: u128,
    end: u128,
    init: T,
    mut f: impl FnMut(T, &FqPoly) -> T,
) -> T {
    debug_assert!(end <= monic_count(ctx, n));
    if start >= end {
        return init;
    }
    let mut poly = monic_by_index(ctx, n, start);
    let q = ctx.q as u32;
    let mut acc = init;
    let mut idx = start;
    while idx < end {
        acc = f(acc, &poly);
        idx += 1;
        if idx == end {
            break;
        }
        // increment the little-endian counter
        for digit in poly.coeffs.iter_mut().take(n as usize) {
            if digit.0 + 1 < q {
                digit.0 += 1;
                break;
            }
            digit.0 = 0;
        }
    }
    acc
}

/// All monic degree-n polynomials in enumeration order.
pub fn enumerate_monic<'a>(
    ctx: &'a FqContext,
    n: u32,
) -> impl Iterator<Item = FqPoly> + 'a {
    (0..monic_count(ctx, n)).map(move |i| monic_by_index(ctx, n, i))
}

/// The monic squarefree degree-n polynomials, in enumeration order. For
/// n >= 2 the stream has exactly q^n - q^{n-1} items.
pub fn enumerate_squarefree<'a>(
    ctx: &'a FqContext,
    n: u32,
) -> impl Iterator<Item = FqPoly> + 'a {
    enumerate_monic(ctx, n).filter(move |f| is_squarefree(ctx, f).unwrap_or(false))
}
