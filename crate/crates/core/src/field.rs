//! Finite fields `F_q` for odd prime powers `q = p^e`.
//!
//! A [`FieldCtx`] is fully materialized at construction: elements are the
//! integers `0..q`, read as base-`p` digit strings of their coefficient
//! vectors (constant term least significant), so the prime subfield keeps its
//! usual integer labels. Multiplication goes through discrete log tables
//! built from a primitive element; addition works digit-wise.
//!
//! Construction is deterministic. The modulus is the first monic irreducible
//! polynomial of degree `e` when the lower coefficient vectors are ordered by
//! their base-`p` encoding, and the generator is the primitive element with
//! the smallest index.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the field size.
pub const DEFAULT_MAX_ORDER: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported (q = {0})")]
    EvenCharacteristic(u64),
    #[error("field order {q} exceeds the configured bound {bound}")]
    TooLarge { q: u64, bound: u32 },
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("{0} is not a power of an odd prime")]
    NotPrimePower(u64),
    #[error("element index {index} is out of range for F_{q}")]
    OutOfRange { index: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

/// A field element, identified by its canonical index in `0..q`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The arithmetic description of `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Coefficients of the monic modulus, constant term first (`e + 1`
    /// entries). Empty for prime fields.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }
}

/// Which binary or unary operation [`FieldCtx::apply`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// The counts `A_q, B_q, C_q, D_q` of `i` with `(chi(i), chi(i+1))` equal to
/// `(1, 1)`, `(-1, -1)`, `(1, -1)` and `(-1, 1)` respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPairCounts {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl CharPairCounts {
    pub fn total(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }
}

/// Enumerated character pair counts alongside the closed-form prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPairReport {
    pub q: u32,
    pub residue_class: u8,
    pub counts: CharPairCounts,
    pub predicted: CharPairCounts,
    pub matches: bool,
}

/// A fully tabulated odd-order finite field.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    spec: FieldSpec,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    residue_class: u8,
}

/// Serializable description of a field, enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub g: Elem,
    pub residue_class: u8,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, `p` an odd prime.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 3 {
        return Err(FieldError::NotPrimePower(q));
    }
    if q.is_multiple_of(2) {
        return if q.is_power_of_two() {
            Err(FieldError::EvenCharacteristic(q))
        } else {
            Err(FieldError::NotPrimePower(q))
        };
    }
    let mut p = 3;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 2;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = u32::try_from(p).map_err(|_| FieldError::NotPrimePower(q))?;
    Ok((p, e))
}

/// Builds `F_{p^e}` with the default size bound.
pub fn build_field(p: u32, e: u32) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(p, e, DEFAULT_MAX_ORDER)
}

/// Builds `F_q` from its order.
pub fn build_field_of_order(q: u32) -> Result<FieldCtx, FieldError> {
    let (p, e) = prime_power(u64::from(q))?;
    FieldCtx::new(p, e, DEFAULT_MAX_ORDER)
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    poly_trim(&mut a);
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = (lead as u64 * c as u64 % p as u64) as u32;
            a[shift + i] = (a[shift + i] + p - t) % p;
        }
        poly_trim(&mut a);
    }
    a
}

pub(crate) fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_rem(out.into_iter().map(|c| c as u32).collect(), m, p)
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut divisor = digits(n, p, d);
            divisor.push(1);
            if poly_rem(m.to_vec(), &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn first_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for n in 0..count {
        let mut m = digits(n, p, e as usize);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds `F_{p^e}`, refusing fields with more than `max_order` elements.
    pub fn new(p: u32, e: u32, max_order: u32) -> Result<Self, FieldError> {
        if e == 0 {
            return Err(FieldError::InvalidDegree);
        }
        if p.is_multiple_of(2) {
            return Err(if p == 2 {
                FieldError::EvenCharacteristic(2u64.saturating_pow(e))
            } else {
                FieldError::NotPrime(p as u64)
            });
        }
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > max_order as u64 {
            return Err(FieldError::TooLarge {
                q,
                bound: max_order,
            });
        }
        let q = q as u32;
        let modulus = if e == 1 {
            Vec::new()
        } else {
            first_irreducible(p, e)
        };
        let spec = FieldSpec { p, e, q, modulus };

        let neg = (0..q)
            .map(|a| {
                let d = digits(a as u64, p, e as usize);
                encode(d.iter().map(|&c| (p - c) % p), p)
            })
            .collect();

        let mult = |a: u32, b: u32| -> u32 {
            if e == 1 {
                (a as u64 * b as u64 % p as u64) as u32
            } else {
                let pa = digits(a as u64, p, e as usize);
                let pb = digits(b as u64, p, e as usize);
                encode(poly_mul_mod(&pa, &pb, &spec.modulus, p).into_iter(), p)
            }
        };

        let group_order = q - 1;
        let mut exp = Vec::with_capacity(group_order as usize);
        let mut generator = 0;
        for candidate in 1..q {
            exp.clear();
            let mut acc = 1u32;
            loop {
                exp.push(acc);
                acc = mult(acc, candidate);
                if acc == 1 || exp.len() as u32 > group_order {
                    break;
                }
            }
            if exp.len() as u32 == group_order {
                generator = candidate;
                break;
            }
        }
        debug_assert_ne!(generator, 0, "multiplicative group is cyclic");

        let mut log = vec![u32::MAX; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }

        Ok(FieldCtx {
            residue_class: (q % 4) as u8,
            spec,
            generator: Elem(generator),
            exp,
            log,
            neg,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.spec.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    /// `q mod 4`, either 1 or 3.
    #[inline]
    pub fn residue_class(&self) -> u8 {
        self.residue_class
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            p: self.spec.p,
            e: self.spec.e,
            q: self.spec.q,
            modulus: self.spec.modulus.clone(),
            g: self.generator,
            residue_class: self.residue_class,
        }
    }

    /// Checked conversion from a canonical index.
    pub fn elem(&self, index: u64) -> Result<Elem, FieldError> {
        if index < self.q() as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(FieldError::OutOfRange { index, q: self.q() })
        }
    }

    /// Maps an integer into the prime subfield (`n mod p`).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q()).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q()).map(Elem)
    }

    /// Coefficient vector of `a`, constant term first.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.spec.p, self.spec.e as usize)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let n = self.q() - 1;
        let k = self.log[a.index()] + self.log[b.index()];
        Elem(self.exp[(if k >= n { k - n } else { k }) as usize])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q() - 1;
        Ok(Elem(self.exp[((n - self.log[a.index()]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatches one of the six field operations. Unary operations ignore `b`.
    pub fn apply(&self, op: ArithOp, a: Elem, b: Option<Elem>) -> Result<Elem, FieldError> {
        let rhs = || b.ok_or(FieldError::DivisionByZero);
        match op {
            ArithOp::Add => Ok(self.add(a, b.unwrap_or(Elem::ZERO))),
            ArithOp::Sub => Ok(self.sub(a, b.unwrap_or(Elem::ZERO))),
            ArithOp::Mul => Ok(self.mul(a, b.unwrap_or(Elem::ONE))),
            ArithOp::Div => self.div(a, rhs()?),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    /// `a^n` by square-and-multiply.
    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Discrete log of a nonzero element with respect to the generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    /// `g^k`, exponent taken mod `q - 1`.
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.exp[(k % (self.q() as u64 - 1)) as usize])
    }

    /// The quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    #[inline]
    pub fn chi(&self, x: Elem) -> i8 {
        if x.is_zero() {
            0
        } else if self.log[x.index()].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// True for 0 and the nonzero squares.
    #[inline]
    pub fn is_square(&self, x: Elem) -> bool {
        self.chi(x) >= 0
    }

    /// Both square roots of `x`, smaller index first; `None` for nonsquares.
    pub fn sqrt(&self, x: Elem) -> Option<(Elem, Elem)> {
        if x.is_zero() {
            return Some((Elem::ZERO, Elem::ZERO));
        }
        let l = self.log[x.index()];
        if l % 2 == 1 {
            return None;
        }
        let r = self.exp[(l / 2) as usize];
        let s = self.neg(Elem(r)).0;
        Some((Elem(r.min(s)), Elem(r.max(s))))
    }

    /// Enumerates the character pair counts and compares them with
    /// `((q-3)/4, (q-3)/4, (q+1)/4, (q-3)/4)` for `q = 3 mod 4` and
    /// `((q-5)/4, (q-1)/4, (q-1)/4, (q-1)/4)` for `q = 1 mod 4`.
    pub fn char_pair_counts(&self) -> CharPairReport {
        let mut counts = CharPairCounts {
            a: 0,
            b: 0,
            c: 0,
            d: 0,
        };
        for i in self.elements() {
            let next = self.add(i, Elem::ONE);
            match (self.chi(i), self.chi(next)) {
                (1, 1) => counts.a += 1,
                (-1, -1) => counts.b += 1,
                (1, -1) => counts.c += 1,
                (-1, 1) => counts.d += 1,
                _ => {}
            }
        }
        let q = self.q();
        let predicted = if self.residue_class == 3 {
            CharPairCounts {
                a: (q - 3) / 4,
                b: (q - 3) / 4,
                c: (q + 1) / 4,
                d: (q - 3) / 4,
            }
        } else {
            CharPairCounts {
                a: (q - 5) / 4,
                b: (q - 1) / 4,
                c: (q - 1) / 4,
                d: (q - 1) / 4,
            }
        };
        CharPairReport {
            q,
            residue_class: self.residue_class,
            matches: counts == predicted,
            counts,
            predicted,
        }
    }
}

fn encode(coeffs: impl Iterator<Item = u32>, p: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for c in coeffs {
        out += c * place;
        place *= p;
    }
    out
}
