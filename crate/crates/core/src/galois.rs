//! Exact arithmetic in small finite fields GF(p^e).
//!
//! A [`Field`] is a cheap, cloneable handle to an immutable [`FieldSpec`].
//! Elements are plain [`FieldElement`] indices; every operation goes through
//! the field handle, so one field description can be shared by any number of
//! matrices, codes and threads.
//!
//! Element `i` is the residue polynomial whose coefficients are the base-`p`
//! digits of `i`, constant term first. Index order is therefore zero, one, and
//! then lexicographic in the coefficients with the leading coefficient most
//! significant. Modulus polynomials are likewise written constant term first:
//! `x^2 + x + 1` over GF(2) is `[1, 1, 1]`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Fields larger than this are refused; the library targets desk-scale codes.
pub const MAX_ORDER: u64 = 1 << 16;

/// Multiplication and addition tables are precomputed up to this order.
const TABLE_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {degree} with coefficients below {p}, got {modulus:?}")]
    InvalidModulus { p: u32, degree: u32, modulus: Vec<u32> },
    #[error("modulus {modulus:?} is reducible over GF({p})")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },
    #[error("field of order {0} is larger than the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element index {index} is out of range for a field of order {q}")]
    ElementOutOfRange { index: u64, q: usize },
}

/// An element of some [`Field`], stored as its index in enumeration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `{p, e, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, constant term first. When absent the first irreducible
    /// monic polynomial of degree `e` in index order is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// Immutable field description with precomputed lookup data.
pub struct FieldSpec {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    q: usize,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
    inv_table: Vec<u32>,
}

#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.e, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p), constant term first, no trailing zeros.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = pow_mod(b[b.len() - 1] as u64, (p - 2) as u64, p as u64) as u32;
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (factor as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn digits(mut index: u64, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = (index % p as u64) as u32;
            index /= p as u64;
            d
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// True when the monic polynomial `modulus` has no monic factor of degree
/// `1..=deg/2`. Brute force; fine for the small degrees used here.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^e) from a monic modulus given constant term first.
    pub fn new(p: u32, e: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        if modulus.len() != e as usize + 1
            || modulus[e as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::InvalidModulus { p, degree: e, modulus: modulus.to_vec() });
        }
        if !is_irreducible(modulus, p) {
            return Err(FieldError::ReducibleModulus { p, modulus: modulus.to_vec() });
        }
        Ok(Field(Arc::new(FieldSpec::build(p, e, modulus.to_vec(), q as usize))))
    }

    /// The prime field GF(p), modulus `x`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, &[0, 1])
    }

    /// GF(p^e) using the first irreducible monic modulus in index order.
    pub fn with_default_modulus(p: u32, e: u32) -> Result<Field, FieldError> {
        let modulus = Field::default_modulus(p, e)?;
        Field::new(p, e, &modulus)
    }

    pub fn default_modulus(p: u32, e: u32) -> Result<Vec<u32>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if e == 1 {
            return Ok(vec![0, 1]);
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        (0..q)
            .map(|low| {
                let mut m = digits(low, p, e);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .ok_or(FieldError::ReducibleModulus { p, modulus: Vec::new() })
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field, FieldError> {
        match &desc.modulus {
            Some(m) => Field::new(desc.p, desc.e, m),
            None => Field::with_default_modulus(desc.p, desc.e),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, e: self.0.e, modulus: Some(self.0.modulus.clone()) }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    /// Field order q = p^e.
    #[inline]
    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given enumeration index.
    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.0.q as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::ElementOutOfRange { index, q: self.0.q })
        }
    }

    /// Image of an integer under the canonical map Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let p = self.0.p;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r = poly_rem(&reduced, &self.0.modulus, p);
        Ok(FieldElement(undigits(&r, p) as u32))
    }

    /// Residue polynomial of `a`, constant term first, length `e`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0 as u64, self.0.p, self.0.e)
    }

    /// All q elements, zero first, in index order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q as u32).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q as u32).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = &*self.0;
        match &s.add_table {
            Some(t) => FieldElement(t[a.0 as usize * s.q + b.0 as usize]),
            None => FieldElement(s.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = &*self.0;
        match &s.mul_table {
            Some(t) => FieldElement(t[a.0 as usize * s.q + b.0 as usize]),
            None => FieldElement(s.mul_slow(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(FieldElement(self.0.inv_table[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a;
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Sum of elementwise products.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter().zip(b).fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Errors with [`FieldError::FieldMismatch`] unless both handles describe
    /// the same field.
    pub fn ensure_same(&self, other: &Field) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }
}

impl FieldSpec {
    fn build(p: u32, e: u32, modulus: Vec<u32>, q: usize) -> FieldSpec {
        let mut spec = FieldSpec {
            p,
            e,
            modulus,
            q,
            add_table: None,
            mul_table: None,
            neg_table: Vec::new(),
            inv_table: Vec::new(),
        };
        spec.neg_table = (0..q as u32)
            .map(|a| {
                let c: Vec<u32> = digits(a as u64, p, e).iter().map(|&d| (p - d) % p).collect();
                undigits(&c, p) as u32
            })
            .collect();
        if q <= TABLE_ORDER {
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    add[a as usize * q + b as usize] = spec.add_slow(a, b);
                    mul[a as usize * q + b as usize] = spec.mul_slow(a, b);
                }
            }
            spec.add_table = Some(add);
            spec.mul_table = Some(mul);
        }
        // a^(q-2) = a^-1 on the multiplicative group
        spec.inv_table = (0..q as u32)
            .map(|a| if a == 0 { 0 } else { spec.pow_slow(a, q as u64 - 2) })
            .collect();
        spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (digits(a as u64, self.p, self.e), digits(b as u64, self.p, self.e));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p) as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let (da, db) = (digits(a as u64, self.p, self.e), digits(b as u64, self.p, self.e));
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        undigits(&poly_rem(&prod, &self.modulus, self.p), self.p) as u32
    }

    fn pow_slow(&self, a: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }
}
