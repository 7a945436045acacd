//! Exact arithmetic in GF(p^m).
//!
//! Elements use the polynomial basis over `Z_p` modulo a monic irreducible
//! polynomial. Internally an element is stored as its base-`p` code
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`; prime fields are simply `m = 1`.
//!
//! Modulus and generator choices are deterministic: when no modulus is
//! supplied the lexicographically smallest irreducible monic polynomial is
//! used, and the generator is the smallest code of multiplicative order
//! `q - 1`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Fields up to this size get eager discrete-log tables.
pub const DLOG_TABLE_LIMIT: u64 = 1 << 16;

/// Element codes (and the point at infinity, coded as `q`) fit in a `u32`.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: u32, got: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("coefficient {0} is out of range for the characteristic")]
    CoefficientOutOfRange(u32),
    #[error("modulus is reducible over Z_p")]
    ReduciblePolynomial,
    #[error("supplied generator does not have multiplicative order q-1")]
    NotAGenerator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("field of order {q} exceeds the limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
}

/// The data describing one finite field. Shared behind [`Field`].
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, `m + 1` coefficients, constant term first.
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[k] = g^k` for `k < q-1`; empty beyond [`DLOG_TABLE_LIMIT`].
    exp: Vec<u32>,
    /// `log[x] = k` with `g^k = x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Cheaply clonable handle to an immutable [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

/// JSON form of a field: `{"p":3,"m":2,"modulus":[1,0,1],"generator":[1,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<u32>>,
}

impl Field {
    /// Builds GF(p^m). Without a modulus the smallest irreducible one is chosen.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        Self::with_generator(p, m, modulus, None)
    }

    /// GF(q) from the field size alone.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, m) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, m, None)
    }

    /// Like [`Field::new`], optionally pinning the generator (given as
    /// coefficients, constant term first). A pinned generator is validated.
    pub fn with_generator(
        p: u64,
        m: u32,
        modulus: Option<&[u32]>,
        generator: Option<&[u32]>,
    ) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::FieldTooLarge {
                q: q.min(u64::MAX as u128) as u64,
                limit: MAX_FIELD_ORDER,
            });
        }
        let (p32, q) = (p as u32, q as u32);

        let modulus = match modulus {
            Some(poly) => {
                validate_modulus(poly, p32, m)?;
                poly.to_vec()
            }
            None => smallest_irreducible(p32, m),
        };

        let mut spec = FieldSpec {
            p: p32,
            m,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };

        spec.generator = match generator {
            Some(coeffs) => {
                let code = spec.encode(coeffs)?;
                if !spec.has_full_order(code) {
                    return Err(FieldError::NotAGenerator);
                }
                code
            }
            None => spec.smallest_generator(),
        };

        if (q as u64) <= DLOG_TABLE_LIMIT {
            spec.build_tables();
        }
        Ok(Field(Arc::new(spec)))
    }

    pub fn from_description(desc: &FieldDescription) -> Result<Self, FieldError> {
        Self::with_generator(
            desc.p as u64,
            desc.m,
            Some(&desc.modulus),
            desc.generator.as_deref(),
        )
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            p: self.0.p,
            m: self.0.m,
            modulus: self.0.modulus.clone(),
            generator: Some(self.0.decode(self.0.generator)),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Field size `q = p^m`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn has_dlog_table(&self) -> bool {
        !self.0.log.is_empty()
    }

    /// The field's fixed primitive element.
    pub fn generator(&self) -> FieldElement {
        self.element(self.0.generator)
    }

    /// First element (ascending code order) of multiplicative order `q - 1`.
    /// Independent of any generator pinned at construction.
    pub fn find_generator(&self) -> FieldElement {
        self.element(self.0.smallest_generator())
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element from its base-`p` code. Panics if `code >= q`.
    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.0.q, "element code {code} out of range");
        FieldElement {
            field: self.clone(),
            code,
        }
    }

    /// Element from polynomial-basis coefficients (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        Ok(self.element(self.0.encode(coeffs)?))
    }

    /// Embeds an integer through `Z -> Z_p`.
    pub fn from_int(&self, n: u64) -> FieldElement {
        self.element((n % self.0.p as u64) as u32)
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |c| self.element(c))
    }

    /// `k` such that `g^k = x` for the fixed generator `g`.
    pub fn discrete_log(&self, x: &FieldElement) -> Result<u32, FieldError> {
        self.check_same(x)?;
        if x.code == 0 {
            return Err(FieldError::LogOfZero);
        }
        if !self.has_dlog_table() {
            return Err(FieldError::FieldTooLarge {
                q: self.0.q as u64,
                limit: DLOG_TABLE_LIMIT,
            });
        }
        Ok(self.0.log[x.code as usize])
    }

    fn check_same(&self, x: &FieldElement) -> Result<(), FieldError> {
        if &x.field == self {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn same_as(&self, other: &Field) -> bool {
        self == other
    }

    // Code-level arithmetic shared by the other modules. Callers guarantee
    // codes are in range.

    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, b)
    }

    pub(crate) fn sub_codes(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, self.0.neg(b))
    }

    pub(crate) fn neg_code(&self, a: u32) -> u32 {
        self.0.neg(a)
    }

    pub(crate) fn mul_codes(&self, a: u32, b: u32) -> u32 {
        self.0.mul(a, b)
    }

    /// Inverse of a nonzero code.
    pub(crate) fn inv_code(&self, a: u32) -> u32 {
        self.0.inv(a)
    }

    /// Discrete log of a nonzero code; requires tables.
    pub(crate) fn log_code(&self, a: u32) -> u32 {
        self.0.log[a as usize]
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.modulus == other.0.modulus
                && self.0.generator == other.0.generator)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
        self.0.generator.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.0.q)?;
        if self.0.m > 1 {
            write!(f, ", modulus {:?}", self.0.modulus)?;
        }
        write!(f, ")")
    }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn encode(&self, coeffs: &[u32]) -> Result<u32, FieldError> {
        if coeffs.len() > self.m as usize {
            return Err(FieldError::DegreeMismatch {
                expected: self.m,
                got: coeffs.len(),
            });
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(FieldError::CoefficientOutOfRange(c));
            }
            code = code * self.p + c;
        }
        Ok(code)
    }

    fn decode(&self, mut code: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let digit = (a % self.p + b % self.p) % self.p;
            out += digit * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let digit = (self.p - a % self.p) % self.p;
            out += digit * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if !self.log.is_empty() {
            let n = self.q as u64 - 1;
            let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
            return self.exp[k as usize];
        }
        self.poly_mul(a, b)
    }

    /// Schoolbook product reduced by the modulus. Used to build the tables
    /// and for fields beyond the table limit.
    pub(crate) fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        let x: Vec<u64> = self.decode(a).into_iter().map(u64::from).collect();
        let y: Vec<u64> = self.decode(b).into_iter().map(u64::from).collect();
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        // Modulus is monic: x^m = -(f_0 + ... + f_{m-1} x^{m-1}).
        for top in (m..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &f) in self.modulus[..m].iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + p - lead * f as u64 % p) % p;
            }
        }
        prod[..m].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    fn poly_pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_mul(acc, b);
            }
            b = self.poly_mul(b, b);
            exp >>= 1;
        }
        acc
    }

    fn pow(&self, base: u32, exp: u64) -> u32 {
        if base == 0 {
            return if exp == 0 { 1 } else { 0 };
        }
        if self.m == 1 {
            return arith::pow_mod(base as u64, exp, self.p as u64) as u32;
        }
        if !self.log.is_empty() {
            let n = self.q as u64 - 1;
            let k = (self.log[base as usize] as u64 * (exp % n)) % n;
            return self.exp[k as usize];
        }
        self.poly_pow(base, exp)
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if self.m == 1 {
            return arith::inv_mod(a as u64, self.p as u64) as u32;
        }
        if !self.log.is_empty() {
            let n = self.q - 1;
            let k = (n - self.log[a as usize]) % n;
            return self.exp[k as usize];
        }
        self.poly_pow(a, self.q as u64 - 2)
    }

    fn has_full_order(&self, code: u32) -> bool {
        if code == 0 {
            return false;
        }
        let n = self.q as u64 - 1;
        if self.poly_pow(code, n) != 1 {
            return false;
        }
        arith::prime_factors(n)
            .into_iter()
            .all(|r| self.poly_pow(code, n / r) != 1)
    }

    fn smallest_generator(&self) -> u32 {
        (1..self.q)
            .find(|&c| self.has_full_order(c))
            .expect("every finite field has a primitive element")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for k in 0..n {
            exp.push(x);
            log[x as usize] = k as u32;
            x = self.poly_mul(x, self.generator);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn validate_modulus(poly: &[u32], p: u32, m: u32) -> Result<(), FieldError> {
    if poly.len() != m as usize + 1 {
        return Err(FieldError::DegreeMismatch {
            expected: m,
            got: poly.len().saturating_sub(1),
        });
    }
    if let Some(&c) = poly.iter().find(|&&c| c >= p) {
        return Err(FieldError::CoefficientOutOfRange(c));
    }
    if poly[m as usize] != 1 {
        return Err(FieldError::NotMonic);
    }
    let as_u64: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    if !arith::is_irreducible(&as_u64, p as u64) {
        return Err(FieldError::ReduciblePolynomial);
    }
    Ok(())
}

/// Scans the lower `m` coefficients in ascending base-`p` code order.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|code| {
            let mut poly: Vec<u64> = (0..m)
                .map(|i| code / (p as u64).pow(i) % p as u64)
                .collect();
            poly.push(1);
            poly
        })
        .find(|poly| arith::is_irreducible(poly, p as u64))
        .map(|poly| poly.into_iter().map(|c| c as u32).collect())
        .expect("irreducible polynomials exist in every degree")
}

/// An element of a finite field, tied to the field it came from.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Base-`p` code of the coefficient vector.
    pub fn code(&self) -> u32 {
        self.code
    }

    /// Polynomial-basis coefficients, constant term first, length `m`.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.0.decode(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn binary(
        &self,
        other: &Self,
        op: impl FnOnce(&FieldSpec, u32, u32) -> u32,
    ) -> Result<Self, FieldError> {
        self.field.check_same(other)?;
        Ok(self.field.element(op(&self.field.0, self.code, other.code)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, FieldSpec::add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, |f, a, b| f.add(a, f.neg(b)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, FieldSpec::mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        self.field.element(self.field.0.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.code == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.field.element(self.field.0.inv(self.code)))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.field.element(self.field.0.pow(self.code, k))
    }

    /// Smallest `k >= 1` with `x^k = 1`. Panics on zero.
    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero(), "zero has no multiplicative order");
        let n = self.field.order() as u64 - 1;
        let mut order = n;
        for r in arith::prime_factors(n) {
            while order.is_multiple_of(r) && self.pow(order / r).is_one() {
                order /= r;
            }
        }
        order
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.code);
        }
        let coeffs = self.coeffs();
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

// Operator forms panic on mixed fields; use the `try_*` methods to get a
// `FieldMismatch` error instead.

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}
