//! Multiplicative characters of GF(q)^*.
//!
//! The character with index `m` sends `g^k` to `ζ^(mk)`, `ζ = exp(2πi/(q-1))`,
//! where `g` is the field's fixed generator. Values are kept as exact
//! exponents of `ζ`. Zero and the point at infinity both map to 1; this is a
//! sequence-design convention and does not extend multiplicativity to 0.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;
use crate::finite_field::{Field, FieldError, DLOG_TABLE_LIMIT};
use crate::projective::{GroupError, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("character order {order} does not divide q-1 = {group_order}")]
    OrderDoesNotDivide { order: u32, group_order: u32 },
    #[error("character order must be at least 1")]
    ZeroOrder,
    #[error("field of order {q} exceeds the discrete-log table limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },
    #[error("point belongs to a different field")]
    FieldMismatch,
}

impl From<GroupError> for CharacterError {
    fn from(_: GroupError) -> Self {
        CharacterError::FieldMismatch
    }
}

impl From<FieldError> for CharacterError {
    fn from(_: FieldError) -> Self {
        CharacterError::FieldMismatch
    }
}

/// How to pick a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterSpec {
    /// The character `g^k -> ζ^(mk)`; reduced modulo `q - 1`.
    Index(u32),
    /// The canonical character of exact order `d`, index `(q-1)/d`.
    Order(u32),
}

/// `exp(2πi · exponent / denominator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitValue {
    pub exponent: u32,
    pub denominator: u32,
}

impl UnitValue {
    pub fn one(denominator: u32) -> Self {
        UnitValue {
            exponent: 0,
            denominator,
        }
    }

    /// The same root of unity with the fraction in lowest terms.
    pub fn reduced(self) -> (u32, u32) {
        if self.exponent == 0 {
            return (0, 1);
        }
        let g = gcd(self.exponent as u64, self.denominator as u64) as u32;
        (self.exponent / g, self.denominator / g)
    }

    pub fn to_complex(self) -> Complex64 {
        root_of_unity(self.exponent, self.denominator)
    }
}

/// `exp(2πi e/n)`, with exact values at the quarter turns.
pub fn root_of_unity(e: u32, n: u32) -> Complex64 {
    let e = e % n.max(1);
    let n = n.max(1) as u64;
    let e4 = 4 * e as u64;
    if e4.is_multiple_of(n) {
        return match e4 / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * e as f64 / n as f64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    field: Field,
    index: u32,
    order: u32,
}

/// JSON form `{"index": m, "order": d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CharacterDescription {
    pub index: u32,
    pub order: u32,
}

impl Character {
    pub fn new(field: &Field, spec: CharacterSpec) -> Result<Self, CharacterError> {
        if !field.has_dlog_table() {
            return Err(CharacterError::FieldTooLarge {
                q: field.order() as u64,
                limit: DLOG_TABLE_LIMIT,
            });
        }
        let n = field.order() - 1;
        let index = match spec {
            CharacterSpec::Index(m) => m % n,
            CharacterSpec::Order(0) => return Err(CharacterError::ZeroOrder),
            CharacterSpec::Order(d) => {
                if !n.is_multiple_of(d) {
                    return Err(CharacterError::OrderDoesNotDivide {
                        order: d,
                        group_order: n,
                    });
                }
                (n / d) % n
            }
        };
        let order = n / gcd(index as u64, n as u64) as u32;
        Ok(Character {
            field: field.clone(),
            index,
            order,
        })
    }

    pub fn trivial(field: &Field) -> Result<Self, CharacterError> {
        Self::new(field, CharacterSpec::Index(0))
    }

    /// The order-2 character (Legendre symbol on prime fields). Needs odd q.
    pub fn quadratic(field: &Field) -> Result<Self, CharacterError> {
        Self::new(field, CharacterSpec::Order(2))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `q - 1`, the denominator of every emitted exponent.
    pub fn denominator(&self) -> u32 {
        self.field.order() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn description(&self) -> CharacterDescription {
        CharacterDescription {
            index: self.index,
            order: self.order,
        }
    }

    /// Exponent of `χ` at a point code (`q` is infinity).
    pub(crate) fn exponent_at_code(&self, z: u32) -> u32 {
        if z == 0 || z == self.field.order() {
            return 0;
        }
        let n = self.denominator() as u64;
        ((self.index as u64 * self.field.log_code(z) as u64) % n) as u32
    }

    pub fn eval(&self, pt: &ProjPoint) -> Result<UnitValue, CharacterError> {
        let z = pt.code_in(&self.field)?;
        Ok(UnitValue {
            exponent: self.exponent_at_code(z),
            denominator: self.denominator(),
        })
    }

    /// How often each exponent `0..q-1` occurs over `F_q^*`.
    pub fn value_histogram(&self) -> Vec<u64> {
        let n = self.denominator() as usize;
        let mut hist = vec![0u64; n];
        for z in 1..self.field.order() {
            hist[self.exponent_at_code(z) as usize] += 1;
        }
        hist
    }

    /// `Σ_{x ∈ F_q^*} χ(x)` decided exactly: nontrivial characters hit every
    /// `d`-th root of unity equally often, and those roots sum to zero.
    pub fn sum_is_exactly_zero(&self) -> bool {
        if self.is_trivial() {
            return false;
        }
        let n = self.denominator();
        let step = n / self.order;
        let hist = self.value_histogram();
        let expected = (n / self.order) as u64;
        hist.iter().enumerate().all(|(e, &count)| {
            if (e as u32).is_multiple_of(step) {
                count == expected
            } else {
                count == 0
            }
        })
    }

    /// The same sum, realized in floating point.
    pub fn complex_sum(&self) -> Complex64 {
        let n = self.denominator();
        (1..self.field.order())
            .map(|z| root_of_unity(self.exponent_at_code(z), n))
            .sum()
    }
}
