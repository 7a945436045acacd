//! The projective line over GF(q) and its group of fractional linear maps
//! `z -> (az + b) / (cz + d)`.
//!
//! Maps are stored in canonical form: the first nonzero entry of
//! `(a, b, c, d)` is 1, so scalar multiples of a matrix collapse to a single
//! representative and equality is structural.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::finite_field::{Field, FieldElement, FieldError};

/// `enumerate_group` refuses fields larger than this.
pub const ENUMERATION_LIMIT: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("singular map: ad - bc = 0")]
    Singular,
    #[error("field of order {q} exceeds the enumeration limit {limit}")]
    FieldTooLarge { q: u32, limit: u32 },
    #[error("no fixed-point-free map of order q+1 found over GF({0})")]
    NotFound(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of the projective line: a field element or infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    /// Internal code: element code for finite points, `q` for infinity.
    pub(crate) fn code_in(&self, field: &Field) -> Result<u32, GroupError> {
        match self {
            ProjPoint::Infinity => Ok(field.order()),
            ProjPoint::Finite(x) if x.field() == field => Ok(x.code()),
            ProjPoint::Finite(_) => Err(GroupError::FieldMismatch),
        }
    }

    pub(crate) fn from_code(field: &Field, code: u32) -> Self {
        if code == field.order() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(field.element(code))
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Finite points serialize as coefficient vectors, infinity as `"inf"`.
impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ProjPoint::Finite(x) => x.coeffs().serialize(serializer),
            ProjPoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// All `q + 1` points: finite ones in ascending code order, then infinity.
pub fn projective_line(field: &Field) -> Vec<ProjPoint> {
    (0..=field.order())
        .map(|c| ProjPoint::from_code(field, c))
        .collect()
}

/// A fractional linear map in canonical form.
#[derive(Clone)]
pub struct MoebiusMap {
    field: Field,
    coeffs: [u32; 4],
}

impl PartialEq for MoebiusMap {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for MoebiusMap {}

impl Hash for MoebiusMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.elements();
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Serialized as `[a, b, c, d]`, each a coefficient vector.
impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for x in self.elements() {
            seq.serialize_element(&x.coeffs())?;
        }
        seq.end()
    }
}

impl MoebiusMap {
    pub fn new(
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Result<Self, GroupError> {
        let field = a.field();
        if [b, c, d].iter().any(|x| x.field() != field) {
            return Err(GroupError::FieldMismatch);
        }
        Self::from_codes(field, [a.code(), b.code(), c.code(), d.code()])
    }

    /// From element codes; validates range and nonsingularity.
    pub fn from_codes(field: &Field, coeffs: [u32; 4]) -> Result<Self, GroupError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(FieldError::CoefficientOutOfRange(bad).into());
        }
        if determinant(field, coeffs) == 0 {
            return Err(GroupError::Singular);
        }
        Ok(Self::canonical(field, coeffs))
    }

    /// From four coefficient vectors (the JSON form).
    pub fn from_coeff_vectors(field: &Field, entries: &[Vec<u32>]) -> Result<Self, GroupError> {
        if entries.len() != 4 {
            return Err(GroupError::Singular);
        }
        let mut codes = [0u32; 4];
        for (slot, coeffs) in codes.iter_mut().zip(entries) {
            *slot = field.from_coeffs(coeffs)?.code();
        }
        Self::from_codes(field, codes)
    }

    pub fn identity(field: &Field) -> Self {
        MoebiusMap {
            field: field.clone(),
            coeffs: [1, 0, 0, 1],
        }
    }

    fn canonical(field: &Field, coeffs: [u32; 4]) -> Self {
        let lead = *coeffs.iter().find(|&&c| c != 0).expect("nonsingular map");
        let coeffs = if lead == 1 {
            coeffs
        } else {
            let s = field.inv_code(lead);
            coeffs.map(|c| field.mul_codes(c, s))
        };
        MoebiusMap {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical `(a, b, c, d)` as element codes.
    pub fn codes(&self) -> [u32; 4] {
        self.coeffs
    }

    pub fn elements(&self) -> [FieldElement; 4] {
        self.coeffs.map(|c| self.field.element(c))
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs == [1, 0, 0, 1]
    }

    /// Image of a point code (`q` is infinity).
    pub(crate) fn apply_code(&self, z: u32) -> u32 {
        let f = &self.field;
        let [a, b, c, d] = self.coeffs;
        let q = f.order();
        if z == q {
            return if c == 0 {
                q
            } else {
                f.mul_codes(a, f.inv_code(c))
            };
        }
        let den = f.add_codes(f.mul_codes(c, z), d);
        if den == 0 {
            return q;
        }
        let num = f.add_codes(f.mul_codes(a, z), b);
        f.mul_codes(num, f.inv_code(den))
    }

    pub fn apply(&self, pt: &ProjPoint) -> Result<ProjPoint, GroupError> {
        let z = pt.code_in(&self.field)?;
        Ok(ProjPoint::from_code(&self.field, self.apply_code(z)))
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.field != other.field {
            return Err(GroupError::FieldMismatch);
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        let [a, b, c, d] = self.coeffs;
        let [e, g, h, k] = other.coeffs;
        let dot =
            |x: u32, y: u32, z: u32, w: u32| f.add_codes(f.mul_codes(x, y), f.mul_codes(z, w));
        Self::canonical(
            f,
            [
                dot(a, e, b, h),
                dot(a, g, b, k),
                dot(c, e, d, h),
                dot(c, g, d, k),
            ],
        )
    }

    /// Adjugate inverse `(d, -b, -c, a)`.
    pub fn inverse(&self) -> Self {
        let f = &self.field;
        let [a, b, c, d] = self.coeffs;
        Self::canonical(f, [d, f.neg_code(b), f.neg_code(c), a])
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.compose_unchecked(self);
            k += 1;
        }
        k
    }

    /// Points with `f(pt) = pt`, by direct evaluation over the whole line.
    pub fn fixed_points(&self) -> Vec<ProjPoint> {
        (0..=self.field.order())
            .filter(|&z| self.apply_code(z) == z)
            .map(|z| ProjPoint::from_code(&self.field, z))
            .collect()
    }

    pub(crate) fn orbit_codes(&self, start: u32) -> Vec<u32> {
        let mut out = vec![start];
        let mut z = self.apply_code(start);
        while z != start {
            out.push(z);
            z = self.apply_code(z);
        }
        out
    }

    /// `[start, f(start), f²(start), …]` up to the first repetition.
    pub fn orbit(&self, start: &ProjPoint) -> Result<Vec<ProjPoint>, GroupError> {
        let z = start.code_in(&self.field)?;
        Ok(self
            .orbit_codes(z)
            .into_iter()
            .map(|c| ProjPoint::from_code(&self.field, c))
            .collect())
    }

    /// True when the orbit of 1 sweeps all `q + 1` points.
    pub fn is_full_cycle(&self) -> bool {
        let mut z = 1;
        for _ in 0..self.field.order() {
            z = self.apply_code(z);
            if z == 1 {
                return false;
            }
        }
        self.apply_code(z) == 1
    }
}

fn determinant(field: &Field, [a, b, c, d]: [u32; 4]) -> u32 {
    field.sub_codes(field.mul_codes(a, d), field.mul_codes(b, c))
}

/// All `q(q² - 1)` canonical maps in ascending `(a, b, c, d)` code order.
pub fn enumerate_group(field: &Field) -> Result<Vec<MoebiusMap>, GroupError> {
    let q = field.order();
    if q > ENUMERATION_LIMIT {
        return Err(GroupError::FieldTooLarge {
            q,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::with_capacity((q as usize) * (q as usize * q as usize - 1));
    // Canonical forms are (0, 1, c, d) with c != 0, or (1, b, c, d) with d != bc.
    for c in 1..q {
        for d in 0..q {
            out.push(MoebiusMap {
                field: field.clone(),
                coeffs: [0, 1, c, d],
            });
        }
    }
    for b in 0..q {
        for c in 0..q {
            for d in 0..q {
                let coeffs = [1, b, c, d];
                if determinant(field, coeffs) != 0 {
                    out.push(MoebiusMap {
                        field: field.clone(),
                        coeffs,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// First map `[[a, b], [1, d]]` (scanning `a`, then `b`, then `d` in code
/// order) whose orbit of 1 has length `q + 1`. Such a map has order `q + 1`
/// and no fixed point on the projective line.
pub fn find_psi(field: &Field) -> Result<MoebiusMap, GroupError> {
    let q = field.order();
    for a in 0..q {
        for b in 0..q {
            for d in 0..q {
                let coeffs = [a, b, 1, d];
                if determinant(field, coeffs) == 0 {
                    continue;
                }
                let candidate = MoebiusMap::canonical(field, coeffs);
                if candidate.is_full_cycle() {
                    return Ok(candidate);
                }
            }
        }
    }
    Err(GroupError::NotFound(q))
}
