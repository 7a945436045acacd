//! Periodic auto- and cross-correlation of unit-modulus sequences.
//!
//! `T_s(a, b) = Σ_j a_j · conj(b_{(j+s) mod N})`. Each term is the root of
//! unity `ζ^(e_a - e_b)`, looked up from a table whose quarter-turn entries
//! are exact, so ±1 and ±i sequences produce exact integer sums in `f64`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::characters::root_of_unity;
use crate::exec::{map_range, ExecMode};
use crate::sequence::{CharSequence, Family};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrelationError {
    #[error("sequences have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("sequences use different root-of-unity denominators {0} and {1}")]
    AlphabetMismatch(u32, u32),
}

fn roots(denominator: u32) -> Vec<Complex64> {
    (0..denominator)
        .map(|e| root_of_unity(e, denominator))
        .collect()
}

fn check_pair(a: &CharSequence, b: &CharSequence) -> Result<(), CorrelationError> {
    if a.len() != b.len() {
        return Err(CorrelationError::LengthMismatch(a.len(), b.len()));
    }
    if a.denominator() != b.denominator() {
        return Err(CorrelationError::AlphabetMismatch(
            a.denominator(),
            b.denominator(),
        ));
    }
    Ok(())
}

fn correlate_at(a: &[u32], b: &[u32], n: u32, table: &[Complex64], s: usize) -> Complex64 {
    let len = a.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..len {
        let k = (a[j] + n - b[(j + s) % len]) % n;
        acc += table[k as usize];
    }
    acc
}

fn spectrum_raw(a: &CharSequence, b: &CharSequence, table: &[Complex64]) -> Vec<Complex64> {
    let n = a.denominator();
    (0..a.len())
        .map(|s| correlate_at(a.exponents(), b.exponents(), n, table, s))
        .collect()
}

/// `T_s(seq)`, the in-phase product with the left shift by `s`.
pub fn autocorrelation(seq: &CharSequence, s: usize) -> Complex64 {
    let table = roots(seq.denominator());
    correlate_at(
        seq.exponents(),
        seq.exponents(),
        seq.denominator(),
        &table,
        s % seq.len().max(1),
    )
}

pub fn cross_correlation(
    a: &CharSequence,
    b: &CharSequence,
    s: usize,
) -> Result<Complex64, CorrelationError> {
    check_pair(a, b)?;
    let table = roots(a.denominator());
    Ok(correlate_at(
        a.exponents(),
        b.exponents(),
        a.denominator(),
        &table,
        s % a.len().max(1),
    ))
}

/// Integer correlation of two ±1 sequences; `None` unless both are binary.
pub fn binary_cross_correlation(a: &CharSequence, b: &CharSequence, s: usize) -> Option<i64> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let (x, y) = (a.signs()?, b.signs()?);
    let n = x.len();
    Some((0..n).map(|j| x[j] * y[(j + s) % n]).sum())
}

/// `T_s` for every shift `s = 0..N`.
pub fn cross_spectrum(
    a: &CharSequence,
    b: &CharSequence,
) -> Result<Vec<Complex64>, CorrelationError> {
    check_pair(a, b)?;
    Ok(spectrum_raw(a, b, &roots(a.denominator())))
}

/// Full autocorrelation spectrum with its off-peak maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub length: usize,
    #[serde(serialize_with = "serialize_spectrum")]
    pub spectrum: Vec<Complex64>,
    /// `max_{0 < s < N} |T_s|`.
    pub tmax: f64,
    /// Smallest shift attaining `tmax`; 0 when `N < 2`.
    pub argmax_shift: usize,
}

fn serialize_spectrum<S: serde::Serializer>(
    spectrum: &[Complex64],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(spectrum.len()))?;
    for z in spectrum {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl CorrelationReport {
    /// `T_0`.
    pub fn peak(&self) -> Complex64 {
        self.spectrum.first().copied().unwrap_or_default()
    }
}

fn off_peak_max(spectrum: &[Complex64]) -> (f64, usize) {
    let mut best = (0.0, 0);
    for (s, z) in spectrum.iter().enumerate().skip(1) {
        let v = z.norm();
        if s == 1 || v > best.0 {
            best = (v, s);
        }
    }
    best
}

pub fn autocorrelation_report(seq: &CharSequence) -> CorrelationReport {
    let spectrum = spectrum_raw(seq, seq, &roots(seq.denominator()));
    let (tmax, argmax_shift) = off_peak_max(&spectrum);
    CorrelationReport {
        length: seq.len(),
        spectrum,
        tmax,
        argmax_shift,
    }
}

/// `max_{0 < s < N} |T_s|`.
pub fn tmax_auto(seq: &CharSequence) -> f64 {
    autocorrelation_report(seq).tmax
}

/// Where the family-wide maximum `T(A)` is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyMaximum {
    pub value: f64,
    pub i: usize,
    pub j: usize,
    pub s: usize,
}

impl FamilyMaximum {
    /// Larger value wins; ties go to the lexicographically smaller `(i, j, s)`.
    fn better(self, other: Self) -> Self {
        if other.value > self.value
            || (other.value == self.value && (other.i, other.j, other.s) < (self.i, self.j, self.s))
        {
            other
        } else {
            self
        }
    }
}

/// `T(A)`: max `|T_s(a_i, a_j)|` over all ordered pairs and shifts, except
/// `s = 0` on the diagonal. Rows are scanned in parallel under
/// [`ExecMode::Parallel`]; the reduction is order-independent.
pub fn tmax_family(family: &Family, mode: ExecMode) -> FamilyMaximum {
    let members = family.members();
    let table = roots(members[0].denominator());
    let row_best = |i: usize| -> Option<FamilyMaximum> {
        let mut best: Option<FamilyMaximum> = None;
        for (j, b) in members.iter().enumerate() {
            let spectrum = spectrum_raw(&members[i], b, &table);
            for (s, z) in spectrum.iter().enumerate() {
                if i == j && s == 0 {
                    continue;
                }
                let cand = FamilyMaximum {
                    value: z.norm(),
                    i,
                    j,
                    s,
                };
                best = Some(match best {
                    Some(b) => b.better(cand),
                    None => cand,
                });
            }
        }
        best
    };
    map_range(mode, members.len(), row_best)
        .into_iter()
        .flatten()
        .reduce(FamilyMaximum::better)
        .unwrap_or(FamilyMaximum {
            value: 0.0,
            i: 0,
            j: 0,
            s: 0,
        })
}

/// Autocorrelation reports for every member, in member order.
pub fn member_reports(family: &Family, mode: ExecMode) -> Vec<CorrelationReport> {
    map_range(mode, family.size(), |i| {
        autocorrelation_report(&family.members()[i])
    })
}
