//! Lower bounds on family correlation and the antipodal-code size bound.
//!
//! For a family of `M` sequences of length `N`:
//! - Welch: `T(A) ≥ N·√((M-1)/(NM-1))`.
//! - Sidelnikov-type estimates of `T_max²` for `M = N^u`:
//!   `N(2u+1 - 1/(1·3·…·(2u-1)))` for binary alphabets and
//!   `N(u+1 - 1/u!)` otherwise; at `u = 1` these are `2N` and `N`.
//!
//! The antipodal bound `M_A(n,d) ≤ (2n³ - 2n(n-2d)²)/(3n - (n-2d)² - 2)` is
//! evaluated in exact rational arithmetic; Kerdock codes meet it with
//! equality.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("antipodal bound denominator 3n - (n-2d)^2 - 2 vanishes for n={n}, d={d}")]
    ZeroDenominator { n: u64, d: u64 },
    #[error("code parameters must satisfy 0 < d < n (n={n}, d={d})")]
    InvalidCode { n: u64, d: u64 },
    #[error("Kerdock codes need an even m >= 2, got {0}")]
    OddM(u32),
    #[error("sequence length and family size must be positive")]
    NonPositive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Binary,
    Nonbinary,
}

pub fn welch_bound(n: u64, m: u64) -> f64 {
    if m <= 1 {
        return 0.0;
    }
    let (n, m) = (n as f64, m as f64);
    n * ((m - 1.0) / (n * m - 1.0)).sqrt()
}

/// `1·3·5·…·(2u-1)`; 1 for `u = 0`.
fn odd_factorial(u: u32) -> f64 {
    (1..=u).map(|k| (2 * k - 1) as f64).product()
}

fn factorial(u: u32) -> f64 {
    (1..=u).map(|k| k as f64).product()
}

/// Lower estimate of `T_max²` for `M = N^u`, `u ≥ 1`.
pub fn sidelnikov_estimate(n: u64, u: u32, alphabet: Alphabet) -> f64 {
    let n = n as f64;
    let u_f = u as f64;
    match alphabet {
        Alphabet::Binary => n * (2.0 * u_f + 1.0 - 1.0 / odd_factorial(u)),
        Alphabet::Nonbinary => n * (u_f + 1.0 - 1.0 / factorial(u)),
    }
}

/// `√(2N)` for binary alphabets, `√N` otherwise. Meant for families with
/// `M ≈ N`, not for single sequences.
pub fn simplified_bound(n: u64, alphabet: Alphabet) -> f64 {
    match alphabet {
        Alphabet::Binary => (2.0 * n as f64).sqrt(),
        Alphabet::Nonbinary => (n as f64).sqrt(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntipodalBoundInput {
    pub n: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntipodalBound {
    pub value: f64,
    pub numerator: i128,
    pub denominator: i128,
}

impl AntipodalBound {
    pub fn ratio(&self) -> Ratio<i128> {
        Ratio::new(self.numerator, self.denominator)
    }
}

pub fn antipodal_code_bound(input: AntipodalBoundInput) -> Result<AntipodalBound, BoundsError> {
    let AntipodalBoundInput { n, d } = input;
    if d == 0 || d >= n {
        return Err(BoundsError::InvalidCode { n, d });
    }
    let (ni, di) = (n as i128, d as i128);
    let gap = ni - 2 * di;
    let num = 2 * ni.pow(3) - 2 * ni * gap * gap;
    let den = 3 * ni - gap * gap - 2;
    if den == 0 {
        return Err(BoundsError::ZeroDenominator { n, d });
    }
    let r = Ratio::new(num, den);
    Ok(AntipodalBound {
        value: *r.numer() as f64 / *r.denom() as f64,
        numerator: *r.numer(),
        denominator: *r.denom(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KerdockParams {
    pub n: u64,
    pub d: u64,
    pub size: u64,
}

/// Length `2^m`, distance `(n - √n)/2`, size `n²` for even `m ≥ 2`.
pub fn kerdock_params(m: u32) -> Result<KerdockParams, BoundsError> {
    if m < 2 || m % 2 == 1 || m > 30 {
        return Err(BoundsError::OddM(m));
    }
    let n = 1u64 << m;
    let root = 1u64 << (m / 2);
    Ok(KerdockParams {
        n,
        d: (n - root) / 2,
        size: n * n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KerdockCheck {
    pub m: u32,
    pub params: KerdockParams,
    pub bound: AntipodalBound,
    /// Bound equals the code size exactly.
    pub meets: bool,
}

pub fn kerdock_check(m: u32) -> Result<KerdockCheck, BoundsError> {
    let params = kerdock_params(m)?;
    let bound = antipodal_code_bound(AntipodalBoundInput {
        n: params.n,
        d: params.d,
    })?;
    Ok(KerdockCheck {
        m,
        params,
        bound,
        meets: bound.ratio() == Ratio::from_integer(params.size as i128),
    })
}

/// All bound values for a family of `M` sequences of length `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M")]
    pub m: u64,
    /// `ln M / ln N`.
    pub u: f64,
    /// `max(1, ⌊u⌋)`, the integer exponent the estimates are evaluated at.
    /// The estimates grow with `u`, so rounding down keeps them valid.
    pub u_integer: u32,
    pub welch: f64,
    pub sidelnikov_sq_binary: f64,
    pub sidelnikov_sq_nonbinary: f64,
    pub simplified_binary: f64,
    pub simplified_nonbinary: f64,
    pub note: &'static str,
}

pub const FAMILY_BOUND_NOTE: &str =
    "Sidelnikov estimates and sqrt(2N)/sqrt(N) are family-level lower bounds for M = N^u (M ~ N when u = 1); they do not apply to single sequences";

impl BoundReport {
    pub fn new(n: u64, m: u64) -> Result<Self, BoundsError> {
        if n == 0 || m == 0 {
            return Err(BoundsError::NonPositive);
        }
        let u = if n > 1 {
            (m as f64).ln() / (n as f64).ln()
        } else {
            0.0
        };
        let u_integer = ((u + 1e-9).floor() as u32).max(1);
        Ok(BoundReport {
            n,
            m,
            u,
            u_integer,
            welch: welch_bound(n, m),
            sidelnikov_sq_binary: sidelnikov_estimate(n, u_integer, Alphabet::Binary),
            sidelnikov_sq_nonbinary: sidelnikov_estimate(n, u_integer, Alphabet::Nonbinary),
            simplified_binary: simplified_bound(n, Alphabet::Binary),
            simplified_nonbinary: simplified_bound(n, Alphabet::Nonbinary),
            note: FAMILY_BOUND_NOTE,
        })
    }
}

/// A measured `T(A)` set against the Welch bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelchComparison {
    pub measured: f64,
    pub welch: f64,
    /// `measured / welch`; absent when the bound is 0.
    pub ratio: Option<f64>,
    /// `measured ≥ welch - 1e-9`.
    pub consistent: bool,
}

pub const WELCH_TOLERANCE: f64 = 1e-9;

pub fn compare_with_welch(measured: f64, n: u64, m: u64) -> WelchComparison {
    let welch = welch_bound(n, m);
    WelchComparison {
        measured,
        welch,
        ratio: (welch > 0.0).then(|| measured / welch),
        consistent: measured >= welch - WELCH_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welch_examples() {
        assert_eq!(welch_bound(4, 1), 0.0);
        assert!((welch_bound(4, 2) - 4.0 * (1.0f64 / 7.0).sqrt()).abs() < 1e-15);
        assert!((welch_bound(4, 2) - 1.511858).abs() < 1e-6);
        assert!((welch_bound(6, 120) - 6.0 * (119.0f64 / 719.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn welch_is_monotone_in_m() {
        for n in 2..40 {
            let mut prev = 0.0;
            for m in 1..200 {
                let w = welch_bound(n, m);
                assert!(w >= prev);
                assert!(w <= n as f64);
                prev = w;
            }
        }
    }

    #[test]
    fn sidelnikov_examples() {
        assert_eq!(sidelnikov_estimate(7, 1, Alphabet::Binary), 14.0);
        assert_eq!(sidelnikov_estimate(7, 1, Alphabet::Nonbinary), 7.0);
        assert!(
            (sidelnikov_estimate(10, 2, Alphabet::Binary) - 10.0 * (5.0 - 1.0 / 3.0)).abs() < 1e-12
        );
        assert!(
            (sidelnikov_estimate(10, 3, Alphabet::Nonbinary) - 10.0 * (4.0 - 1.0 / 6.0)).abs()
                < 1e-12
        );
    }

    #[test]
    fn simplified_examples() {
        assert_eq!(simplified_bound(8, Alphabet::Binary), 4.0);
        assert_eq!(simplified_bound(9, Alphabet::Nonbinary), 3.0);
        assert!((simplified_bound(4, Alphabet::Binary) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn antipodal_examples() {
        let b = antipodal_code_bound(AntipodalBoundInput { n: 16, d: 6 }).unwrap();
        assert_eq!((b.numerator, b.denominator), (256, 1));
        let b = antipodal_code_bound(AntipodalBoundInput { n: 64, d: 28 }).unwrap();
        assert_eq!((b.numerator, b.denominator), (4096, 1));
        let b = antipodal_code_bound(AntipodalBoundInput { n: 4, d: 2 }).unwrap();
        assert_eq!((b.numerator, b.denominator), (64, 5));
        assert_eq!(b.value, 12.8);
    }

    #[test]
    fn antipodal_errors() {
        // n = 2, d = 1: 3·2 - 0 - 2 = 4, fine; n = 1 is excluded by d < n.
        assert!(matches!(
            antipodal_code_bound(AntipodalBoundInput { n: 4, d: 4 }),
            Err(BoundsError::InvalidCode { .. })
        ));
        // n = 6, d = 1: (6-2)^2 = 16 = 3·6 - 2.
        assert_eq!(
            antipodal_code_bound(AntipodalBoundInput { n: 6, d: 1 }).unwrap_err(),
            BoundsError::ZeroDenominator { n: 6, d: 1 }
        );
    }

    #[test]
    fn kerdock_examples() {
        assert_eq!(
            kerdock_params(4).unwrap(),
            KerdockParams {
                n: 16,
                d: 6,
                size: 256
            }
        );
        assert_eq!(
            kerdock_params(6).unwrap(),
            KerdockParams {
                n: 64,
                d: 28,
                size: 4096
            }
        );
        assert_eq!(
            kerdock_params(2).unwrap(),
            KerdockParams {
                n: 4,
                d: 1,
                size: 16
            }
        );
        assert_eq!(kerdock_params(3).unwrap_err(), BoundsError::OddM(3));
        assert_eq!(kerdock_params(0).unwrap_err(), BoundsError::OddM(0));
        for m in [2, 4, 6, 8] {
            assert!(kerdock_check(m).unwrap().meets);
        }
    }

    #[test]
    fn report_fields() {
        let r = BoundReport::new(8, 8).unwrap();
        assert!((r.u - 1.0).abs() < 1e-12);
        assert_eq!(r.u_integer, 1);
        assert_eq!(r.simplified_binary, 4.0);
        assert_eq!(r.sidelnikov_sq_binary, 16.0);
        let r = BoundReport::new(4, 1).unwrap();
        assert_eq!((r.u, r.u_integer, r.welch), (0.0, 1, 0.0));
        assert_eq!(
            BoundReport::new(0, 3).unwrap_err(),
            BoundsError::NonPositive
        );
    }

    #[test]
    fn welch_comparison() {
        let c = compare_with_welch(2.0, 4, 2);
        assert!(c.consistent);
        assert!((c.ratio.unwrap() - 2.0 / welch_bound(4, 2)).abs() < 1e-15);
        assert!(!compare_with_welch(1.0, 4, 2).consistent);
        assert_eq!(compare_with_welch(0.0, 4, 1).ratio, None);
    }
}
