//! Closed-form constants of the exponential error bounds.
//!
//! Two bounds drive everything in this crate. For scattered centers in a cube
//! the pointwise interpolation error of the Gaussian kernel `e^{-beta |x|^2}`
//! is bounded by `Delta'' (C delta)^{c/delta} ||f||_h`, with
//!
//! * `c = b0 / (8 gamma_n)`,
//! * `C = (3^{3/4} e sqrt(2 rho beta) sqrt(n) e^{2 n gamma_n})^4 b0^3 gamma_n`,
//! * `rho = sqrt(3)/e`,
//!
//! valid while `delta <= delta_0 = min(1/C, delta_n)`. For evenly spaced
//! centers on a simplex the sharper form `c1 sqrt(delta) (c2 delta)^{c3/delta}
//! ||f||_h` holds with dimension-independent `c2 = rho_3^4 * 3^3 * 2^7 * b0^3`
//! (`rho_3 = 12^{1/4} sqrt(e beta)`) and `c3 = b0/4`.
//!
//! `gamma_n` is the recursively defined integer `gamma_1 = 2`,
//! `gamma_n = 2n(1 + gamma_{n-1})`; it reaches 109 decimal digits at n = 64,
//! and `C` contains `e^{8 n gamma_n}`, so everything built from it lives in
//! log domain ([`LogScalar`]).

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::f64::consts::{E, LN_2, PI};

use crate::error::{require_positive, Error, Result};
use crate::log_scalar::LogScalar;

/// Largest dimension for which `gamma` (and everything downstream) is defined.
pub const MAX_DIMENSION: u32 = 64;

/// `rho = sqrt(3)/e`, the ratio appearing in both bounds.
pub(crate) fn rho() -> f64 {
    3f64.sqrt() / E
}

fn ln_rho() -> f64 {
    0.5 * 3f64.ln() - 1.0
}

fn check_dimension(n: u32) -> Result<()> {
    if (1..=MAX_DIMENSION).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange { n })
    }
}

/// The dimensional constant `gamma_n`: `gamma_1 = 2`, `gamma_n = 2n(1 + gamma_{n-1})`.
///
/// Exact integer arithmetic; supported for `1 <= n <= 64`.
pub fn gamma(n: u32) -> Result<BigUint> {
    check_dimension(n)?;
    let mut g = BigUint::from(2u32);
    for k in 2..=n {
        g = BigUint::from(2 * k) * (BigUint::from(1u32) + g);
    }
    Ok(g)
}

/// `gamma_n` rounded to f64. Exact conversion is representable for all
/// supported n (gamma_64 ~ 1.2e108 < f64::MAX).
pub(crate) fn gamma_f64(n: u32) -> Result<f64> {
    let g = gamma(n)?;
    g.to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Domain(format!("gamma({n}) does not fit in f64")))
}

/// Natural log of `gamma_n`, computed from the exact integer.
pub(crate) fn ln_gamma_n(n: u32) -> Result<f64> {
    Ok(ln_biguint(&gamma(n)?))
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("<= 53 bits fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa fits f64");
    top.ln() + shift as f64 * LN_2
}

/// Volume of the unit ball in R^n, `pi^{n/2} / Gamma(n/2 + 1)`.
///
/// Evaluated by the half-integer closed forms: `pi^m / m!` for n = 2m and
/// `pi^m 2^{m+1} / (2m+1)!!` for n = 2m+1.
pub fn unit_ball_volume(n: u32) -> Result<f64> {
    check_dimension(n)?;
    let m = n / 2;
    if n.is_multiple_of(2) {
        let mut fact = 1.0;
        for k in 1..=m {
            fact *= k as f64;
        }
        Ok(PI.powi(m as i32) / fact)
    } else {
        let mut double_fact = 1.0;
        let mut k = 3u32;
        while k <= 2 * m + 1 {
            double_fact *= k as f64;
            k += 2;
        }
        Ok(PI.powi(m as i32) * 2f64.powi(m as i32 + 1) / double_fact)
    }
}

/// The prefactor `Delta''` of the scattered-centers bound.
///
/// `pi^{(n-1)/4} (n alpha_n)^{1/2} 2^{(n+1)/4} rho^{(n-2)/4}` for even n,
/// `pi^{n/4} (n alpha_n)^{1/2} rho^{(n-1)/4}` for odd n.
pub fn delta_pp_scattered(n: u32) -> Result<f64> {
    let na = n as f64 * unit_ball_volume(n)?;
    let nf = n as f64;
    if n.is_multiple_of(2) {
        Ok(PI.powf((nf - 1.0) / 4.0)
            * na.sqrt()
            * 2f64.powf((nf + 1.0) / 4.0)
            * rho().powf((nf - 2.0) / 4.0))
    } else {
        Ok(PI.powf(nf / 4.0) * na.sqrt() * rho().powf((nf - 1.0) / 4.0))
    }
}

/// The prefactor `Delta''` of the evenly-spaced bound.
///
/// `sqrt(2 + 1/e) pi^{(n-1)/4} (n alpha_n)^{1/2} 2^{n/4} rho^{(n-1)/4}` for
/// odd n; the even branch coincides with [`delta_pp_scattered`].
pub fn delta_pp_evenly_spaced(n: u32) -> Result<f64> {
    let na = n as f64 * unit_ball_volume(n)?;
    let nf = n as f64;
    if n % 2 == 1 {
        Ok((2.0 + 1.0 / E).sqrt()
            * PI.powf((nf - 1.0) / 4.0)
            * na.sqrt()
            * 2f64.powf(nf / 4.0)
            * rho().powf((nf - 1.0) / 4.0))
    } else {
        Ok(PI.powf((nf - 1.0) / 4.0)
            * na.sqrt()
            * 2f64.powf((nf + 1.0) / 4.0)
            * rho().powf((nf - 2.0) / 4.0))
    }
}

/// `ln C` for the scattered-centers bound:
/// `ln 27 + 4 + ln 4 + 2 ln rho + 2 ln beta + 2 ln n + 8 n gamma_n + 3 ln b0 + ln gamma_n`.
pub fn log_c_scattered(n: u32, b0: f64, beta: f64) -> Result<LogScalar> {
    check_dimension(n)?;
    require_positive("b0", b0)?;
    require_positive("beta", beta)?;
    let g = gamma_f64(n)?;
    let log_c = 27f64.ln()
        + 4.0
        + 4f64.ln()
        + 2.0 * ln_rho()
        + 2.0 * beta.ln()
        + 2.0 * (n as f64).ln()
        + 8.0 * n as f64 * g
        + 3.0 * b0.ln()
        + ln_gamma_n(n)?;
    LogScalar::from_ln(log_c)
}

/// The density cap `delta_n` of the scattered-centers bound.
pub fn delta_n(n: u32, b0: f64) -> Result<f64> {
    check_dimension(n)?;
    require_positive("b0", b0)?;
    let g = gamma_f64(n)?;
    let value = match n {
        1 | 2 => b0 / (2.0 * g),
        _ if n % 2 == 1 => b0 / (2.0 * g * (n as f64 - 1.0)),
        _ => b0 / (2.0 * g * (n as f64 - 2.0)),
    };
    Ok(value)
}

/// `ln delta_0` for the scattered-centers bound: `min(1/C, delta_n)` in log
/// domain (the printed first branch is exactly the reciprocal of `C`).
pub fn log_delta0_scattered(n: u32, b0: f64, beta: f64) -> Result<LogScalar> {
    let first = log_c_scattered(n, b0, beta)?.recip();
    let second = LogScalar::from_value(delta_n(n, b0)?)?;
    Ok(first.min(second))
}

/// `ln delta_0` for the evenly-spaced bound:
/// `min(b0, 1/(rho_3^4 * 3^3 * 2^7 * b0^3))` with `rho_3^4 = 12 e^2 beta^2`,
/// so the second branch is `1/(41472 e^2 beta^2 b0^3)`.
pub fn log_delta0_evenly_spaced(b0: f64, beta: f64) -> Result<LogScalar> {
    require_positive("b0", b0)?;
    require_positive("beta", beta)?;
    let first = LogScalar::from_value(b0)?;
    let second = LogScalar::from_ln(-(41472f64.ln() + 2.0 + 2.0 * beta.ln() + 3.0 * b0.ln()))?;
    Ok(first.min(second))
}

/// `ln beta_0` for the scattered criteria:
/// `beta_0 = 1 / (3^{3/2} 2 rho n e^{4 n gamma_n + 2} b0^{3/2} sqrt(gamma_n) sqrt(delta))`.
pub fn log_beta0_scattered(n: u32, b0: f64, delta: f64) -> Result<LogScalar> {
    check_dimension(n)?;
    require_positive("b0", b0)?;
    require_positive("delta", delta)?;
    let g = gamma_f64(n)?;
    let log_denominator = 1.5 * 3f64.ln()
        + LN_2
        + ln_rho()
        + (n as f64).ln()
        + (4.0 * n as f64 * g + 2.0)
        + 1.5 * b0.ln()
        + 0.5 * ln_gamma_n(n)?
        + 0.5 * delta.ln();
    LogScalar::from_ln(-log_denominator)
}

/// `beta_0` for the evenly-spaced criteria: `1 / (144 sqrt(2) e b0^{3/2} sqrt(delta))`.
///
/// Requires `delta <= b0`.
pub fn beta0_evenly_spaced(b0: f64, delta: f64) -> Result<f64> {
    require_positive("b0", b0)?;
    require_positive("delta", delta)?;
    if delta > b0 {
        return Err(Error::Infeasible {
            quantity: "delta",
            value: delta,
            bound_name: "b0",
            bound: b0,
        });
    }
    Ok(1.0 / (144.0 * 2f64.sqrt() * E * b0.powf(1.5) * delta.sqrt()))
}

/// The triple `(c1, ln c2, c3)` of the evenly-spaced bound:
/// `c1 = Delta'' / sqrt(16 pi b0)`, `ln c2 = ln 41472 + 2 + 2 ln beta + 3 ln b0`,
/// `c3 = b0/4`.
pub fn c1_c2_c3_evenly_spaced(n: u32, b0: f64, beta: f64) -> Result<(f64, LogScalar, f64)> {
    check_dimension(n)?;
    require_positive("b0", b0)?;
    require_positive("beta", beta)?;
    let c1 = delta_pp_evenly_spaced(n)? / (16.0 * PI).sqrt() / b0.sqrt();
    let log_c2 = LogScalar::from_ln(41472f64.ln() + 2.0 + 2.0 * beta.ln() + 3.0 * b0.ln())?;
    Ok((c1, log_c2, b0 / 4.0))
}

/// All constants of both bounds for a given `(n, b0, beta)`.
#[derive(Debug, Clone)]
pub struct BoundConstants {
    pub n: u32,
    pub b0: f64,
    pub beta: f64,
    /// Exact `gamma_n`.
    pub gamma_n: BigUint,
    /// Unit-ball volume `alpha_n`.
    pub alpha_n: f64,
    /// `Delta''` of the scattered bound.
    pub delta_pp_scattered: f64,
    /// `Delta''` of the evenly-spaced bound.
    pub delta_pp_evenly: f64,
    /// Exponent scale `c = b0 / (8 gamma_n)` of the scattered bound.
    pub c_scattered: f64,
    /// `ln C` of the scattered bound.
    pub log_c_scattered: LogScalar,
    /// Density cap `delta_n`.
    pub delta_n: f64,
    /// `ln delta_0` of the scattered bound.
    pub log_delta0_scattered: LogScalar,
    /// `c1` of the evenly-spaced bound.
    pub c1_evenly: f64,
    /// `ln c2` of the evenly-spaced bound.
    pub log_c2_evenly: LogScalar,
    /// `c3 = b0/4` of the evenly-spaced bound.
    pub c3_evenly: f64,
    /// `ln delta_0` of the evenly-spaced bound.
    pub log_delta0_evenly: LogScalar,
}

impl BoundConstants {
    pub fn compute(n: u32, b0: f64, beta: f64) -> Result<Self> {
        check_dimension(n)?;
        require_positive("b0", b0)?;
        require_positive("beta", beta)?;
        let gamma_n = gamma(n)?;
        let (c1_evenly, log_c2_evenly, c3_evenly) = c1_c2_c3_evenly_spaced(n, b0, beta)?;
        Ok(Self {
            n,
            b0,
            beta,
            alpha_n: unit_ball_volume(n)?,
            delta_pp_scattered: delta_pp_scattered(n)?,
            delta_pp_evenly: delta_pp_evenly_spaced(n)?,
            c_scattered: b0 / (8.0 * gamma_f64(n)?),
            log_c_scattered: log_c_scattered(n, b0, beta)?,
            delta_n: delta_n(n, b0)?,
            log_delta0_scattered: log_delta0_scattered(n, b0, beta)?,
            c1_evenly,
            log_c2_evenly,
            c3_evenly,
            log_delta0_evenly: log_delta0_evenly_spaced(b0, beta)?,
            gamma_n,
        })
    }
}
