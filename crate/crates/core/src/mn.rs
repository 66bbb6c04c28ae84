//! MN objective functions and the shape-parameter advisor.
//!
//! Each error bound factors into a beta-independent part and the MN function
//! `MN(beta) = beta^a * exp(E(beta))`, where the exponent `a` is
//! `b0/(4 gamma_n delta)` for scattered centers and `b0/(2 delta)` for evenly
//! spaced ones, and `E` is `sigma^2/(8 beta)` for band-limited targets or
//! `sigma^2/(864 beta^3)` for the cubic-spectrum class. The recommended shape
//! parameter is the minimizer of `MN` on the feasibility interval
//! `(0, beta_0]`.
//!
//! In `u = ln beta` the objective `ln MN = a u + k e^{-p u}` is strictly
//! convex, so the constrained optimum is simply `min(beta*, beta_0)` with
//! `beta*` the closed-form stationary point.

use crate::constants;
use crate::error::{require_positive, Error, Result};
use crate::log_scalar::LogScalar;

/// Target function class: band-limited `B_sigma` or the super-Gaussian
/// spectral class `G_sigma` (spectra integrable against `e^{|xi|^3/sigma}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    BandLimited,
    GaussianCubic,
}

/// Center geometry assumed by the criterion: scattered centers in a cube or
/// evenly spaced centers on a simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Scattered,
    EvenlySpaced,
}

/// A validated advisor problem.
#[derive(Debug, Clone)]
pub struct ProblemConfig {
    /// Space dimension (1..=64).
    pub n: u32,
    /// Cube side / simplex scale `b0`.
    pub b0: f64,
    /// Density parameter `delta` (every subcube of side delta holds a center).
    pub delta: f64,
    /// Space parameter `sigma` of `B_sigma` / `G_sigma`.
    pub sigma: f64,
    pub space: Space,
    pub criterion: Criterion,
}

impl ProblemConfig {
    pub fn new(
        n: u32,
        b0: f64,
        delta: f64,
        sigma: f64,
        space: Space,
        criterion: Criterion,
    ) -> Result<Self> {
        let config = Self {
            n,
            b0,
            delta,
            sigma,
            space,
            criterion,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks positivity and the per-criterion density cap
    /// (`delta <= delta_n` scattered, `delta <= b0` evenly spaced).
    pub fn validate(&self) -> Result<()> {
        require_positive("b0", self.b0)?;
        require_positive("delta", self.delta)?;
        require_positive("sigma", self.sigma)?;
        match self.criterion {
            Criterion::Scattered => {
                let cap = constants::delta_n(self.n, self.b0)?;
                if self.delta > cap {
                    return Err(Error::Infeasible {
                        quantity: "delta",
                        value: self.delta,
                        bound_name: "delta_n",
                        bound: cap,
                    });
                }
            }
            Criterion::EvenlySpaced => {
                if self.n == 0 || self.n > constants::MAX_DIMENSION {
                    return Err(Error::DimensionOutOfRange { n: self.n });
                }
                if self.delta > self.b0 {
                    return Err(Error::Infeasible {
                        quantity: "delta",
                        value: self.delta,
                        bound_name: "b0",
                        bound: self.b0,
                    });
                }
            }
        }
        Ok(())
    }

    /// The beta exponent `a` of the MN function.
    pub fn beta_exponent(&self) -> Result<f64> {
        match self.criterion {
            Criterion::Scattered => {
                Ok(self.b0 / (4.0 * constants::gamma_f64(self.n)? * self.delta))
            }
            Criterion::EvenlySpaced => Ok(self.b0 / (2.0 * self.delta)),
        }
    }

    /// Feasibility cap `beta_0` for this criterion, in log domain.
    pub fn log_beta0(&self) -> Result<LogScalar> {
        match self.criterion {
            Criterion::Scattered => constants::log_beta0_scattered(self.n, self.b0, self.delta),
            Criterion::EvenlySpaced => {
                LogScalar::from_value(constants::beta0_evenly_spaced(self.b0, self.delta)?)
            }
        }
    }

    /// Exponential-term parameters `(k, p)` with `E(beta) = k beta^{-p}`.
    fn energy(&self) -> (f64, f64) {
        let s2 = self.sigma * self.sigma;
        match self.space {
            Space::BandLimited => (s2 / 8.0, 1.0),
            Space::GaussianCubic => (s2 / 864.0, 3.0),
        }
    }
}

/// `sup_{t >= 0} [t^2/(4 beta) - t^3/sigma] = sigma^2 / (432 beta^3)`,
/// attained at `t = sigma/(6 beta)`. The G-space bounds use the square root
/// of `exp` of this, i.e. half the value in log domain.
pub fn sup_exponent(sigma: f64, beta: f64) -> Result<f64> {
    require_positive("sigma", sigma)?;
    require_positive("beta", beta)?;
    Ok(sigma * sigma / (432.0 * beta * beta * beta))
}

/// `ln MN(beta) = a ln beta + E(beta)`.
pub fn log_mn(config: &ProblemConfig, beta: f64) -> Result<f64> {
    config.validate()?;
    require_positive("beta", beta)?;
    let a = config.beta_exponent()?;
    let (k, p) = config.energy();
    Ok(a * beta.ln() + k * beta.powf(-p))
}

/// Stationary point of `ln MN`: `sigma^2/(8a)` for band-limited targets,
/// `(sigma^2/(288 a))^{1/3}` for the cubic class.
pub fn closed_form_minimizer(config: &ProblemConfig) -> Result<f64> {
    config.validate()?;
    let a = config.beta_exponent()?;
    let s2 = config.sigma * config.sigma;
    let beta = match config.space {
        Space::BandLimited => s2 / (8.0 * a),
        Space::GaussianCubic => (s2 / (288.0 * a)).cbrt(),
    };
    Ok(beta)
}

/// Golden-section search for the MN minimizer on `[beta_lo, beta_hi]`.
///
/// Runs on `u = ln beta`, where the objective `a u + k e^{-p u}` is strictly
/// convex; converges to relative tolerance 1e-10 in beta. If the bracket does
/// not contain the stationary point, the search collapses onto the endpoint
/// nearer to it.
///
/// A plain value search cannot localize the flat minimum below ~sqrt(eps of
/// the objective magnitude), so the search runs twice: once on the raw
/// objective down to width 1e-5 where comparisons are still reliable, then on
/// the objective recentered at the bracket (evaluated with `exp_m1`, which
/// removes the large constant part and restores resolution).
pub fn numeric_minimizer(config: &ProblemConfig, beta_lo: f64, beta_hi: f64) -> Result<f64> {
    config.validate()?;
    require_positive("beta_lo", beta_lo)?;
    if beta_hi <= beta_lo || !beta_hi.is_finite() {
        return Err(Error::InvalidBracket {
            lo: beta_lo,
            hi: beta_hi,
        });
    }
    let a = config.beta_exponent()?;
    let (k, p) = config.energy();
    let objective = |u: f64| a * u + k * (-p * u).exp();

    let mut lo = beta_lo.ln();
    let mut hi = beta_hi.ln();
    for (endpoint, beta) in [(lo, beta_lo), (hi, beta_hi)] {
        if !objective(endpoint).is_finite() {
            return Err(Error::NonFiniteObjective { beta });
        }
    }

    golden_section(&objective, &mut lo, &mut hi, 1e-5);

    let center = 0.5 * (lo + hi);
    let local_scale = k * (-p * center).exp();
    let local = |v: f64| a * v + local_scale * (-p * v).exp_m1();
    let mut v_lo = lo - center;
    let mut v_hi = hi - center;
    golden_section(&local, &mut v_lo, &mut v_hi, 1e-10);

    Ok((center + 0.5 * (v_lo + v_hi)).exp())
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, lo: &mut f64, hi: &mut f64, tol: f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2
    let mut x1 = *hi - INV_PHI * (*hi - *lo);
    let mut x2 = *lo + INV_PHI * (*hi - *lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while *hi - *lo > tol && iterations < 300 {
        if f1 < f2 {
            *hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = *hi - INV_PHI * (*hi - *lo);
            f1 = f(x1);
        } else {
            *lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = *lo + INV_PHI * (*hi - *lo);
            f2 = f(x2);
        }
        iterations += 1;
    }
}

/// The advisor's answer: the unconstrained minimizer, the feasibility cap,
/// and the optimum on `(0, beta_0]`.
#[derive(Debug, Clone, Copy)]
pub struct AdvisorResult {
    /// Closed-form stationary point of `ln MN`.
    pub beta_unconstrained: f64,
    /// Feasible optimum `min(beta_unconstrained, beta_0)`.
    pub beta_star: f64,
    /// `ln beta_0`.
    pub log_beta0: f64,
    /// Whether the cap was active.
    pub clamped: bool,
    /// `ln MN` at the feasible optimum.
    pub log_mn_at_star: f64,
}

/// Minimizes `MN` over the feasibility interval `(0, beta_0]`.
///
/// Since `ln MN` is strictly convex in `ln beta` and decreasing left of the
/// stationary point, the constrained optimum is the stationary point clamped
/// to `beta_0`; a tie at `beta_0` counts as unclamped.
pub fn advise(config: &ProblemConfig) -> Result<AdvisorResult> {
    config.validate()?;
    let beta_unconstrained = closed_form_minimizer(config)?;
    let log_beta0 = config.log_beta0()?.ln_value();
    let a = config.beta_exponent()?;
    let (k, p) = config.energy();
    let clamped = beta_unconstrained.ln() > log_beta0;
    let (beta_star, u_star) = if clamped {
        (log_beta0.exp(), log_beta0)
    } else {
        (beta_unconstrained, beta_unconstrained.ln())
    };
    Ok(AdvisorResult {
        beta_unconstrained,
        beta_star,
        log_beta0,
        clamped,
        log_mn_at_star: a * u_star + k * (-p * u_star).exp(),
    })
}

/// A sampled `ln MN` curve on a log-uniform beta grid.
#[derive(Debug, Clone)]
pub struct MnCurve {
    /// `(beta, ln MN(beta))`, betas strictly increasing.
    pub samples: Vec<(f64, f64)>,
    /// The beta exponent `a` of the sampled MN function.
    pub exponent_a: f64,
}

/// Samples `ln MN` at `count` log-uniformly spaced betas in
/// `[beta_min, beta_max]`.
pub fn mn_curve(
    config: &ProblemConfig,
    beta_min: f64,
    beta_max: f64,
    count: usize,
) -> Result<MnCurve> {
    config.validate()?;
    require_positive("beta_min", beta_min)?;
    if beta_max <= beta_min || !beta_max.is_finite() {
        return Err(Error::InvalidBracket {
            lo: beta_min,
            hi: beta_max,
        });
    }
    if count < 2 {
        return Err(Error::Domain(format!(
            "curve needs at least 2 samples (got {count})"
        )));
    }
    let u_min = beta_min.ln();
    let u_max = beta_max.ln();
    let mut samples = Vec::with_capacity(count);
    for i in 0..count {
        let beta = if i == count - 1 {
            beta_max
        } else {
            (u_min + (u_max - u_min) * i as f64 / (count - 1) as f64).exp()
        };
        samples.push((beta, log_mn(config, beta)?));
    }
    Ok(MnCurve {
        samples,
        exponent_a: config.beta_exponent()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn scattered_b() -> ProblemConfig {
        ProblemConfig::new(1, 1.0, 0.01, 1.0, Space::BandLimited, Criterion::Scattered).unwrap()
    }

    fn evenly_b(delta: f64) -> ProblemConfig {
        ProblemConfig::new(
            1,
            1.0,
            delta,
            1.0,
            Space::BandLimited,
            Criterion::EvenlySpaced,
        )
        .unwrap()
    }

    #[test]
    fn config_rejects_infeasible_delta() {
        let err = ProblemConfig::new(
            1,
            1.0,
            0.3,
            1.0,
            Space::BandLimited,
            Criterion::Scattered,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "delta = 0.3 exceeds delta_n = 0.25");
        let err = ProblemConfig::new(
            1,
            1.0,
            1.5,
            1.0,
            Space::BandLimited,
            Criterion::EvenlySpaced,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
    }

    #[test]
    fn log_mn_values() {
        // a = 12.5, so 12.5 ln(0.01) + 12.5
        assert_relative_eq!(
            log_mn(&scattered_b(), 0.01).unwrap(),
            -45.064627324851142,
            max_relative = 1e-13
        );
        // ln 1 = 0 leaves only the 1/8 term
        assert_relative_eq!(log_mn(&evenly_b(0.5), 1.0).unwrap(), 0.125, epsilon = 1e-15);
        // a = 50/3 and sigma^2/(864 beta^3)
        let cfg = ProblemConfig::new(
            1,
            1.0,
            0.03,
            1.0,
            Space::GaussianCubic,
            Criterion::EvenlySpaced,
        )
        .unwrap();
        assert_relative_eq!(
            log_mn(&cfg, 0.1).unwrap(),
            -37.219_010_809_160_02,
            max_relative = 1e-13
        );
    }

    #[test]
    fn log_mn_rejects_nonpositive_beta() {
        assert!(log_mn(&scattered_b(), 0.0).is_err());
        assert!(log_mn(&scattered_b(), -1.0).is_err());
    }

    #[test]
    fn sup_exponent_values() {
        assert_relative_eq!(
            sup_exponent(1.0, 0.1).unwrap(),
            2.314_814_814_814_815,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            sup_exponent(1.0, 1.0).unwrap(),
            0.0023148148148148148,
            max_relative = 1e-14
        );
        // homogeneity: doubling sigma quadruples, doubling beta divides by 8
        let base = sup_exponent(1.3, 0.7).unwrap();
        assert_relative_eq!(sup_exponent(2.6, 0.7).unwrap(), 4.0 * base, max_relative = 1e-13);
        assert_relative_eq!(
            sup_exponent(1.3, 1.4).unwrap(),
            base / 8.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn closed_form_minimizer_values() {
        assert_relative_eq!(
            closed_form_minimizer(&scattered_b()).unwrap(),
            0.01,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            closed_form_minimizer(&evenly_b(0.03)).unwrap(),
            0.0075,
            max_relative = 1e-14
        );
        let cfg = ProblemConfig::new(
            1,
            1.0,
            0.03,
            1.0,
            Space::GaussianCubic,
            Criterion::EvenlySpaced,
        )
        .unwrap();
        assert_relative_eq!(
            closed_form_minimizer(&cfg).unwrap(),
            0.059_281_555_074_834_38,
            max_relative = 1e-13
        );
    }

    #[test]
    fn numeric_matches_closed_form() {
        for cfg in [scattered_b(), evenly_b(0.03)] {
            let closed = closed_form_minimizer(&cfg).unwrap();
            let numeric = numeric_minimizer(&cfg, closed / 1e3, closed * 1e3).unwrap();
            assert_relative_eq!(numeric, closed, max_relative = 1e-8);
        }
    }

    #[test]
    fn numeric_minimizer_collapses_to_nearer_endpoint() {
        let cfg = evenly_b(0.03);
        // stationary point 0.0075 lies right of this bracket
        let hit = numeric_minimizer(&cfg, 1e-5, 1e-3).unwrap();
        assert_relative_eq!(hit, 1e-3, max_relative = 1e-6);
        // and left of this one
        let hit = numeric_minimizer(&cfg, 0.1, 10.0).unwrap();
        assert_relative_eq!(hit, 0.1, max_relative = 1e-6);
    }

    #[test]
    fn numeric_minimizer_error_paths() {
        let cfg = evenly_b(0.03);
        assert!(matches!(
            numeric_minimizer(&cfg, 0.5, 0.25),
            Err(Error::InvalidBracket { .. })
        ));
        // beta^{-3} overflows at the lower endpoint for the cubic class
        let cubic = ProblemConfig::new(
            1,
            1.0,
            0.03,
            1.0,
            Space::GaussianCubic,
            Criterion::EvenlySpaced,
        )
        .unwrap();
        assert!(matches!(
            numeric_minimizer(&cubic, 1e-300, 1.0),
            Err(Error::NonFiniteObjective { .. })
        ));
    }

    #[test]
    fn advise_worked_examples() {
        // scattered: cap beta_0 ~ 4.848e-5 clamps the 0.01 stationary point
        let r = advise(&scattered_b()).unwrap();
        assert_relative_eq!(r.beta_unconstrained, 0.01, max_relative = 1e-13);
        assert!(r.clamped);
        assert_relative_eq!(r.beta_star, 4.847_994_963_033_023e-5, max_relative = 1e-12);
        assert_relative_eq!(r.log_beta0, -9.934360255182092, max_relative = 1e-12);
        assert_relative_eq!(r.log_mn_at_star, 2454.2060139807486, max_relative = 1e-10);

        // evenly spaced, delta = 0.03: unconstrained
        let r = advise(&evenly_b(0.03)).unwrap();
        assert!(!r.clamped);
        assert_relative_eq!(r.beta_star, 0.0075, max_relative = 1e-13);
        assert_eq!(r.beta_star, r.beta_unconstrained);
        assert_relative_eq!(
            r.log_beta0.exp(),
            0.010429593955211291,
            max_relative = 1e-12
        );
        assert_relative_eq!(r.log_mn_at_star, -64.880_870_973_997_87, max_relative = 1e-12);

        // evenly spaced, delta = 0.2: clamped at beta_0 ~ 4.039e-3
        let r = advise(&evenly_b(0.2)).unwrap();
        assert!(r.clamped);
        assert_relative_eq!(r.beta_unconstrained, 0.05, max_relative = 1e-13);
        assert_relative_eq!(r.beta_star, 0.004039364369623887, max_relative = 1e-12);
    }

    #[test]
    fn advise_never_exceeds_cap() {
        for delta in [0.0031, 0.01, 0.03, 0.1, 0.24, 0.9] {
            for (space, criterion) in [
                (Space::BandLimited, Criterion::Scattered),
                (Space::GaussianCubic, Criterion::Scattered),
                (Space::BandLimited, Criterion::EvenlySpaced),
                (Space::GaussianCubic, Criterion::EvenlySpaced),
            ] {
                let Ok(cfg) = ProblemConfig::new(1, 1.0, delta, 1.0, space, criterion) else {
                    continue;
                };
                let r = advise(&cfg).unwrap();
                assert!(r.beta_star.ln() <= r.log_beta0 + 1e-12);
                if !r.clamped {
                    assert_eq!(r.beta_star, r.beta_unconstrained);
                }
            }
        }
    }

    #[test]
    fn evenly_spaced_advice_is_dimension_independent() {
        let base = advise(&evenly_b(0.03)).unwrap();
        for n in [2, 3, 7, 32] {
            let cfg = ProblemConfig::new(
                n,
                1.0,
                0.03,
                1.0,
                Space::BandLimited,
                Criterion::EvenlySpaced,
            )
            .unwrap();
            let r = advise(&cfg).unwrap();
            assert_eq!(r.beta_unconstrained, base.beta_unconstrained);
            assert_eq!(r.beta_star, base.beta_star);
        }
    }

    #[test]
    fn curve_is_convex_with_interior_minimum() {
        let cfg = evenly_b(0.03);
        let star = closed_form_minimizer(&cfg).unwrap();
        let curve = mn_curve(&cfg, star / 10.0, star * 10.0, 3).unwrap();
        assert!(curve.samples[1].1 < curve.samples[0].1);
        assert!(curve.samples[1].1 < curve.samples[2].1);

        // MN -> infinity at both ends of a wide grid
        let wide = mn_curve(&cfg, star / 1e4, star * 1e4, 101).unwrap();
        let min = wide
            .samples
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::INFINITY, f64::min);
        assert!(wide.samples.first().unwrap().1 > min + 10.0);
        assert!(wide.samples.last().unwrap().1 > min + 10.0);
    }

    #[test]
    fn curve_argmin_tracks_closed_form() {
        let cfg = evenly_b(0.03);
        let curve = mn_curve(&cfg, 1e-4, 1.0, 101).unwrap();
        let (argmin, _) = curve
            .samples
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        // within one grid step of 0.0075 on the log grid
        let step = (1.0f64 / 1e-4).ln() / 100.0;
        assert!((argmin.ln() - 0.0075f64.ln()).abs() <= step);
        assert_eq!(curve.samples.len(), 101);
        assert_eq!(curve.samples.last().unwrap().0, 1.0);
    }
}
