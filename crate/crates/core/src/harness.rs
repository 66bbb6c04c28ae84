//! Experiment harness: test functions, norm computations, error-bound
//! evaluation and beta-sweep experiments.
//!
//! Experiments are one-dimensional: the evenly-spaced criteria are
//! dimension-independent, and n = 1 keeps the kernel systems tractable at
//! desk scale, while the constants cover all dimensions.
//!
//! Norm bookkeeping follows the bounds' derivation: the Fourier transform is
//! `f_hat(xi) = int f(x) e^{-i x xi} dx`, the native norm of a band-limited
//! function is `(2 pi)^{-n} {int |f_hat|^2 e^{|xi|^2/(4 beta)} d xi}^{1/2}`,
//! and the L^2 factor appearing in the transformed bounds is the spectral one
//! `{int |f_hat|^2 d xi}^{1/2}` (for the sinc target: `sqrt(2 sigma)`).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::constants::BoundConstants;
use crate::error::{require_positive, Error, Result};
use crate::geometry::{admissible_degree_range, evenly_spaced_nodes, Simplex};
use crate::interpolation;
use crate::mn::{self, Criterion, ProblemConfig, Space};
use crate::quadrature;

/// Kinds of built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    /// `f(x) = sin(sigma x) / (pi x)`, the band-limited function whose
    /// spectrum is the indicator of `[-sigma, sigma]`.
    SincBandLimited,
}

/// A 1-d test function with a known spectrum.
#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    kind: TestFunctionKind,
    sigma: f64,
}

impl TestFunction {
    /// The sinc function `sin(sigma x)/(pi x)`, `f(0) = sigma/pi`; band
    /// limit `sigma`. Lies in `B_sigma`, and in `G_{sigma'}` for every
    /// `sigma' > 0` since its spectrum is compactly supported.
    pub fn sinc_band_limited(sigma: f64) -> Result<Self> {
        require_positive("sigma", sigma)?;
        Ok(Self {
            kind: TestFunctionKind::SincBandLimited,
            sigma,
        })
    }

    pub fn kind(&self) -> TestFunctionKind {
        self.kind
    }

    /// The band limit of the spectrum.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Evaluates the function, switching to a series near x = 0.
    pub fn evaluate(&self, x: f64) -> f64 {
        let t = self.sigma * x;
        if t.abs() < 1e-4 {
            let t2 = t * t;
            self.sigma / std::f64::consts::PI * (1.0 - t2 / 6.0 + t2 * t2 / 120.0)
        } else {
            t.sin() / (std::f64::consts::PI * x)
        }
    }

    /// The Fourier transform `f_hat(xi)` (indicator of `[-sigma, sigma]`).
    pub fn spectrum(&self, xi: f64) -> f64 {
        if xi.abs() <= self.sigma {
            1.0
        } else {
            0.0
        }
    }

    /// `{int |f_hat|^2 d xi}^{1/2}`, by quadrature over the support.
    pub fn spectrum_l2_norm(&self) -> f64 {
        let spec = |xi: f64| {
            let s = self.spectrum(xi);
            s * s
        };
        quadrature::integrate(&spec, -self.sigma, self.sigma, 1e-10).sqrt()
    }

    /// `{int |f_hat|^2 e^{|xi|^3/space_sigma} d xi}^{1/2}`, the `G_sigma'`
    /// norm; finite for any `space_sigma > 0` thanks to compact support.
    pub fn g_norm(&self, space_sigma: f64) -> Result<f64> {
        require_positive("space_sigma", space_sigma)?;
        let integrand = |xi: f64| {
            let s = self.spectrum(xi);
            s * s * (xi.abs().powi(3) / space_sigma).exp()
        };
        // |xi|^3 has a kink at zero; integrate the halves separately
        let value = quadrature::integrate(&integrand, 0.0, self.sigma, 1e-9)
            + quadrature::integrate(&integrand, -self.sigma, 0.0, 1e-9);
        if !value.is_finite() {
            return Err(Error::Domain(format!(
                "G-norm integrand overflows for sigma = {}, space_sigma = {space_sigma}",
                self.sigma
            )));
        }
        Ok(value.sqrt())
    }
}

/// The native-space norm of a band-limited function:
/// `(2 pi)^{-1} {int_{-sigma}^{sigma} |spectrum|^2 e^{xi^2/(4 beta)} d xi}^{1/2}`
/// by adaptive quadrature (1-d).
pub fn native_norm_bandlimited<F: Fn(f64) -> f64>(
    sigma: f64,
    beta: f64,
    spectrum: F,
) -> Result<f64> {
    require_positive("sigma", sigma)?;
    require_positive("beta", beta)?;
    let integrand = |xi: f64| {
        let s = spectrum(xi);
        s * s * (xi * xi / (4.0 * beta)).exp()
    };
    let integral = quadrature::integrate(&integrand, -sigma, sigma, 1e-8);
    if !integral.is_finite() {
        return Err(Error::Domain(format!(
            "native-norm integrand overflows for sigma = {sigma}, beta = {beta}"
        )));
    }
    Ok(integral.sqrt() / (2.0 * std::f64::consts::PI))
}

/// Which error-bound right-hand side to evaluate: for each center geometry
/// the native-norm form, the band-limited transform, or the cubic-spectrum
/// transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVariant {
    ScatteredNative,
    ScatteredBandLimited,
    ScatteredCubicSpectrum,
    EvenlySpacedNative,
    EvenlySpacedBandLimited,
    EvenlySpacedCubicSpectrum,
}

/// Natural log of the selected error-bound right-hand side.
///
/// `norm` is the norm matching the variant: `||f||_h` for the native forms,
/// the spectral L^2 norm for the band-limited transforms, the `G_sigma` norm
/// for the cubic-spectrum transforms. Fails with a hypothesis violation when
/// `delta` exceeds the variant's `delta_0`.
pub fn log_error_bound(
    config: &ProblemConfig,
    constants: &BoundConstants,
    norm: f64,
    variant: BoundVariant,
) -> Result<f64> {
    require_positive("norm", norm)?;
    let delta = config.delta;
    require_positive("delta", delta)?;
    let n = constants.n as f64;
    let sigma = config.sigma;
    let beta = constants.beta;
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();

    let scattered = |log_delta0: f64| -> Result<f64> {
        if delta.ln() > log_delta0 {
            return Err(Error::HypothesisViolation {
                quantity: "delta",
                value: delta,
                bound_name: "delta_0",
                log_bound: log_delta0,
            });
        }
        Ok(constants.delta_pp_scattered.ln()
            + constants.c_scattered / delta * (constants.log_c_scattered.ln_value() + delta.ln()))
    };
    let evenly = |log_delta0: f64| -> Result<f64> {
        if delta.ln() > log_delta0 {
            return Err(Error::HypothesisViolation {
                quantity: "delta",
                value: delta,
                bound_name: "delta_0",
                log_bound: log_delta0,
            });
        }
        Ok(constants.c1_evenly.ln()
            + 0.5 * delta.ln()
            + constants.c3_evenly / delta * (constants.log_c2_evenly.ln_value() + delta.ln()))
    };

    let value = match variant {
        BoundVariant::ScatteredNative => scattered(constants.log_delta0_scattered.ln_value())? + norm.ln(),
        BoundVariant::ScatteredBandLimited => {
            scattered(constants.log_delta0_scattered.ln_value())? - n * ln_2pi
                + sigma * sigma / (8.0 * beta)
                + norm.ln()
        }
        BoundVariant::ScatteredCubicSpectrum => {
            scattered(constants.log_delta0_scattered.ln_value())? - n * ln_2pi
                + 0.5 * mn::sup_exponent(sigma, beta)?
                + norm.ln()
        }
        BoundVariant::EvenlySpacedNative => evenly(constants.log_delta0_evenly.ln_value())? + norm.ln(),
        BoundVariant::EvenlySpacedBandLimited => {
            evenly(constants.log_delta0_evenly.ln_value())? - n * ln_2pi
                + sigma * sigma / (8.0 * beta)
                + norm.ln()
        }
        BoundVariant::EvenlySpacedCubicSpectrum => {
            evenly(constants.log_delta0_evenly.ln_value())? - n * ln_2pi
                + 0.5 * mn::sup_exponent(sigma, beta)?
                + norm.ln()
        }
    };
    Ok(value)
}

/// Node layouts for sweeps: an equispaced grid filling the cube (scattered
/// criteria) or evenly spaced simplex centers (evenly-spaced criteria).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeLayout {
    EquispacedGrid,
    SimplexEven,
}

/// Condition estimate above which a sweep row is flagged as ill-conditioned.
pub const CONDITION_FLAG_THRESHOLD: f64 = 1e14;

/// One row of a beta sweep.
#[derive(Debug, Clone, Copy)]
pub struct ExperimentRow {
    pub beta: f64,
    /// `sup |f - s|` over the dense evaluation grid.
    pub empirical_sup_error: f64,
    pub log_mn: f64,
    /// `None` when the bound hypothesis `delta <= delta_0` fails at this beta.
    pub log_bound: Option<f64>,
    /// Kernel solve condition estimate exceeded [`CONDITION_FLAG_THRESHOLD`].
    pub flagged: bool,
}

/// A completed beta sweep.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ProblemConfig,
    pub rows: Vec<ExperimentRow>,
    /// Beta of the row with the smallest empirical error.
    pub argmin_empirical: f64,
    /// Beta of the row with the smallest `ln MN`.
    pub argmin_mn: f64,
}

/// Runs the interpolation experiment over `beta_grid` (strictly increasing).
///
/// For each beta: build the interpolant of `test_fn` on the layout's nodes,
/// measure the sup error on a uniform grid 20x denser than the nodes, and
/// record `ln MN` and the matching error bound. Ill-conditioned solves are
/// flagged, not fatal. 1-d only.
pub fn beta_sweep(
    config: &ProblemConfig,
    test_fn: &TestFunction,
    layout: NodeLayout,
    beta_grid: &[f64],
) -> Result<ExperimentReport> {
    config.validate()?;
    if config.n != 1 {
        return Err(Error::Domain(format!(
            "beta_sweep supports n = 1 only (got n = {})",
            config.n
        )));
    }
    if beta_grid.is_empty() {
        return Err(Error::Domain("beta grid is empty".to_string()));
    }
    for pair in beta_grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::Domain(
                "beta grid must be strictly increasing".to_string(),
            ));
        }
    }
    require_positive("beta", beta_grid[0])?;

    let b0 = config.b0;
    let nodes: Vec<f64> = match layout {
        NodeLayout::EquispacedGrid => {
            let cells = ((b0 / config.delta) - 1e-12).ceil().max(1.0) as usize;
            (0..=cells).map(|j| j as f64 * b0 / cells as f64).collect()
        }
        NodeLayout::SimplexEven => {
            // smallest admissible l (at least 2 so the degree l-1 is positive),
            // centers of degree l - 1 on the segment [0, b0]
            let (l_min, l_max) = admissible_degree_range(b0, config.delta)?;
            let l = l_min.max(2).min(l_max);
            let segment = Simplex::new(vec![vec![0.0], vec![b0]])?;
            evenly_spaced_nodes(&segment, l as u32 - 1)?
                .cartesian()
                .iter()
                .map(|p| p[0])
                .collect()
        }
    };
    let values: Vec<f64> = nodes.iter().map(|&x| test_fn.evaluate(x)).collect();
    let centers: Vec<Vec<f64>> = nodes.iter().map(|&x| vec![x]).collect();

    let eval_count = 20 * nodes.len() + 1;
    let eval_grid: Vec<f64> = (0..eval_count)
        .map(|i| i as f64 * b0 / (eval_count - 1) as f64)
        .collect();

    let variant = match (config.criterion, config.space) {
        (Criterion::Scattered, Space::BandLimited) => BoundVariant::ScatteredBandLimited,
        (Criterion::Scattered, Space::GaussianCubic) => BoundVariant::ScatteredCubicSpectrum,
        (Criterion::EvenlySpaced, Space::BandLimited) => BoundVariant::EvenlySpacedBandLimited,
        (Criterion::EvenlySpaced, Space::GaussianCubic) => BoundVariant::EvenlySpacedCubicSpectrum,
    };
    let norm = match config.space {
        Space::BandLimited => test_fn.spectrum_l2_norm(),
        Space::GaussianCubic => test_fn.g_norm(config.sigma)?,
    };

    let mut rows = Vec::with_capacity(beta_grid.len());
    for &beta in beta_grid {
        let (interpolant, solve) = interpolation::build(&centers, &values, beta)?;
        let empirical_sup_error = eval_grid
            .iter()
            .map(|&x| (interpolant.evaluate(&[x]).unwrap() - test_fn.evaluate(x)).abs())
            .fold(0.0, f64::max);
        let log_bound = match log_error_bound(
            config,
            &BoundConstants::compute(config.n, b0, beta)?,
            norm,
            variant,
        ) {
            Ok(v) => Some(v),
            Err(Error::HypothesisViolation { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(ExperimentRow {
            beta,
            empirical_sup_error,
            log_mn: mn::log_mn(config, beta)?,
            log_bound,
            flagged: solve.condition_estimate > CONDITION_FLAG_THRESHOLD,
        });
    }

    let argmin_empirical = rows
        .iter()
        .min_by(|a, b| a.empirical_sup_error.total_cmp(&b.empirical_sup_error))
        .map(|r| r.beta)
        .expect("rows nonempty");
    let argmin_mn = rows
        .iter()
        .min_by(|a, b| a.log_mn.total_cmp(&b.log_mn))
        .map(|r| r.beta)
        .expect("rows nonempty");

    Ok(ExperimentReport {
        config: config.clone(),
        rows,
        argmin_empirical,
        argmin_mn,
    })
}

fn row_flag(row: &ExperimentRow) -> &'static str {
    match (row.flagged, row.log_bound.is_none()) {
        (false, false) => "ok",
        (true, false) => "illcond",
        (false, true) => "nobound",
        (true, true) => "illcond;nobound",
    }
}

/// Formats floats with 17 significant digits (lossless f64 round trip).
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes the report as CSV: `beta,empirical_sup_error,log_mn,log_bound,flag`,
/// one row per beta, 17 significant digits, byte-deterministic.
pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    let io_err = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_csv(&mut out, report).map_err(io_err)
}

/// Writes the report rows to any writer, same format as [`emit_csv`].
pub fn write_csv<W: Write + ?Sized>(out: &mut W, report: &ExperimentReport) -> std::io::Result<()> {
    writeln!(out, "beta,empirical_sup_error,log_mn,log_bound,flag")?;
    for row in &report.rows {
        let bound = match row.log_bound {
            Some(v) => format_float(v),
            None => "nan".to_string(),
        };
        writeln!(
            out,
            "{},{},{},{},{}",
            format_float(row.beta),
            format_float(row.empirical_sup_error),
            format_float(row.log_mn),
            bound,
            row_flag(row)
        )?;
    }
    out.flush()
}
