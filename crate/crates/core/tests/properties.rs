//! Randomized invariants of the advisor, the density check, and the solver.

use gshape::geometry::check_density;
use gshape::mn::{
    advise, closed_form_minimizer, log_mn, numeric_minimizer, sup_exponent, Criterion,
    ProblemConfig, Space,
};
use gshape::{constants, interpolation};
use proptest::prelude::*;

fn spaces() -> impl Strategy<Value = Space> {
    prop_oneof![Just(Space::BandLimited), Just(Space::GaussianCubic)]
}

fn criteria() -> impl Strategy<Value = Criterion> {
    prop_oneof![Just(Criterion::Scattered), Just(Criterion::EvenlySpaced)]
}

prop_compose! {
    fn valid_configs()(
        n in 1u32..=5,
        log_b0 in -1.0f64..1.5,
        log_sigma in -1.4f64..1.4,
        delta_scale in -3.0f64..0.0,
        space in spaces(),
        criterion in criteria(),
    ) -> ProblemConfig {
        let b0 = log_b0.exp();
        let cap = match criterion {
            Criterion::Scattered => constants::delta_n(n, b0).unwrap(),
            Criterion::EvenlySpaced => b0,
        };
        let delta = cap * 10f64.powf(delta_scale);
        ProblemConfig::new(n, b0, delta, log_sigma.exp(), space, criterion).unwrap()
    }
}

proptest! {
    /// ln MN has positive second differences on any log-uniform grid.
    #[test]
    fn log_mn_is_convex_in_log_beta(config in valid_configs(), span in 1.0f64..8.0) {
        let star = closed_form_minimizer(&config).unwrap();
        let count = 33;
        let u_min = star.ln() - span;
        let step = 2.0 * span / (count - 1) as f64;
        let values: Vec<f64> = (0..count)
            .map(|i| log_mn(&config, (u_min + step * i as f64).exp()).unwrap())
            .collect();
        for w in values.windows(3) {
            prop_assert!(w[0] - 2.0 * w[1] + w[2] > 0.0, "second difference not positive: {w:?}");
        }
    }

    /// The golden-section route reproduces the closed form.
    #[test]
    fn minimizers_agree(config in valid_configs()) {
        let closed = closed_form_minimizer(&config).unwrap();
        let numeric = numeric_minimizer(&config, closed / 100.0, closed * 100.0).unwrap();
        prop_assert!(
            (numeric - closed).abs() <= 1e-8 * closed,
            "closed {closed} vs numeric {numeric}"
        );
    }

    /// The advisor never crosses the feasibility cap, and an inactive cap
    /// returns the unconstrained minimizer bit-exactly.
    #[test]
    fn advisor_respects_cap(config in valid_configs()) {
        let r = advise(&config).unwrap();
        prop_assert!(r.beta_star.ln() <= r.log_beta0 + 1e-12);
        if r.clamped {
            prop_assert!(r.beta_unconstrained.ln() > r.log_beta0);
        } else {
            prop_assert_eq!(r.beta_star, r.beta_unconstrained);
        }
    }

    /// Evenly-spaced advice does not depend on the dimension.
    #[test]
    fn evenly_spaced_is_dimension_independent(
        log_b0 in -1.0f64..1.5,
        log_sigma in -1.4f64..1.4,
        delta_scale in -3.0f64..0.0,
        space in spaces(),
        n in 2u32..=64,
    ) {
        let b0 = log_b0.exp();
        let delta = b0 * 10f64.powf(delta_scale);
        let sigma = log_sigma.exp();
        let base = advise(
            &ProblemConfig::new(1, b0, delta, sigma, space, Criterion::EvenlySpaced).unwrap(),
        )
        .unwrap();
        let other = advise(
            &ProblemConfig::new(n, b0, delta, sigma, space, Criterion::EvenlySpaced).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(base.beta_unconstrained, other.beta_unconstrained);
        prop_assert_eq!(base.beta_star, other.beta_star);
        prop_assert_eq!(base.log_mn_at_star, other.log_mn_at_star);
    }

    /// Closed-form sup exponent matches a coarse grid maximization.
    #[test]
    fn sup_exponent_matches_grid(log_sigma in -1.0f64..1.0, log_beta in -1.5f64..1.0) {
        let sigma = log_sigma.exp();
        let beta = log_beta.exp();
        let closed = sup_exponent(sigma, beta).unwrap();
        let t_max = 10.0 * sigma / beta;
        let grid_max = (0..=100_000)
            .map(|i| {
                let t = t_max * i as f64 / 100_000.0;
                t * t / (4.0 * beta) - t * t * t / sigma
            })
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((closed - grid_max).abs() <= 1e-6 * closed.abs());
    }

    /// Adding points never breaks density; halving delta never fixes it.
    #[test]
    fn density_check_is_monotone(
        points in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..40),
        extra in (0.0f64..1.0, 0.0f64..1.0),
        delta in 0.11f64..0.9,
    ) {
        let corner = [0.0, 0.0];
        let pts: Vec<Vec<f64>> = points.iter().map(|&(x, y)| vec![x, y]).collect();
        let coarse = check_density(&corner, 1.0, &pts, delta).unwrap();
        let fine = check_density(&corner, 1.0, &pts, delta / 2.0).unwrap();
        // fine grid covered implies coarse grid covered (cells nest)
        if fine {
            prop_assert!(coarse);
        }
        if coarse {
            let mut more = pts.clone();
            more.push(vec![extra.0, extra.1]);
            prop_assert!(check_density(&corner, 1.0, &more, delta).unwrap());
        }
    }

    /// Interpolation is linear in the data and symmetric under permutation.
    #[test]
    fn interpolation_linearity(
        raw in prop::collection::vec((-1.0f64..1.0, -2.0f64..2.0), 3..10),
        scale in -3.0f64..3.0,
    ) {
        // unique 1-d centers
        let mut centers: Vec<f64> = raw.iter().map(|&(x, _)| x).collect();
        centers.sort_by(f64::total_cmp);
        centers.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        let n = centers.len();
        prop_assume!(n >= 3);
        let values: Vec<f64> = raw[..n].iter().map(|&(_, y)| y).collect();
        let centers: Vec<Vec<f64>> = centers.into_iter().map(|x| vec![x]).collect();

        let (a, report) = interpolation::build(&centers, &values, 40.0).unwrap();
        prop_assume!(report.condition_estimate < 1e10);
        let scaled: Vec<f64> = values.iter().map(|v| scale * v).collect();
        let (b, _) = interpolation::build(&centers, &scaled, 40.0).unwrap();
        let x = [0.37];
        let va = a.evaluate(&x).unwrap();
        let vb = b.evaluate(&x).unwrap();
        prop_assert!((scale * va - vb).abs() <= 1e-8 * (1.0 + va.abs() * scale.abs()));
    }
}
