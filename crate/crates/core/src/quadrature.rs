//! Adaptive Simpson quadrature for the norm integrals.

/// Integrates `f` over `[a, b]` to roughly `rel_tol` relative accuracy.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    let eps = rel_tol * scale;
    // never demand more than f64 can deliver, or oscillatory integrands
    // recurse to the depth cap chasing rounding noise
    let eps_floor = 4.0 * f64::EPSILON * scale;
    // the first levels always split so a structured integrand cannot alias
    // into false convergence on the coarse grid
    recurse(f, a, m, b, fa, fm, fb, whole, eps, eps_floor, 28, 6)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    eps_floor: f64,
    depth: u32,
    force: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || (force == 0 && delta.abs() <= 15.0 * eps) {
        left + right + delta / 15.0
    } else {
        let child_eps = (eps / 2.0).max(eps_floor);
        let child_force = force.saturating_sub(1);
        recurse(
            f, a, lm, m, fa, flm, fm, left, child_eps, eps_floor, depth - 1, child_force,
        ) + recurse(
            f, m, rm, b, fm, frm, fb, right, child_eps, eps_floor, depth - 1, child_force,
        )
    }
}
