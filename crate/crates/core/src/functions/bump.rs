//! The reference smooth bump: positive exactly on the open unit cube,
//! infinitely differentiable on all of R^d, supported in the closed cube.

use std::sync::OnceLock;

/// One-dimensional factor g(s) = exp(-1/(s(1-s))) on (0,1), zero elsewhere.
pub fn bump_line(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        0.0
    } else {
        (-1.0 / (s * (1.0 - s))).exp()
    }
}

/// Product bump psi(t) = g(t_1) ... g(t_d).
pub fn bump_eval(t: &[f64]) -> f64 {
    t.iter().map(|&s| bump_line(s)).product()
}

/// Integral of g over \[0,1\] by composite Simpson with `panels` subintervals
/// (must be even). Exposed so tests can check stability under refinement.
pub fn bump_line_integral(panels: usize) -> f64 {
    assert!(panels >= 2 && panels.is_multiple_of(2), "panels must be even");
    let h = 1.0 / panels as f64;
    let mut acc = bump_line(0.0) + bump_line(1.0);
    for j in 1..panels {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * bump_line(j as f64 * h);
    }
    acc * h / 3.0
}

const SIGMA_PANELS: usize = 1 << 16;

/// sigma_d = integral of the product bump over the unit cube; equals the
/// d-th power of the one-dimensional integral, computed once and cached.
pub fn bump_integral(d: usize) -> f64 {
    assert!(d >= 1);
    static SIGMA1: OnceLock<f64> = OnceLock::new();
    let s1 = *SIGMA1.get_or_init(|| bump_line_integral(SIGMA_PANELS));
    s1.powi(d as i32)
}
