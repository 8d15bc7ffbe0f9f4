#![allow(dead_code)]

//! Shared helpers for the integration tests. The quadrature oracle here is
//! deliberately independent of the library's integration paths: plain
//! tensor-product composite Simpson with explicit weight loops.

use randcube_core::functions::TestProblem;
use randcube_core::spaces::Element;

/// Reference integral of `f` over the unit cube: composite Simpson with
/// `panels_per_axis` subintervals (even) per axis, tensorized.
pub fn oracle_integral(f: &TestProblem, panels_per_axis: usize) -> Element {
    let d = f.d();
    let m = panels_per_axis;
    assert!(m >= 2 && m.is_multiple_of(2), "panels must be even");
    let pts = m + 1;
    let axis_w: Vec<f64> = (0..pts)
        .map(|j| {
            if j == 0 || j == m {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            }
        })
        .collect();
    let h = 1.0 / m as f64;
    let dim = f.space().dim();
    let mut acc = vec![0.0; dim];
    let mut idx = vec![0usize; d];
    let mut t = vec![0.0; d];
    loop {
        let mut w = 1.0;
        for a in 0..d {
            t[a] = idx[a] as f64 * h;
            w *= axis_w[idx[a]];
        }
        let v = f.evaluate(&t);
        for (acc_c, v_c) in acc.iter_mut().zip(v.coords()) {
            *acc_c += w * v_c;
        }
        let mut done = true;
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < pts {
                done = false;
                break;
            }
            idx[a] = 0;
        }
        if done {
            break;
        }
    }
    let scale = (h / 3.0).powi(d as i32);
    Element::new(acc.into_iter().map(|c| c * scale).collect())
}

/// Max absolute coordinate difference.
pub fn max_coord_diff(a: &Element, b: &Element) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
