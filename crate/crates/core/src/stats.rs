//! Shared statistics helpers: empirical moments, bootstrap standard errors,
//! and ordinary least squares on log-log data.

use rand::Rng;

use crate::error::{CoreError, Result};
use crate::seeding;

/// Default number of bootstrap resamples for standard errors.
pub const BOOTSTRAP_RESAMPLES: usize = 1000;

/// Sums values in balanced chunks to keep rounding error near the pairwise
/// bound; enumeration sums run over up to 2^19 terms.
pub fn stable_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    stable_sum(&values[..mid]) + stable_sum(&values[mid..])
}

/// Empirical p-th moment root: (mean of v^p)^(1/p).
///
/// p = 1 and p = 2 take exact paths so that constant samples reproduce
/// their value to machine precision.
pub fn p_moment(values: &[f64], p: f64) -> f64 {
    debug_assert!(!values.is_empty());
    let n = values.len() as f64;
    if p == 1.0 {
        stable_sum(values) / n
    } else if p == 2.0 {
        let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
        (stable_sum(&sq) / n).sqrt()
    } else {
        let pw: Vec<f64> = values.iter().map(|v| v.powf(p)).collect();
        (stable_sum(&pw) / n).powf(1.0 / p)
    }
}

/// Bootstrap standard error of `p_moment` over i.i.d. samples.
///
/// Resamples `values` with replacement `resamples` times using the seeded
/// stream and returns the sample standard deviation of the resampled
/// statistic.
pub fn bootstrap_stderr(values: &[f64], p: f64, resamples: usize, seed: u64) -> f64 {
    debug_assert!(!values.is_empty());
    let n = values.len();
    let mut rng = seeding::point_rng(seed);
    let mut stats = Vec::with_capacity(resamples);
    let mut scratch = vec![0.0; n];
    for _ in 0..resamples {
        for s in scratch.iter_mut() {
            *s = values[rng.gen_range(0..n)];
        }
        stats.push(p_moment(&scratch, p));
    }
    let mean = stable_sum(&stats) / resamples as f64;
    let dev: Vec<f64> = stats.iter().map(|s| (s - mean) * (s - mean)).collect();
    (stable_sum(&dev) / (resamples as f64 - 1.0)).sqrt()
}

/// Result of a least-squares straight-line fit.
#[derive(Clone, Copy, Debug)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of y against x.
pub fn ols(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(CoreError::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(CoreError::NotEnoughPoints {
            needed: 2,
            got: xs.len(),
        });
    }
    let n = xs.len() as f64;
    let xbar = stable_sum(xs) / n;
    let ybar = stable_sum(ys) / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    if sxx == 0.0 {
        return Err(CoreError::InvalidParameter(
            "least-squares fit needs at least two distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_tot: f64 = ys.iter().map(|y| (y - ybar) * (y - ybar)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(LineFit {
        slope,
        intercept,
        r2,
    })
}

/// OLS of ln y against ln x. Inputs must be strictly positive.
pub fn ols_loglog(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.iter().chain(ys).any(|v| *v <= 0.0) {
        return Err(CoreError::InvalidParameter(
            "log-log fit needs strictly positive data".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    ols(&lx, &ly)
}
