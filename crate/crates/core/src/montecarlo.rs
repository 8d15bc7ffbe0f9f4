//! Randomized integration on the unit cube and its error measurement.
//!
//! Two algorithms are provided. [`standard_mc`] is the plain Monte Carlo
//! mean over n uniform points. [`sep_mc`] separates the main part first: it
//! builds the composite Lagrange interpolant of degree r on k = ceil(n^(1/d))
//! subcubes per axis, integrates the interpolant exactly, and applies plain
//! Monte Carlo only to the residual,
//!
//! ```text
//! A f = integral(P f) + (1/n) sum_i (f(xi_i) - (P f)(xi_i)),
//! ```
//!
//! for a total of M + n function evaluations, M being the interpolation node
//! count. Both algorithms are quadratures: [`as_quadrature`] returns the
//! explicit nodes and scalar weights (interpolation nodes carry
//! b_j - (1/n) sum_i psi_j(xi_i), sample points carry 1/n), and applying the
//! realization to f reproduces the algorithm output.
//!
//! [`error_moment`] estimates the p-th moment of the error norm over
//! independent trials with bootstrap standard errors; [`rate_fit`] fits the
//! empirical convergence order, to be compared with the theoretical
//! exponent -(r/d + 1 - 1/p) of [`theoretical_exponent`].

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::functions::TestProblem;
use crate::interp::InterpolationOperator;
use crate::seeding::{self, DOMAIN_BOOTSTRAP, DOMAIN_NOISE, DOMAIN_TRIAL};
use crate::spaces::{Element, SpaceDescriptor};
use crate::stats::{self, BOOTSTRAP_RESAMPLES};

/// Which integration algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Plain Monte Carlo mean.
    Standard,
    /// Monte Carlo with the interpolation main part separated.
    Separation,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Standard => write!(f, "std"),
            Algorithm::Separation => write!(f, "sep"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" => Ok(Algorithm::Standard),
            "sep" => Ok(Algorithm::Separation),
            other => Err(CoreError::InvalidParameter(format!(
                "unknown algorithm `{other}` (expected `std` or `sep`)"
            ))),
        }
    }
}

/// Parameters of a moment-estimation run.
#[derive(Clone, Copy, Debug)]
pub struct MCConfig {
    pub n: usize,
    pub r: u32,
    pub seed: u64,
    pub trials: usize,
    pub moment_p: f64,
}

impl MCConfig {
    pub fn new(n: usize, r: u32, seed: u64, trials: usize, moment_p: f64) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::InvalidParameter("n must be at least 1".into()));
        }
        if trials == 0 {
            return Err(CoreError::InvalidParameter(
                "trials must be at least 1".into(),
            ));
        }
        if !(1.0..=2.0).contains(&moment_p) {
            return Err(CoreError::InvalidParameter(format!(
                "moment order p must lie in [1, 2], got {moment_p}"
            )));
        }
        Ok(MCConfig {
            n,
            r,
            seed,
            trials,
            moment_p,
        })
    }
}

/// k = ceil(n^(1/d)): the smallest k with k^d >= n.
pub fn subcubes_per_axis(n: usize, d: usize) -> usize {
    debug_assert!(n >= 1 && d >= 1);
    let pow = |k: usize| (k as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let mut k = (n as f64).powf(1.0 / d as f64).round().max(1.0) as usize;
    while pow(k) < n as u128 {
        k += 1;
    }
    while k > 1 && pow(k - 1) >= n as u128 {
        k -= 1;
    }
    k
}

fn draw_point(rng: &mut ChaCha8Rng, t: &mut [f64]) {
    for c in t.iter_mut() {
        *c = rng.gen::<f64>();
    }
}

fn checked_eval(f: &TestProblem, t: &[f64]) -> Result<Element> {
    let v = f.evaluate(t);
    if v.dim() != f.space().dim() {
        return Err(CoreError::DimensionMismatch {
            expected: f.space().dim(),
            got: v.dim(),
        });
    }
    v.check_finite()?;
    Ok(v)
}

/// Plain Monte Carlo: the mean of f over n seeded uniform points.
/// Deterministic given (f, n, seed).
pub fn standard_mc(f: &TestProblem, n: usize, seed: u64) -> Result<Element> {
    if n == 0 {
        return Err(CoreError::InvalidParameter("n must be at least 1".into()));
    }
    let mut rng = seeding::point_rng(seed);
    let mut t = vec![0.0; f.d()];
    let mut acc = f.space().zero();
    for _ in 0..n {
        draw_point(&mut rng, &mut t);
        let v = checked_eval(f, &t)?;
        acc.add_scaled(1.0, &v);
    }
    acc.scale(1.0 / n as f64);
    Ok(acc)
}

/// Monte Carlo with separation of the main part; builds the interpolant for
/// k = ceil(n^(1/d)) and degree r, then delegates to [`sep_mc_with`].
/// Costs M + n evaluations of f.
pub fn sep_mc(f: &TestProblem, n: usize, r: u32, seed: u64) -> Result<Element> {
    let interp = build_separation_interpolant(f, n, r)?;
    sep_mc_with(&interp, f, n, seed)
}

/// Builds the interpolation operator and node samples used by [`sep_mc`]
/// for a budget of n points. Reusable across trials with different seeds.
pub fn build_separation_interpolant(
    f: &TestProblem,
    n: usize,
    r: u32,
) -> Result<OwnedInterpolant> {
    if n == 0 {
        return Err(CoreError::InvalidParameter("n must be at least 1".into()));
    }
    if r == 0 {
        return Err(CoreError::InvalidParameter(
            "separation requires r >= 1; use the standard algorithm for r = 0".into(),
        ));
    }
    if f.smoothness() < r {
        return Err(CoreError::InvalidParameter(format!(
            "problem `{}` is certified only up to smoothness {}, requested r = {r}",
            f.name(),
            f.smoothness()
        )));
    }
    let k = subcubes_per_axis(n, f.d());
    let op = InterpolationOperator::build(r, k, f.d())?;
    OwnedInterpolant::new(op, f)
}

/// An interpolation operator owning its node samples; the borrow-free
/// counterpart of [`crate::interp::Interpolant`] for reuse across trials.
pub struct OwnedInterpolant {
    op: InterpolationOperator,
    samples: Vec<Element>,
    space: SpaceDescriptor,
}

impl OwnedInterpolant {
    fn new(op: InterpolationOperator, f: &TestProblem) -> Result<Self> {
        let space = f.space();
        let mut samples = Vec::with_capacity(op.node_count());
        for j in 0..op.node_count() {
            samples.push(checked_eval(f, &op.node(j))?);
        }
        Ok(OwnedInterpolant { op, samples, space })
    }

    pub fn op(&self) -> &InterpolationOperator {
        &self.op
    }

    /// Number of stored node samples, M.
    pub fn node_count(&self) -> usize {
        self.samples.len()
    }

    fn eval(&self, t: &[f64]) -> Element {
        let mut acc = self.space.zero();
        for (j, w) in self.op.basis_at(t) {
            acc.add_scaled(w, &self.samples[j]);
        }
        acc
    }

    fn integral(&self) -> Element {
        let mut acc = self.space.zero();
        for (j, s) in self.samples.iter().enumerate() {
            acc.add_scaled(self.op.weight(j), s);
        }
        acc
    }
}

/// The separation algorithm with a prebuilt interpolant: integral of the
/// interpolant plus a plain Monte Carlo mean of the residual f - P f over
/// one seeded point stream. Each of the n samples costs one fresh
/// evaluation of f; the node samples are reused.
pub fn sep_mc_with(
    interp: &OwnedInterpolant,
    f: &TestProblem,
    n: usize,
    seed: u64,
) -> Result<Element> {
    if n == 0 {
        return Err(CoreError::InvalidParameter("n must be at least 1".into()));
    }
    let mut rng = seeding::point_rng(seed);
    let mut t = vec![0.0; f.d()];
    let mut acc = f.space().zero();
    for _ in 0..n {
        draw_point(&mut rng, &mut t);
        let v = checked_eval(f, &t)?;
        acc.add_scaled(1.0, &v);
        acc.add_scaled(-1.0, &interp.eval(&t));
    }
    let mut out = interp.integral();
    out.add_scaled(1.0 / n as f64, &acc);
    Ok(out)
}

/// One drawn randomized quadrature: explicit nodes and scalar weights.
#[derive(Clone, Debug)]
pub struct QuadratureRealization {
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
    cardinality: usize,
}

impl QuadratureRealization {
    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total function-value count of the represented algorithm,
    /// M + n for r >= 1 and n for r = 0.
    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn weight_sum(&self) -> f64 {
        stats::stable_sum(&self.weights)
    }

    /// Applies the quadrature to f: sum of a_i f(t_i).
    pub fn apply(&self, f: &TestProblem) -> Result<Element> {
        if self.nodes.first().map(|t| t.len()) != Some(f.d()) && !self.nodes.is_empty() {
            return Err(CoreError::DimensionMismatch {
                expected: f.d(),
                got: self.nodes[0].len(),
            });
        }
        let mut acc = f.space().zero();
        for (t, a) in self.nodes.iter().zip(&self.weights) {
            acc.add_scaled(*a, &checked_eval(f, t)?);
        }
        Ok(acc)
    }
}

/// The node/weight representation of the algorithm drawn from `seed`:
/// for r = 0 the n sample points with weights 1/n, for r >= 1 the
/// interpolation nodes with weights b_j - (1/n) sum_i psi_j(xi_i) followed
/// by the sample points with weights 1/n. Applying the result to f equals
/// [`standard_mc`] / [`sep_mc`] with the same seed.
pub fn as_quadrature(f: &TestProblem, n: usize, r: u32, seed: u64) -> Result<QuadratureRealization> {
    if n == 0 {
        return Err(CoreError::InvalidParameter("n must be at least 1".into()));
    }
    let d = f.d();
    let mut rng = seeding::point_rng(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let mut t = vec![0.0; d];
        draw_point(&mut rng, &mut t);
        points.push(t);
    }

    if r == 0 {
        let weights = vec![1.0 / n as f64; n];
        return Ok(QuadratureRealization {
            nodes: points,
            weights,
            cardinality: n,
        });
    }

    if f.smoothness() < r {
        return Err(CoreError::InvalidParameter(format!(
            "problem `{}` is certified only up to smoothness {}, requested r = {r}",
            f.name(),
            f.smoothness()
        )));
    }
    let k = subcubes_per_axis(n, d);
    let op = InterpolationOperator::build(r, k, d)?;
    let m = op.node_count();
    let mut weights = op.weights();
    for t in &points {
        for (j, psi) in op.basis_at(t) {
            weights[j] -= psi / n as f64;
        }
    }
    let mut nodes: Vec<Vec<f64>> = (0..m).map(|j| op.node(j)).collect();
    nodes.extend(points);
    weights.extend(std::iter::repeat_n(1.0 / n as f64, n));
    Ok(QuadratureRealization {
        nodes,
        weights,
        cardinality: m + n,
    })
}

/// An empirical p-th error moment with its bootstrap standard error.
#[derive(Clone, Copy, Debug)]
pub struct ErrorMoment {
    pub p: f64,
    pub value: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Per-trial error norms ||S f - A f|| over `cfg.trials` independent
/// realizations; trial i uses the derived seed (trial-domain, counter i).
/// Trials may run in parallel; the output order is by trial index either
/// way, so results are bit-identical across thread layouts.
pub fn error_trials(
    algo: Algorithm,
    f: &TestProblem,
    cfg: &MCConfig,
    reference: Option<&Element>,
) -> Result<Vec<f64>> {
    let reference = match reference.or_else(|| f.exact_integral()) {
        Some(v) => v.clone(),
        None => return Err(CoreError::MissingReference),
    };
    let space = f.space();
    match algo {
        Algorithm::Standard => (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                let seed_i = seeding::derive_seed(cfg.seed, DOMAIN_TRIAL, i as u64);
                let estimate = standard_mc(f, cfg.n, seed_i)?;
                space.distance(&reference, &estimate)
            })
            .collect(),
        Algorithm::Separation => {
            // The node samples are deterministic; build them once and share
            // across trials so each trial costs only the n fresh samples.
            let interp = build_separation_interpolant(f, cfg.n, cfg.r)?;
            (0..cfg.trials)
                .into_par_iter()
                .map(|i| {
                    let seed_i = seeding::derive_seed(cfg.seed, DOMAIN_TRIAL, i as u64);
                    let estimate = sep_mc_with(&interp, f, cfg.n, seed_i)?;
                    space.distance(&reference, &estimate)
                })
                .collect()
        }
    }
}

/// Empirical p-th moment of the error norm over independent trials, with a
/// seeded bootstrap standard error (1000 resamples).
pub fn error_moment(
    algo: Algorithm,
    f: &TestProblem,
    cfg: &MCConfig,
    reference: Option<&Element>,
) -> Result<ErrorMoment> {
    if cfg.trials < 2 {
        return Err(CoreError::InvalidParameter(
            "moment estimation needs at least 2 trials".into(),
        ));
    }
    let errors = error_trials(algo, f, cfg, reference)?;
    moment_from_trials(&errors, cfg.moment_p, cfg.seed)
}

/// Moment and bootstrap standard error from already-computed per-trial
/// errors, with the same bootstrap stream [`error_moment`] would use for
/// this master seed. Lets callers read several moment orders off one trial
/// set without re-running the algorithm.
pub fn moment_from_trials(errors: &[f64], p: f64, master_seed: u64) -> Result<ErrorMoment> {
    if errors.len() < 2 {
        return Err(CoreError::InvalidParameter(
            "moment estimation needs at least 2 trials".into(),
        ));
    }
    if !(1.0..=2.0).contains(&p) {
        return Err(CoreError::InvalidParameter(format!(
            "moment order p must lie in [1, 2], got {p}"
        )));
    }
    let value = stats::p_moment(errors, p);
    let stderr = stats::bootstrap_stderr(
        errors,
        p,
        BOOTSTRAP_RESAMPLES,
        seeding::derive_seed(master_seed, DOMAIN_BOOTSTRAP, 0),
    );
    Ok(ErrorMoment {
        p,
        value,
        stderr,
        trials: errors.len(),
    })
}

/// One measured point of a rate experiment.
#[derive(Clone, Copy, Debug)]
pub struct RatePoint {
    pub n: usize,
    pub moment: ErrorMoment,
}

/// Least-squares power-law fit of error moments against n.
#[derive(Clone, Debug)]
pub struct RateReport {
    /// The points used by the fit (strictly positive values only).
    pub points: Vec<RatePoint>,
    /// Count of points excluded for non-positive values.
    pub excluded: usize,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of ln(moment) against ln(n). Points with
/// non-positive values are excluded (and counted); at least 3 usable points
/// with distinct n are required.
pub fn rate_fit(points: &[RatePoint]) -> Result<RateReport> {
    let mut seen = std::collections::BTreeSet::new();
    for p in points {
        if !seen.insert(p.n) {
            return Err(CoreError::InvalidParameter(format!(
                "duplicate n = {} in rate fit",
                p.n
            )));
        }
    }
    let usable: Vec<RatePoint> = points
        .iter()
        .copied()
        .filter(|p| p.moment.value > 0.0)
        .collect();
    let excluded = points.len() - usable.len();
    if usable.len() < 3 {
        return Err(CoreError::NotEnoughPoints {
            needed: 3,
            got: usable.len(),
        });
    }
    let xs: Vec<f64> = usable.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = usable.iter().map(|p| p.moment.value).collect();
    let fit = stats::ols_loglog(&xs, &ys)?;
    Ok(RateReport {
        points: usable,
        excluded,
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r2,
    })
}

/// The error-decay exponent -(r/d + 1 - 1/p) predicted for smoothness r,
/// dimension d, and moment order p.
pub fn theoretical_exponent(r: u32, d: usize, p: f64) -> f64 {
    -((r as f64) / (d as f64) + 1.0 - 1.0 / p)
}

/// One point of the independent-sum diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct IndependentSumPoint {
    pub n: usize,
    /// (E ||sum of n mean-zero noise vectors||^p)^(1/p), estimated.
    pub moment: f64,
    /// moment / (n^(1/p) * ess-sup norm); bounded for spaces whose
    /// equal-norm type-p constants are bounded.
    pub ratio: f64,
}

/// Estimates the p-th moment of ||eta_1 + ... + eta_n|| for i.i.d. bounded
/// mean-zero vectors (coordinates uniform on [-1, 1]) and reports it
/// relative to the n^(1/p) * ess-sup scale. A monitored diagnostic: the
/// bound's constant is not asserted anywhere.
pub fn independent_sum_ratio(
    space: SpaceDescriptor,
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<IndependentSumPoint> {
    if n == 0 || trials == 0 {
        return Err(CoreError::InvalidParameter(
            "independent-sum diagnostic needs n >= 1 and trials >= 1".into(),
        ));
    }
    if !(1.0..=2.0).contains(&p) {
        return Err(CoreError::InvalidParameter(format!(
            "moment order p must lie in [1, 2], got {p}"
        )));
    }
    let dim = space.dim();
    let norms: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = seeding::stream_rng(seed, DOMAIN_NOISE, trial as u64);
            let mut acc = vec![0.0; dim];
            for _ in 0..n {
                for c in acc.iter_mut() {
                    *c += 2.0 * rng.gen::<f64>() - 1.0;
                }
            }
            space.norm(&Element::new(acc))
        })
        .collect::<Result<Vec<f64>>>()?;
    let moment = stats::p_moment(&norms, p);
    let ess_sup = space.norm(&space.splat(1.0))?;
    let ratio = moment / ((n as f64).powf(1.0 / p) * ess_sup);
    Ok(IndependentSumPoint { n, moment, ratio })
}
