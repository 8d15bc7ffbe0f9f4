//! Rademacher averages and equal-norm type-constant experiments.
//!
//! The central quantity is the moment (E ||sum_i eps_i x_i||^p)^(1/p) over
//! independent uniform signs eps_i. For n <= [`EXACT_CUTOFF`] vectors it is
//! enumerated exactly — 2^(n-1) sign patterns suffice because negating all
//! signs preserves the norm — and sampled with a seeded stream above that.
//!
//! [`sigma_lower_bound`] turns moments into certified lower bounds for the
//! equal-norm type-p constant: for any family of n vectors the ratio
//! moment / (n^(1/p) max_i ||x_i||) is a feasible witness. [`subset_search`]
//! finds, by exhaustion, a subset of prescribed density with the smallest
//! moment, and [`greedy_partition`] iterates it into a partition whose
//! blocks each satisfy the density bound against the indices remaining when
//! the block was chosen; summing per-block first moments then dominates
//! the full moment by the triangle inequality.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::seeding::{self, DOMAIN_BOOTSTRAP, DOMAIN_FAMILY, DOMAIN_SIGNS};
use crate::spaces::{Element, SpaceDescriptor};
use crate::stats::{self, BOOTSTRAP_RESAMPLES};

/// Largest family size enumerated exactly (2^19 effective sign patterns).
pub const EXACT_CUTOFF: usize = 20;

/// Largest family size accepted by the exhaustive subset search.
pub const SUBSET_SEARCH_MAX: usize = 14;

/// Default number of sign draws in sampled mode.
pub const DEFAULT_SAMPLED_DRAWS: usize = 100_000;

/// How a moment was estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Sampled,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Exact => write!(f, "exact"),
            Method::Sampled => write!(f, "sampled"),
        }
    }
}

/// Estimation mode requested from [`rademacher_moment`].
#[derive(Clone, Copy, Debug)]
pub enum MomentMode {
    Exact,
    Sampled { samples: usize },
}

/// A Rademacher moment estimate.
#[derive(Clone, Debug)]
pub struct RademacherEstimate {
    pub p: f64,
    pub value: f64,
    pub method: Method,
    /// Number of sign draws (sampled mode only).
    pub samples: Option<usize>,
    /// Bootstrap standard error (sampled mode only).
    pub stderr: Option<f64>,
}

fn validate_family(space: &SpaceDescriptor, vectors: &[Element]) -> Result<()> {
    if vectors.is_empty() {
        return Err(CoreError::EmptyInput("vector family"));
    }
    for v in vectors {
        if v.dim() != space.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: space.dim(),
                got: v.dim(),
            });
        }
        v.check_finite()?;
    }
    Ok(())
}

fn validate_p(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(CoreError::InvalidParameter(format!(
            "moment order p must lie in [1, 2], got {p}"
        )));
    }
    Ok(())
}

fn p_root(mean: f64, p: f64) -> f64 {
    if p == 1.0 {
        mean
    } else if p == 2.0 {
        mean.sqrt()
    } else {
        mean.powf(1.0 / p)
    }
}

/// Exact p-th moment by enumerating sign patterns with the first sign fixed.
/// Chunk boundaries are fixed, so parallel runs are bit-identical.
fn exact_moment_of(space: &SpaceDescriptor, vectors: &[&Element], p: f64) -> f64 {
    let n = vectors.len();
    debug_assert!((1..=EXACT_CUTOFF).contains(&n));
    let dim = space.dim();
    let half: u64 = 1 << (n - 1);
    let chunks: u64 = if half >= (1 << 14) { 64 } else { 1 };
    let chunk_len = half / chunks;

    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk_len;
            let hi = if c + 1 == chunks { half } else { lo + chunk_len };
            let mut vals = Vec::with_capacity((hi - lo) as usize);
            let mut sum = vec![0.0; dim];
            for mask in lo..hi {
                sum.copy_from_slice(vectors[0].coords());
                for (i, v) in vectors.iter().enumerate().skip(1) {
                    let sign = if (mask >> (i - 1)) & 1 == 0 { 1.0 } else { -1.0 };
                    for (s, x) in sum.iter_mut().zip(v.coords()) {
                        *s += sign * x;
                    }
                }
                let norm = space.norm_raw(&sum);
                vals.push(match p {
                    1.0 => norm,
                    2.0 => norm * norm,
                    _ => norm.powf(p),
                });
            }
            stats::stable_sum(&vals)
        })
        .collect();
    let mean = partials.iter().sum::<f64>() / half as f64;
    p_root(mean, p)
}

fn sampled_norms(
    space: &SpaceDescriptor,
    vectors: &[Element],
    samples: usize,
    seed: u64,
) -> Vec<f64> {
    let dim = space.dim();
    let mut rng = seeding::stream_rng(seed, DOMAIN_SIGNS, 0);
    let mut out = Vec::with_capacity(samples);
    let mut sum = vec![0.0; dim];
    for _ in 0..samples {
        sum.iter_mut().for_each(|s| *s = 0.0);
        for v in vectors {
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            for (s, x) in sum.iter_mut().zip(v.coords()) {
                *s += sign * x;
            }
        }
        out.push(space.norm_raw(&sum));
    }
    out
}

/// (E ||sum_i eps_i x_i||^p)^(1/p), exactly enumerated or sampled.
pub fn rademacher_moment(
    space: SpaceDescriptor,
    vectors: &[Element],
    p: f64,
    mode: MomentMode,
    seed: u64,
) -> Result<RademacherEstimate> {
    validate_family(&space, vectors)?;
    validate_p(p)?;
    match mode {
        MomentMode::Exact => {
            if vectors.len() > EXACT_CUTOFF {
                return Err(CoreError::FamilyTooLarge {
                    n: vectors.len(),
                    max: EXACT_CUTOFF,
                    op: "exact sign enumeration",
                });
            }
            let refs: Vec<&Element> = vectors.iter().collect();
            Ok(RademacherEstimate {
                p,
                value: exact_moment_of(&space, &refs, p),
                method: Method::Exact,
                samples: None,
                stderr: None,
            })
        }
        MomentMode::Sampled { samples } => {
            if samples < 2 {
                return Err(CoreError::InvalidParameter(
                    "sampled mode needs at least 2 draws".into(),
                ));
            }
            let norms = sampled_norms(&space, vectors, samples, seed);
            let value = stats::p_moment(&norms, p);
            let stderr = stats::bootstrap_stderr(
                &norms,
                p,
                BOOTSTRAP_RESAMPLES,
                seeding::derive_seed(seed, DOMAIN_BOOTSTRAP, 1),
            );
            Ok(RademacherEstimate {
                p,
                value,
                method: Method::Sampled,
                samples: Some(samples),
                stderr: Some(stderr),
            })
        }
    }
}

/// A built-in or user-supplied equal-norm witness family.
#[derive(Clone, Debug)]
pub enum Family {
    /// The first n coordinate basis vectors (requires dim >= n).
    Basis,
    /// n copies of the first basis vector.
    Constant,
    /// n seeded random vectors normalized to unit norm.
    RandomUnit,
    Custom { label: String, vectors: Vec<Element> },
}

impl Family {
    pub fn label(&self) -> &str {
        match self {
            Family::Basis => "basis",
            Family::Constant => "constant",
            Family::RandomUnit => "random-unit",
            Family::Custom { label, .. } => label,
        }
    }

    /// The standard list tried by [`sigma_lower_bound`].
    pub fn builtin() -> Vec<Family> {
        vec![Family::Basis, Family::Constant, Family::RandomUnit]
    }

    /// Materializes the n vectors of this family in `space`; `index`
    /// separates the random streams of several families under one seed.
    pub fn realize(
        &self,
        space: SpaceDescriptor,
        n: usize,
        seed: u64,
        index: u64,
    ) -> Result<Vec<Element>> {
        match self {
            Family::Basis => {
                if space.dim() < n {
                    return Err(CoreError::InvalidParameter(format!(
                        "basis family of size {n} needs dimension >= {n}, space has {}",
                        space.dim()
                    )));
                }
                (0..n).map(|i| space.basis_vector(i)).collect()
            }
            Family::Constant => {
                let x = space.basis_vector(0)?;
                Ok(vec![x; n])
            }
            Family::RandomUnit => {
                let mut rng = seeding::stream_rng(seed, DOMAIN_FAMILY, index);
                let mut out = Vec::with_capacity(n);
                while out.len() < n {
                    let coords: Vec<f64> =
                        (0..space.dim()).map(|_| 2.0 * rng.gen::<f64>() - 1.0).collect();
                    let candidate = Element::new(coords);
                    let norm = space.norm(&candidate)?;
                    if norm > 1e-3 {
                        out.push(candidate.scaled(1.0 / norm));
                    }
                }
                Ok(out)
            }
            Family::Custom { vectors, .. } => {
                if vectors.len() != n {
                    return Err(CoreError::VectorCountMismatch {
                        expected: n,
                        got: vectors.len(),
                    });
                }
                Ok(vectors.clone())
            }
        }
    }
}

/// The measured ratio of one family.
#[derive(Clone, Debug)]
pub struct FamilyRatio {
    pub family: String,
    pub moment: f64,
    /// moment / (n^(1/p) max_i ||x_i||): a lower bound for the equal-norm
    /// type-p constant at this n.
    pub ratio: f64,
    pub method: Method,
    pub stderr: Option<f64>,
}

/// Ratios for each family; exact enumeration when n allows it, otherwise
/// `sampled_draws` seeded sign draws.
pub fn family_ratios(
    space: SpaceDescriptor,
    p: f64,
    n: usize,
    families: &[Family],
    seed: u64,
    sampled_draws: usize,
) -> Result<Vec<FamilyRatio>> {
    if families.is_empty() {
        return Err(CoreError::EmptyInput("family list"));
    }
    if n == 0 {
        return Err(CoreError::InvalidParameter("n must be at least 1".into()));
    }
    validate_p(p)?;
    let mut out = Vec::with_capacity(families.len());
    for (idx, family) in families.iter().enumerate() {
        let vectors = family.realize(space, n, seed, idx as u64)?;
        let mut max_norm = 0.0_f64;
        for v in &vectors {
            max_norm = max_norm.max(space.norm(v)?);
        }
        if max_norm == 0.0 {
            return Err(CoreError::AllZeroVectors);
        }
        let mode = if n <= EXACT_CUTOFF {
            MomentMode::Exact
        } else {
            MomentMode::Sampled {
                samples: sampled_draws,
            }
        };
        let est = rademacher_moment(
            space,
            &vectors,
            p,
            mode,
            seeding::derive_seed(seed, DOMAIN_SIGNS, idx as u64),
        )?;
        let scale = (n as f64).powf(1.0 / p) * max_norm;
        out.push(FamilyRatio {
            family: family.label().to_string(),
            moment: est.value,
            ratio: est.value / scale,
            method: est.method,
            stderr: est.stderr.map(|s| s / scale),
        });
    }
    Ok(out)
}

/// A certified lower bound for the equal-norm type-p constant over n
/// vectors, with the family that achieved it.
#[derive(Clone, Debug)]
pub struct TypeConstantEstimate {
    pub p: f64,
    pub n: usize,
    pub lower_bound: f64,
    pub witness_family: String,
}

/// The best ratio over the given families (the built-in list fits most
/// uses); every ratio is a valid lower bound, the max is the certificate.
pub fn sigma_lower_bound(
    space: SpaceDescriptor,
    p: f64,
    n: usize,
    families: &[Family],
    seed: u64,
) -> Result<TypeConstantEstimate> {
    let ratios = family_ratios(space, p, n, families, seed, DEFAULT_SAMPLED_DRAWS)?;
    let best = ratios
        .into_iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("families is non-empty");
    Ok(TypeConstantEstimate {
        p,
        n,
        lower_bound: best.ratio,
        witness_family: best.family,
    })
}

fn validate_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(CoreError::InvalidParameter(format!(
            "gamma must lie strictly between 0 and 1, got {gamma}"
        )));
    }
    Ok(())
}

/// gamma = 8^d / (2 * 9^d): the subset density the partition construction
/// guarantees in dimension d.
pub fn default_gamma(d: usize) -> f64 {
    0.5 * (8.0_f64 / 9.0).powi(d as i32)
}

fn subset_search_core(
    space: &SpaceDescriptor,
    vectors: &[&Element],
    gamma: f64,
    p: f64,
) -> (Vec<usize>, f64) {
    let n = vectors.len();
    let min_size = ((gamma * n as f64).ceil() as usize).max(1);
    let mut best_mask = 0u32;
    let mut best_moment = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        let subset: Vec<&Element> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vectors[i])
            .collect();
        let moment = exact_moment_of(space, &subset, p);
        if moment < best_moment {
            best_moment = moment;
            best_mask = mask;
        }
    }
    let indices: Vec<usize> = (0..n).filter(|i| best_mask >> i & 1 == 1).collect();
    (indices, best_moment)
}

/// Exhaustively finds a subset of size >= ceil(gamma n) minimizing the
/// exact p-th Rademacher moment of its signed sum. Ties go to the subset
/// first in ascending bitmask order, so results are deterministic.
pub fn subset_search(
    space: SpaceDescriptor,
    vectors: &[Element],
    gamma: f64,
    p: f64,
) -> Result<(Vec<usize>, f64)> {
    validate_family(&space, vectors)?;
    validate_p(p)?;
    validate_gamma(gamma)?;
    if vectors.len() > SUBSET_SEARCH_MAX {
        return Err(CoreError::FamilyTooLarge {
            n: vectors.len(),
            max: SUBSET_SEARCH_MAX,
            op: "exhaustive subset search",
        });
    }
    let refs: Vec<&Element> = vectors.iter().collect();
    Ok(subset_search_core(&space, &refs, gamma, p))
}

/// The record of one greedy partition run.
#[derive(Clone, Debug)]
pub struct PartitionTrace {
    /// Disjoint index blocks in the order found; their union is 0..n.
    pub blocks: Vec<Vec<usize>>,
    pub gamma: f64,
    /// Exact p-th moment of each block's signed sum.
    pub per_block_moment: Vec<f64>,
}

impl PartitionTrace {
    /// Checks the structural guarantees: blocks disjoint and exhaustive,
    /// each block at least gamma times the indices remaining before it,
    /// and the remainder after l blocks at most (1-gamma)^l n.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        let mut remaining = n;
        for (l, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(CoreError::InvariantViolated(format!("block {l} is empty")));
            }
            for &i in block {
                if i >= n || seen[i] {
                    return Err(CoreError::InvariantViolated(format!(
                        "index {i} repeated or out of range in block {l}"
                    )));
                }
                seen[i] = true;
            }
            if (block.len() as f64) + 1e-12 < self.gamma * remaining as f64 {
                return Err(CoreError::InvariantViolated(format!(
                    "block {l} has {} indices, below gamma * {remaining}",
                    block.len()
                )));
            }
            remaining -= block.len();
            let bound = (1.0 - self.gamma).powi(l as i32 + 1) * n as f64;
            if remaining as f64 > bound + 1e-9 {
                return Err(CoreError::InvariantViolated(format!(
                    "{remaining} indices remain after block {l}, bound {bound}"
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CoreError::InvariantViolated(
                "blocks do not cover every index".into(),
            ));
        }
        Ok(())
    }
}

/// Partitions 0..n by repeatedly applying [`subset_search`] to the indices
/// still unassigned, mirroring the inductive construction; records the
/// per-block moments along the way.
pub fn greedy_partition(
    space: SpaceDescriptor,
    vectors: &[Element],
    gamma: f64,
    p: f64,
) -> Result<PartitionTrace> {
    validate_family(&space, vectors)?;
    validate_p(p)?;
    validate_gamma(gamma)?;
    if vectors.len() > SUBSET_SEARCH_MAX {
        return Err(CoreError::FamilyTooLarge {
            n: vectors.len(),
            max: SUBSET_SEARCH_MAX,
            op: "exhaustive subset search",
        });
    }
    let mut remaining: Vec<usize> = (0..vectors.len()).collect();
    let mut blocks = Vec::new();
    let mut moments = Vec::new();
    while !remaining.is_empty() {
        let refs: Vec<&Element> = remaining.iter().map(|&i| &vectors[i]).collect();
        let (local, moment) = subset_search_core(&space, &refs, gamma, p);
        let block: Vec<usize> = local.iter().map(|&l| remaining[l]).collect();
        remaining.retain(|i| !block.contains(i));
        blocks.push(block);
        moments.push(moment);
    }
    Ok(PartitionTrace {
        blocks,
        gamma,
        per_block_moment: moments,
    })
}

/// Sum of the trace's per-block moments, after recomputing each block's
/// moment from the vectors (a mismatched trace is rejected) and checking
/// that the sum dominates the exact full moment, as the triangle
/// inequality for the block sums demands.
pub fn reconstruct_full_moment(
    trace: &PartitionTrace,
    space: SpaceDescriptor,
    vectors: &[Element],
    p: f64,
) -> Result<f64> {
    validate_family(&space, vectors)?;
    validate_p(p)?;
    let n = vectors.len();
    if n > EXACT_CUTOFF {
        return Err(CoreError::FamilyTooLarge {
            n,
            max: EXACT_CUTOFF,
            op: "exact sign enumeration",
        });
    }
    trace
        .validate(n)
        .map_err(|e| CoreError::TraceMismatch(e.to_string()))?;
    if trace.blocks.len() != trace.per_block_moment.len() {
        return Err(CoreError::TraceMismatch(
            "per-block moment count differs from block count".into(),
        ));
    }
    let mut block_sum = 0.0;
    for (block, &recorded) in trace.blocks.iter().zip(&trace.per_block_moment) {
        let refs: Vec<&Element> = block.iter().map(|&i| &vectors[i]).collect();
        let recomputed = exact_moment_of(&space, &refs, p);
        if (recomputed - recorded).abs() > 1e-9 * (1.0 + recorded.abs()) {
            return Err(CoreError::TraceMismatch(format!(
                "block moment {recorded} does not match the vectors ({recomputed})"
            )));
        }
        block_sum += recomputed;
    }
    let refs: Vec<&Element> = vectors.iter().collect();
    let full = exact_moment_of(&space, &refs, p);
    if block_sum + 1e-9 < full {
        return Err(CoreError::InvariantViolated(format!(
            "block sum {block_sum} fails to dominate the full moment {full}"
        )));
    }
    Ok(block_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Exponent;

    fn lq(q: Exponent, m: usize) -> SpaceDescriptor {
        SpaceDescriptor::lq(q, m).unwrap()
    }

    fn scalar_family(values: &[f64]) -> Vec<Element> {
        values.iter().map(|&v| Element::scalar(v)).collect()
    }

    fn exact(space: SpaceDescriptor, vectors: &[Element], p: f64) -> f64 {
        rademacher_moment(space, vectors, p, MomentMode::Exact, 0)
            .unwrap()
            .value
    }

    #[test]
    fn two_scalar_ones_first_moment() {
        // patterns (+,+), (+,-): |2|, |0| -> mean 1
        let v = exact(SpaceDescriptor::scalar(), &scalar_family(&[1.0, 1.0]), 1.0);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l1_basis_moment_is_n_for_every_p() {
        for n in [2usize, 5, 8] {
            let space = lq(Exponent::Finite(1.0), n);
            let basis: Vec<Element> = (0..n).map(|i| space.basis_vector(i).unwrap()).collect();
            for p in [1.0, 1.5, 2.0] {
                let v = exact(space, &basis, p);
                assert!((v - n as f64).abs() < 1e-12, "n={n} p={p}: {v}");
            }
        }
    }

    #[test]
    fn scalar_khintchine_sqrt_n() {
        for n in [2usize, 8, 16] {
            let v = exact(SpaceDescriptor::scalar(), &scalar_family(&vec![1.0; n]), 2.0);
            assert!((v - (n as f64).sqrt()).abs() < 1e-12, "n={n}: {v}");
        }
    }

    #[test]
    fn exact_mode_rejects_large_families() {
        let vectors = scalar_family(&[1.0; EXACT_CUTOFF + 1]);
        assert!(matches!(
            rademacher_moment(
                SpaceDescriptor::scalar(),
                &vectors,
                1.0,
                MomentMode::Exact,
                0
            ),
            Err(CoreError::FamilyTooLarge { .. })
        ));
    }

    #[test]
    fn sampled_mode_tracks_exact() {
        let space = lq(Exponent::Finite(2.0), 3);
        let vectors: Vec<Element> = (0..6)
            .map(|i| {
                Element::new(vec![
                    (i as f64 * 0.7).sin(),
                    (i as f64 * 1.3).cos(),
                    0.2 * i as f64 - 0.5,
                ])
            })
            .collect();
        let ex = exact(space, &vectors, 1.0);
        let est = rademacher_moment(
            space,
            &vectors,
            1.0,
            MomentMode::Sampled { samples: 40_000 },
            7,
        )
        .unwrap();
        let stderr = est.stderr.unwrap();
        assert!(stderr > 0.0);
        assert!(
            (est.value - ex).abs() <= 4.0 * stderr,
            "sampled {} vs exact {ex} (stderr {stderr})",
            est.value
        );
    }

    #[test]
    fn basis_family_ratios_are_explicit() {
        // l_q basis: every pattern has norm n^(1/q), so the ratio is
        // n^(1/q - 1/p) exactly.
        for (q, n) in [(Exponent::Finite(1.0), 8), (Exponent::Finite(2.0), 4)] {
            let space = lq(q, n);
            for p in [1.0, 1.5, 2.0] {
                let est = sigma_lower_bound(space, p, n, &[Family::Basis], 0).unwrap();
                let want = (n as f64).powf(q.reciprocal() - 1.0 / p);
                assert!(
                    (est.lower_bound - want).abs() < 1e-12,
                    "q={q:?} p={p}: {} vs {want}",
                    est.lower_bound
                );
            }
        }
        // l_inf basis at p=1: moment 1, scale n
        let space = lq(Exponent::Infinity, 6);
        let est = sigma_lower_bound(space, 1.0, 6, &[Family::Basis], 0).unwrap();
        assert!((est.lower_bound - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn constant_family_ratio_n2_p1() {
        let est = sigma_lower_bound(SpaceDescriptor::scalar(), 1.0, 2, &[Family::Constant], 0)
            .unwrap();
        assert!((est.lower_bound - 0.5).abs() < 1e-15);
        assert_eq!(est.witness_family, "constant");
    }

    #[test]
    fn best_family_wins() {
        let space = lq(Exponent::Finite(1.0), 4);
        let est = sigma_lower_bound(space, 2.0, 4, &Family::builtin(), 11).unwrap();
        // l_1 basis ratio is n^(1 - 1/2) = 2, beating the others
        assert_eq!(est.witness_family, "basis");
        assert!((est.lower_bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn subset_search_examples() {
        // all-zero vectors: moment 0 at the minimal admissible size
        let zeros = scalar_family(&[0.0; 5]);
        let (idx, moment) = subset_search(SpaceDescriptor::scalar(), &zeros, 0.5, 1.0).unwrap();
        assert_eq!(moment, 0.0);
        assert!(idx.len() >= 3);

        // four equal scalars at gamma 1/2: a pair cancels to moment 1
        let ones = scalar_family(&[1.0; 4]);
        let (idx, moment) = subset_search(SpaceDescriptor::scalar(), &ones, 0.5, 1.0).unwrap();
        assert_eq!(idx.len(), 2);
        assert!((moment - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subset_search_monotone_in_gamma() {
        let vectors = scalar_family(&[0.3, -1.0, 0.7, 1.2, -0.4, 0.9]);
        let mut last = 0.0;
        for gamma in [0.2, 0.4, 0.6, 0.8, 0.95] {
            let (_, moment) =
                subset_search(SpaceDescriptor::scalar(), &vectors, gamma, 1.0).unwrap();
            assert!(moment + 1e-15 >= last, "gamma={gamma}");
            last = moment;
        }
    }

    #[test]
    fn subset_search_rejects_large_or_bad_input() {
        let vectors = scalar_family(&[1.0; SUBSET_SEARCH_MAX + 1]);
        assert!(matches!(
            subset_search(SpaceDescriptor::scalar(), &vectors, 0.5, 1.0),
            Err(CoreError::FamilyTooLarge { .. })
        ));
        let small = scalar_family(&[1.0, 2.0]);
        assert!(subset_search(SpaceDescriptor::scalar(), &small, 0.0, 1.0).is_err());
        assert!(subset_search(SpaceDescriptor::scalar(), &small, 1.0, 1.0).is_err());
    }

    #[test]
    fn greedy_partition_four_equal_scalars() {
        let vectors = scalar_family(&[1.0; 4]);
        let trace = greedy_partition(SpaceDescriptor::scalar(), &vectors, 0.5, 1.0).unwrap();
        let sizes: Vec<usize> = trace.blocks.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![2, 1, 1]);
        trace.validate(4).unwrap();
        // termination bound: ceil(log n / -log(1-gamma)) + 1 steps
        let bound = ((4.0_f64).ln() / -(0.5_f64).ln()).ceil() as usize + 1;
        assert!(trace.blocks.len() <= bound);
    }

    #[test]
    fn reconstruction_dominates_full_moment() {
        let vectors = scalar_family(&[1.0; 4]);
        let space = SpaceDescriptor::scalar();
        // E |e1 + e2 + e3 + e4| over 16 patterns: (2*4 + 8*2) / 16 = 3/2
        let refs: Vec<&Element> = vectors.iter().collect();
        let full = exact_moment_of(&space, &refs, 1.0);
        assert!((full - 1.5).abs() < 1e-15);

        let trace = greedy_partition(space, &vectors, 0.5, 1.0).unwrap();
        let sum = reconstruct_full_moment(&trace, space, &vectors, 1.0).unwrap();
        assert!(sum + 1e-12 >= full);

        // single block: the sum is exactly the full moment
        let single = PartitionTrace {
            blocks: vec![vec![0, 1, 2, 3]],
            gamma: 0.5,
            per_block_moment: vec![full],
        };
        let sum = reconstruct_full_moment(&single, space, &vectors, 1.0).unwrap();
        assert!((sum - full).abs() < 1e-15);

        // zero vectors reconstruct to zero
        let zeros = scalar_family(&[0.0; 3]);
        let trace = greedy_partition(space, &zeros, 0.5, 1.0).unwrap();
        assert_eq!(reconstruct_full_moment(&trace, space, &zeros, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn reconstruction_rejects_mismatched_traces() {
        let vectors = scalar_family(&[1.0, -1.0, 0.5]);
        let space = SpaceDescriptor::scalar();
        let mut trace = greedy_partition(space, &vectors, 0.4, 1.0).unwrap();
        trace.per_block_moment[0] += 0.5;
        assert!(matches!(
            reconstruct_full_moment(&trace, space, &vectors, 1.0),
            Err(CoreError::TraceMismatch(_))
        ));
    }

    #[test]
    fn default_gamma_values() {
        assert!((default_gamma(1) - 4.0 / 9.0).abs() < 1e-15);
        assert!((default_gamma(2) - 32.0 / 81.0).abs() < 1e-15);
    }
}
