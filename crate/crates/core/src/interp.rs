//! Composite tensor-product Lagrange interpolation on the unit cube.
//!
//! The cube is partitioned into k^d subcubes of side 1/k. On every subcube
//! the interpolant is the tensor product of univariate degree-r Lagrange
//! polynomials through r+1 equispaced nodes that include both endpoints, so
//! nodes on shared faces coincide and the global interpolant is continuous.
//! Globally there are M = (rk+1)^d distinct nodes u_j with cardinal basis
//! functions psi_j, and the operator keeps the exact integrals
//! b_j = integral of psi_j assembled from closed Newton-Cotes weights, which
//! makes the interpolant's integral a plain weighted sum of node samples.

use crate::error::{CoreError, Result};
use crate::functions::TestProblem;
use crate::spaces::{Element, SpaceDescriptor};

/// Largest supported per-axis degree. Equispaced nodes are well behaved in
/// this range; the exact unit-interval basis integrals below stop here.
pub const MAX_DEGREE: u32 = 6;

/// Default cap on the global node count (rk+1)^d.
pub const DEFAULT_NODE_BUDGET: u64 = 1 << 24;

/// Relative slack when deciding that a local coordinate sits on a node.
const NODE_SNAP: f64 = 1e-14;

/// Exact integrals over [0,1] of the degree-r Lagrange basis on r+1
/// equispaced nodes (closed Newton-Cotes weights, unit interval).
fn newton_cotes_weights(r: u32) -> Vec<f64> {
    let (nums, den): (&[f64], f64) = match r {
        1 => (&[1.0, 1.0], 2.0),
        2 => (&[1.0, 4.0, 1.0], 6.0),
        3 => (&[1.0, 3.0, 3.0, 1.0], 8.0),
        4 => (&[7.0, 32.0, 12.0, 32.0, 7.0], 90.0),
        5 => (&[19.0, 75.0, 50.0, 50.0, 75.0, 19.0], 288.0),
        6 => (&[41.0, 216.0, 27.0, 272.0, 27.0, 216.0, 41.0], 840.0),
        _ => unreachable!("degree validated at construction"),
    };
    nums.iter().map(|n| n / den).collect()
}

/// The realized interpolation operator for fixed (r, k, d).
#[derive(Clone, Debug)]
pub struct InterpolationOperator {
    r: u32,
    k: usize,
    d: usize,
    /// Global per-axis node coordinates g/(rk), g = 0..=rk.
    axis_nodes: Vec<f64>,
    /// Per-axis integrals of the univariate cardinal functions.
    axis_weights: Vec<f64>,
    /// Barycentric weights of the r+1 reference nodes l/r.
    bary: Vec<f64>,
}

impl InterpolationOperator {
    /// Builds the operator with the default node budget.
    pub fn build(r: u32, k: usize, d: usize) -> Result<Self> {
        Self::build_with_budget(r, k, d, DEFAULT_NODE_BUDGET)
    }

    pub fn build_with_budget(r: u32, k: usize, d: usize, budget: u64) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&r) {
            return Err(CoreError::InvalidParameter(format!(
                "interpolation degree must be in 1..={MAX_DEGREE}, got {r}"
            )));
        }
        if k < 1 || d < 1 {
            return Err(CoreError::InvalidParameter(
                "interpolation needs k >= 1 and d >= 1".into(),
            ));
        }
        let per_axis = (r as u128) * (k as u128) + 1;
        let nodes = per_axis.checked_pow(d as u32).unwrap_or(u128::MAX);
        if nodes > budget as u128 {
            return Err(CoreError::BudgetExceeded { nodes, budget });
        }

        let rk = r as usize * k;
        let axis_nodes: Vec<f64> = (0..=rk).map(|g| g as f64 / rk as f64).collect();

        let nc = newton_cotes_weights(r);
        let mut axis_weights = vec![0.0; rk + 1];
        for i in 0..k {
            for (l, w) in nc.iter().enumerate() {
                axis_weights[i * r as usize + l] += w / k as f64;
            }
        }

        // barycentric weights for equispaced nodes: (-1)^l * C(r, l)
        let mut bary = Vec::with_capacity(r as usize + 1);
        let mut c = 1.0_f64;
        for l in 0..=r as usize {
            bary.push(if l % 2 == 0 { c } else { -c });
            c = c * (r as usize - l) as f64 / (l + 1) as f64;
        }

        Ok(InterpolationOperator {
            r,
            k,
            d,
            axis_nodes,
            axis_weights,
            bary,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of per-axis nodes, rk + 1.
    pub fn nodes_per_axis(&self) -> usize {
        self.axis_nodes.len()
    }

    /// Total number of distinct nodes, M = (rk+1)^d.
    pub fn node_count(&self) -> usize {
        self.nodes_per_axis().pow(self.d as u32)
    }

    /// Coordinates of node `j` (lexicographic, last axis fastest).
    pub fn node(&self, j: usize) -> Vec<f64> {
        let npa = self.nodes_per_axis();
        let mut digits = vec![0usize; self.d];
        let mut rest = j;
        for a in (0..self.d).rev() {
            digits[a] = rest % npa;
            rest /= npa;
        }
        digits.iter().map(|&g| self.axis_nodes[g]).collect()
    }

    /// Exact integral b_j of the cardinal function of node `j`.
    pub fn weight(&self, j: usize) -> f64 {
        let npa = self.nodes_per_axis();
        let mut rest = j;
        let mut w = 1.0;
        for _ in 0..self.d {
            w *= self.axis_weights[rest % npa];
            rest /= npa;
        }
        w
    }

    /// All node weights in node order.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.node_count()).map(|j| self.weight(j)).collect()
    }

    /// Index of the subcube containing `t`, ties broken toward the subcube
    /// with the smaller index on every axis.
    pub fn subcube_of(&self, t: &[f64]) -> Vec<usize> {
        t.iter().map(|&ta| self.axis_subcube(ta)).collect()
    }

    fn axis_subcube(&self, t: f64) -> usize {
        let i = (t * self.k as f64).ceil() as isize - 1;
        i.clamp(0, self.k as isize - 1) as usize
    }

    /// Global node ids of the (r+1)^d nodes local to `subcube`.
    pub fn subcube_node_ids(&self, subcube: &[usize]) -> Vec<usize> {
        debug_assert_eq!(subcube.len(), self.d);
        let r = self.r as usize;
        let npa = self.nodes_per_axis();
        let mut ids = Vec::with_capacity((r + 1).pow(self.d as u32));
        let mut local = vec![0usize; self.d];
        loop {
            let mut id = 0usize;
            for a in 0..self.d {
                id = id * npa + subcube[a] * r + local[a];
            }
            ids.push(id);
            if !advance(&mut local, r + 1) {
                break;
            }
        }
        ids
    }

    /// Values of the univariate cardinal functions of subcube `i` at `t`,
    /// by the second barycentric form.
    fn axis_cardinals_in(&self, i: usize, t: f64) -> Vec<f64> {
        let r = self.r as usize;
        let s = t * self.k as f64 - i as f64;
        let mut vals = vec![0.0; r + 1];
        let mut num = Vec::with_capacity(r + 1);
        let mut denom = 0.0;
        for (l, &b) in self.bary.iter().enumerate() {
            let dl = s - l as f64 / r as f64;
            if dl.abs() < NODE_SNAP {
                vals[l] = 1.0;
                return vals;
            }
            let q = b / dl;
            num.push(q);
            denom += q;
        }
        for (l, q) in num.into_iter().enumerate() {
            vals[l] = q / denom;
        }
        vals
    }

    /// Per-axis subcube indices and cardinal values at `t`.
    fn locate(&self, t: &[f64]) -> (Vec<usize>, Vec<Vec<f64>>) {
        debug_assert_eq!(t.len(), self.d);
        let mut cubes = Vec::with_capacity(self.d);
        let mut cards = Vec::with_capacity(self.d);
        for &ta in t {
            let i = self.axis_subcube(ta);
            cards.push(self.axis_cardinals_in(i, ta));
            cubes.push(i);
        }
        (cubes, cards)
    }

    /// The nonzero cardinal values at `t`: (node id, psi_j(t)) for the
    /// (r+1)^d nodes of the containing subcube.
    pub fn basis_at(&self, t: &[f64]) -> Vec<(usize, f64)> {
        let (cubes, cards) = self.locate(t);
        let r = self.r as usize;
        let npa = self.nodes_per_axis();
        let mut out = Vec::with_capacity((r + 1).pow(self.d as u32));
        let mut local = vec![0usize; self.d];
        loop {
            let mut id = 0usize;
            let mut w = 1.0;
            for a in 0..self.d {
                id = id * npa + cubes[a] * r + local[a];
                w *= cards[a][local[a]];
            }
            out.push((id, w));
            if !advance(&mut local, r + 1) {
                break;
            }
        }
        out
    }

    /// Samples `f` at every node, producing a reusable interpolant.
    /// Costs exactly M evaluations of `f`.
    pub fn sample(&self, f: &TestProblem) -> Result<Interpolant<'_>> {
        if f.d() != self.d {
            return Err(CoreError::DimensionMismatch {
                expected: self.d,
                got: f.d(),
            });
        }
        let space = f.space();
        let m = self.node_count();
        let mut samples = Vec::with_capacity(m);
        for j in 0..m {
            let v = f.evaluate(&self.node(j));
            v.check_finite()?;
            samples.push(v);
        }
        Ok(Interpolant {
            op: self,
            space,
            samples,
        })
    }

    /// Max over a uniform grid (grid_per_axis points per axis, endpoints
    /// included) of the norm of f - P f.
    pub fn sup_error_estimate(&self, f: &TestProblem, grid_per_axis: usize) -> Result<f64> {
        if grid_per_axis < 2 {
            return Err(CoreError::InvalidParameter(
                "sup-error grid needs at least 2 points per axis".into(),
            ));
        }
        let interp = self.sample(f)?;
        let space = f.space();
        let mut best = 0.0_f64;
        let mut idx = vec![0usize; self.d];
        let mut t = vec![0.0; self.d];
        loop {
            for a in 0..self.d {
                t[a] = idx[a] as f64 / (grid_per_axis - 1) as f64;
            }
            let err = space.distance(&f.evaluate(&t), &interp.eval(&t))?;
            best = best.max(err);
            if !advance(&mut idx, grid_per_axis) {
                break;
            }
        }
        Ok(best)
    }
}

fn advance(idx: &mut [usize], radix: usize) -> bool {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < radix {
            return true;
        }
        idx[a] = 0;
    }
    false
}

/// An operator together with the node samples of one function.
pub struct Interpolant<'op> {
    op: &'op InterpolationOperator,
    space: SpaceDescriptor,
    samples: Vec<Element>,
}

impl Interpolant<'_> {
    pub fn op(&self) -> &InterpolationOperator {
        self.op
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.space
    }

    pub fn samples(&self) -> &[Element] {
        &self.samples
    }

    /// (P f)(t).
    pub fn eval(&self, t: &[f64]) -> Element {
        let (cubes, _) = self.op.locate(t);
        self.eval_in_subcube(t, &cubes)
    }

    /// (P f)(t) using the local polynomial of a chosen subcube; `t` should
    /// lie in its closure. Lets tests compare one-sided limits on faces.
    pub fn eval_in_subcube(&self, t: &[f64], subcube: &[usize]) -> Element {
        let d = self.op.d;
        debug_assert_eq!(t.len(), d);
        debug_assert_eq!(subcube.len(), d);
        let r = self.op.r as usize;
        let npa = self.op.nodes_per_axis();
        let cards: Vec<Vec<f64>> = (0..d)
            .map(|a| self.op.axis_cardinals_in(subcube[a], t[a]))
            .collect();
        let mut acc = self.space.zero();
        let mut local = vec![0usize; d];
        loop {
            let mut id = 0usize;
            let mut w = 1.0;
            for a in 0..d {
                id = id * npa + subcube[a] * r + local[a];
                w *= cards[a][local[a]];
            }
            acc.add_scaled(w, &self.samples[id]);
            if !advance(&mut local, r + 1) {
                break;
            }
        }
        acc
    }

    /// Exact integral of the interpolant: sum of b_j f(u_j).
    pub fn integral(&self) -> Element {
        let mut acc = self.space.zero();
        for (j, s) in self.samples.iter().enumerate() {
            acc.add_scaled(self.op.weight(j), s);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::registry_problem;
    use crate::spaces::SpaceDescriptor;

    fn problem(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static, d: usize) -> TestProblem {
        TestProblem::new(
            "test",
            d,
            SpaceDescriptor::scalar(),
            6,
            1.0,
            None,
            move |t| Element::scalar(f(t)),
        )
        .unwrap()
    }

    #[test]
    fn univariate_weight_tables() {
        let cases: [(u32, usize, &[f64]); 3] = [
            (1, 1, &[0.5, 0.5]),
            (2, 1, &[1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0]),
            (1, 2, &[0.25, 0.5, 0.25]),
        ];
        for (r, k, want) in cases {
            let op = InterpolationOperator::build(r, k, 1).unwrap();
            let got = op.weights();
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() < 1e-15, "r={r} k={k}: {got:?}");
            }
        }
    }

    #[test]
    fn nodes_are_deduplicated_and_in_cube() {
        let op = InterpolationOperator::build(2, 3, 2).unwrap();
        assert_eq!(op.node_count(), 7 * 7);
        for j in 0..op.node_count() {
            for &c in &op.node(j) {
                assert!((0.0..=1.0).contains(&c));
            }
        }
    }

    #[test]
    fn weights_sum_to_one() {
        for (r, k, d) in [(1, 1, 1), (2, 4, 1), (3, 2, 2), (1, 5, 3), (6, 1, 1)] {
            let op = InterpolationOperator::build(r, k, d).unwrap();
            let total: f64 = op.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "r={r} k={k} d={d}: {total}");
        }
    }

    #[test]
    fn interpolation_condition_at_nodes() {
        let f = problem(|t| (3.1 * t[0]).sin() + t[0] * t[0], 1);
        let op = InterpolationOperator::build(2, 3, 1).unwrap();
        let interp = op.sample(&f).unwrap();
        for j in 0..op.node_count() {
            let u = op.node(j);
            let diff = (interp.eval(&u).as_scalar() - f.evaluate(&u).as_scalar()).abs();
            assert!(diff < 1e-12, "node {j}: {diff}");
        }
    }

    #[test]
    fn linear_interpolant_of_parabola_is_zero() {
        // r=1, k=1: interpolant through (0,0) and (1,0) vanishes identically
        let f = problem(|t| t[0] * (1.0 - t[0]), 1);
        let op = InterpolationOperator::build(1, 1, 1).unwrap();
        let interp = op.sample(&f).unwrap();
        assert_eq!(interp.eval(&[0.5]).as_scalar(), 0.0);
        assert_eq!(interp.eval(&[0.123]).as_scalar(), 0.0);
        // and the sup error over a grid containing 0.5 is f(0.5) = 1/4
        let sup = op.sup_error_estimate(&f, 17).unwrap();
        assert!((sup - 0.25).abs() < 1e-15);
    }

    #[test]
    fn integral_examples() {
        // constants reproduce exactly
        let c = problem(|_| 2.5, 1);
        let op = InterpolationOperator::build(1, 4, 1).unwrap();
        assert!((op.sample(&c).unwrap().integral().as_scalar() - 2.5).abs() < 1e-14);
        // r=1, k=1: integral of t -> 1/2
        let id = problem(|t| t[0], 1);
        let op = InterpolationOperator::build(1, 1, 1).unwrap();
        assert!((op.sample(&id).unwrap().integral().as_scalar() - 0.5).abs() < 1e-15);
        // r=2, k=1: Simpson integrates t^2 exactly
        let sq = problem(|t| t[0] * t[0], 1);
        let op = InterpolationOperator::build(2, 1, 1).unwrap();
        assert!((op.sample(&sq).unwrap().integral().as_scalar() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_ties_go_to_the_lower_subcube() {
        let op = InterpolationOperator::build(1, 2, 1).unwrap();
        assert_eq!(op.subcube_of(&[0.5]), vec![0]);
        assert_eq!(op.subcube_of(&[0.0]), vec![0]);
        assert_eq!(op.subcube_of(&[1.0]), vec![1]);
        assert_eq!(op.subcube_of(&[0.75]), vec![1]);
    }

    #[test]
    fn subcube_node_ids_shape() {
        let op = InterpolationOperator::build(2, 2, 2).unwrap();
        let ids = op.subcube_node_ids(&[1, 0]);
        assert_eq!(ids.len(), 9);
        // all ids valid and distinct
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        assert!(ids.iter().all(|&j| j < op.node_count()));
    }

    #[test]
    fn basis_is_a_partition_of_unity() {
        let op = InterpolationOperator::build(3, 2, 2).unwrap();
        for t in [[0.1, 0.9], [0.5, 0.5], [0.33, 0.66], [1.0, 0.0]] {
            let total: f64 = op.basis_at(&t).iter().map(|(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_error_decays_for_sine() {
        let f = registry_problem("trig", 1, SpaceDescriptor::scalar()).unwrap();
        let op_coarse = InterpolationOperator::build(1, 4, 1).unwrap();
        let op_fine = InterpolationOperator::build(1, 16, 1).unwrap();
        let e_coarse = op_coarse.sup_error_estimate(&f, 257).unwrap();
        let e_fine = op_fine.sup_error_estimate(&f, 257).unwrap();
        assert!(e_fine < e_coarse / 8.0, "{e_coarse} -> {e_fine}");
    }

    #[test]
    fn build_validation() {
        assert!(InterpolationOperator::build(0, 2, 1).is_err());
        assert!(InterpolationOperator::build(7, 2, 1).is_err());
        assert!(InterpolationOperator::build(1, 0, 1).is_err());
        assert!(matches!(
            InterpolationOperator::build_with_budget(2, 100, 3, 1000),
            Err(CoreError::BudgetExceeded { .. })
        ));
    }
}
