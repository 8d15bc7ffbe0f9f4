//! Bump-based families whose integrals encode an arbitrary vector family.
//!
//! Given m^d vectors x_i, the cube is split into m^d closed subcubes Q_i of
//! side 1/m. Each member is a scaled translate of the reference bump times
//! its vector,
//!
//! ```text
//! f_i(t) = c0^-1 m^-r  (x_i / max_j ||x_j||)  psi(m(t - t_i)),
//! ```
//!
//! where t_i is the lower corner of Q_i and c0 bounds the derivative sups of
//! psi up to order r, so that every combination sum(alpha_i f_i) with
//! |alpha_i| <= 1 stays in the unit ball of the order-r derivative norm.
//! The integrals are then known in closed form:
//!
//! ```text
//! S f_i = c0^-1 sigma m^(-r-d) (x_i / max_j ||x_j||),
//! ```
//!
//! with sigma the integral of psi. Scaling every x_i by a common factor
//! leaves the family unchanged.

use super::bump::{bump_integral, bump_line};
use super::TestProblem;
use crate::error::{CoreError, Result};
use crate::spaces::{Element, SpaceDescriptor};

/// Grid resolution (points per axis) for the derivative-sup estimates.
const C0_GRID: usize = 1 << 12;

/// A realized fooling family on the partition into m^d subcubes.
pub struct FoolingFamily {
    m: usize,
    r: u32,
    d: usize,
    space: SpaceDescriptor,
    vectors: Vec<Element>,
    c0: f64,
    sigma: f64,
    family_sup: f64,
    members: Vec<TestProblem>,
}

impl FoolingFamily {
    /// Builds the family for `vectors` (exactly m^d of them, not all zero).
    pub fn new(
        m: usize,
        r: u32,
        d: usize,
        space: SpaceDescriptor,
        vectors: Vec<Element>,
    ) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(CoreError::InvalidParameter(
                "fooling family needs m >= 1 and d >= 1".into(),
            ));
        }
        let count = (m as u128).pow(d as u32);
        if count > 1 << 24 {
            return Err(CoreError::InvalidParameter(format!(
                "fooling family with {count} members is too large"
            )));
        }
        let count = count as usize;
        if vectors.len() != count {
            return Err(CoreError::VectorCountMismatch {
                expected: count,
                got: vectors.len(),
            });
        }
        let mut family_sup = 0.0_f64;
        for v in &vectors {
            family_sup = family_sup.max(space.norm(v)?);
        }
        if family_sup == 0.0 {
            return Err(CoreError::AllZeroVectors);
        }

        let c0 = c0_constant(r, d);
        let sigma = bump_integral(d);
        let coeff = (m as f64).powi(-(r as i32)) / (c0 * family_sup);
        let int_coeff = coeff * sigma * (m as f64).powi(-(d as i32));

        let mut members = Vec::with_capacity(count);
        for (i, x) in vectors.iter().enumerate() {
            let corner = lower_corner(i, m, d);
            let direction = x.clone();
            let mf = m as f64;
            let eval = move |t: &[f64]| {
                let mut b = 1.0;
                for (a, &ta) in t.iter().enumerate() {
                    b *= bump_line(mf * (ta - corner[a]));
                    if b == 0.0 {
                        break;
                    }
                }
                direction.scaled(coeff * b)
            };
            members.push(TestProblem::new(
                format!("fool[{i}]"),
                d,
                space,
                r,
                1.0,
                Some(x.scaled(int_coeff)),
                eval,
            )?);
        }

        Ok(FoolingFamily {
            m,
            r,
            d,
            space,
            vectors,
            c0,
            sigma,
            family_sup,
            members,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.space
    }

    pub fn vectors(&self) -> &[Element] {
        &self.vectors
    }

    /// The frozen derivative-sup constant of this family.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// Integral of the product bump over the cube.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// max_i ||x_i||, the normalization the members divide by.
    pub fn family_sup(&self) -> f64 {
        self.family_sup
    }

    pub fn members(&self) -> &[TestProblem] {
        &self.members
    }

    /// sum(alpha_i * S f_i), from the closed-form member integrals.
    pub fn integral_combination(&self, alpha: &[f64]) -> Result<Element> {
        if alpha.len() != self.members.len() {
            return Err(CoreError::VectorCountMismatch {
                expected: self.members.len(),
                got: alpha.len(),
            });
        }
        let mut acc = self.space.zero();
        for (a, member) in alpha.iter().zip(&self.members) {
            acc.add_scaled(*a, member.exact_integral().expect("members carry integrals"));
        }
        Ok(acc)
    }

    /// Pointwise value of sum(alpha_i f_i); the supports are disjoint, so
    /// only the member whose subcube contains `t` contributes.
    pub fn eval_combination(&self, alpha: &[f64], t: &[f64]) -> Result<Element> {
        if alpha.len() != self.members.len() {
            return Err(CoreError::VectorCountMismatch {
                expected: self.members.len(),
                got: alpha.len(),
            });
        }
        if t.iter().any(|&ta| !(0.0..=1.0).contains(&ta)) {
            return Ok(self.space.zero());
        }
        let mut idx = 0usize;
        for &ta in t {
            let c = ((ta * self.m as f64).floor() as usize).min(self.m - 1);
            idx = idx * self.m + c;
        }
        Ok(self.members[idx].evaluate(t).scaled(alpha[idx]))
    }

    /// Grid/finite-difference estimate of the order-r derivative norm of
    /// sum(alpha_i f_i): the max over a uniform grid and all derivative
    /// multi-indices up to order r of the norm of a central difference.
    pub fn cr_norm_grid_estimate(&self, alpha: &[f64], grid_per_axis: usize) -> Result<f64> {
        let d = self.d;
        let mut best = 0.0_f64;
        let mut point = vec![0.0; d];
        let mut shifted = vec![0.0; d];
        for beta in multi_indices(d, self.r as usize) {
            let steps: Vec<f64> = beta.iter().map(|&b| fd_step(b)).collect();
            let mut grid_idx = vec![0usize; d];
            loop {
                for a in 0..d {
                    point[a] = grid_idx[a] as f64 / (grid_per_axis - 1) as f64;
                }
                let v = self.central_difference(alpha, &point, &beta, &steps, &mut shifted)?;
                best = best.max(self.space.norm(&v)?);
                if !advance(&mut grid_idx, grid_per_axis) {
                    break;
                }
            }
        }
        Ok(best)
    }

    fn central_difference(
        &self,
        alpha: &[f64],
        t: &[f64],
        beta: &[usize],
        steps: &[f64],
        shifted: &mut [f64],
    ) -> Result<Element> {
        let d = self.d;
        let mut acc = self.space.zero();
        let mut stencil = vec![0usize; d];
        loop {
            let mut coeff = 1.0;
            for a in 0..d {
                let i = stencil[a];
                let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
                coeff *= sign * binomial(beta[a], i);
                shifted[a] = t[a] + (beta[a] as f64 / 2.0 - i as f64) * steps[a];
            }
            let v = self.eval_combination(alpha, shifted)?;
            acc.add_scaled(coeff, &v);
            // advance mixed-radix counter with per-axis radix beta[a]+1
            let mut done = true;
            for a in (0..d).rev() {
                stencil[a] += 1;
                if stencil[a] <= beta[a] {
                    done = false;
                    break;
                }
                stencil[a] = 0;
            }
            if done {
                break;
            }
        }
        let scale: f64 = beta
            .iter()
            .zip(steps)
            .map(|(&b, &h)| h.powi(b as i32))
            .product();
        Ok(acc.scaled(1.0 / scale))
    }
}

fn lower_corner(index: usize, m: usize, d: usize) -> Vec<f64> {
    let mut digits = vec![0usize; d];
    let mut rest = index;
    for a in (0..d).rev() {
        digits[a] = rest % m;
        rest /= m;
    }
    digits.iter().map(|&c| c as f64 / m as f64).collect()
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

fn binomial(n: usize, k: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Central-difference step per derivative order; higher orders need larger
/// steps to keep cancellation noise below the truncation error.
fn fd_step(order: usize) -> f64 {
    match order {
        0..=2 => 2.0_f64.powi(-12),
        3 => 2.0_f64.powi(-11),
        4 => 2.0_f64.powi(-9),
        _ => 2.0_f64.powi(-8),
    }
}

/// Sup over a uniform grid of |g^(k)| for the one-dimensional bump factor,
/// estimated by iterated central differences.
fn line_derivative_sup(order: usize) -> f64 {
    let h = fd_step(order);
    let mut best = 0.0_f64;
    for j in 0..=C0_GRID {
        let x = j as f64 / C0_GRID as f64;
        let mut acc = 0.0;
        for i in 0..=order {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(order, i) * bump_line(x + (order as f64 / 2.0 - i as f64) * h);
        }
        best = best.max((acc / h.powi(order as i32)).abs());
    }
    best
}

/// max over multi-indices |alpha| <= r of the product of per-axis derivative
/// sups of the product bump. Exact for the tensor bump, since its partial
/// derivatives factor coordinatewise.
fn c0_constant(r: u32, d: usize) -> f64 {
    let sups: Vec<f64> = (0..=r as usize).map(line_derivative_sup).collect();
    fn best(sups: &[f64], axes: usize, budget: usize) -> f64 {
        if axes == 0 {
            return 1.0;
        }
        (0..=budget)
            .map(|a| sups[a] * best(sups, axes - 1, budget - a))
            .fold(0.0, f64::max)
    }
    best(&sups, d, r as usize)
}

fn multi_indices(d: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; d];
    fn rec(a: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[a] = v;
            rec(a + 1, left - v, cur, out);
        }
        cur[a] = 0;
    }
    rec(0, max_total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Exponent;

    fn l1(m: usize) -> SpaceDescriptor {
        SpaceDescriptor::lq(Exponent::Finite(1.0), m).unwrap()
    }

    fn basis_family(space: &SpaceDescriptor, n: usize) -> Vec<Element> {
        (0..n).map(|i| space.basis_vector(i).unwrap()).collect()
    }

    #[test]
    fn c0_at_order_zero_is_the_bump_sup() {
        // the 2^12 grid contains s = 1/2, where g attains exp(-4)
        assert!((c0_constant(0, 1) - (-4.0_f64).exp()).abs() < 1e-18);
        assert!((c0_constant(0, 3) - (-12.0_f64).exp()).abs() < 1e-20);
    }

    #[test]
    fn member_supported_in_its_subcube() {
        let space = l1(4);
        let fam = FoolingFamily::new(2, 1, 2, space, basis_family(&space, 4)).unwrap();
        // member 0 lives on [0, 1/2]^2
        let f0 = &fam.members()[0];
        assert_eq!(f0.evaluate(&[0.75, 0.25]), space.zero());
        assert_eq!(f0.evaluate(&[0.25, 0.75]), space.zero());
        assert!(space.norm(&f0.evaluate(&[0.25, 0.25])).unwrap() > 0.0);
        // member 3 lives on [1/2, 1]^2
        let f3 = &fam.members()[3];
        assert!(space.norm(&f3.evaluate(&[0.75, 0.75])).unwrap() > 0.0);
        assert_eq!(f3.evaluate(&[0.25, 0.25]), space.zero());
    }

    #[test]
    fn integral_formula_r0() {
        // d=1, m=2, r=0 on l_1^2 basis vectors: S f_0 = exp(4) * sigma/2 * e_0
        let space = l1(2);
        let fam = FoolingFamily::new(2, 0, 1, space, basis_family(&space, 2)).unwrap();
        let sigma = bump_integral(1);
        let want = 4.0_f64.exp() * sigma / 2.0;
        let got = fam.members()[0].exact_integral().unwrap();
        assert!((got.coords()[0] - want).abs() < 1e-15 * want);
        assert_eq!(got.coords()[1], 0.0);
    }

    #[test]
    fn rescaling_vectors_leaves_members_unchanged() {
        let space = l1(2);
        let fam1 = FoolingFamily::new(2, 1, 1, space, basis_family(&space, 2)).unwrap();
        let doubled: Vec<Element> = basis_family(&space, 2).iter().map(|v| v.scaled(2.0)).collect();
        let fam2 = FoolingFamily::new(2, 1, 1, space, doubled).unwrap();
        for t in [[0.1], [0.3], [0.6], [0.9]] {
            assert_eq!(
                fam1.members()[0].evaluate(&t),
                fam2.members()[0].evaluate(&t)
            );
        }
        assert_eq!(
            fam1.members()[1].exact_integral(),
            fam2.members()[1].exact_integral()
        );
    }

    #[test]
    fn scaling_law_across_m() {
        // For l_1 basis vectors in d=1 the signed integral sum has norm
        // c0^-1 sigma m^-r for every sign pattern; times m^r it is constant.
        let r = 1;
        let mut values = Vec::new();
        for m in [2usize, 3, 4] {
            let space = l1(m);
            let fam = FoolingFamily::new(m, r, 1, space, basis_family(&space, m)).unwrap();
            let signs: Vec<f64> = (0..m).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
            let sum = fam.integral_combination(&signs).unwrap();
            let norm = space.norm(&sum).unwrap();
            values.push(norm * (m as f64).powi(r as i32));
        }
        for v in &values[1..] {
            assert!((v - values[0]).abs() < 1e-10 * values[0]);
        }
    }

    #[test]
    fn rejects_bad_families() {
        let space = l1(2);
        assert!(matches!(
            FoolingFamily::new(2, 1, 1, space, basis_family(&space, 1)),
            Err(CoreError::VectorCountMismatch { .. })
        ));
        assert!(matches!(
            FoolingFamily::new(2, 1, 1, space, vec![space.zero(), space.zero()]),
            Err(CoreError::AllZeroVectors)
        ));
    }

    #[test]
    fn combination_norm_estimate_stays_in_unit_ball() {
        let space = l1(3);
        let fam = FoolingFamily::new(3, 1, 1, space, basis_family(&space, 3)).unwrap();
        let alpha = [0.9, -0.6, 0.3];
        let est = fam.cr_norm_grid_estimate(&alpha, 512).unwrap();
        assert!(est <= 1.05, "estimate {est} above tolerance");
        assert!(est > 0.0);
    }
}
