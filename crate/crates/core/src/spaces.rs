//! Concrete finite-dimensional normed spaces: the real scalars and l_q^m.
//!
//! Every vector-valued quantity in the crate is an [`Element`] of some
//! [`SpaceDescriptor`]. Descriptors are tiny copyable values; elements are
//! plain coordinate vectors. All operations are pure, so both types are safe
//! to share across threads.

use std::fmt;
use std::str::FromStr;

use crate::error::{CoreError, Result};

/// Exponent q of an l_q norm, kept as an explicit extended real in [1, inf].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// A finite exponent; rejects q < 1 and non-finite values.
    pub fn finite(q: f64) -> Result<Self> {
        if !q.is_finite() || q < 1.0 {
            return Err(CoreError::InvalidExponent(q));
        }
        Ok(Exponent::Finite(q))
    }

    /// 1/q, with the convention 1/inf = 0.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(q) => 1.0 / q,
            Exponent::Infinity => 0.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{q}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Identifies a concrete space: the scalar reals, or l_q^m for some
/// 1 <= q <= inf and dimension m >= 1. The scalar space behaves exactly like
/// l_q^1 for every q.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpaceDescriptor {
    ScalarReal,
    Lq { q: Exponent, dim: usize },
}

impl SpaceDescriptor {
    pub fn scalar() -> Self {
        SpaceDescriptor::ScalarReal
    }

    pub fn lq(q: Exponent, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(CoreError::InvalidParameter(
                "space dimension must be at least 1".into(),
            ));
        }
        Ok(SpaceDescriptor::Lq { q, dim })
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceDescriptor::ScalarReal => 1,
            SpaceDescriptor::Lq { dim, .. } => *dim,
        }
    }

    /// The all-zero element.
    pub fn zero(&self) -> Element {
        Element::new(vec![0.0; self.dim()])
    }

    /// The element with every coordinate equal to `v`.
    pub fn splat(&self, v: f64) -> Element {
        Element::new(vec![v; self.dim()])
    }

    /// Coordinate basis vector with a single 1 at position `i` (0-based).
    pub fn basis_vector(&self, i: usize) -> Result<Element> {
        let dim = self.dim();
        if i >= dim {
            return Err(CoreError::IndexOutOfRange { index: i, dim });
        }
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Ok(Element::new(coords))
    }

    fn check_dim(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// The norm of `x` in this space: |x| for the scalars, the l_q norm
    /// otherwise (max modulus when q = inf).
    pub fn norm(&self, x: &Element) -> Result<f64> {
        self.check_dim(x)?;
        x.check_finite()?;
        let v = x.coords();
        Ok(match self {
            SpaceDescriptor::ScalarReal => v[0].abs(),
            SpaceDescriptor::Lq { q, .. } => lq_norm(*q, v),
        })
    }

    /// Norm of raw coordinates; hot loops use this to skip allocation.
    /// The caller guarantees length and finiteness.
    pub(crate) fn norm_raw(&self, coords: &[f64]) -> f64 {
        debug_assert_eq!(coords.len(), self.dim());
        match self {
            SpaceDescriptor::ScalarReal => coords[0].abs(),
            SpaceDescriptor::Lq { q, .. } => lq_norm(*q, coords),
        }
    }

    /// a*x + y, coordinatewise.
    pub fn axpy(&self, a: f64, x: &Element, y: &Element) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let coords = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(xi, yi)| a * xi + yi)
            .collect();
        Ok(Element::new(coords))
    }

    /// x - y, coordinatewise.
    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.axpy(-1.0, y, x)
    }

    /// Norm of x - y; the error measure used throughout.
    pub fn distance(&self, x: &Element, y: &Element) -> Result<f64> {
        let diff = self.sub(x, y)?;
        self.norm(&diff)
    }
}

fn lq_norm(q: Exponent, v: &[f64]) -> f64 {
    let q = match q {
        Exponent::Infinity => return v.iter().fold(0.0_f64, |m, c| m.max(c.abs())),
        Exponent::Finite(q) => q,
    };
    if q == 1.0 {
        v.iter().map(|c| c.abs()).sum()
    } else if q == 2.0 {
        v.iter().map(|c| c * c).sum::<f64>().sqrt()
    } else {
        v.iter().map(|c| c.abs().powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::ScalarReal => write!(f, "scalar"),
            SpaceDescriptor::Lq { q, dim } => write!(f, "lq:{q}:{dim}"),
        }
    }
}

impl FromStr for SpaceDescriptor {
    type Err = CoreError;

    /// Parses the CLI spelling: `scalar`, or `lq:<q>:<m>` with `inf`
    /// accepted for q (e.g. `lq:1:64`, `lq:inf:16`).
    fn from_str(s: &str) -> Result<Self> {
        if s == "scalar" {
            return Ok(SpaceDescriptor::ScalarReal);
        }
        let bad = || CoreError::ParseSpace(s.to_string());
        let mut parts = s.split(':');
        if parts.next() != Some("lq") {
            return Err(bad());
        }
        let q_str = parts.next().ok_or_else(bad)?;
        let m_str = parts.next().ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let q = if q_str == "inf" {
            Exponent::Infinity
        } else {
            Exponent::finite(q_str.parse::<f64>().map_err(|_| bad())?)?
        };
        let dim = m_str.parse::<usize>().map_err(|_| bad())?;
        SpaceDescriptor::lq(q, dim)
    }
}

/// A point of a concrete space: a finite coordinate vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    coords: Vec<f64>,
}

impl Element {
    pub fn new(coords: Vec<f64>) -> Self {
        Element { coords }
    }

    pub fn scalar(v: f64) -> Self {
        Element { coords: vec![v] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The single coordinate of a scalar-space element.
    pub fn as_scalar(&self) -> f64 {
        debug_assert_eq!(self.coords.len(), 1);
        self.coords[0]
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.coords.iter().all(|c| c.is_finite()) {
            Ok(())
        } else {
            Err(CoreError::NonFinite { context: "element" })
        }
    }

    /// Returns a*self.
    pub fn scaled(&self, a: f64) -> Element {
        Element {
            coords: self.coords.iter().map(|c| a * c).collect(),
        }
    }

    /// self += a*x. Dimension agreement is the caller's responsibility;
    /// used in accumulation loops.
    pub fn add_scaled(&mut self, a: f64, x: &Element) {
        debug_assert_eq!(self.coords.len(), x.coords.len());
        for (s, xi) in self.coords.iter_mut().zip(&x.coords) {
            *s += a * xi;
        }
    }

    /// self *= a.
    pub fn scale(&mut self, a: f64) {
        for c in &mut self.coords {
            *c *= a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(q: Exponent, m: usize) -> SpaceDescriptor {
        SpaceDescriptor::lq(q, m).unwrap()
    }

    #[test]
    fn norm_examples() {
        let e2 = lq(Exponent::Finite(2.0), 2);
        assert_eq!(e2.norm(&Element::new(vec![3.0, 4.0])).unwrap(), 5.0);

        let e1 = lq(Exponent::Finite(1.0), 3);
        assert_eq!(e1.norm(&Element::new(vec![1.0, -1.0, 1.0])).unwrap(), 3.0);

        let einf = lq(Exponent::Infinity, 3);
        assert_eq!(
            einf.norm(&Element::new(vec![1.0, -2.0, 0.5])).unwrap(),
            2.0
        );

        let s = SpaceDescriptor::scalar();
        assert_eq!(s.norm(&Element::scalar(-7.5)).unwrap(), 7.5);
    }

    #[test]
    fn norm_rejects_bad_input() {
        let e2 = lq(Exponent::Finite(2.0), 2);
        assert!(matches!(
            e2.norm(&Element::new(vec![1.0])),
            Err(CoreError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            e2.norm(&Element::new(vec![f64::NAN, 0.0])),
            Err(CoreError::NonFinite { .. })
        ));
    }

    #[test]
    fn axpy_examples() {
        let e2 = lq(Exponent::Finite(2.0), 2);
        let x = Element::new(vec![1.0, 2.0]);
        let y = Element::new(vec![3.0, 4.0]);
        // a = 0 returns y
        assert_eq!(e2.axpy(0.0, &x, &y).unwrap(), y);
        // a = 1 adds
        assert_eq!(
            e2.axpy(1.0, &x, &y).unwrap(),
            Element::new(vec![4.0, 6.0])
        );
        // a = -1 with x = y cancels
        assert_eq!(e2.axpy(-1.0, &x, &x).unwrap(), e2.zero());
        assert!(e2.axpy(1.0, &x, &Element::new(vec![1.0])).is_err());
    }

    #[test]
    fn basis_vectors() {
        let e1 = lq(Exponent::Finite(1.0), 3);
        assert_eq!(
            e1.basis_vector(1).unwrap(),
            Element::new(vec![0.0, 1.0, 0.0])
        );
        for q in [Exponent::Finite(1.0), Exponent::Finite(2.5), Exponent::Infinity] {
            let sp = lq(q, 3);
            for i in 0..3 {
                let e = sp.basis_vector(i).unwrap();
                assert_eq!(sp.norm(&e).unwrap(), 1.0);
            }
        }
        assert!(matches!(
            e1.basis_vector(3),
            Err(CoreError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn exponent_validation() {
        assert!(Exponent::finite(0.5).is_err());
        assert!(Exponent::finite(f64::INFINITY).is_err());
        assert!(Exponent::finite(1.0).is_ok());
    }

    #[test]
    fn spelling_round_trip() {
        for s in ["scalar", "lq:1:64", "lq:inf:16", "lq:1.5:8"] {
            let sp: SpaceDescriptor = s.parse().unwrap();
            assert_eq!(sp.to_string(), s);
        }
        assert!("lq:0.5:4".parse::<SpaceDescriptor>().is_err());
        assert!("lq:2:0".parse::<SpaceDescriptor>().is_err());
        assert!("l2:2:4".parse::<SpaceDescriptor>().is_err());
        assert!("lq:2".parse::<SpaceDescriptor>().is_err());
    }
}
