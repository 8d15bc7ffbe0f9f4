//! Test integrands on the unit cube.
//!
//! A [`TestProblem`] bundles an evaluator f: \[0,1\]^d -> X with the metadata
//! the algorithms need: a certified smoothness order, a bound on the
//! corresponding derivative norm, and (when available in closed form) the
//! exact integral. [`registry_problem`] builds the named problems accepted
//! by the CLI; [`FoolingFamily`] builds the bump-based families whose
//! integrals encode an arbitrary vector family.

mod bump;
mod fooling;
mod registry;

pub use bump::{bump_eval, bump_integral, bump_line, bump_line_integral};
pub use fooling::FoolingFamily;
pub use registry::registry_problem;

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::spaces::{Element, SpaceDescriptor};

type Evaluator = Arc<dyn Fn(&[f64]) -> Element + Send + Sync>;

/// A function f: \[0,1\]^d -> X together with its integration metadata.
///
/// Evaluators are pure and reentrant; cloning a problem shares the
/// underlying closure.
#[derive(Clone)]
pub struct TestProblem {
    name: String,
    d: usize,
    space: SpaceDescriptor,
    smoothness: u32,
    cr_norm_bound: f64,
    exact_integral: Option<Element>,
    eval: Evaluator,
}

impl TestProblem {
    pub fn new(
        name: impl Into<String>,
        d: usize,
        space: SpaceDescriptor,
        smoothness: u32,
        cr_norm_bound: f64,
        exact_integral: Option<Element>,
        eval: impl Fn(&[f64]) -> Element + Send + Sync + 'static,
    ) -> Result<Self> {
        if d == 0 {
            return Err(CoreError::InvalidParameter(
                "domain dimension must be at least 1".into(),
            ));
        }
        if let Some(v) = &exact_integral {
            if v.dim() != space.dim() {
                return Err(CoreError::DimensionMismatch {
                    expected: space.dim(),
                    got: v.dim(),
                });
            }
        }
        Ok(TestProblem {
            name: name.into(),
            d,
            space,
            smoothness,
            cr_norm_bound,
            exact_integral,
            eval: Arc::new(eval),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension of the domain cube.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.space
    }

    /// Largest r for which the problem is certified r-times continuously
    /// differentiable.
    pub fn smoothness(&self) -> u32 {
        self.smoothness
    }

    /// Upper bound on the derivative norm at the certified smoothness.
    pub fn cr_norm_bound(&self) -> f64 {
        self.cr_norm_bound
    }

    pub fn exact_integral(&self) -> Option<&Element> {
        self.exact_integral.as_ref()
    }

    /// Evaluates f at `t`; `t.len()` must equal [`Self::d`].
    pub fn evaluate(&self, t: &[f64]) -> Element {
        debug_assert_eq!(t.len(), self.d);
        (self.eval)(t)
    }
}

impl fmt::Debug for TestProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestProblem")
            .field("name", &self.name)
            .field("d", &self.d)
            .field("space", &self.space)
            .field("smoothness", &self.smoothness)
            .field("cr_norm_bound", &self.cr_norm_bound)
            .field("exact_integral", &self.exact_integral)
            .finish_non_exhaustive()
    }
}
