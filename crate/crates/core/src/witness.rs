//! Concrete counterexamples carried by failing checks.

use serde::{Deserialize, Serialize};

/// A violation witness. Re-evaluating the named quantities on `points`
/// must reproduce `lhs` and `rhs` (and hence the violation) from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Coordinate vectors of the points involved, in the order named by `detail`.
    pub points: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    /// What was compared, e.g. `G(x,y,z) <= G(x,a,a) + G(a,y,z)`.
    pub detail: String,
}

impl Witness {
    pub fn new(points: Vec<Vec<f64>>, lhs: f64, rhs: f64, detail: impl Into<String>) -> Self {
        Witness {
            points,
            lhs,
            rhs,
            detail: detail.into(),
        }
    }

    /// Violation size: how far the left side overshoots the right side.
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs
    }
}
