//! Points of the underlying space: fixed-length real vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point of the space, a finite real vector of dimension >= 1.
///
/// All worked scenarios are one dimensional; the type carries a full
/// coordinate vector so box regions in higher dimension work unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(Vec<f64>);

impl Point {
    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for &c in &coords {
            if !c.is_finite() {
                return Err(Error::NonFinitePoint(c));
            }
        }
        Ok(Point(coords))
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Self {
        assert!(x.is_finite(), "scalar point must be finite");
        Point(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// First coordinate; the whole value for 1-D points.
    pub fn x(&self) -> f64 {
        self.0[0]
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::scalar(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(Point::new(vec![f64::NAN]).is_err());
        assert!(Point::new(vec![0.0, f64::INFINITY]).is_err());
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0, -2.5]).is_ok());
    }

    #[test]
    fn scalar_accessor() {
        let p = Point::scalar(3.5);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.x(), 3.5);
    }
}
