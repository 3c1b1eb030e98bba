//! Ordinary metrics, G-metrics, and the constructions between them.
//!
//! A G-metric is a ternary nonnegative function generalizing the
//! perimeter of a triangle: it vanishes exactly on the diagonal, is
//! totally symmetric, and satisfies a rectangle inequality. Any ordinary
//! metric `d` induces two G-metrics: the (scaled) perimeter
//! `scale * [d(x,y) + d(y,z) + d(x,z)]` and the max of the three pairwise
//! distances. Conversely every G-metric induces the ordinary metric
//! `d_G(x,y) = G(x,y,y) + G(x,x,y)`.

use crate::point::Point;
use std::sync::Arc;

type BinaryFn = dyn Fn(&Point, &Point) -> f64 + Send + Sync;
type TernaryFn = dyn Fn(&Point, &Point, &Point) -> f64 + Send + Sync;

/// An ordinary metric, wrapped as a shareable evaluator.
#[derive(Clone)]
pub struct Metric {
    eval: Arc<BinaryFn>,
}

impl Metric {
    pub fn from_fn(f: impl Fn(&Point, &Point) -> f64 + Send + Sync + 'static) -> Self {
        Metric { eval: Arc::new(f) }
    }

    /// Euclidean distance; absolute difference in dimension one.
    pub fn euclidean() -> Self {
        Metric::from_fn(|x, y| {
            debug_assert_eq!(x.dim(), y.dim());
            x.coords()
                .iter()
                .zip(y.coords())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }

    pub fn eval(&self, x: &Point, y: &Point) -> f64 {
        (self.eval)(x, y)
    }
}

impl std::fmt::Debug for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Metric(<fn>)")
    }
}

/// A G-metric: ternary nonnegative evaluator over points.
#[derive(Clone)]
pub struct GMetric {
    eval: Arc<TernaryFn>,
    /// Cached answer of a symmetry check, if one was run.
    pub symmetric_hint: Option<bool>,
}

impl GMetric {
    pub fn from_fn(f: impl Fn(&Point, &Point, &Point) -> f64 + Send + Sync + 'static) -> Self {
        GMetric {
            eval: Arc::new(f),
            symmetric_hint: None,
        }
    }

    pub fn eval(&self, x: &Point, y: &Point, z: &Point) -> f64 {
        (self.eval)(x, y, z)
    }

    /// The associated ordinary metric `d_G(x,y) = G(x,y,y) + G(x,x,y)`.
    pub fn d_g(&self, x: &Point, y: &Point) -> f64 {
        self.eval(x, y, y) + self.eval(x, x, y)
    }
}

impl std::fmt::Debug for GMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("GMetric(<fn>)")
    }
}

/// Scaled-perimeter construction: `scale * [d(x,y) + d(y,z) + d(x,z)]`.
///
/// `scale = 1/3` is the classical normalization; `scale = 1` gives the
/// plain perimeter used by the interval scenarios. The three summands are
/// sorted before adding so that all six argument orders produce bitwise
/// identical floats.
pub fn g_from_metric_sum(d: Metric, scale: f64) -> GMetric {
    assert!(scale > 0.0, "scale must be positive");
    GMetric {
        eval: Arc::new(move |x: &Point, y: &Point, z: &Point| {
            let mut s = [d.eval(x, y), d.eval(y, z), d.eval(x, z)];
            s.sort_unstable_by(f64::total_cmp);
            scale * ((s[0] + s[1]) + s[2])
        }),
        symmetric_hint: Some(true),
    }
}

/// Max construction: `max { d(x,y), d(y,z), d(x,z) }`.
pub fn g_from_metric_max(d: Metric) -> GMetric {
    GMetric {
        eval: Arc::new(move |x: &Point, y: &Point, z: &Point| {
            d.eval(x, y).max(d.eval(y, z)).max(d.eval(x, z))
        }),
        symmetric_hint: Some(true),
    }
}

/// The ordinary metric associated with a G-metric.
///
/// For a valid G the result is symmetric and vanishes exactly on pairs of
/// equal points.
pub fn metric_from_g(g: GMetric) -> Metric {
    Metric {
        eval: Arc::new(move |x: &Point, y: &Point| g.d_g(x, y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn p(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn perimeter_values() {
        let g = g_from_metric_sum(Metric::euclidean(), 1.0);
        assert_eq!(g.eval(&p(0.0), &p(1.0), &p(2.0)), 4.0);
        let g3 = g_from_metric_sum(Metric::euclidean(), 1.0 / 3.0);
        assert_eq!(g3.eval(&p(0.7), &p(0.7), &p(0.7)), 0.0);
        // hand evaluation: |0-pi| + |pi-2pi| + |2pi-0| = 4*pi
        assert_relative_eq!(
            g.eval(&p(0.0), &p(PI), &p(2.0 * PI)),
            4.0 * PI,
            max_relative = 1e-15
        );
    }

    #[test]
    fn max_values() {
        let g = g_from_metric_max(Metric::euclidean());
        assert_eq!(g.eval(&p(0.0), &p(1.0), &p(2.0)), 2.0);
        assert_eq!(g.eval(&p(0.3), &p(0.3), &p(0.3)), 0.0);
        assert_eq!(g.eval(&p(-1.0), &p(0.0), &p(1.0)), 2.0);
    }

    #[test]
    fn associated_metric_closed_forms() {
        // perimeter: d_G = 4|x-y|; hand value d_G(0,1) = 2 + 2 = 4
        let g = g_from_metric_sum(Metric::euclidean(), 1.0);
        let d = metric_from_g(g);
        assert_eq!(d.eval(&p(0.0), &p(1.0)), 4.0);
        assert_eq!(d.eval(&p(2.0), &p(2.0)), 0.0);
        // max construction: d_G(0,1) = 1 + 1 = 2
        let dm = metric_from_g(g_from_metric_max(Metric::euclidean()));
        assert_eq!(dm.eval(&p(0.0), &p(1.0)), 2.0);
    }

    #[test]
    fn permutation_bitwise_invariance() {
        let g = g_from_metric_sum(Metric::euclidean(), 1.0 / 3.0);
        let (a, b, c) = (p(0.1), p(2.7), p(-3.4));
        let v = g.eval(&a, &b, &c);
        for (x, y, z) in [
            (&a, &b, &c),
            (&a, &c, &b),
            (&b, &a, &c),
            (&b, &c, &a),
            (&c, &a, &b),
            (&c, &b, &a),
        ] {
            assert_eq!(g.eval(x, y, z).to_bits(), v.to_bits());
        }
    }
}
