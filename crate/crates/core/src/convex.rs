//! Convex structures on G-metric spaces and the sampled
//! uniform-convexity modulus.

use crate::error::{Error, Result};
use crate::metric::GMetric;
use crate::point::Point;
use crate::region::Region;
use crate::sampling::{self, separation, tol_at};
use crate::witness::Witness;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

const WEIGHT_SUM_EPS: f64 = 1e-12;

/// A three-point combiner W(x, y, z; w1, w2, w3).
#[derive(Clone)]
pub struct ConvexStructure {
    combiner: Arc<dyn Fn(&Point, &Point, &Point, [f64; 3]) -> Point + Send + Sync>,
}

impl std::fmt::Debug for ConvexStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ConvexStructure(<fn>)")
    }
}

impl ConvexStructure {
    pub fn from_fn(
        f: impl Fn(&Point, &Point, &Point, [f64; 3]) -> Point + Send + Sync + 'static,
    ) -> Self {
        ConvexStructure {
            combiner: Arc::new(f),
        }
    }

    /// Weighted centroid in R^n: `w1 x + w2 y + w3 z`.
    pub fn centroid() -> Self {
        ConvexStructure::from_fn(|x, y, z, w| {
            let coords = x
                .coords()
                .iter()
                .zip(y.coords())
                .zip(z.coords())
                .map(|((&a, &b), &c)| w[0] * a + w[1] * b + w[2] * c)
                .collect();
            Point::new(coords).expect("centroid of finite points is finite")
        })
    }
}

/// Applies the combiner after validating the weights: nonnegative,
/// summing to one within 1e-12.
pub fn combine(
    w: &ConvexStructure,
    x: &Point,
    y: &Point,
    z: &Point,
    weights: [f64; 3],
) -> Result<Point> {
    let sum: f64 = weights.iter().sum();
    if weights.iter().any(|&l| l < 0.0) || (sum - 1.0).abs() > WEIGHT_SUM_EPS {
        return Err(Error::BadWeights(weights));
    }
    Ok((w.combiner)(x, y, z, weights))
}

/// A sampled configuration for the convex-structure inequality.
pub type ConvexSample = ([Point; 5], [f64; 3]);

/// Checks the defining inequality of a convex structure on sampled
/// configurations `(x, y, z, u, v, weights)`:
/// `G(u, v, W(x,y,z; w)) <= w1 G(u,v,x) + w2 G(u,v,y) + w3 G(u,v,z)`.
pub fn check_convex_structure(
    g: &GMetric,
    w: &ConvexStructure,
    samples: &[ConvexSample],
    tol: f64,
) -> Result<crate::axioms::AxiomReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let mut entry = crate::axioms::AxiomEntry {
        name: "convex_structure".to_string(),
        passed: true,
        checked: 0,
        worst_slack: f64::INFINITY,
        witness: None,
    };
    for ([x, y, z, u, v], weights) in samples {
        let combined = combine(w, x, y, z, *weights)?;
        let lhs = g.eval(u, v, &combined);
        let rhs = weights[0] * g.eval(u, v, x)
            + weights[1] * g.eval(u, v, y)
            + weights[2] * g.eval(u, v, z);
        entry.checked += 1;
        let slack = rhs - lhs;
        if slack < entry.worst_slack {
            entry.worst_slack = slack;
        }
        if lhs > rhs + tol_at(tol, lhs.abs().max(rhs.abs())) && entry.passed {
            entry.passed = false;
            entry.witness = Some(Witness::new(
                vec![
                    x.coords().to_vec(),
                    y.coords().to_vec(),
                    z.coords().to_vec(),
                    u.coords().to_vec(),
                    v.coords().to_vec(),
                    weights.to_vec(),
                ],
                lhs,
                rhs,
                "G(u,v,W(x,y,z;w)) <= w1 G(u,v,x) + w2 G(u,v,y) + w3 G(u,v,z)",
            ));
        }
    }
    Ok(crate::axioms::AxiomReport {
        entries: vec![entry],
        samples_used: samples.len(),
        tolerance: tol,
    })
}

/// Generates convex-structure samples over a bounding box: five points
/// plus a weight triple each, weights covering the simplex corners first.
pub fn convex_samples(bounds: &[(f64, f64)], n: usize, seed: u64) -> Vec<ConvexSample> {
    let mut rng = sampling::rng(seed);
    let weights = sampling::weight_triples(n, &mut rng);
    let mut out = Vec::with_capacity(n);
    for w in weights {
        let pts = [
            sampling::uniform_point(bounds, &mut rng),
            sampling::uniform_point(bounds, &mut rng),
            sampling::uniform_point(bounds, &mut rng),
            sampling::uniform_point(bounds, &mut rng),
            sampling::uniform_point(bounds, &mut rng),
        ];
        out.push((pts, w));
    }
    out
}

/// True iff all sampled member triples combined under all sampled
/// weights stay inside the region.
pub fn check_g_convex_set(
    w: &ConvexStructure,
    region: &Region,
    samples: usize,
    weight_samples: usize,
    seed: u64,
) -> Result<(bool, Option<Witness>)> {
    let mut rng = sampling::rng(seed);
    let mut members = region.anchors();
    while members.len() < samples.max(3) {
        members.push(region.sample(&mut rng));
    }
    if members.is_empty() {
        return Err(Error::EmptyRegion(region.name.clone()));
    }
    let weights = sampling::weight_triples(weight_samples.max(5), &mut rng);
    for i in 0..members.len() {
        for j in 0..members.len() {
            for k in 0..members.len() {
                for &wt in &weights {
                    let combined = combine(w, &members[i], &members[j], &members[k], wt)?;
                    if !region.contains(&combined) {
                        return Ok((
                            false,
                            Some(Witness::new(
                                vec![
                                    members[i].coords().to_vec(),
                                    members[j].coords().to_vec(),
                                    members[k].coords().to_vec(),
                                    combined.coords().to_vec(),
                                    wt.to_vec(),
                                ],
                                1.0,
                                0.0,
                                "W(x,y,z;w) escaped the region",
                            )),
                        ));
                    }
                }
            }
        }
    }
    Ok((true, None))
}

/// Result of probing the uniform-convexity modulus at one epsilon.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModulusEstimate {
    pub epsilon: f64,
    /// `inf (1 - G(u,v,W(x,y,z;1/3,1/3,1/3)) / r)` over admissible sampled
    /// configurations, clipped at zero. The min over the probed r grid.
    pub alpha_hat: f64,
    pub samples_used: usize,
    /// Set when a configuration exceeded r by more than the tolerance.
    pub violated: Option<Witness>,
    /// Per-r values: (r, alpha at that r, admissible count).
    pub per_r: Vec<(f64, f64, usize)>,
}

/// Estimates the uniform-convexity modulus alpha(epsilon) at equal
/// weights by sampling configurations `(x,y,z,u,v)` filtered to
/// `G(u,v,p) <= r` for each vertex, `G(x,y,z) >= r epsilon`, and `x,y,z`
/// pairwise distinct. One filter pass per r in `r_grid`.
pub fn estimate_uniform_convexity(
    g: &GMetric,
    w: &ConvexStructure,
    bounds: &[(f64, f64)],
    epsilon: f64,
    r_grid: &[f64],
    config_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<ModulusEstimate> {
    assert!(epsilon > 0.0, "epsilon must be positive");
    assert!(!r_grid.is_empty(), "r grid must not be empty");
    let scale = bounds
        .iter()
        .map(|&(lo, hi)| lo.abs().max(hi.abs()))
        .fold(0.0f64, f64::max);
    let distinct_sep = tol * (1.0 + scale);
    let thirds = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];

    let mut alpha_hat = f64::INFINITY;
    let mut violated: Option<Witness> = None;
    let mut per_r = Vec::with_capacity(r_grid.len());
    let mut admissible_total = 0usize;
    let mut rejected_total = 0usize;

    for &r in r_grid {
        assert!(r > 0.0, "r must be positive");
        let mut rng = sampling::rng(seed ^ r.to_bits());
        let mut alpha_r = f64::INFINITY;
        let mut admissible = 0usize;
        for _ in 0..config_samples {
            let x = sampling::uniform_point(bounds, &mut rng);
            let y = sampling::uniform_point(bounds, &mut rng);
            let z = sampling::uniform_point(bounds, &mut rng);
            let u = sampling::uniform_point(bounds, &mut rng);
            let v = sampling::uniform_point(bounds, &mut rng);
            let distinct = separation(&x, &y) > distinct_sep
                && separation(&y, &z) > distinct_sep
                && separation(&x, &z) > distinct_sep;
            if !distinct
                || g.eval(&u, &v, &x) > r
                || g.eval(&u, &v, &y) > r
                || g.eval(&u, &v, &z) > r
                || g.eval(&x, &y, &z) < r * epsilon
            {
                rejected_total += 1;
                continue;
            }
            admissible += 1;
            let m = combine(w, &x, &y, &z, thirds)?;
            let margin = 1.0 - g.eval(&u, &v, &m) / r;
            if margin < alpha_r {
                alpha_r = margin;
            }
            if margin < -tol && violated.is_none() {
                violated = Some(Witness::new(
                    vec![
                        vec![r],
                        x.coords().to_vec(),
                        y.coords().to_vec(),
                        z.coords().to_vec(),
                        u.coords().to_vec(),
                        v.coords().to_vec(),
                    ],
                    g.eval(&u, &v, &m),
                    r,
                    "G(u,v,W(x,y,z;1/3,1/3,1/3)) <= r on an admissible configuration",
                ));
            }
        }
        admissible_total += admissible;
        let alpha_r_clipped = if admissible == 0 {
            f64::INFINITY
        } else {
            alpha_r.max(0.0)
        };
        if alpha_r_clipped < alpha_hat {
            alpha_hat = alpha_r_clipped;
        }
        per_r.push((
            r,
            if admissible == 0 { f64::NAN } else { alpha_r_clipped },
            admissible,
        ));
    }

    if admissible_total == 0 {
        return Err(Error::NoAdmissibleConfigurations {
            epsilon,
            rejected: rejected_total,
        });
    }

    Ok(ModulusEstimate {
        epsilon,
        alpha_hat,
        samples_used: admissible_total,
        violated,
        per_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{g_from_metric_max, g_from_metric_sum, Metric};

    fn perimeter() -> GMetric {
        g_from_metric_sum(Metric::euclidean(), 1.0)
    }

    fn p(x: f64) -> Point {
        Point::scalar(x)
    }

    #[test]
    fn centroid_values() {
        let w = ConvexStructure::centroid();
        let thirds = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        assert_eq!(combine(&w, &p(0.0), &p(3.0), &p(6.0), thirds).unwrap().x(), 3.0);
        assert_eq!(
            combine(&w, &p(7.0), &p(1.0), &p(2.0), [1.0, 0.0, 0.0]).unwrap().x(),
            7.0
        );
        assert_eq!(combine(&w, &p(-1.0), &p(0.0), &p(1.0), thirds).unwrap().x(), 0.0);
    }

    #[test]
    fn bad_weights_rejected() {
        let w = ConvexStructure::centroid();
        assert!(matches!(
            combine(&w, &p(0.0), &p(1.0), &p(2.0), [0.5, 0.5, 0.5]),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            combine(&w, &p(0.0), &p(1.0), &p(2.0), [-0.1, 0.6, 0.5]),
            Err(Error::BadWeights(_))
        ));
    }

    #[test]
    fn centroid_satisfies_convex_inequality() {
        let bounds = [(-2.0, 2.0)];
        let samples = convex_samples(&bounds, 5000, 42);
        let w = ConvexStructure::centroid();
        for g in [perimeter(), g_from_metric_max(Metric::euclidean())] {
            let report = check_convex_structure(&g, &w, &samples, 1e-9).unwrap();
            assert!(report.all_passed());
        }
    }

    #[test]
    fn broken_combiner_fails_with_witness() {
        // ignores the weights entirely: forced violation at weights (0,1,0), u=v=y
        let broken = ConvexStructure::from_fn(|x, _, _, _| x.clone());
        let g = perimeter();
        let y = p(1.0);
        let sample: ConvexSample = (
            [p(0.0), y.clone(), p(0.5), y.clone(), y.clone()],
            [0.0, 1.0, 0.0],
        );
        let report = check_convex_structure(&g, &broken, &[sample], 1e-9).unwrap();
        let entry = &report.entries[0];
        assert!(!entry.passed);
        let w = entry.witness.as_ref().unwrap();
        assert!(w.lhs > w.rhs + 1e-9);
        assert_eq!(w.lhs, 2.0); // G(y, y, x) = 2|1-0|
        assert_eq!(w.rhs, 0.0); // G(y, y, y)
    }

    #[test]
    fn intervals_are_convex_sets() {
        let w = ConvexStructure::centroid();
        let r = Region::from_intervals("U", vec![(0.0, 1.0)]);
        let (ok, _) = check_g_convex_set(&w, &r, 8, 8, 0).unwrap();
        assert!(ok);

        let square = Region::from_box("U", vec![(0.0, 1.0), (0.0, 1.0)]);
        let (ok, _) = check_g_convex_set(&w, &square, 6, 6, 0).unwrap();
        assert!(ok);
    }

    #[test]
    fn two_point_set_is_not_convex() {
        let w = ConvexStructure::centroid();
        let r = Region::from_points("U", vec![0.0, 1.0]);
        let (ok, witness) = check_g_convex_set(&w, &r, 4, 6, 0).unwrap();
        assert!(!ok);
        let wit = witness.unwrap();
        // the escaping combination is strictly between the two points
        let escaped = wit.points[3][0];
        assert!(escaped > 1e-9 && escaped < 1.0 - 1e-9);
    }

    #[test]
    fn modulus_positive_on_symmetric_interval() {
        let g = perimeter();
        let w = ConvexStructure::centroid();
        let est = estimate_uniform_convexity(
            &g,
            &w,
            &[(-1.0, 1.0)],
            1.0,
            &[1.0],
            20_000,
            1e-9,
            7,
        )
        .unwrap();
        assert!(est.alpha_hat > 0.0);
        assert!(est.violated.is_none());
        assert!(est.samples_used > 100);
    }

    #[test]
    fn oversized_epsilon_has_no_admissible_configurations() {
        let g = perimeter();
        let w = ConvexStructure::centroid();
        let err = estimate_uniform_convexity(
            &g,
            &w,
            &[(-1.0, 1.0)],
            10.0,
            &[1.0],
            2000,
            1e-9,
            7,
        );
        assert!(matches!(err, Err(Error::NoAdmissibleConfigurations { .. })));
    }

    #[test]
    fn adding_samples_never_increases_alpha() {
        let g = perimeter();
        let w = ConvexStructure::centroid();
        let run = |n: usize| {
            estimate_uniform_convexity(&g, &w, &[(-1.0, 1.0)], 0.5, &[1.0], n, 1e-9, 13)
                .unwrap()
                .alpha_hat
        };
        // same seed: the first N draws of the longer run equal the shorter run
        let short = run(4000);
        let long = run(16_000);
        assert!(long <= short + 1e-15);
    }
}
