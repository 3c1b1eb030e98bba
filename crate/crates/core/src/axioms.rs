//! Sampled falsification checks for the G-metric axioms and their
//! standard consequences.
//!
//! Nothing here proves a candidate function is a G-metric; a pass only
//! means no sampled violation exceeded the tolerance. Failures always
//! carry a replayable witness.

use crate::error::{Error, Result};
use crate::metric::{g_from_metric_max, g_from_metric_sum, metric_from_g, GMetric};
use crate::point::Point;
use crate::sampling::{separation, tol_at};
use crate::witness::Witness;
use serde::{Deserialize, Serialize};

/// Outcome of one named check over a sample set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub name: String,
    pub passed: bool,
    /// Tuples that survived the distinctness guards and were evaluated.
    pub checked: usize,
    /// Smallest observed `rhs - lhs` slack (negative means violation).
    pub worst_slack: f64,
    pub witness: Option<Witness>,
}

impl AxiomEntry {
    fn new(name: &str) -> Self {
        AxiomEntry {
            name: name.to_string(),
            passed: true,
            checked: 0,
            worst_slack: f64::INFINITY,
            witness: None,
        }
    }

    /// Record one comparison `lhs <= rhs` with threshold `thresh`.
    fn record(&mut self, lhs: f64, rhs: f64, thresh: f64, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        let slack = rhs - lhs;
        if slack < self.worst_slack {
            self.worst_slack = slack;
        }
        if lhs > rhs + thresh && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

/// Per-axiom pass/fail evidence for a sampled check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
    pub samples_used: usize,
    pub tolerance: f64,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| !e.passed)
            .map(|e| e.name.as_str())
            .collect()
    }
}

fn coords(points: &[&Point]) -> Vec<Vec<f64>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

/// Checks the five defining axioms on sampled quadruples `(x, y, z, a)`.
///
/// The strict axioms (positivity, degenerate minimality) are guarded:
/// tuples whose relevant points are closer than `tol` are skipped, and
/// the inequality is then required non-strictly.
pub fn check_g_axioms(g: &GMetric, samples: &[[Point; 4]], tol: f64) -> Result<AxiomReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let mut identity = AxiomEntry::new("identity");
    let mut positivity = AxiomEntry::new("positivity");
    let mut minimality = AxiomEntry::new("degenerate_minimality");
    let mut symmetry = AxiomEntry::new("permutation_symmetry");
    let mut rectangle = AxiomEntry::new("rectangle");

    for [x, y, z, a] in samples {
        // (1) vanishing on the diagonal
        let gxxx = g.eval(x, x, x);
        identity.record(gxxx, 0.0, tol_at(tol, gxxx), || {
            Witness::new(coords(&[x]), gxxx, 0.0, "G(x,x,x) = 0")
        });

        // (2) strict positivity off the diagonal, guarded by separation
        if separation(x, y) > tol {
            let gxxy = g.eval(x, x, y);
            // recorded as `thresh < gxxy`, i.e. lhs = thresh, rhs = value
            positivity.record(tol_at(tol, gxxy), gxxy, 0.0, || {
                Witness::new(coords(&[x, y]), 0.0, gxxy, "0 < G(x,x,y) for x != y")
            });
        }

        // (3) degenerate pair is minimal, guarded on z != y
        if separation(z, y) > tol {
            let lhs = g.eval(x, x, y);
            let rhs = g.eval(x, y, z);
            minimality.record(lhs, rhs, tol_at(tol, lhs.abs().max(rhs.abs())), || {
                Witness::new(coords(&[x, y, z]), lhs, rhs, "G(x,x,y) <= G(x,y,z)")
            });
        }

        // (4) total symmetry: all six orders agree
        let base = g.eval(x, y, z);
        let orders: [(&Point, &Point, &Point, &str); 5] = [
            (x, z, y, "G(x,z,y)"),
            (y, x, z, "G(y,x,z)"),
            (y, z, x, "G(y,z,x)"),
            (z, x, y, "G(z,x,y)"),
            (z, y, x, "G(z,y,x)"),
        ];
        for (p, q, r, label) in orders {
            let other = g.eval(p, q, r);
            let dev = (other - base).abs();
            symmetry.record(dev, 0.0, tol_at(tol, base.abs().max(other.abs())), || {
                Witness::new(
                    coords(&[x, y, z]),
                    base,
                    other,
                    format!("G(x,y,z) = {label}"),
                )
            });
        }

        // (5) rectangle inequality through the probe point a
        let lhs = g.eval(x, y, z);
        let rhs = g.eval(x, a, a) + g.eval(a, y, z);
        rectangle.record(lhs, rhs, tol_at(tol, lhs.abs().max(rhs.abs())), || {
            Witness::new(
                coords(&[x, y, z, a]),
                lhs,
                rhs,
                "G(x,y,z) <= G(x,a,a) + G(a,y,z)",
            )
        });
    }

    Ok(AxiomReport {
        entries: vec![identity, positivity, minimality, symmetry, rectangle],
        samples_used: samples.len(),
        tolerance: tol,
    })
}

/// Checks the six standard inequalities every valid G-metric satisfies.
pub fn check_derived_properties(
    g: &GMetric,
    samples: &[[Point; 4]],
    tol: f64,
) -> Result<AxiomReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let mut zero_diag = AxiomEntry::new("zero_implies_equal");
    let mut two_probe = AxiomEntry::new("split_xx");
    let mut doubling = AxiomEntry::new("doubling");
    let mut midpoint = AxiomEntry::new("midpoint_split");
    let mut two_thirds = AxiomEntry::new("two_thirds_cycle");
    let mut star = AxiomEntry::new("star_bound");

    for [x, y, z, a] in samples {
        let gxyz = g.eval(x, y, z);

        // (1) G(x,y,z) = 0 forces x = y = z
        let spread = separation(x, y).max(separation(y, z)).max(separation(x, z));
        if gxyz.abs() <= tol_at(tol, gxyz) {
            // lhs = spread must be within guard when G vanishes
            zero_diag.record(spread, 0.0, tol, || {
                Witness::new(
                    coords(&[x, y, z]),
                    gxyz,
                    spread,
                    "G(x,y,z) = 0 but points differ",
                )
            });
        }

        // (2) G(x,y,z) <= G(x,x,y) + G(x,x,z)
        let rhs = g.eval(x, x, y) + g.eval(x, x, z);
        two_probe.record(gxyz, rhs, tol_at(tol, gxyz.abs().max(rhs.abs())), || {
            Witness::new(
                coords(&[x, y, z]),
                gxyz,
                rhs,
                "G(x,y,z) <= G(x,x,y) + G(x,x,z)",
            )
        });

        // (3) G(x,y,y) <= 2 G(y,x,x)
        let lhs = g.eval(x, y, y);
        let rhs = 2.0 * g.eval(y, x, x);
        doubling.record(lhs, rhs, tol_at(tol, lhs.abs().max(rhs.abs())), || {
            Witness::new(coords(&[x, y]), lhs, rhs, "G(x,y,y) <= 2 G(y,x,x)")
        });

        // (4) G(x,y,z) <= G(x,a,z) + G(a,y,z)
        let rhs = g.eval(x, a, z) + g.eval(a, y, z);
        midpoint.record(gxyz, rhs, tol_at(tol, gxyz.abs().max(rhs.abs())), || {
            Witness::new(
                coords(&[x, y, z, a]),
                gxyz,
                rhs,
                "G(x,y,z) <= G(x,a,z) + G(a,y,z)",
            )
        });

        // (5) G(x,y,z) <= 2/3 [G(x,y,a) + G(x,a,z) + G(a,y,z)]
        let rhs = 2.0 / 3.0 * (g.eval(x, y, a) + g.eval(x, a, z) + g.eval(a, y, z));
        two_thirds.record(gxyz, rhs, tol_at(tol, gxyz.abs().max(rhs.abs())), || {
            Witness::new(
                coords(&[x, y, z, a]),
                gxyz,
                rhs,
                "G(x,y,z) <= 2/3 [G(x,y,a) + G(x,a,z) + G(a,y,z)]",
            )
        });

        // (6) G(x,y,z) <= G(x,a,a) + G(y,a,a) + G(z,a,a)
        let rhs = g.eval(x, a, a) + g.eval(y, a, a) + g.eval(z, a, a);
        star.record(gxyz, rhs, tol_at(tol, gxyz.abs().max(rhs.abs())), || {
            Witness::new(
                coords(&[x, y, z, a]),
                gxyz,
                rhs,
                "G(x,y,z) <= G(x,a,a) + G(y,a,a) + G(z,a,a)",
            )
        });
    }

    Ok(AxiomReport {
        entries: vec![zero_diag, two_probe, doubling, midpoint, two_thirds, star],
        samples_used: samples.len(),
        tolerance: tol,
    })
}

/// True iff `G(x,y,y) = G(x,x,y)` on every sampled pair.
pub fn check_symmetric(
    g: &GMetric,
    samples: &[[Point; 2]],
    tol: f64,
) -> (bool, Option<Witness>) {
    for [x, y] in samples {
        let lhs = g.eval(x, y, y);
        let rhs = g.eval(x, x, y);
        if (lhs - rhs).abs() > tol_at(tol, lhs.abs().max(rhs.abs())) {
            return (
                false,
                Some(Witness::new(
                    coords(&[x, y]),
                    lhs,
                    rhs,
                    "G(x,y,y) = G(x,x,y)",
                )),
            );
        }
    }
    (true, None)
}

/// Checks the sandwich bounds relating G to the constructions applied to
/// its associated metric: `G <= G_s(d_G) <= 2G` and `G/2 <= G_m(d_G) <= 2G`.
pub fn check_sandwich(g: &GMetric, samples: &[[Point; 3]], tol: f64) -> Result<AxiomReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let d = metric_from_g(g.clone());
    let gs = g_from_metric_sum(d.clone(), 1.0 / 3.0);
    let gm = g_from_metric_max(d);

    let mut lower_s = AxiomEntry::new("g_le_gs");
    let mut upper_s = AxiomEntry::new("gs_le_2g");
    let mut lower_m = AxiomEntry::new("half_g_le_gm");
    let mut upper_m = AxiomEntry::new("gm_le_2g");

    for [x, y, z] in samples {
        let v = g.eval(x, y, z);
        let vs = gs.eval(x, y, z);
        let vm = gm.eval(x, y, z);
        let th = |a: f64, b: f64| tol_at(tol, a.abs().max(b.abs()));

        lower_s.record(v, vs, th(v, vs), || {
            Witness::new(coords(&[x, y, z]), v, vs, "G <= G_s(d_G)")
        });
        upper_s.record(vs, 2.0 * v, th(vs, 2.0 * v), || {
            Witness::new(coords(&[x, y, z]), vs, 2.0 * v, "G_s(d_G) <= 2G")
        });
        lower_m.record(0.5 * v, vm, th(0.5 * v, vm), || {
            Witness::new(coords(&[x, y, z]), 0.5 * v, vm, "G/2 <= G_m(d_G)")
        });
        upper_m.record(vm, 2.0 * v, th(vm, 2.0 * v), || {
            Witness::new(coords(&[x, y, z]), vm, 2.0 * v, "G_m(d_G) <= 2G")
        });
    }

    Ok(AxiomReport {
        entries: vec![lower_s, upper_s, lower_m, upper_m],
        samples_used: samples.len(),
        tolerance: tol,
    })
}

/// Tail values of the four equivalent convergence criteria for a finite
/// sequence against a candidate limit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceEquivalence {
    /// `d_G(x_n, x)` at the final index.
    pub d_g_tail: f64,
    /// `G(x_n, x_n, x)` at the final index.
    pub g_nnx_tail: f64,
    /// `G(x_n, x, x)` at the final index.
    pub g_nxx_tail: f64,
    /// `max G(x_m, x_n, x)` over the trailing window.
    pub g_mnx_tail: f64,
    pub window: usize,
    pub tolerance: f64,
    /// Which criteria report convergence at the tolerance.
    pub converged: [bool; 4],
    /// All four criteria give the same verdict.
    pub agree: bool,
}

/// Evaluates the four equivalent G-convergence criteria on a finite
/// sequence and reports whether they agree at the final index.
pub fn check_convergence_equivalence(
    g: &GMetric,
    seq: &[Point],
    x: &Point,
    tol: f64,
) -> Result<ConvergenceEquivalence> {
    if seq.len() < 3 {
        return Err(Error::SequenceTooShort {
            need: 3,
            got: seq.len(),
        });
    }
    let last = seq.last().unwrap();
    let window = seq.len().min(8);
    let tail = &seq[seq.len() - window..];

    let d_g_tail = g.d_g(last, x);
    let g_nnx_tail = g.eval(last, last, x);
    let g_nxx_tail = g.eval(last, x, x);
    let mut g_mnx_tail: f64 = 0.0;
    for m in tail {
        for n in tail {
            g_mnx_tail = g_mnx_tail.max(g.eval(m, n, x));
        }
    }

    let converged = [
        d_g_tail <= tol,
        g_nnx_tail <= tol,
        g_nxx_tail <= tol,
        g_mnx_tail <= tol,
    ];
    let agree = converged.iter().all(|&b| b) || converged.iter().all(|&b| !b);

    Ok(ConvergenceEquivalence {
        d_g_tail,
        g_nnx_tail,
        g_nxx_tail,
        g_mnx_tail,
        window,
        tolerance: tol,
        converged,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Metric;
    use crate::sampling;

    const TOL: f64 = 1e-9;

    fn perimeter() -> GMetric {
        g_from_metric_sum(Metric::euclidean(), 1.0)
    }

    fn box1() -> Vec<(f64, f64)> {
        vec![(-5.0, 5.0)]
    }

    #[test]
    fn built_in_constructions_pass_axioms() {
        let samples = sampling::quadruples(&box1(), 1000, 17);
        for g in [
            perimeter(),
            g_from_metric_sum(Metric::euclidean(), 1.0 / 3.0),
            g_from_metric_max(Metric::euclidean()),
        ] {
            let report = check_g_axioms(&g, &samples, TOL).unwrap();
            assert!(report.all_passed(), "failed: {:?}", report.failed_names());
            let derived = check_derived_properties(&g, &samples, TOL).unwrap();
            assert!(derived.all_passed(), "failed: {:?}", derived.failed_names());
        }
    }

    #[test]
    fn ignoring_an_argument_breaks_symmetry_axiom() {
        // ternary function that ignores z: not a G-metric
        let g = GMetric::from_fn(|x: &Point, y: &Point, _z: &Point| (x.x() - y.x()).abs());
        let samples = sampling::quadruples(&box1(), 500, 3);
        let report = check_g_axioms(&g, &samples, TOL).unwrap();
        let sym = report.entry("permutation_symmetry").unwrap();
        assert!(!sym.passed);
        let w = sym.witness.as_ref().unwrap();
        // replay the witness: both orderings re-evaluate to the stored values
        let pts: Vec<Point> = w.points.iter().map(|c| Point::new(c.clone()).unwrap()).collect();
        assert_eq!(g.eval(&pts[0], &pts[1], &pts[2]), w.lhs);
        assert!((w.lhs - w.rhs).abs() > TOL);
        // the hand witness from the contract: (0,1,5) reordered to (0,5,1)
        let (a, b, c) = (Point::scalar(0.0), Point::scalar(1.0), Point::scalar(5.0));
        assert_eq!(g.eval(&a, &b, &c), 1.0);
        assert_eq!(g.eval(&a, &c, &b), 5.0);
    }

    #[test]
    fn ignoring_an_argument_breaks_derived_properties() {
        let g = GMetric::from_fn(|x: &Point, y: &Point, _z: &Point| (x.x() - y.x()).abs());
        let samples = sampling::quadruples(&box1(), 500, 3);
        let report = check_derived_properties(&g, &samples, TOL).unwrap();
        // zero_implies_equal: G(0,0,5) = 0 with distinct z; split_xx: G(x,x,*) = 0
        assert!(!report.entry("zero_implies_equal").unwrap().passed);
        assert!(!report.entry("split_xx").unwrap().passed);
        // the doubling bound holds identically for |x-y|
        assert!(report.entry("doubling").unwrap().passed);
    }

    #[test]
    fn weighted_construction_is_asymmetric() {
        // d(x,y) + 2 d(y,z) + d(z,x): G(x,y,y) = 2d, G(x,x,y) = 3d
        let d = Metric::euclidean();
        let g = {
            let d = d.clone();
            GMetric::from_fn(move |x: &Point, y: &Point, z: &Point| {
                d.eval(x, y) + 2.0 * d.eval(y, z) + d.eval(z, x)
            })
        };
        let samples = sampling::pairs(&box1(), 200, 5);
        let (ok, witness) = check_symmetric(&g, &samples, TOL);
        assert!(!ok);
        let w = witness.unwrap();
        assert!((w.lhs - w.rhs).abs() > TOL);

        // built-ins are symmetric
        let (ok, _) = check_symmetric(&perimeter(), &samples, TOL);
        assert!(ok);
        let (ok, _) = check_symmetric(&g_from_metric_max(Metric::euclidean()), &samples, TOL);
        assert!(ok);
    }

    #[test]
    fn sandwich_holds_for_built_ins() {
        let samples = sampling::triples(&box1(), 500, 11);
        for g in [perimeter(), g_from_metric_max(Metric::euclidean())] {
            let report = check_sandwich(&g, &samples, TOL).unwrap();
            assert!(report.all_passed(), "failed: {:?}", report.failed_names());
        }
    }

    #[test]
    fn sandwich_hand_values() {
        // perimeter on (0,1,2): G = 4, d_G pairs (4,4,8), G_s(d_G) = 16/3
        let g = perimeter();
        let x = Point::scalar(0.0);
        let y = Point::scalar(1.0);
        let z = Point::scalar(2.0);
        assert_eq!(g.eval(&x, &y, &z), 4.0);
        assert_eq!(g.d_g(&x, &y), 4.0);
        assert_eq!(g.d_g(&y, &z), 4.0);
        assert_eq!(g.d_g(&x, &z), 8.0);
        let report = check_sandwich(&g, &[[x, y, z]], 1e-12).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn convergence_criteria_agree() {
        let g = perimeter();
        let zero = Point::scalar(0.0);

        let seq: Vec<Point> = (1..=10_000).map(|n| Point::scalar(1.0 / n as f64)).collect();
        let rep = check_convergence_equivalence(&g, &seq, &zero, 1e-3).unwrap();
        assert!(rep.agree && rep.converged.iter().all(|&b| b));

        let constant: Vec<Point> = (0..10).map(|_| Point::scalar(0.4)).collect();
        let rep = check_convergence_equivalence(&g, &constant, &Point::scalar(0.4), 1e-12).unwrap();
        assert!(rep.agree && rep.converged.iter().all(|&b| b));
        assert_eq!(rep.d_g_tail, 0.0);

        let alternating: Vec<Point> = (0..100)
            .map(|n| Point::scalar(if n % 2 == 0 { 1.0 } else { -1.0 }))
            .collect();
        let rep = check_convergence_equivalence(&g, &alternating, &zero, 1e-3).unwrap();
        assert!(rep.agree && rep.converged.iter().all(|&b| !b));
    }

    #[test]
    fn short_sequence_rejected() {
        let g = perimeter();
        let seq = vec![Point::scalar(0.0), Point::scalar(1.0)];
        assert!(matches!(
            check_convergence_equivalence(&g, &seq, &Point::scalar(0.0), 1e-3),
            Err(Error::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn empty_samples_rejected() {
        assert!(matches!(
            check_g_axioms(&perimeter(), &[], TOL),
            Err(Error::EmptySampleSet)
        ));
    }
}
