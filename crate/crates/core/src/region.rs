//! Named regions of the space and the three-set distance
//! `G(A,B,C) = inf { G(a,b,c) : a in A, b in B, c in C }`.

use crate::error::{Error, Result};
use crate::metric::GMetric;
use crate::point::Point;
use crate::sampling;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Relative slack used when testing interval membership, so that solver
/// output landing a few ulps outside an endpoint still counts.
const MEMBERSHIP_EPS: f64 = 1e-9;

/// A named subset of the space with a membership test, per-coordinate
/// bounds, and a deterministic seeded sampler. One-dimensional regions
/// built from closed intervals (degenerate intervals encode finite point
/// sets) additionally expose the interval list as a fast path for exact
/// enumeration and bracketing solvers.
#[derive(Clone)]
pub struct Region {
    pub name: String,
    membership: Arc<dyn Fn(&Point) -> bool + Send + Sync>,
    pub bounds: Vec<(f64, f64)>,
    intervals: Option<Vec<(f64, f64)>>,
}

impl std::fmt::Debug for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Region({}, bounds {:?})", self.name, self.bounds)
    }
}

impl Region {
    /// One-dimensional region given by a union of closed intervals.
    pub fn from_intervals(name: impl Into<String>, segments: Vec<(f64, f64)>) -> Self {
        assert!(!segments.is_empty(), "region needs at least one interval");
        for &(lo, hi) in &segments {
            assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
        }
        let lo = segments.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
        let hi = segments.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        let segs = segments.clone();
        Region {
            name: name.into(),
            membership: Arc::new(move |p: &Point| {
                if p.dim() != 1 {
                    return false;
                }
                let x = p.x();
                segs.iter().any(|&(a, b)| {
                    let eps = MEMBERSHIP_EPS * (1.0 + a.abs().max(b.abs()));
                    x >= a - eps && x <= b + eps
                })
            }),
            bounds: vec![(lo, hi)],
            intervals: Some(segments),
        }
    }

    /// Finite one-dimensional point set, encoded as degenerate intervals.
    pub fn from_points(name: impl Into<String>, points: Vec<f64>) -> Self {
        Region::from_intervals(name, points.into_iter().map(|p| (p, p)).collect())
    }

    /// Arithmetic progression `start + k*step` for `k >= 0`. Membership is
    /// the unbounded pattern; sampling, enumeration, and bracketing use
    /// the first `count` points. This models index-set regions whose
    /// images under translation maps escape any finite truncation.
    pub fn progression(name: impl Into<String>, start: f64, step: f64, count: usize) -> Self {
        assert!(step > 0.0 && count > 0);
        let pts: Vec<(f64, f64)> = (0..count)
            .map(|k| {
                let p = start + k as f64 * step;
                (p, p)
            })
            .collect();
        let lo = pts[0].0;
        let hi = pts[count - 1].0;
        Region {
            name: name.into(),
            membership: Arc::new(move |p: &Point| {
                if p.dim() != 1 {
                    return false;
                }
                let x = p.x();
                let k = ((x - start) / step).round();
                let eps = MEMBERSHIP_EPS * (1.0 + x.abs());
                k >= -0.5 && (x - (start + k * step)).abs() <= eps
            }),
            bounds: vec![(lo, hi)],
            intervals: Some(pts),
        }
    }

    /// Axis-aligned box in any dimension.
    pub fn from_box(name: impl Into<String>, bounds: Vec<(f64, f64)>) -> Self {
        assert!(!bounds.is_empty());
        if bounds.len() == 1 {
            return Region::from_intervals(name, bounds);
        }
        let b = bounds.clone();
        Region {
            name: name.into(),
            membership: Arc::new(move |p: &Point| {
                p.dim() == b.len()
                    && p.coords().iter().zip(&b).all(|(&x, &(lo, hi))| {
                        let eps = MEMBERSHIP_EPS * (1.0 + lo.abs().max(hi.abs()));
                        x >= lo - eps && x <= hi + eps
                    })
            }),
            bounds,
            intervals: None,
        }
    }

    /// Region defined by an arbitrary membership predicate. No interval
    /// fast path, so bracketing inverse solvers are unavailable on it.
    pub fn from_membership(
        name: impl Into<String>,
        bounds: Vec<(f64, f64)>,
        membership: impl Fn(&Point) -> bool + Send + Sync + 'static,
    ) -> Self {
        Region {
            name: name.into(),
            membership: Arc::new(membership),
            bounds,
            intervals: None,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        (self.membership)(p)
    }

    /// Nearest member of a 1-D interval region to `x`.
    pub fn project_scalar(&self, x: f64) -> Option<f64> {
        let segs = self.intervals.as_ref()?;
        segs.iter()
            .map(|&(a, b)| x.clamp(a, b))
            .min_by(|p, q| (p - x).abs().total_cmp(&(q - x).abs()))
    }

    pub fn intervals(&self) -> Option<&[(f64, f64)]> {
        self.intervals.as_deref()
    }

    /// The point list when every interval is degenerate.
    pub fn finite_points(&self) -> Option<Vec<f64>> {
        let segs = self.intervals.as_ref()?;
        if segs.iter().all(|&(a, b)| a == b) {
            Some(segs.iter().map(|&(a, _)| a).collect())
        } else {
            None
        }
    }

    /// Draws one member point. Interval regions use length-weighted
    /// uniform sampling; boxes sample each coordinate uniformly.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Point {
        use rand::Rng;
        if let Some(segs) = &self.intervals {
            let total: f64 = segs.iter().map(|&(a, b)| b - a).sum();
            if total == 0.0 {
                let idx = rng.gen_range(0..segs.len());
                return Point::scalar(segs[idx].0);
            }
            let mut t = rng.gen_range(0.0..=total);
            for &(a, b) in segs {
                let len = b - a;
                if t <= len || (a, b) == *segs.last().unwrap() {
                    return Point::scalar((a + t.min(len)).min(b));
                }
                t -= len;
            }
            unreachable!("segment selection covers total length");
        }
        sampling::uniform_point(&self.bounds, rng)
    }

    /// Deterministic representative points: interval endpoints and
    /// midpoints, or box corners and center.
    pub fn anchors(&self) -> Vec<Point> {
        if let Some(segs) = &self.intervals {
            let mut out = Vec::new();
            for &(a, b) in segs {
                out.push(Point::scalar(a));
                if b > a {
                    out.push(Point::scalar(0.5 * (a + b)));
                    out.push(Point::scalar(b));
                }
            }
            return out;
        }
        let mut out = vec![
            Point::new(self.bounds.iter().map(|&(lo, _)| lo).collect()).unwrap(),
            Point::new(self.bounds.iter().map(|&(_, hi)| hi).collect()).unwrap(),
            Point::new(self.bounds.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect()).unwrap(),
        ];
        out.dedup_by(|a, b| a == b);
        out
    }
}

/// Best upper bound found for the three-set distance, with the witness
/// triple that attains it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub value: f64,
    pub argmin: [Vec<f64>; 3],
    pub budget_used: usize,
    /// Local refinement converged below the step tolerance (or the
    /// estimate is an exact finite enumeration).
    pub refined: bool,
}

impl DistanceEstimate {
    pub fn argmin_points(&self) -> [Point; 3] {
        [
            Point::new(self.argmin[0].clone()).unwrap(),
            Point::new(self.argmin[1].clone()).unwrap(),
            Point::new(self.argmin[2].clone()).unwrap(),
        ]
    }
}

/// Golden-section minimization of a unimodal slice. Returns (argmin, min).
fn golden_min(
    f: &mut impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    xtol: f64,
    evals: &mut usize,
    budget: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    if b - a <= xtol {
        let m = 0.5 * (a + b);
        *evals += 1;
        return (m, f(m));
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    *evals += 2;
    while b - a > xtol && *evals < budget {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        *evals += 1;
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// One pass of cyclic coordinate descent over the three 1-D coordinates,
/// each minimized by golden section over every interval segment.
/// Returns true when the pass moved every coordinate by less than `tol`.
fn refine_triple(
    g: &GMetric,
    regions: [&Region; 3],
    current: &mut [f64; 3],
    value: &mut f64,
    tol: f64,
    evals: &mut usize,
    budget: usize,
) -> bool {
    let mut max_move: f64 = 0.0;
    for i in 0..3 {
        let segs = match regions[i].intervals() {
            Some(s) => s,
            None => continue,
        };
        let mut best_t = current[i];
        let mut best_v = *value;
        for &(a, b) in segs {
            let mut slice = |t: f64| {
                let mut c = *current;
                c[i] = t;
                g.eval(
                    &Point::scalar(c[0]),
                    &Point::scalar(c[1]),
                    &Point::scalar(c[2]),
                )
            };
            let xtol = tol * (1.0 + a.abs().max(b.abs()));
            let (t, v) = golden_min(&mut slice, a, b, xtol, evals, budget);
            if v < best_v {
                best_v = v;
                best_t = t;
            }
        }
        max_move = max_move.max((best_t - current[i]).abs());
        current[i] = best_t;
        *value = best_v;
    }
    max_move < tol * (1.0 + current.iter().fold(0.0f64, |m, c| m.max(c.abs())))
}

/// Estimates `G(A,B,C)` by seeded sampling followed by per-coordinate
/// golden-section refinement on interval regions. The returned value is
/// always an upper bound on the infimum, attained by `argmin`.
///
/// Finite point-set regions whose full product fits in the budget are
/// enumerated exactly.
pub fn g_set_distance(
    g: &GMetric,
    a: &Region,
    b: &Region,
    c: &Region,
    budget: usize,
    tol: f64,
    seed: u64,
) -> Result<DistanceEstimate> {
    assert!(budget >= 27, "distance budget must be at least 27");
    for r in [a, b, c] {
        if let Some(segs) = r.intervals() {
            if segs.is_empty() {
                return Err(Error::EmptyRegion(r.name.clone()));
            }
        }
    }

    let mut evals: usize = 0;
    let eval3 = |pa: f64, pb: f64, pc: f64, evals: &mut usize| {
        *evals += 1;
        g.eval(&Point::scalar(pa), &Point::scalar(pb), &Point::scalar(pc))
    };

    // exact enumeration for small finite products
    if let (Some(pa), Some(pb), Some(pc)) = (a.finite_points(), b.finite_points(), c.finite_points())
    {
        if pa.len() * pb.len() * pc.len() <= budget {
            let mut best = f64::INFINITY;
            let mut arg = [pa[0], pb[0], pc[0]];
            for &x in &pa {
                for &y in &pb {
                    for &z in &pc {
                        let v = eval3(x, y, z, &mut evals);
                        if v < best {
                            best = v;
                            arg = [x, y, z];
                        }
                    }
                }
            }
            return Ok(DistanceEstimate {
                value: best,
                argmin: [vec![arg[0]], vec![arg[1]], vec![arg[2]]],
                budget_used: evals,
                refined: true,
            });
        }
    }

    let one_dimensional = a.bounds.len() == 1 && b.bounds.len() == 1 && c.bounds.len() == 1;
    let mut rng = sampling::rng(seed);
    let mut best = f64::INFINITY;
    let mut arg: Option<[Point; 3]> = None;

    // deterministic anchors first: endpoints and midpoints cross product (capped)
    let (aa, ab, ac) = (a.anchors(), b.anchors(), c.anchors());
    'anchors: for pa in &aa {
        for pb in &ab {
            for pc in &ac {
                if evals + 1 > budget / 2 {
                    break 'anchors;
                }
                evals += 1;
                let v = g.eval(pa, pb, pc);
                if v < best {
                    best = v;
                    arg = Some([pa.clone(), pb.clone(), pc.clone()]);
                }
            }
        }
    }

    // random product samples for the rest of the exploration half
    while evals < budget / 2 {
        let pa = a.sample(&mut rng);
        let pb = b.sample(&mut rng);
        let pc = c.sample(&mut rng);
        evals += 1;
        let v = g.eval(&pa, &pb, &pc);
        if v < best {
            best = v;
            arg = Some([pa, pb, pc]);
        }
    }

    let mut arg = arg.expect("budget >= 27 guarantees at least one sample");
    let mut refined = false;

    if one_dimensional {
        let mut cur = [arg[0].x(), arg[1].x(), arg[2].x()];
        let mut val = best;
        for _ in 0..200 {
            if evals >= budget {
                break;
            }
            let converged = refine_triple(g, [a, b, c], &mut cur, &mut val, tol, &mut evals, budget);
            if converged {
                refined = true;
                break;
            }
        }
        if val < best {
            best = val;
            arg = [
                Point::scalar(cur[0]),
                Point::scalar(cur[1]),
                Point::scalar(cur[2]),
            ];
        } else if val <= best {
            refined = refined || val == best;
        }
    }

    Ok(DistanceEstimate {
        value: best,
        argmin: [
            arg[0].coords().to_vec(),
            arg[1].coords().to_vec(),
            arg[2].coords().to_vec(),
        ],
        budget_used: evals,
        refined,
    })
}

/// Sampled proximal sets: the member points seen to participate in a
/// triple within `threshold` of the estimated distance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProximalTriple {
    pub a0: Vec<Point>,
    pub b0: Vec<Point>,
    pub c0: Vec<Point>,
    pub threshold: f64,
}

/// For each sampled base point of each region, completes it to a triple
/// minimizing G over the other two regions and retains it when the
/// completed value stays within `threshold` of `dist.value`.
pub fn proximal_triple(
    g: &GMetric,
    a: &Region,
    b: &Region,
    c: &Region,
    dist: &DistanceEstimate,
    threshold: f64,
    budget: usize,
    seed: u64,
) -> Result<ProximalTriple> {
    let regions = [a, b, c];
    for r in regions {
        if r.intervals().map_or(false, |s| s.is_empty()) {
            return Err(Error::EmptyRegion(r.name.clone()));
        }
    }
    let mut rng = sampling::rng(seed);
    // budget split: each base point costs roughly one refinement run
    let per_region = (budget / 600).clamp(8, 400);
    let mut out: [Vec<Point>; 3] = [Vec::new(), Vec::new(), Vec::new()];

    for role in 0..3 {
        let region = regions[role];
        let mut bases = region.anchors();
        while bases.len() < per_region {
            bases.push(region.sample(&mut rng));
        }
        bases.truncate(per_region);

        for base in bases {
            if base.dim() != 1 {
                // completion solving is a 1-D facility; retain only exact hits
                let others: Vec<&Region> =
                    (0..3).filter(|&i| i != role).map(|i| regions[i]).collect();
                let mut r2 = sampling::rng(seed ^ 0x9e37);
                let p = others[0].sample(&mut r2);
                let q = others[1].sample(&mut r2);
                let v = g.eval(&base, &p, &q);
                if v <= dist.value + threshold {
                    out[role].push(base);
                }
                continue;
            }
            // coordinate-descent completion with the base coordinate pinned;
            // start from the base projected into each region so common
            // points are found immediately
            let mut cur = [0.0f64; 3];
            for i in 0..3 {
                cur[i] = if i == role {
                    base.x()
                } else {
                    regions[i]
                        .project_scalar(base.x())
                        .unwrap_or_else(|| regions[i].sample(&mut rng).x())
                };
            }
            let mut val = g.eval(
                &Point::scalar(cur[0]),
                &Point::scalar(cur[1]),
                &Point::scalar(cur[2]),
            );
            let mut evals = 0usize;
            for _ in 0..40 {
                let mut max_move: f64 = 0.0;
                for i in 0..3 {
                    if i == role {
                        continue;
                    }
                    if let Some(segs) = regions[i].intervals() {
                        let mut best_t = cur[i];
                        let mut best_v = val;
                        for &(lo, hi) in segs {
                            // vanishing tilt toward the base resolves flat
                            // slice minima instead of stalling on them
                            let tilt = 1e-12 * (1.0 + base.x().abs());
                            let mut slice = |t: f64| {
                                let mut cc = cur;
                                cc[i] = t;
                                g.eval(
                                    &Point::scalar(cc[0]),
                                    &Point::scalar(cc[1]),
                                    &Point::scalar(cc[2]),
                                ) + tilt * (t - base.x()).abs()
                            };
                            let xtol = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
                            let (t, _) = golden_min(&mut slice, lo, hi, xtol, &mut evals, 4000);
                            let mut cc = cur;
                            cc[i] = t;
                            let v = g.eval(
                                &Point::scalar(cc[0]),
                                &Point::scalar(cc[1]),
                                &Point::scalar(cc[2]),
                            );
                            if v < best_v {
                                best_v = v;
                                best_t = t;
                            }
                        }
                        max_move = max_move.max((best_t - cur[i]).abs());
                        cur[i] = best_t;
                        val = best_v;
                    }
                }
                if max_move < 1e-13 * (1.0 + cur.iter().fold(0.0f64, |m, c| m.max(c.abs()))) {
                    break;
                }
            }
            if val <= dist.value + threshold {
                out[role].push(base);
            }
        }
    }

    let [a0, b0, c0] = out;
    Ok(ProximalTriple {
        a0,
        b0,
        c0,
        threshold,
    })
}

/// Approximate test of `A = A_0, B = B_0, C = C_0` by sampled coverage:
/// every region sample must have a proximal-set point within
/// `coverage_tol` in the associated metric `d_G`.
pub fn is_proximal(
    g: &GMetric,
    a: &Region,
    b: &Region,
    c: &Region,
    pt: &ProximalTriple,
    coverage_tol: f64,
    probes: usize,
    seed: u64,
) -> bool {
    let mut rng = sampling::rng(seed);
    for (region, retained) in [(a, &pt.a0), (b, &pt.b0), (c, &pt.c0)] {
        if retained.is_empty() {
            return false;
        }
        let mut samples = region.anchors();
        while samples.len() < probes {
            samples.push(region.sample(&mut rng));
        }
        for s in samples.iter().take(probes.max(1)) {
            let nearest = retained
                .iter()
                .map(|p| g.d_g(s, p))
                .fold(f64::INFINITY, f64::min);
            if nearest > coverage_tol {
                return false;
            }
        }
    }
    true
}
