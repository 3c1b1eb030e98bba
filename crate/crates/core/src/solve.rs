//! Bracketed one-dimensional root finding over interval regions.
//!
//! Inverse steps of the iteration solve `f(t) = target` for `t` inside a
//! region given as a union of closed intervals. Each interval is scanned
//! on a subdivision grid; sign changes are bisected, and grid points
//! already within the residual tolerance count as roots (this covers
//! constant maps, where the residual never changes sign).

use crate::region::Region;

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Accept a root when `|f(t) - target|` falls below this.
    pub residual_tol: f64,
    /// Grid points per interval when hunting for brackets.
    pub subdivisions: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            residual_tol: 1e-10,
            subdivisions: 64,
        }
    }
}

/// A root together with its achieved residual.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub t: f64,
    pub residual: f64,
}

fn bisect(f: &dyn Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> Root {
    let mut flo = f(lo) - target;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid) - target;
        if fmid == 0.0 {
            return Root {
                t: mid,
                residual: 0.0,
            };
        }
        if (flo < 0.0) == (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Root {
        t,
        residual: (f(t) - target).abs(),
    }
}

/// All roots of `f(t) = target` with `t` in the region, deduplicated.
/// Returns an empty vector when the region has no interval form.
pub fn roots_in_region(
    f: &dyn Fn(f64) -> f64,
    target: f64,
    region: &Region,
    opts: SolveOptions,
) -> Vec<Root> {
    let segs = match region.intervals() {
        Some(s) => s,
        None => return Vec::new(),
    };
    let mut roots: Vec<Root> = Vec::new();
    let mut push = |r: Root, scale: f64| {
        let dup_tol = 1e-9 * (1.0 + scale);
        if !roots.iter().any(|q| (q.t - r.t).abs() <= dup_tol) {
            roots.push(r);
        }
    };

    for &(lo, hi) in segs {
        let scale = lo.abs().max(hi.abs());
        if lo == hi {
            let residual = (f(lo) - target).abs();
            if residual <= opts.residual_tol {
                push(Root { t: lo, residual }, scale);
            }
            continue;
        }
        let n = opts.subdivisions.max(2);
        let mut prev_t = lo;
        let mut prev_v = f(lo) - target;
        if prev_v.abs() <= opts.residual_tol {
            push(
                Root {
                    t: lo,
                    residual: prev_v.abs(),
                },
                scale,
            );
        }
        for i in 1..=n {
            let t = lo + (hi - lo) * i as f64 / n as f64;
            let v = f(t) - target;
            if v.abs() <= opts.residual_tol {
                push(Root { t, residual: v.abs() }, scale);
            } else if prev_v.abs() > opts.residual_tol && (prev_v < 0.0) != (v < 0.0) {
                push(bisect(f, target, prev_t, t), scale);
            }
            prev_t = t;
            prev_v = v;
        }
    }
    roots.sort_by(|a, b| a.t.total_cmp(&b.t));
    roots
}

/// The admissible root closest to `anchor`, if any root meets the
/// residual tolerance.
pub fn nearest_root(
    f: &dyn Fn(f64) -> f64,
    target: f64,
    region: &Region,
    anchor: f64,
    opts: SolveOptions,
) -> Option<Root> {
    roots_in_region(f, target, region, opts)
        .into_iter()
        .filter(|r| r.residual <= opts.residual_tol)
        .min_by(|p, q| {
            (p.t - anchor)
                .abs()
                .total_cmp(&(q.t - anchor).abs())
                .then(p.t.total_cmp(&q.t))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_both_sine_roots_and_picks_nearest() {
        let region = Region::from_intervals("C", vec![(0.0, 3.0)]);
        let f = |t: f64| 0.5 * t.sin();
        let target = 0.25 * 1.0f64.sin();
        let opts = SolveOptions::default();
        let roots = roots_in_region(&f, target, &region, opts);
        assert_eq!(roots.len(), 2);
        let expected = (0.5 * 1.0f64.sin()).asin();
        assert!((roots[0].t - expected).abs() < 1e-9);
        assert!((roots[1].t - (std::f64::consts::PI - expected)).abs() < 1e-9);

        let near = nearest_root(&f, target, &region, 1.0, opts).unwrap();
        assert!((near.t - expected).abs() < 1e-9);
    }

    #[test]
    fn constant_map_yields_grid_roots() {
        // f identically zero: every grid point solves f = 0
        let region = Region::from_intervals("C", vec![(0.0, 3.0)]);
        let f = |_: f64| 0.0;
        let near = nearest_root(&f, 0.0, &region, 1.03, SolveOptions::default()).unwrap();
        assert!((near.t - 1.03125).abs() < 1e-9); // nearest of 64 subdivisions
        assert_eq!(near.residual, 0.0);
    }

    #[test]
    fn degenerate_points_are_scanned() {
        let region = Region::from_points("A", vec![1.0, 2.0, 4.0]);
        let f = |t: f64| 3.0 * t;
        let near = nearest_root(&f, 6.0, &region, 0.0, SolveOptions::default()).unwrap();
        assert_eq!(near.t, 2.0);
        assert!(nearest_root(&f, 5.0, &region, 0.0, SolveOptions::default()).is_none());
    }

    #[test]
    fn no_interval_form_means_no_roots() {
        let region = Region::from_membership("R", vec![(0.0, 1.0)], |_| true);
        let f = |t: f64| t;
        assert!(roots_in_region(&f, 0.5, &region, SolveOptions::default()).is_empty());
    }
}
