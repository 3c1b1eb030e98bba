//! Seeded sampling helpers shared by the checkers.
//!
//! All sampling is deterministic given the seed; repeated runs of any
//! check produce identical reports.

use crate::point::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hybrid relative-absolute comparison threshold: `tol * (1 + magnitude)`.
pub fn tol_at(tol: f64, magnitude: f64) -> f64 {
    tol * (1.0 + magnitude.abs())
}

/// Euclidean separation of two points, used by distinctness guards.
pub fn separation(x: &Point, y: &Point) -> f64 {
    x.coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub fn uniform_point(bounds: &[(f64, f64)], rng: &mut ChaCha8Rng) -> Point {
    let coords = bounds
        .iter()
        .map(|&(lo, hi)| {
            if lo == hi {
                lo
            } else {
                rng.gen_range(lo..=hi)
            }
        })
        .collect();
    Point::new(coords).expect("bounds generate finite coordinates")
}

/// Quadruples (x, y, z, a) over a bounding box: deterministic corner and
/// degenerate cases first (all-equal and two-equal tuples are where the
/// strict axioms and symmetry live), then uniform draws with a slice of
/// collapsed coordinates mixed in.
pub fn quadruples(bounds: &[(f64, f64)], n: usize, seed: u64) -> Vec<[Point; 4]> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(n);

    let corner = |t: f64| -> Point {
        Point::new(bounds.iter().map(|&(lo, hi)| lo + t * (hi - lo)).collect()).unwrap()
    };
    let lo = corner(0.0);
    let hi = corner(1.0);
    let mid = corner(0.5);
    let deterministic: Vec<[Point; 4]> = vec![
        [lo.clone(), lo.clone(), lo.clone(), lo.clone()],
        [hi.clone(), hi.clone(), hi.clone(), hi.clone()],
        [mid.clone(), mid.clone(), mid.clone(), mid.clone()],
        [lo.clone(), lo.clone(), hi.clone(), mid.clone()],
        [lo.clone(), hi.clone(), hi.clone(), mid.clone()],
        [lo.clone(), hi.clone(), lo.clone(), mid.clone()],
        [lo.clone(), mid.clone(), hi.clone(), lo.clone()],
        [hi.clone(), mid.clone(), lo.clone(), hi.clone()],
    ];
    out.extend(deterministic.into_iter().take(n));

    while out.len() < n {
        let mut q = [
            uniform_point(bounds, &mut rng),
            uniform_point(bounds, &mut rng),
            uniform_point(bounds, &mut rng),
            uniform_point(bounds, &mut rng),
        ];
        // every tenth tuple collapses one pair to probe degenerate configurations
        match out.len() % 10 {
            3 => q[1] = q[0].clone(),
            6 => q[2] = q[1].clone(),
            9 => q[2] = q[0].clone(),
            _ => {}
        }
        out.push(q);
    }
    out
}

/// Triples are quadruples with the probe point dropped.
pub fn triples(bounds: &[(f64, f64)], n: usize, seed: u64) -> Vec<[Point; 3]> {
    quadruples(bounds, n, seed)
        .into_iter()
        .map(|[x, y, z, _]| [x, y, z])
        .collect()
}

/// Pairs for symmetry checks.
pub fn pairs(bounds: &[(f64, f64)], n: usize, seed: u64) -> Vec<[Point; 2]> {
    quadruples(bounds, n, seed)
        .into_iter()
        .map(|[x, y, _, _]| [x, y])
        .collect()
}

/// Nonnegative weight triples summing to one: fixed corner cases first,
/// then uniform draws from the simplex.
pub fn weight_triples(n: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 3]> {
    let mut out = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.5, 0.5, 0.0],
        [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
    ];
    out.truncate(n);
    while out.len() < n {
        let mut u = rng.gen_range(0.0..=1.0f64);
        let mut v = rng.gen_range(0.0..=1.0f64);
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        out.push([u, v - u, 1.0 - v]);
    }
    out
}
