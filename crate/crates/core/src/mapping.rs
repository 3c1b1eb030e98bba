//! Mapping roles and sampled certification of the contraction systems.
//!
//! The triple (T; S; K) acts on the union of three regions A, B, C with
//! tag-aware evaluation: applying a map to a point carries the point's
//! region tag along the map's declared rotation, which is what gives
//! piecewise-defined maps a single meaning on overlapping regions.

use crate::error::{Error, Result};
use crate::metric::GMetric;
use crate::point::Point;
use crate::region::{DistanceEstimate, Region};
use crate::sampling::{self, tol_at};
use crate::solve::{nearest_root, SolveOptions};
use crate::witness::Witness;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Region tag of a point: which of the three roles it currently plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionLabel {
    A,
    B,
    C,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::A => "A",
            RegionLabel::B => "B",
            RegionLabel::C => "C",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a map rotates the three regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapRole {
    /// A -> B -> C -> A.
    RightCyclic,
    /// A -> C -> B -> A.
    LeftCyclic,
    /// Each region to itself.
    Noncyclic,
}

impl MapRole {
    /// Region receiving the image of a point tagged `tag`.
    pub fn image(self, tag: RegionLabel) -> RegionLabel {
        use RegionLabel::*;
        match (self, tag) {
            (MapRole::RightCyclic, A) => B,
            (MapRole::RightCyclic, B) => C,
            (MapRole::RightCyclic, C) => A,
            (MapRole::LeftCyclic, A) => C,
            (MapRole::LeftCyclic, C) => B,
            (MapRole::LeftCyclic, B) => A,
            (MapRole::Noncyclic, t) => t,
        }
    }

    /// Region whose image lands in `tag`: the inverse rotation.
    pub fn preimage(self, tag: RegionLabel) -> RegionLabel {
        use RegionLabel::*;
        match (self, tag) {
            (MapRole::RightCyclic, B) => A,
            (MapRole::RightCyclic, C) => B,
            (MapRole::RightCyclic, A) => C,
            (MapRole::LeftCyclic, C) => A,
            (MapRole::LeftCyclic, B) => C,
            (MapRole::LeftCyclic, A) => B,
            (MapRole::Noncyclic, t) => t,
        }
    }
}

type TaggedFn = dyn Fn(&Point, RegionLabel) -> Point + Send + Sync;
type BranchInverse = dyn Fn(&Point, &Region, RegionLabel) -> Option<Point> + Send + Sync;

/// One self-map of A u B u C with declared role metadata and an optional
/// per-region inverse solver.
#[derive(Clone)]
pub struct SelfMap {
    pub name: String,
    pub role: MapRole,
    forward: Arc<TaggedFn>,
    branch_inverse: Option<Arc<BranchInverse>>,
}

impl std::fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SelfMap({}, {:?})", self.name, self.role)
    }
}

impl SelfMap {
    pub fn new(
        name: impl Into<String>,
        role: MapRole,
        forward: impl Fn(&Point, RegionLabel) -> Point + Send + Sync + 'static,
    ) -> Self {
        SelfMap {
            name: name.into(),
            role,
            forward: Arc::new(forward),
            branch_inverse: None,
        }
    }

    /// Tag-independent scalar map, the common case.
    pub fn from_scalar_fn(
        name: impl Into<String>,
        role: MapRole,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SelfMap::new(name, role, move |p: &Point, _| Point::scalar(f(p.x())))
    }

    pub fn with_branch_inverse(
        mut self,
        inv: impl Fn(&Point, &Region, RegionLabel) -> Option<Point> + Send + Sync + 'static,
    ) -> Self {
        self.branch_inverse = Some(Arc::new(inv));
        self
    }

    /// Image of a tagged point.
    pub fn apply(&self, p: &Point, tag: RegionLabel) -> Point {
        (self.forward)(p, tag)
    }

    /// Image together with the rotated tag.
    pub fn apply_tagged(&self, p: &Point, tag: RegionLabel) -> (Point, RegionLabel) {
        (self.apply(p, tag), self.role.image(tag))
    }

    /// Solves `self(t) = target` for `t` in `region` (tagged `tag`),
    /// preferring the declared branch inverse, then 1-D bracketing.
    /// `anchor` breaks ties among multiple roots.
    pub fn invert_into(
        &self,
        target: &Point,
        region: &Region,
        tag: RegionLabel,
        anchor: f64,
        opts: SolveOptions,
    ) -> Result<Option<(Point, f64)>> {
        if let Some(inv) = &self.branch_inverse {
            if let Some(p) = inv(target, region, tag) {
                let residual = crate::sampling::separation(&self.apply(&p, tag), target);
                return Ok(Some((p, residual)));
            }
            return Ok(None);
        }
        if region.intervals().is_none() || target.dim() != 1 {
            return Err(Error::InverseUnavailable {
                map: self.name.clone(),
                region: region.name.clone(),
            });
        }
        let fwd = self.forward.clone();
        let f = move |t: f64| fwd(&Point::scalar(t), tag).x();
        Ok(nearest_root(&f, target.x(), region, anchor, opts)
            .map(|r| (Point::scalar(r.t), r.residual)))
    }
}

/// The three regions in role order.
#[derive(Debug, Clone)]
pub struct RegionTriple {
    pub a: Region,
    pub b: Region,
    pub c: Region,
}

impl RegionTriple {
    pub fn get(&self, label: RegionLabel) -> &Region {
        match label {
            RegionLabel::A => &self.a,
            RegionLabel::B => &self.b,
            RegionLabel::C => &self.c,
        }
    }
}

/// A full scenario triple: maps, regions, the G-metric, and the
/// estimated three-set distance.
#[derive(Debug, Clone)]
pub struct RlnTriple {
    pub t: SelfMap,
    pub s: SelfMap,
    pub k: SelfMap,
    pub regions: RegionTriple,
    pub g: GMetric,
    pub gabc: DistanceEstimate,
}

/// What a certificate claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Role,
    Rln,
    Contraction,
    SemiContraction,
    LeftCyclicContraction,
    AntiLipschitz,
    Commuting,
    InclusionChain,
}

/// Outcome of a sampled verification: either an estimated constant with
/// evidence or a concrete violation witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub passed: bool,
    /// Estimated constant (smallest feasible r, or the anti-Lipschitz c).
    pub constant: Option<f64>,
    /// Worst-case slack over the samples; interpretation depends on kind.
    pub margin: f64,
    pub witness: Option<Witness>,
    pub samples_used: usize,
}

/// Tuples from A x B x C. Finite products that fit in the budget are
/// enumerated exactly; otherwise points are drawn from the samplers.
pub fn product_samples(regions: &RegionTriple, n: usize, seed: u64) -> Vec<[Point; 3]> {
    if let (Some(pa), Some(pb), Some(pc)) = (
        regions.a.finite_points(),
        regions.b.finite_points(),
        regions.c.finite_points(),
    ) {
        if pa.len() * pb.len() * pc.len() <= n {
            let mut out = Vec::with_capacity(pa.len() * pb.len() * pc.len());
            for &x in &pa {
                for &y in &pb {
                    for &z in &pc {
                        out.push([Point::scalar(x), Point::scalar(y), Point::scalar(z)]);
                    }
                }
            }
            return out;
        }
    }
    let mut rng = sampling::rng(seed);
    (0..n)
        .map(|_| {
            [
                regions.a.sample(&mut rng),
                regions.b.sample(&mut rng),
                regions.c.sample(&mut rng),
            ]
        })
        .collect()
}

/// Per-role consistency of a map against sampled region images.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoleClassification {
    /// Roles consistent with every sampled image.
    pub consistent: Vec<MapRole>,
    /// First failure witness per inconsistent role.
    pub witnesses: Vec<(MapRole, Witness)>,
    pub samples_used: usize,
}

impl RoleClassification {
    /// The unique consistent role, if exactly one.
    pub fn unique(&self) -> Option<MapRole> {
        if self.consistent.len() == 1 {
            Some(self.consistent[0])
        } else {
            None
        }
    }

    pub fn is_consistent_with(&self, role: MapRole) -> bool {
        self.consistent.contains(&role)
    }
}

/// Classifies a map by checking, for each candidate role, whether every
/// sampled image lands in the region the role dictates.
pub fn classify_role(
    m: &SelfMap,
    regions: &RegionTriple,
    samples_per_region: usize,
    seed: u64,
) -> Result<RoleClassification> {
    let mut rng = sampling::rng(seed);
    let labels = [RegionLabel::A, RegionLabel::B, RegionLabel::C];
    let mut sampled: Vec<(Point, RegionLabel)> = Vec::new();
    for &label in &labels {
        let region = regions.get(label);
        let mut pts = region.anchors();
        while pts.len() < samples_per_region {
            pts.push(region.sample(&mut rng));
        }
        pts.truncate(samples_per_region.max(1));
        if pts.is_empty() {
            return Err(Error::EmptyRegion(region.name.clone()));
        }
        sampled.extend(pts.into_iter().map(|p| (p, label)));
    }

    let mut consistent = Vec::new();
    let mut witnesses = Vec::new();
    for role in [MapRole::RightCyclic, MapRole::LeftCyclic, MapRole::Noncyclic] {
        let mut failure: Option<Witness> = None;
        for (p, tag) in &sampled {
            let image = m.apply(p, *tag);
            let target = regions.get(role.image(*tag));
            if !target.contains(&image) {
                failure = Some(Witness::new(
                    vec![p.coords().to_vec(), image.coords().to_vec()],
                    1.0,
                    0.0,
                    format!(
                        "{}({}-tagged point) lands outside region {}",
                        m.name, tag, target.name
                    ),
                ));
                break;
            }
        }
        match failure {
            None => consistent.push(role),
            Some(w) => witnesses.push((role, w)),
        }
    }
    Ok(RoleClassification {
        consistent,
        witnesses,
        samples_used: sampled.len(),
    })
}

/// Certifies that T is right cyclic, S left cyclic, and K noncyclic on
/// the sampled regions.
pub fn certify_rln(triple: &RlnTriple, samples_per_region: usize, seed: u64) -> Result<Certificate> {
    let mut witness = None;
    let mut samples_used = 0;
    for (map, want) in [
        (&triple.t, MapRole::RightCyclic),
        (&triple.s, MapRole::LeftCyclic),
        (&triple.k, MapRole::Noncyclic),
    ] {
        let cls = classify_role(map, &triple.regions, samples_per_region, seed)?;
        samples_used += cls.samples_used;
        if !cls.is_consistent_with(want) {
            if witness.is_none() {
                witness = cls
                    .witnesses
                    .into_iter()
                    .find(|(r, _)| *r == want)
                    .map(|(_, w)| w);
            }
        }
    }
    Ok(Certificate {
        kind: CertificateKind::Rln,
        passed: witness.is_none(),
        constant: None,
        margin: 0.0,
        witness,
        samples_used,
    })
}

/// Shared ratio analysis: the smallest feasible constant for a system of
/// per-sample constraints `lhs_i <= r * rhs_i + (1 - r) * floor`.
struct RatioTracker {
    tol: f64,
    floor: f64,
    required: f64,
    witness: Option<Witness>,
    constrained: usize,
}

impl RatioTracker {
    fn new(tol: f64, floor: f64) -> Self {
        RatioTracker {
            tol,
            floor,
            required: 0.0,
            witness: None,
            constrained: 0,
        }
    }

    /// Constraint `lhs <= r * rhs + (1-r) * floor`, i.e.
    /// `r >= (lhs - floor) / (rhs - floor)` when the denominator is
    /// meaningful. Near-floor denominators with a real numerator force
    /// r >= 1 and are recorded as a witness.
    fn constrain(&mut self, lhs: f64, rhs: f64, detail: &str, points: &[&Point]) {
        let num = lhs - self.floor;
        let den = rhs - self.floor;
        if den > tol_at(self.tol, rhs) {
            let r = (num / den).max(0.0);
            self.constrained += 1;
            if r > self.required {
                self.required = r;
                self.witness = Some(Witness::new(
                    points.iter().map(|p| p.coords().to_vec()).collect(),
                    lhs,
                    rhs,
                    detail.to_string(),
                ));
            }
        } else if num > tol_at(self.tol, lhs) {
            // degenerate sample: denominator at the floor, numerator above it
            self.constrained += 1;
            self.required = f64::INFINITY;
            self.witness = Some(Witness::new(
                points.iter().map(|p| p.coords().to_vec()).collect(),
                lhs,
                rhs,
                format!("{detail} (denominator at the distance floor)"),
            ));
        }
        // both at the floor: vacuous, skipped
    }
}

fn contraction_certificate(
    kind: CertificateKind,
    required: f64,
    witness: Option<Witness>,
    constrained: usize,
    samples: usize,
    tol: f64,
) -> Certificate {
    let passed = required + tol < 1.0;
    Certificate {
        kind,
        passed,
        constant: if required.is_finite() {
            Some(required)
        } else {
            None
        },
        margin: 1.0 - required,
        witness: if passed { None } else { witness },
        samples_used: samples.max(constrained),
    }
}

/// Certifies the two-inequality contraction system
/// `G(Sx,Sy,Sz) <= r G(Kx,Ky,Kz) + (1-r) G(A,B,C)` and
/// `G(Tx,Ty,Tz) <= r G(Sx,Sy,Sz)` over sampled (x,y,z) in A x B x C,
/// returning the smallest sampled-feasible r.
pub fn certify_tripartite_contraction(
    triple: &RlnTriple,
    samples: &[[Point; 3]],
    tol: f64,
) -> Certificate {
    let g = &triple.g;
    let floor = triple.gabc.value;
    let mut first = RatioTracker::new(tol, floor);
    let mut second = RatioTracker::new(tol, 0.0);
    let tags = [RegionLabel::A, RegionLabel::B, RegionLabel::C];

    for [x, y, z] in samples {
        let sx = triple.s.apply(x, tags[0]);
        let sy = triple.s.apply(y, tags[1]);
        let sz = triple.s.apply(z, tags[2]);
        let kx = triple.k.apply(x, tags[0]);
        let ky = triple.k.apply(y, tags[1]);
        let kz = triple.k.apply(z, tags[2]);
        let tx = triple.t.apply(x, tags[0]);
        let ty = triple.t.apply(y, tags[1]);
        let tz = triple.t.apply(z, tags[2]);

        let gs = g.eval(&sx, &sy, &sz);
        let gk = g.eval(&kx, &ky, &kz);
        let gt = g.eval(&tx, &ty, &tz);

        first.constrain(
            gs,
            gk,
            "G(Sx,Sy,Sz) <= r G(Kx,Ky,Kz) + (1-r) G(A,B,C)",
            &[x, y, z],
        );
        second.constrain(gt, gs, "G(Tx,Ty,Tz) <= r G(Sx,Sy,Sz)", &[x, y, z]);
    }

    let (required, witness) = if first.required >= second.required {
        (first.required, first.witness)
    } else {
        (second.required, second.witness)
    };
    contraction_certificate(
        CertificateKind::Contraction,
        required,
        witness,
        first.constrained + second.constrained,
        samples.len(),
        tol,
    )
}

/// Certifies the semi-contraction system, which replaces the pure S and
/// T values with the mixed value `G(Tx, Sy, Kz)`:
/// `G(Tx,Sy,Kz) <= r G(Kx,Ky,Kz) + (1-r) G(A,B,C)` and
/// `G(Sx,Sy,Sz) <= r G(Tx,Sy,Kz)`.
pub fn certify_semi_contraction(
    triple: &RlnTriple,
    samples: &[[Point; 3]],
    tol: f64,
) -> Certificate {
    let g = &triple.g;
    let floor = triple.gabc.value;
    let mut first = RatioTracker::new(tol, floor);
    let mut second = RatioTracker::new(tol, 0.0);
    let tags = [RegionLabel::A, RegionLabel::B, RegionLabel::C];

    for [x, y, z] in samples {
        let tx = triple.t.apply(x, tags[0]);
        let sy = triple.s.apply(y, tags[1]);
        let kz = triple.k.apply(z, tags[2]);
        let mixed = g.eval(&tx, &sy, &kz);

        let kx = triple.k.apply(x, tags[0]);
        let ky = triple.k.apply(y, tags[1]);
        let gk = g.eval(&kx, &ky, &kz);

        let sx = triple.s.apply(x, tags[0]);
        let sz = triple.s.apply(z, tags[2]);
        let gs = g.eval(&sx, &sy, &sz);

        first.constrain(
            mixed,
            gk,
            "G(Tx,Sy,Kz) <= r G(Kx,Ky,Kz) + (1-r) G(A,B,C)",
            &[x, y, z],
        );
        second.constrain(gs, mixed, "G(Sx,Sy,Sz) <= r G(Tx,Sy,Kz)", &[x, y, z]);
    }

    let (required, witness) = if first.required >= second.required {
        (first.required, first.witness)
    } else {
        (second.required, second.witness)
    };
    contraction_certificate(
        CertificateKind::SemiContraction,
        required,
        witness,
        first.constrained + second.constrained,
        samples.len(),
        tol,
    )
}

/// Certifies `G(Sx,Sy,Sz) <= r G(x,y,z)` for a left cyclic map alone.
pub fn certify_left_cyclic_contraction(
    s: &SelfMap,
    regions: &RegionTriple,
    g: &GMetric,
    samples: &[[Point; 3]],
    tol: f64,
) -> Result<Certificate> {
    let cls = classify_role(s, regions, 32, 0x5eed)?;
    if !cls.is_consistent_with(MapRole::LeftCyclic) {
        let witness = cls
            .witnesses
            .into_iter()
            .find(|(r, _)| *r == MapRole::LeftCyclic)
            .map(|(_, w)| w);
        return Ok(Certificate {
            kind: CertificateKind::LeftCyclicContraction,
            passed: false,
            constant: None,
            margin: 0.0,
            witness,
            samples_used: samples.len(),
        });
    }

    let tags = [RegionLabel::A, RegionLabel::B, RegionLabel::C];
    let mut best: Option<(f64, Witness)> = None;
    let mut constrained = 0usize;
    for [x, y, z] in samples {
        let base = g.eval(x, y, z);
        if base <= tol_at(tol, base) {
            continue;
        }
        constrained += 1;
        let sx = s.apply(x, tags[0]);
        let sy = s.apply(y, tags[1]);
        let sz = s.apply(z, tags[2]);
        let ratio = g.eval(&sx, &sy, &sz) / base;
        if best.as_ref().map_or(true, |(r, _)| ratio > *r) {
            best = Some((
                ratio,
                Witness::new(
                    vec![x.coords().to_vec(), y.coords().to_vec(), z.coords().to_vec()],
                    g.eval(&sx, &sy, &sz),
                    base,
                    "G(Sx,Sy,Sz) <= r G(x,y,z)",
                ),
            ));
        }
    }
    let (ratio, witness) = best.ok_or(Error::AllSamplesDegenerate)?;
    let passed = ratio + tol < 1.0;
    Ok(Certificate {
        kind: CertificateKind::LeftCyclicContraction,
        passed,
        constant: Some(ratio),
        margin: 1.0 - ratio,
        witness: if passed { None } else { Some(witness) },
        samples_used: constrained,
    })
}

/// Estimates the smallest anti-Lipschitz constant of K:
/// `G(x,y,z) <= c G(Kx,Ky,Kz)`. An unbounded ratio (denominator at zero
/// with a real numerator) is reported as a witness, not an error.
pub fn certify_anti_lipschitz(
    k: &SelfMap,
    regions: &RegionTriple,
    g: &GMetric,
    samples: &[[Point; 3]],
    tol: f64,
) -> Certificate {
    let _ = regions;
    let tags = [RegionLabel::A, RegionLabel::B, RegionLabel::C];
    let mut c_hat: f64 = 0.0;
    let mut witness = None;
    let mut constrained = 0usize;
    for [x, y, z] in samples {
        let num = g.eval(x, y, z);
        let kx = k.apply(x, tags[0]);
        let ky = k.apply(y, tags[1]);
        let kz = k.apply(z, tags[2]);
        let den = g.eval(&kx, &ky, &kz);
        if den > tol_at(tol, den) {
            constrained += 1;
            c_hat = c_hat.max(num / den);
        } else if num > tol_at(tol, num) {
            witness = Some(Witness::new(
                vec![x.coords().to_vec(), y.coords().to_vec(), z.coords().to_vec()],
                num,
                den,
                "G(x,y,z) <= c G(Kx,Ky,Kz): collapsed denominator, ratio unbounded",
            ));
            break;
        }
    }
    Certificate {
        kind: CertificateKind::AntiLipschitz,
        passed: witness.is_none(),
        constant: if witness.is_none() { Some(c_hat) } else { None },
        margin: 0.0,
        witness,
        samples_used: constrained,
    }
}

/// Checks that S and K commute on A u C: `d_G(K(Sx), S(Kx)) <= tol`.
pub fn check_commuting(
    s: &SelfMap,
    k: &SelfMap,
    regions: &RegionTriple,
    g: &GMetric,
    samples_per_region: usize,
    seed: u64,
    tol: f64,
) -> Certificate {
    let mut rng = sampling::rng(seed);
    let mut worst: f64 = 0.0;
    let mut witness = None;
    let mut used = 0usize;
    for label in [RegionLabel::A, RegionLabel::C] {
        let region = regions.get(label);
        let mut pts = region.anchors();
        while pts.len() < samples_per_region {
            pts.push(region.sample(&mut rng));
        }
        for p in pts.into_iter().take(samples_per_region.max(1)) {
            used += 1;
            let (sp, s_tag) = s.apply_tagged(&p, label);
            let ks = k.apply(&sp, s_tag);
            let (kp, k_tag) = k.apply_tagged(&p, label);
            let sk = s.apply(&kp, k_tag);
            let dev = g.d_g(&ks, &sk);
            worst = worst.max(dev);
            if dev > tol_at(tol, dev) && witness.is_none() {
                witness = Some(Witness::new(
                    vec![p.coords().to_vec(), ks.coords().to_vec(), sk.coords().to_vec()],
                    dev,
                    0.0,
                    "d_G(K(Sx), S(Kx)) = 0 on A u C",
                ));
            }
        }
    }
    Certificate {
        kind: CertificateKind::Commuting,
        passed: witness.is_none(),
        constant: None,
        margin: -worst,
        witness,
        samples_used: used,
    }
}

/// Checks the six solvability families behind the iteration: for each
/// sampled x in each region, the value T(x) must be reachable as S(c)
/// from the S-preimage region and as K(b) from the K-preimage region.
/// Solvability is established constructively through the inverse solver.
pub fn check_inclusion_chain(
    triple: &RlnTriple,
    samples_per_region: usize,
    seed: u64,
    opts: SolveOptions,
) -> Result<Certificate> {
    let mut rng = sampling::rng(seed);
    let mut worst_residual: f64 = 0.0;
    let mut witness = None;
    let mut used = 0usize;

    for label in [RegionLabel::A, RegionLabel::B, RegionLabel::C] {
        let region = triple.regions.get(label);
        let mut pts = region.anchors();
        while pts.len() < samples_per_region {
            pts.push(region.sample(&mut rng));
        }
        pts.truncate(samples_per_region.max(1));
        if pts.is_empty() {
            return Err(Error::EmptyRegion(region.name.clone()));
        }

        for p in pts {
            let (target, target_tag) = triple.t.apply_tagged(&p, label);
            used += 1;
            for map in [&triple.s, &triple.k] {
                let pre_tag = map.role.preimage(target_tag);
                let pre_region = triple.regions.get(pre_tag);
                let solved =
                    map.invert_into(&target, pre_region, pre_tag, target.x(), opts)?;
                match solved {
                    Some((point, residual)) => {
                        worst_residual = worst_residual.max(residual);
                        if !pre_region.contains(&point) && witness.is_none() {
                            witness = Some(Witness::new(
                                vec![p.coords().to_vec(), point.coords().to_vec()],
                                1.0,
                                0.0,
                                format!(
                                    "{}-inverse of T(x) escaped region {}",
                                    map.name, pre_region.name
                                ),
                            ));
                        }
                    }
                    None => {
                        if witness.is_none() {
                            witness = Some(Witness::new(
                                vec![p.coords().to_vec(), target.coords().to_vec()],
                                f64::INFINITY,
                                opts.residual_tol,
                                format!(
                                    "T(x) unreachable: no {} in region {} with {}(t) = T(x)",
                                    map.name, pre_region.name, map.name
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    Ok(Certificate {
        kind: CertificateKind::InclusionChain,
        passed: witness.is_none(),
        constant: None,
        margin: -worst_residual,
        witness,
        samples_used: used,
    })
}
