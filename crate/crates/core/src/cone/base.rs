use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::point::{norm_inf, Point, Tolerances};
use super::rep::ConeRep;
use super::seminorm::SeminormSpec;
use crate::error::{Error, Result};
use crate::par::stream_rng;

const BASE_SEED: u64 = 0x5eed_ba5e;
const REFINE_STEPS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Points are the normalised generators; hulls built from them are exact.
    ExactVertices,
    Sampled,
}

/// Points of `{y ∈ K : ψ(y) = 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseSet {
    pub points: Vec<Point>,
    pub exactness: Exactness,
    pub seminorm: SeminormSpec,
}

impl BaseSet {
    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::ExactVertices
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(|p| p.dim())
    }
}

/// Default number of sampled sphere directions in dimension `n`.
pub fn default_density(n: usize) -> usize {
    64 * n
}

/// Normlike-base of `cone` under `psi`.
///
/// Generated, ray-union and orthant cones yield their normalised generators.
/// Inequality representations are sampled with `density` directions (use
/// [`default_density`]), augmented by boundary points found by bisection.
pub fn normlike_base(cone: &ConeRep, psi: &SeminormSpec, density: usize, tol: &Tolerances) -> Result<BaseSet> {
    let n = cone.dim();
    psi.validate(n)?;
    if let Some(gens) = cone.generators() {
        let points = gens
            .iter()
            .map(|g| normalize(psi, g, tol))
            .collect::<Result<Vec<_>>>()?;
        return Ok(BaseSet {
            points,
            exactness: Exactness::ExactVertices,
            seminorm: psi.clone(),
        });
    }

    check_kernel(cone, psi, n, tol)?;

    let dirs = sphere_directions(n, density.max(1));
    let mut members = Vec::new();
    let mut outside = Vec::new();
    for d in dirs {
        if cone.contains(&d, tol)? {
            members.push(d);
        } else {
            outside.push(d);
        }
    }

    let mut points = Vec::with_capacity(members.len() + outside.len());
    for d in &members {
        points.push(normalize(psi, d, tol)?);
    }

    if !members.is_empty() && !outside.is_empty() {
        let center = pick_center(cone, &members);
        for d in &outside {
            if let Some(b) = refine_boundary(cone, &center, d, tol)? {
                points.push(normalize(psi, &b, tol)?);
            }
        }
    }

    Ok(BaseSet {
        points: dedup(points, 1e-9),
        exactness: Exactness::Sampled,
        seminorm: psi.clone(),
    })
}

/// Base points whose convex hull approximates `conv B_K(ψ)`.
///
/// Normalised generators span the hull exactly only when ψ is linear on the
/// cone. For convex generator cones this is probed at the midpoint of every
/// generator pair (a convex function equal to 1 at both ends and at the
/// midpoint is constant on the segment); when it fails, normalised positive
/// combinations are added and the base is flagged `Sampled`.
pub fn hull_base(cone: &ConeRep, psi: &SeminormSpec, density: usize, tol: &Tolerances) -> Result<BaseSet> {
    let mut base = normlike_base(cone, psi, density, tol)?;
    if !base.is_exact() || !cone.is_convex() || base.points.len() < 2 {
        return Ok(base);
    }
    let pts = base.points.clone();
    let m = pts.len();
    let curved = (0..m).any(|i| {
        (i + 1..m).any(|j| {
            let mid = pts[i].add(&pts[j]).scale(0.5);
            (psi.eval_unchecked(&mid) - 1.0).abs() > 1e-12
        })
    });
    if !curved {
        return Ok(base);
    }
    let mut extra = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in 1..8 {
                let w = k as f64 / 8.0;
                extra.push(pts[i].scale(w).add(&pts[j].scale(1.0 - w)));
            }
        }
    }
    let mut rng = stream_rng(BASE_SEED, 0x4855_4c4c);
    for _ in 0..density {
        let mut z = Point::zeros(pts[0].dim());
        for p in &pts {
            z = z.axpy(rng.random_range(0.0..1.0f64), p);
        }
        extra.push(z);
    }
    for z in extra {
        if z.norm_inf() > 0.0 {
            base.points.push(normalize(psi, &z, tol)?);
        }
    }
    base.points = dedup(std::mem::take(&mut base.points), 1e-9);
    base.exactness = Exactness::Sampled;
    Ok(base)
}

fn normalize(psi: &SeminormSpec, g: &Point, tol: &Tolerances) -> Result<Point> {
    let v = psi.eval_unchecked(g);
    if v <= tol.eps_mem * norm_inf(g).max(1e-300) {
        return Err(Error::DegenerateSeminorm { direction: g.clone() });
    }
    Ok(g.scale(1.0 / v))
}

/// Rejects cones that contain a nonzero direction on which ψ vanishes.
fn check_kernel(cone: &ConeRep, psi: &SeminormSpec, n: usize, tol: &Tolerances) -> Result<()> {
    let ker = psi.kernel(n);
    if ker.is_empty() {
        return Ok(());
    }
    let mut probes: Vec<Point> = Vec::new();
    for v in &ker {
        probes.push(v.clone());
        probes.push(v.neg());
    }
    if ker.len() > 1 {
        let mut rng = stream_rng(BASE_SEED, u64::MAX);
        for _ in 0..64 * ker.len() {
            let mut p = Point::zeros(n);
            for v in &ker {
                let c: f64 = rng.sample(StandardNormal);
                p = p.axpy(c, v);
            }
            probes.push(p);
        }
    }
    for p in probes {
        let unit = p.scale(1.0 / p.norm_inf().max(1e-300));
        if cone.contains(&unit, tol)? {
            return Err(Error::DegenerateSeminorm { direction: unit });
        }
    }
    Ok(())
}

/// Deterministic unit directions covering the sphere.
pub fn sphere_directions(n: usize, count: usize) -> Vec<Point> {
    let mut out = Vec::new();
    if n == 1 {
        return vec![Point::raw(vec![1.0]), Point::raw(vec![-1.0])];
    }
    if n == 2 {
        for k in 0..count {
            let t = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
            out.push(Point::raw(vec![snap(t.cos()), snap(t.sin())]));
        }
    } else {
        let mut rng = stream_rng(BASE_SEED, n as u64);
        for _ in 0..count {
            let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                out.push(Point::raw(v.into_iter().map(|x| x / norm).collect()));
            }
        }
    }
    for i in 0..n {
        out.push(Point::unit(n, i));
        out.push(Point::unit(n, i).neg());
    }
    if n <= 4 {
        for mask in 0..(1u32 << n) {
            let v = (0..n).map(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 }).collect();
            out.push(Point::raw(v));
        }
    }
    out
}

/// Rounds trigonometric noise so axis directions are exact.
fn snap(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else {
        v
    }
}

/// Direction well inside the cone: the normalised sum of the members, or the
/// member with the largest relative slack when the sum is degenerate.
fn pick_center(cone: &ConeRep, members: &[Point]) -> Point {
    let n = members[0].dim();
    let mut sum = Point::zeros(n);
    for m in members {
        sum = sum.add(&m.scale(1.0 / m.norm2()));
    }
    let rel = |p: &Point| cone.slack(p).unwrap_or(0.0) / p.norm2();
    if sum.norm2() > 1e-6 * members.len() as f64 && rel(&sum) > 0.0 {
        return sum;
    }
    members
        .iter()
        .max_by(|a, b| rel(a).total_cmp(&rel(b)))
        .cloned()
        .expect("nonempty members")
}

/// Boundary direction between an inner direction and an outer one, found by
/// bisection along the great circle with the exact (untoleranced) slack.
fn refine_boundary(cone: &ConeRep, inside: &Point, outside: &Point, _tol: &Tolerances) -> Result<Option<Point>> {
    let inside = inside.scale(1.0 / inside.norm2());
    let outside = outside.scale(1.0 / outside.norm2());
    if inside.dot(&outside) < -0.999 {
        return Ok(None);
    }
    let at = |s: f64| {
        let p = inside.scale(1.0 - s).add(&outside.scale(s));
        p.scale(1.0 / p.norm2())
    };
    let member = |p: &Point| cone.slack(p).is_some_and(|v| v >= 0.0);
    if !member(&inside) {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..REFINE_STEPS {
        let mid = 0.5 * (lo + hi);
        if member(&at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(at(lo)))
}

pub(crate) fn dedup(points: Vec<Point>, tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        let dup = out
            .iter()
            .any(|q| q.iter().zip(p.iter()).all(|(a, b)| (a - b).abs() <= tol));
        if !dup {
            out.push(p);
        }
    }
    out
}

/// Random nonzero element of a cone with base `base`.
///
/// Convex cones draw positive combinations of up to three base points;
/// ray unions draw a scaled base point. Scales span roughly [0.1, 10].
pub fn sample_cone_point<R: Rng>(cone: &ConeRep, base: &BaseSet, rng: &mut R) -> Option<Point> {
    if base.points.is_empty() {
        return None;
    }
    let n = base.points[0].dim();
    let scale = (rng.random_range(-2.3..2.3f64)).exp();
    if !cone.is_convex() {
        let p = &base.points[rng.random_range(0..base.points.len())];
        return Some(p.scale(scale));
    }
    let terms = rng.random_range(1..=3usize);
    let mut y = Point::zeros(n);
    for _ in 0..terms {
        let p = &base.points[rng.random_range(0..base.points.len())];
        y = y.axpy(rng.random_range(0.05..1.0), p);
    }
    if y.is_zero(1e-12) {
        return Some(base.points[0].scale(scale));
    }
    Some(y.scale(scale))
}
