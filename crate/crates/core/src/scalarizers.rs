//! Seminorm-linear and Gerstewitz scalarizing functions, plus sampling
//! falsifiers for the representation and monotonicity properties.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::{default_density, normlike_base, sample_cone_point, ConeRep, Point, SeminormSpec, Tolerances};
use crate::error::{check_dim, Error, Result};
use crate::par::{self, Exec};

const BRACKET_DOUBLINGS: usize = 60;

/// `(x*, α, ψ)` defining `φ(y) = ⟨x*, y⟩ + α·ψ(y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarizingPair {
    pub xstar: Point,
    pub alpha: f64,
    pub psi: SeminormSpec,
}

impl ScalarizingPair {
    pub fn new(xstar: impl Into<Point>, alpha: f64, psi: SeminormSpec) -> Result<Self> {
        let pair = ScalarizingPair {
            xstar: xstar.into(),
            alpha,
            psi,
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::PreconditionViolated("alpha must be nonnegative".into()));
        }
        self.psi.validate(self.xstar.dim())
    }

    pub fn dim(&self) -> usize {
        self.xstar.dim()
    }

    pub fn eval(&self, y: &[f64]) -> Result<f64> {
        check_dim(self.dim(), y.len())?;
        Ok(self.eval_unchecked(y))
    }

    pub(crate) fn eval_unchecked(&self, y: &[f64]) -> f64 {
        self.xstar.dot(y) + self.alpha * self.psi.eval_unchecked(y)
    }

    /// `x*(y) − α·ψ(y)`, nonnegative exactly on `C_ψ(x*, α)`.
    pub fn h(&self, y: &[f64]) -> f64 {
        self.xstar.dot(y) - self.alpha * self.psi.eval_unchecked(y)
    }

    /// The Bishop-Phelps type cone `C_ψ(x*, α)`; `φ` represents its negative.
    pub fn cone(&self) -> ConeRep {
        ConeRep::BishopPhelps {
            xstar: self.xstar.clone(),
            alpha: self.alpha,
            psi: self.psi.clone(),
        }
    }
}

/// A real number or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            (ExtReal::Finite(_), ExtReal::PosInf) => Some(Ordering::Less),
            (ExtReal::PosInf, ExtReal::Finite(_)) => Some(Ordering::Greater),
            (ExtReal::PosInf, ExtReal::PosInf) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(ExtReal::Finite(v)),
            Repr::Str(s) if s == "inf" => Ok(ExtReal::PosInf),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "expected number or \"inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarizerSpec {
    SeminormLinear { pair: ScalarizingPair },
    Gerstewitz { cone: ConeRep, a: Point, k: Point },
}

impl ScalarizerSpec {
    pub fn eval(&self, y: &[f64], tol: &Tolerances) -> Result<ExtReal> {
        match self {
            ScalarizerSpec::SeminormLinear { pair } => pair.eval(y).map(ExtReal::Finite),
            ScalarizerSpec::Gerstewitz { cone, a, k } => eval_gerstewitz(cone, a, k, y, tol),
        }
    }
}

pub fn eval_seminorm_linear(pair: &ScalarizingPair, y: &[f64]) -> Result<f64> {
    pair.eval(y)
}

/// Normals of an inequality representation (orthant rows are unit vectors).
fn inequality_normals(cone: &ConeRep) -> Option<Vec<Point>> {
    match cone {
        ConeRep::Orthant { dim } => Some((0..*dim).map(|i| Point::unit(*dim, i)).collect()),
        ConeRep::Halfspace { normals, .. } => Some(normals.clone()),
        _ => None,
    }
}

/// Value `φ(y)` of the canonical functional representing `−K`:
/// `maxᵢ ⟨wᵢ, y⟩` for inequality cones and `⟨x*, y⟩ + α·ψ(y)` for
/// Bishop-Phelps cones.
pub fn representing_value(cone: &ConeRep, y: &[f64]) -> Result<f64> {
    check_dim(cone.dim(), y.len())?;
    if let Some(ws) = inequality_normals(cone) {
        return Ok(ws.iter().fold(f64::NEG_INFINITY, |m, w| m.max(w.dot(y))));
    }
    match cone {
        ConeRep::BishopPhelps { xstar, alpha, psi } => Ok(xstar.dot(y) + alpha * psi.eval_unchecked(y)),
        _ => Err(Error::UnsupportedRepresentation(format!(
            "representing functional for a {} cone",
            cone.kind_name()
        ))),
    }
}

/// Checks the direction requirement on `k` and returns the denominator used
/// to scale the initial bisection bracket (zero when `k` is orthogonal to
/// every normal).
pub(crate) fn direction_scale(cone: &ConeRep, k: &Point, tol: &Tolerances) -> Result<f64> {
    if let Some(ws) = inequality_normals(cone) {
        let mut min_pos = f64::INFINITY;
        for w in &ws {
            let d = w.dot(k);
            let eps = tol.eps_mem * w.norm_inf() * k.norm_inf().max(1.0);
            if d < -eps {
                return Err(Error::PreconditionViolated(format!("<w, k> = {d} < 0 for normal {w}")));
            }
            if d > eps {
                min_pos = min_pos.min(d);
            }
        }
        // k orthogonal to every normal: each value is +∞ or has no finite infimum.
        return Ok(if min_pos.is_finite() { min_pos } else { 0.0 });
    }
    match cone {
        ConeRep::BishopPhelps { xstar, alpha, psi } => {
            if !cone.is_interior(k, tol)? {
                return Err(Error::PreconditionViolated(
                    "k must satisfy x*(k) > alpha * psi(k)".into(),
                ));
            }
            Ok(xstar.dot(k) - alpha * psi.eval_unchecked(k))
        }
        _ => Err(Error::UnsupportedRepresentation(format!(
            "Gerstewitz evaluation for a {} cone",
            cone.kind_name()
        ))),
    }
}

/// `inf{t ∈ ℝ : y ∈ t·k + a − K}`.
///
/// Orthant and halfspace cones use the closed form; Bishop-Phelps cones use
/// bracketed bisection on the representing functional.
pub fn eval_gerstewitz(cone: &ConeRep, a: &Point, k: &Point, y: &[f64], tol: &Tolerances) -> Result<ExtReal> {
    let n = cone.dim();
    check_dim(n, a.dim())?;
    check_dim(n, k.dim())?;
    check_dim(n, y.len())?;
    match inequality_normals(cone) {
        Some(ws) => {
            direction_scale(cone, k, tol)?;
            let ya: Vec<f64> = y.iter().zip(a.iter()).map(|(p, q)| p - q).collect();
            let yscale = ya.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let mut best = f64::NEG_INFINITY;
            for w in &ws {
                let den = w.dot(k);
                let num = w.dot(&ya);
                let eps_den = tol.eps_mem * w.norm_inf() * k.norm_inf().max(1.0);
                if den > eps_den {
                    best = best.max(num / den);
                } else if num > tol.eps_mem * w.norm_inf() * yscale {
                    return Ok(ExtReal::PosInf);
                }
            }
            if best == f64::NEG_INFINITY {
                return Err(Error::NoFiniteValue);
            }
            Ok(ExtReal::Finite(best))
        }
        None => eval_gerstewitz_bisection(cone, a, k, y, tol),
    }
}

/// Bisection path for every supported cone (the closed form is skipped).
pub fn eval_gerstewitz_bisection(cone: &ConeRep, a: &Point, k: &Point, y: &[f64], tol: &Tolerances) -> Result<ExtReal> {
    let n = cone.dim();
    check_dim(n, a.dim())?;
    check_dim(n, k.dim())?;
    check_dim(n, y.len())?;
    let den = direction_scale(cone, k, tol)?;
    let ya: Vec<f64> = y.iter().zip(a.iter()).map(|(p, q)| p - q).collect();
    let start = (1.0 + ya.iter().fold(0.0f64, |m, v| m.max(v.abs()))) / (1.0 + den);
    let g = |t: f64| {
        let z: Vec<f64> = ya.iter().zip(k.iter()).map(|(v, kk)| v - t * kk).collect();
        representing_value(cone, &z).expect("dimensions checked")
    };
    match bisect_sublevel(g, start, tol.eps_root) {
        Some(v) => Ok(v),
        None => Err(Error::NoFiniteValue),
    }
}

/// Smallest `t` with `g(t) ≤ 0` for a convex `g` that is positive far left.
///
/// Returns `+∞` when no such `t` is found within the bracket expansion and
/// `None` when `g ≤ 0` everywhere probed (infimum −∞).
pub(crate) fn bisect_sublevel<G: Fn(f64) -> f64>(g: G, start: f64, eps_root: f64) -> Option<ExtReal> {
    let start = if start.is_finite() && start > 0.0 { start } else { 1.0 };
    let mut hi = start;
    let mut found = g(hi) <= 0.0;
    for _ in 0..BRACKET_DOUBLINGS {
        if found {
            break;
        }
        hi *= 2.0;
        found = g(hi) <= 0.0;
    }
    if !found {
        return Some(ExtReal::PosInf);
    }
    let mut lo = -start;
    let mut ok = g(lo) > 0.0;
    for _ in 0..BRACKET_DOUBLINGS {
        if ok {
            break;
        }
        lo *= 2.0;
        ok = g(lo) > 0.0;
    }
    if !ok {
        return None;
    }
    while hi - lo > eps_root {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(ExtReal::Finite(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentingCheck {
    pub holds: bool,
    pub counterexample: Option<Point>,
}

/// Falsifier for `−K = {φ ≤ 0}` (strict: `−int K = {φ < 0}`).
pub fn check_representing(
    phi: &ScalarizerSpec,
    cone: &ConeRep,
    strict: bool,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<RepresentingCheck> {
    if strict && !cone.supports_interior() {
        return Err(Error::InteriorUnsupported(cone.kind_name()));
    }
    let n = cone.dim();
    let neg = cone.negated();
    let base = normlike_base(cone, &SeminormSpec::L2, default_density(n), tol).ok();
    let found = par::map_range(Exec::Parallel, samples, |i| -> Result<Option<Point>> {
        let mut rng = par::stream_rng(seed, i as u64);
        let y = match (i % 3, &base) {
            (1, Some(b)) => sample_cone_point(cone, b, &mut rng).map(|p| p.neg()),
            (2, Some(b)) => sample_cone_point(cone, b, &mut rng),
            _ => None,
        }
        .unwrap_or_else(|| Point::raw((0..n).map(|_| rng.random_range(-2.0..2.0)).collect()));
        let v = match phi.eval(&y, tol)? {
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        };
        let m = tol.eps_strict * neg.scale_at(&y).max(1.0);
        let violated = if strict {
            let inside = neg.is_interior(&y, tol)?;
            (inside && v >= 0.0) || (!inside && v < -m)
        } else {
            let member = neg.contains(&y, tol)?;
            (member && v > m) || (!member && v <= 0.0)
        };
        Ok(violated.then_some(y))
    });
    first_counterexample(found).map(|c| RepresentingCheck {
        holds: c.is_none(),
        counterexample: c,
    })
}

fn first_counterexample<T>(found: Vec<Result<Option<T>>>) -> Result<Option<T>> {
    for f in found {
        if let Some(c) = f? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneMode {
    Increasing,
    Strictly,
    Strongly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneCheck {
    pub holds_on_samples: bool,
    /// `(ȳ, ȳ − d)` violating the required inequality.
    pub counterexample: Option<(Point, Point)>,
}

/// Falsifier for `φ(ȳ − d) ≤ φ(ȳ)` with `d ∈ K` (strictly: `<`, `d ∈ int K`;
/// strongly: `<`, `d ∈ K∖{0}`).
pub fn check_monotone(
    phi: &ScalarizerSpec,
    cone: &ConeRep,
    mode: MonotoneMode,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<MonotoneCheck> {
    if mode == MonotoneMode::Strictly && !cone.supports_interior() {
        return Err(Error::InteriorUnsupported(cone.kind_name()));
    }
    let n = cone.dim();
    let base = normlike_base(cone, &SeminormSpec::L2, default_density(n), tol)?;
    let found = par::map_range(Exec::Parallel, samples, |i| -> Result<Option<(Point, Point)>> {
        let mut rng = par::stream_rng(seed, i as u64);
        let ybar = Point::raw((0..n).map(|_| rng.random_range(-2.0..2.0)).collect());
        let Some(d) = sample_direction(cone, &base, mode, &mut rng, tol)? else {
            return Ok(None);
        };
        let lower = ybar.sub(&d);
        let (Some(v0), Some(v1)) = (phi.eval(&ybar, tol)?.finite(), phi.eval(&lower, tol)?.finite()) else {
            return Ok(None);
        };
        let scale = 1.0f64.max(v0.abs()).max(v1.abs());
        let diff = v1 - v0;
        let violated = match mode {
            MonotoneMode::Increasing => diff > tol.eps_mem * scale,
            MonotoneMode::Strictly | MonotoneMode::Strongly => diff > -(1024.0 * f64::EPSILON * scale),
        };
        Ok(violated.then_some((ybar, lower)))
    });
    first_counterexample(found).map(|c| MonotoneCheck {
        holds_on_samples: c.is_none(),
        counterexample: c,
    })
}

fn sample_direction<R: Rng>(
    cone: &ConeRep,
    base: &crate::cone::BaseSet,
    mode: MonotoneMode,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<Option<Point>> {
    if mode != MonotoneMode::Strictly {
        return Ok(sample_cone_point(cone, base, rng));
    }
    for _ in 0..32 {
        if let Some(d) = sample_cone_point(cone, base, rng) {
            if cone.is_interior(&d, tol)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn pair(x: [f64; 2], alpha: f64) -> ScalarizingPair {
        ScalarizingPair::new(x, alpha, SeminormSpec::L1).unwrap()
    }

    fn slin(x: [f64; 2], alpha: f64) -> ScalarizerSpec {
        ScalarizerSpec::SeminormLinear { pair: pair(x, alpha) }
    }

    #[test]
    fn seminorm_linear_examples() {
        assert_eq!(pair([1.0, 1.0], 1.0).eval(&[1.0, -1.0]).unwrap(), 2.0);
        assert_eq!(pair([1.0, 1.0], 0.0).eval(&[3.0, 4.0]).unwrap(), 7.0);
        assert_eq!(pair([1.0, 1.0], 1.0).eval(&[-2.0, -3.0]).unwrap(), 0.0);
    }

    #[test]
    fn gerstewitz_orthant_closed_form() {
        let c = ConeRep::orthant(2);
        let v = eval_gerstewitz(&c, &[0.0, 0.0].into(), &[1.0, 1.0].into(), &[2.0, -1.0], &tol()).unwrap();
        assert_eq!(v, ExtReal::Finite(2.0));
        let b = eval_gerstewitz_bisection(&c, &[0.0, 0.0].into(), &[1.0, 1.0].into(), &[2.0, -1.0], &tol()).unwrap();
        assert_abs_diff_eq!(b.finite().unwrap(), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn gerstewitz_at_a_is_zero() {
        let a: Point = [0.3, -1.2].into();
        let k: Point = [1.0, 2.0].into();
        for c in [
            ConeRep::orthant(2),
            ConeRep::halfspace(vec![[1.0, 0.0].into(), [1.0, 1.0].into()]),
            ConeRep::bishop_phelps([2.0, 2.0], 1.0, SeminormSpec::L1),
        ] {
            let v = eval_gerstewitz(&c, &a, &k, &a, &tol()).unwrap().finite().unwrap();
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn gerstewitz_bishop_phelps_value() {
        // Root of g(t) = 2 − 4t + |1 − t| + |t|; confirmed by a grid scan.
        let c = ConeRep::bishop_phelps([2.0, 2.0], 1.0, SeminormSpec::L1);
        let v = eval_gerstewitz(&c, &[0.0, 0.0].into(), &[1.0, 1.0].into(), &[1.0, 0.0], &tol())
            .unwrap()
            .finite()
            .unwrap();
        let g = |t: f64| 2.0 * (1.0 - t) + 2.0 * (-t) + (1.0 - t).abs() + t.abs();
        let scan = (0..=200_000)
            .map(|i| -1.0 + i as f64 * 1e-5)
            .find(|&t| g(t) <= 0.0)
            .unwrap();
        assert!((scan - 0.75).abs() <= 1e-5);
        assert_abs_diff_eq!(v, 0.75, epsilon = 1e-9);
    }

    #[test]
    fn gerstewitz_boundary_direction() {
        let c = ConeRep::halfspace(vec![[1.0, 0.0].into(), [0.0, 1.0].into()]);
        let a: Point = [0.0, 0.0].into();
        let k: Point = [0.0, 1.0].into();
        assert_eq!(
            eval_gerstewitz(&c, &a, &k, &[1.0, 0.0], &tol()).unwrap(),
            ExtReal::PosInf
        );
        assert_eq!(
            eval_gerstewitz(&c, &a, &k, &[-1.0, 3.0], &tol()).unwrap(),
            ExtReal::Finite(3.0)
        );
    }

    #[test]
    fn gerstewitz_preconditions() {
        let c = ConeRep::orthant(2);
        let a: Point = [0.0, 0.0].into();
        assert!(matches!(
            eval_gerstewitz(&c, &a, &[1.0, -1.0].into(), &[0.0, 0.0], &tol()),
            Err(Error::PreconditionViolated(_))
        ));
        let bp = ConeRep::bishop_phelps([1.0, 1.0], 1.0, SeminormSpec::L1);
        assert!(matches!(
            eval_gerstewitz(&bp, &a, &[1.0, 1.0].into(), &[0.0, 0.0], &tol()),
            Err(Error::PreconditionViolated(_))
        ));
        let g = ConeRep::generated(vec![[1.0, 0.0].into()]);
        assert!(matches!(
            eval_gerstewitz(&g, &a, &[1.0, 0.0].into(), &[0.0, 0.0], &tol()),
            Err(Error::UnsupportedRepresentation(_))
        ));
    }

    #[test]
    fn ext_real_serialisation() {
        assert_eq!(serde_json::to_string(&ExtReal::PosInf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<ExtReal>("2.5").unwrap(), ExtReal::Finite(2.5));
        assert_eq!(serde_json::from_str::<ExtReal>("\"inf\"").unwrap(), ExtReal::PosInf);
        assert!(ExtReal::Finite(1e300) < ExtReal::PosInf);
    }

    #[test]
    fn representing_examples() {
        let t = tol();
        let bp = ConeRep::bishop_phelps([1.0, 1.0], 1.0, SeminormSpec::L1);
        assert!(
            check_representing(&slin([1.0, 1.0], 1.0), &bp, false, 2000, 1, &t)
                .unwrap()
                .holds
        );
        let orth = ConeRep::orthant(2);
        assert!(
            check_representing(&slin([1.0, 1.0], 1.0), &orth, false, 2000, 2, &t)
                .unwrap()
                .holds
        );
        let r = check_representing(&slin([1.0, 0.0], 0.0), &orth, false, 2000, 3, &t).unwrap();
        assert!(!r.holds);
        let y = r.counterexample.unwrap();
        // φ(y) = y₁ ≤ 0 while y ∉ −R²₊, i.e. y₂ > 0.
        assert!(y[0] <= 0.0 && y[1] > 0.0);
    }

    #[test]
    fn monotone_examples() {
        let t = tol();
        let orth = ConeRep::orthant(2);
        let strong = check_monotone(&slin([2.0, 2.0], 1.0), &orth, MonotoneMode::Strongly, 5000, 4, &t).unwrap();
        assert!(strong.holds_on_samples);
        let inc = check_monotone(&slin([1.0, 1.0], 1.0), &orth, MonotoneMode::Increasing, 5000, 5, &t).unwrap();
        assert!(inc.holds_on_samples);
        let weak = check_monotone(&slin([1.0, 1.0], 1.0), &orth, MonotoneMode::Strongly, 5000, 6, &t).unwrap();
        assert!(!weak.holds_on_samples);
        let (y, lower) = weak.counterexample.unwrap();
        let p = pair([1.0, 1.0], 1.0);
        assert!(p.eval(&lower).unwrap() >= p.eval(&y).unwrap() - 1e-12);
    }

    #[test]
    fn strictly_needs_interior_support() {
        let g = ConeRep::generated(vec![[1.0, 0.0].into(), [0.0, 1.0].into()]);
        assert!(matches!(
            check_monotone(&slin([1.0, 1.0], 0.0), &g, MonotoneMode::Strictly, 10, 0, &tol()),
            Err(Error::InteriorUnsupported(_))
        ));
    }

    fn catalog() -> Vec<SeminormSpec> {
        vec![
            SeminormSpec::L1,
            SeminormSpec::L2,
            SeminormSpec::LInf,
            SeminormSpec::AbsFunctional { w: [1.0, -2.0].into() },
            SeminormSpec::MaxAbsFunctionals {
                ws: vec![[1.0, 0.5].into(), [0.0, 1.0].into()],
            },
            SeminormSpec::SumAbsFunctionals {
                ws: vec![[1.0, 1.0].into(), [2.0, -1.0].into()],
            },
            SeminormSpec::PsiMaxOfSublinear {
                cs: vec![[1.0, 0.0].into(), [0.0, 1.0].into(), [-1.0, -1.0].into()],
            },
        ]
    }

    proptest! {
        #[test]
        fn sublinearity(x1 in -3.0..3.0f64, x2 in -3.0..3.0f64, alpha in 0.0..3.0f64,
                        y1 in -5.0..5.0f64, y2 in -5.0..5.0f64, z1 in -5.0..5.0f64, z2 in -5.0..5.0f64,
                        t in 0.0..10.0f64, which in 0usize..7) {
            let p = ScalarizingPair::new([x1, x2], alpha, catalog()[which].clone()).unwrap();
            let y = [y1, y2];
            let z = [z1, z2];
            let s = [y1 + z1, y2 + z2];
            let scale = 1.0 + p.eval(&y).unwrap().abs() + p.eval(&z).unwrap().abs();
            prop_assert!(p.eval(&s).unwrap() <= p.eval(&y).unwrap() + p.eval(&z).unwrap() + 1e-9 * scale);
            let ty = [t * y1, t * y2];
            prop_assert!((p.eval(&ty).unwrap() - t * p.eval(&y).unwrap()).abs() <= 1e-9 * (1.0 + t) * scale);
        }

        #[test]
        fn seminorm_axioms(y1 in -5.0..5.0f64, y2 in -5.0..5.0f64, z1 in -5.0..5.0f64, z2 in -5.0..5.0f64,
                           t in -10.0..10.0f64, which in 0usize..7) {
            let psi = &catalog()[which];
            let y = [y1, y2];
            let v = psi.eval(&y).unwrap();
            prop_assert!(v >= 0.0);
            let ty = [t * y1, t * y2];
            prop_assert!((psi.eval(&ty).unwrap() - t.abs() * v).abs() <= 1e-9 * (1.0 + t.abs()) * (1.0 + v));
            let s = [y1 + z1, y2 + z2];
            let w = psi.eval(&[z1, z2]).unwrap();
            prop_assert!(psi.eval(&s).unwrap() <= v + w + 1e-9 * (1.0 + v + w));
        }

        #[test]
        fn gerstewitz_translation(y1 in -5.0..5.0f64, y2 in -5.0..5.0f64, s in -5.0..5.0f64,
                                  k1 in 0.1..3.0f64, k2 in 0.1..3.0f64, which in 0usize..3) {
            let cone = match which {
                0 => ConeRep::orthant(2),
                1 => ConeRep::halfspace(vec![[1.0, 0.5].into(), [0.0, 1.0].into()]),
                _ => ConeRep::bishop_phelps([2.0, 2.0], 1.0, SeminormSpec::L1),
            };
            let a: Point = [0.5, -0.5].into();
            let k: Point = [k1, k2 + if which == 2 { k1 } else { 0.0 }].into();
            let t = tol();
            let Ok(base) = eval_gerstewitz(&cone, &a, &k, &[y1, y2], &t) else { return Ok(()); };
            let shifted = [y1 + s * k[0], y2 + s * k[1]];
            let moved = eval_gerstewitz(&cone, &a, &k, &shifted, &t).unwrap();
            prop_assert!((moved.finite().unwrap() - base.finite().unwrap() - s).abs() <= 1e-8);
        }

        #[test]
        fn representing_level(y1 in -5.0..5.0f64, y2 in -5.0..5.0f64) {
            let t = tol();
            let k: Point = [1.0, 1.0].into();
            let a = Point::zeros(2);
            for cone in [
                ConeRep::halfspace(vec![[1.0, 0.5].into(), [0.0, 1.0].into()]),
                ConeRep::bishop_phelps([2.0, 1.0], 1.0, SeminormSpec::L2),
            ] {
                let v = eval_gerstewitz(&cone, &a, &k, &[y1, y2], &t).unwrap().finite().unwrap();
                let member = cone.contains(&[-y1, -y2], &t).unwrap();
                if v.abs() > 1e-7 {
                    prop_assert_eq!(v <= 0.0, member);
                }
            }
        }
    }
}
