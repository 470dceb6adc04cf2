//! Augmented dual cones `K^{a+}`, `K^{a∘}`, `K^{a#}` and LP search for pairs.
//!
//! With `h(y) = ⟨x*, y⟩ − α·ψ(y)`:
//! `K^{a+}` requires `h ≥ 0` on `K`, `K^{a∘}` requires `h > 0` on `int K`
//! (and `x* ≠ 0`), `K^{a#}` requires `h > 0` on `K∖{0}`.
//!
//! `h` is concave and positively homogeneous, hence superadditive, so for
//! cones given by generators it suffices to test the normalised generators.

use serde::{Deserialize, Serialize};

use crate::cone::polytope::Polytope;
use crate::cone::seminorm::rank;
use crate::cone::{default_density, normlike_base, BaseSet, ConeRep, Point, SeminormSpec, Tolerances};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::scalarizers::ScalarizingPair;

pub const DEFAULT_ALPHA_MIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AugDualClass {
    APlus,
    ACirc,
    ASharp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    HoldsOnSamples,
    Fails,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Fails
    }

    /// Downgrades `Holds` to `HoldsOnSamples` when `exact` is false.
    pub fn cap(self, exact: bool) -> Verdict {
        match (self, exact) {
            (Verdict::Holds, false) => Verdict::HoldsOnSamples,
            (v, _) => v,
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::HoldsOnSamples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugDualReport {
    pub pair: ScalarizingPair,
    pub class: AugDualClass,
    pub verdict: Verdict,
    /// Minimum of `h` over the tested base points.
    pub margin: f64,
    pub witness: Option<Point>,
}

fn check_pair(k: &ConeRep, psi: &SeminormSpec, pair: &ScalarizingPair) -> Result<()> {
    pair.validate()?;
    if &pair.psi != psi {
        return Err(Error::PreconditionViolated("pair seminorm differs from psi".into()));
    }
    crate::error::check_dim(k.dim(), pair.dim())
}

pub fn aug_dual_membership(
    k: &ConeRep,
    psi: &SeminormSpec,
    pair: &ScalarizingPair,
    class: AugDualClass,
    tol: &Tolerances,
) -> Result<AugDualReport> {
    check_pair(k, psi, pair)?;
    let base = normlike_base(k, psi, default_density(k.dim()), tol)?;
    aug_dual_membership_on_base(k, &base, pair, class, tol)
}

/// Same as [`aug_dual_membership`] with a precomputed base.
pub fn aug_dual_membership_on_base(
    k: &ConeRep,
    base: &BaseSet,
    pair: &ScalarizingPair,
    class: AugDualClass,
    tol: &Tolerances,
) -> Result<AugDualReport> {
    if base.points.is_empty() {
        return Err(Error::PreconditionViolated("cone is trivial".into()));
    }
    let (margin, argmin) = base
        .points
        .iter()
        .map(|b| pair.h(b))
        .enumerate()
        .fold((f64::INFINITY, 0), |(m, i), (j, v)| if v < m { (v, j) } else { (m, i) });
    let eps_scale = 1.0f64.max(pair.xstar.norm_inf() + pair.alpha);
    let exact = base.is_exact();
    let report = |verdict: Verdict, witness: Option<Point>| AugDualReport {
        pair: pair.clone(),
        class,
        verdict,
        margin,
        witness,
    };
    let weak_ok = margin >= -tol.eps_mem * eps_scale;
    match class {
        AugDualClass::APlus => Ok(if weak_ok {
            report(Verdict::Holds.cap(exact), None)
        } else {
            report(Verdict::Fails, Some(base.points[argmin].clone()))
        }),
        AugDualClass::ASharp => Ok(if margin > tol.eps_strict * eps_scale {
            report(Verdict::Holds.cap(exact), None)
        } else {
            report(Verdict::Fails, Some(base.points[argmin].clone()))
        }),
        AugDualClass::ACirc => {
            let Some(c) = interior_point(k, base, tol)? else {
                return Ok(report(Verdict::Holds.cap(exact), None));
            };
            if !weak_ok {
                return Ok(report(Verdict::Fails, Some(base.points[argmin].clone())));
            }
            if pair.h(&c) > tol.eps_strict * eps_scale * c.norm_inf().max(1.0) {
                Ok(report(Verdict::Holds.cap(exact), None))
            } else {
                Ok(report(Verdict::Fails, Some(c)))
            }
        }
    }
}

/// A point of `int K`, or `None` when the interior is empty.
pub fn interior_point(k: &ConeRep, base: &BaseSet, tol: &Tolerances) -> Result<Option<Point>> {
    let n = k.dim();
    match k {
        ConeRep::Orthant { dim } => Ok(Some(Point::raw(vec![1.0; *dim]))),
        ConeRep::Generated { generators, .. } => {
            if rank(generators, n) < n {
                return Ok(None);
            }
            Ok(Some(Polytope::new(base.points.clone())?.centroid()))
        }
        ConeRep::RayUnion { generators, .. } => Ok(if n == 1 && !generators.is_empty() {
            Some(generators[0].clone())
        } else {
            None
        }),
        ConeRep::Halfspace { normals, .. } => halfspace_interior_point(normals, n, tol),
        ConeRep::BishopPhelps { .. } => {
            let best = base
                .points
                .iter()
                .chain(crate::cone::base::sphere_directions(n, default_density(n)).iter())
                .filter(|p| k.is_interior(p, tol).unwrap_or(false))
                .max_by(|a, b| {
                    let ra = k.slack(a).unwrap_or(0.0) / a.norm_inf();
                    let rb = k.slack(b).unwrap_or(0.0) / b.norm_inf();
                    ra.total_cmp(&rb)
                })
                .cloned();
            Ok(best)
        }
    }
}

fn halfspace_interior_point(normals: &[Point], n: usize, tol: &Tolerances) -> Result<Option<Point>> {
    if normals.is_empty() {
        return Ok(Some(Point::unit(n, 0)));
    }
    // max s  s.t. ⟨wᵢ, y⟩ ≥ s‖wᵢ‖∞, |y|∞ ≤ 1, s ≤ 1.
    let nv = n + 1;
    let mut lp = LinearProgram::new(nv);
    for j in 0..n {
        lp.set_free(j);
    }
    let mut obj = vec![0.0; nv];
    obj[n] = 1.0;
    lp.maximize(&obj);
    for w in normals {
        let mut row = w.to_vec();
        row.push(-w.norm_inf());
        lp.add(&row, Relation::Ge, 0.0);
    }
    for j in 0..n {
        lp.add_sparse(&[(j, 1.0)], Relation::Le, 1.0);
        lp.add_sparse(&[(j, 1.0)], Relation::Ge, -1.0);
    }
    lp.add_sparse(&[(n, 1.0)], Relation::Le, 1.0);
    let sol = lp
        .solve()?
        .optimal()
        .ok_or_else(|| Error::Lp("interior-point program has no optimum".into()))?;
    Ok(if sol.objective > tol.eps_strict {
        Some(Point::new(sol.x[..n].to_vec())?)
    } else {
        None
    })
}

/// Which side constraints enter the pair program and with what margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    /// Constraint `≥ m`.
    Margin,
    /// Constraint `≥ 0`.
    Zero,
}

#[derive(Debug, Clone)]
pub(crate) enum Objective {
    /// Maximise the common margin `m`.
    Margin,
    /// Maximise `h(c)` at a fixed point (margin fixed to zero).
    HAt(Point),
}

/// LP over `(x*, α, s, m)`:
/// `⟨x*, b⟩ − αψ(b) ≥ m` on K-points, `⟨x*, a⟩ + αψ(a) ≥ m` (or `≥ 0`) on
/// A-points, `α ≥ alpha_min`, `|x*ᵢ| ≤ s`, `s + α ≤ 1`.
pub(crate) struct PairProgram<'a> {
    pub psi: &'a SeminormSpec,
    pub n: usize,
    pub k_points: &'a [Point],
    pub k_side: Side,
    pub a_points: &'a [Point],
    pub a_side: Side,
    pub alpha_min: f64,
    pub objective: Objective,
}

pub(crate) struct PairSolution {
    pub pair: ScalarizingPair,
    pub margin: f64,
    pub objective: f64,
}

impl PairProgram<'_> {
    pub fn solve(&self) -> Result<Option<PairSolution>> {
        let n = self.n;
        let (ia, is, im) = (n, n + 1, n + 2);
        let nv = n + 3;
        let mut lp = LinearProgram::new(nv);
        for j in 0..n {
            lp.set_free(j);
        }
        lp.set_free(im);
        let mut obj = vec![0.0; nv];
        match &self.objective {
            Objective::Margin => obj[im] = 1.0,
            Objective::HAt(c) => {
                obj[..n].copy_from_slice(c);
                obj[ia] = -self.psi.eval_unchecked(c);
                lp.add_sparse(&[(im, 1.0)], Relation::Eq, 0.0);
            }
        }
        lp.maximize(&obj);
        let mut push = |p: &Point, sign: f64, side: Side| {
            let mut row = p.to_vec();
            row.push(sign * self.psi.eval_unchecked(p));
            row.push(0.0);
            row.push(if side == Side::Margin { -1.0 } else { 0.0 });
            lp.add(&row, Relation::Ge, 0.0);
        };
        for b in self.k_points {
            push(b, -1.0, self.k_side);
        }
        for a in self.a_points {
            push(a, 1.0, self.a_side);
        }
        lp.add_sparse(&[(ia, 1.0)], Relation::Ge, self.alpha_min);
        for j in 0..n {
            lp.add_sparse(&[(j, 1.0), (is, -1.0)], Relation::Le, 0.0);
            lp.add_sparse(&[(j, 1.0), (is, 1.0)], Relation::Ge, 0.0);
        }
        lp.add_sparse(&[(is, 1.0), (ia, 1.0)], Relation::Le, 1.0);
        // Keeps the program bounded when no point constrains the margin.
        lp.add_sparse(&[(im, 1.0)], Relation::Le, 1.0);
        let Some(sol) = lp.solve()?.optimal() else {
            return Ok(None);
        };
        let alpha = sol.x[ia].max(self.alpha_min).max(0.0);
        let pair = ScalarizingPair::new(Point::new(sol.x[..n].to_vec())?, alpha, self.psi.clone())?;
        Ok(Some(PairSolution {
            pair,
            margin: sol.x[im],
            objective: sol.objective,
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpPair {
    pub pair: ScalarizingPair,
    pub margin: f64,
}

/// LP search for `(x*, α) ∈ K^{a#}` with `α ≥ alpha_min`.
pub fn find_sharp_pair(k: &ConeRep, psi: &SeminormSpec, alpha_min: f64, tol: &Tolerances) -> Result<Option<SharpPair>> {
    let base = normlike_base(k, psi, default_density(k.dim()), tol)?;
    find_sharp_pair_on_base(k, &base, alpha_min, tol)
}

pub fn find_sharp_pair_on_base(
    k: &ConeRep,
    base: &BaseSet,
    alpha_min: f64,
    tol: &Tolerances,
) -> Result<Option<SharpPair>> {
    if base.points.is_empty() {
        return Err(Error::PreconditionViolated("cone is trivial".into()));
    }
    let program = PairProgram {
        psi: &base.seminorm,
        n: k.dim(),
        k_points: &base.points,
        k_side: Side::Margin,
        a_points: &[],
        a_side: Side::Zero,
        alpha_min,
        objective: Objective::Margin,
    };
    let Some(sol) = program.solve()? else {
        return Ok(None);
    };
    if sol.margin <= tol.eps_strict {
        return Ok(None);
    }
    let report = aug_dual_membership_on_base(k, base, &sol.pair, AugDualClass::ASharp, tol)?;
    Ok(report.verdict.passed().then_some(SharpPair {
        margin: report.margin,
        pair: sol.pair,
    }))
}

/// LP search for `(x*, α) ∈ K^{a∘}`: keeps `h ≥ 0` on the base and maximises
/// `h` at an interior point.
pub fn find_circ_pair(
    k: &ConeRep,
    psi: &SeminormSpec,
    alpha_min: f64,
    tol: &Tolerances,
) -> Result<Option<ScalarizingPair>> {
    let base = normlike_base(k, psi, default_density(k.dim()), tol)?;
    if base.points.is_empty() {
        return Err(Error::PreconditionViolated("cone is trivial".into()));
    }
    let Some(c) = interior_point(k, &base, tol)? else {
        return Err(Error::PreconditionViolated("cone has empty interior".into()));
    };
    let program = PairProgram {
        psi,
        n: k.dim(),
        k_points: &base.points,
        k_side: Side::Zero,
        a_points: &[],
        a_side: Side::Zero,
        alpha_min,
        objective: Objective::HAt(c),
    };
    let Some(sol) = program.solve()? else {
        return Ok(None);
    };
    let report = aug_dual_membership_on_base(k, &base, &sol.pair, AugDualClass::ACirc, tol)?;
    Ok(report.verdict.passed().then_some(sol.pair))
}
