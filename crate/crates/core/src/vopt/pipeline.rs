//! End-to-end checks of the scalarization theorems on a finite problem:
//! hypothesis → separating pair → conclusions, each step re-verified by the
//! brute-force oracles.

use serde::{Deserialize, Serialize};

use super::oracles::{
    amap_cone_at, eff_indices, is_efficient, is_weakly_efficient, peff_henig_check_at, weff_indices, AMap,
    DEFAULT_K_SAMPLES,
};
use super::problem::{AMapVariant, VOProblem};
use super::solve::{
    eff_certificate_via_ps, solve_p_phi_a, solve_p_phi_ak, solve_p_phi_ak_by_constraint, weff_certificate_via_ps,
};
use crate::augdual::{
    aug_dual_membership_on_base, interior_point, AugDualClass, Objective, PairProgram, Side, Verdict, DEFAULT_ALPHA_MIN,
};
use crate::cone::base::{dedup, sphere_directions};
use crate::cone::{
    default_density, hull_base, hull_s0, meets_interior, normlike_base, BaseSet, ConeRep, Membership, Point,
};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::scalarizers::{ExtReal, ScalarizerSpec, ScalarizingPair};
use crate::separation::{
    check_condition, dilating_inclusion_check, find_separating_pair, CertExactness, Condition, SeparationCertificate,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Weak efficiency via weak cone separation.
    Weff,
    /// `𝔸`-proper efficiency via strict cone separation.
    Peff,
    /// Henig proper efficiency, efficient w.r.t. a dilating cone.
    Henig1,
    /// Henig variant for weak efficiency w.r.t. a dilating cone.
    Henig2,
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub alpha_min: f64,
    /// Fresh samples for sampled verification steps.
    pub samples: usize,
    pub seed: u64,
    /// K-directions mixed into the sampled `RaysOfDifferencesPlusK` map.
    pub k_samples: usize,
    /// Interior directions `k` used for the weak solution-set checks.
    pub directions: usize,
    /// Dilating cone for the Henig theorems; defaults to a Bishop-Phelps cone
    /// certifying Henig proper efficiency of `x̄`.
    pub dilating_cone: Option<ConeRep>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            alpha_min: DEFAULT_ALPHA_MIN,
            samples: 512,
            seed: 0,
            k_samples: DEFAULT_K_SAMPLES,
            directions: 5,
            dilating_cone: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub xbar: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amap: Option<AMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilating_cone: Option<ConeRep>,
    /// Hypotheses that were checked and held.
    pub hypotheses: Vec<NamedCheck>,
    /// True when `𝔸(x̄)` is the zero cone and the theorem holds vacuously.
    pub vacuous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SeparationCertificate>,
    /// The pair whose cone `C_ψ(x*, α)` the conclusions refer to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<ScalarizingPair>,
    pub checks: Vec<NamedCheck>,
    pub passed: bool,
}

fn named(name: &str, ok: bool, witness: Option<Point>) -> NamedCheck {
    NamedCheck {
        name: name.to_string(),
        verdict: if ok { Verdict::Holds } else { Verdict::Fails },
        witness: if ok { None } else { witness },
    }
}

fn hypothesis_failed(condition: &str, witness: Option<Point>) -> Error {
    Error::HypothesisFailed {
        condition: condition.to_string(),
        witness,
    }
}

fn require(hyps: &mut Vec<NamedCheck>, name: &str, verdict: Verdict, witness: Option<Point>) -> Result<()> {
    if !verdict.passed() {
        return Err(hypothesis_failed(name, witness));
    }
    hyps.push(NamedCheck {
        name: name.to_string(),
        verdict,
        witness: None,
    });
    Ok(())
}

pub fn run_theorem_pipeline(p: &VOProblem, which: Theorem, xbar: &str) -> Result<TheoremReport> {
    run_theorem_pipeline_with(p, which, xbar, &PipelineOptions::default())
}

pub fn run_theorem_pipeline_with(
    p: &VOProblem,
    which: Theorem,
    xbar: &str,
    opts: &PipelineOptions,
) -> Result<TheoremReport> {
    let i = p.index_of(xbar)?;
    let mut report = TheoremReport {
        theorem: which,
        xbar: xbar.to_string(),
        amap: None,
        dilating_cone: None,
        hypotheses: Vec::new(),
        vacuous: false,
        certificate: None,
        pair: None,
        checks: Vec::new(),
        passed: false,
    };
    let base_k = normlike_base(&p.k, &p.psi, default_density(p.dim()), &p.tol)?;
    if base_k.points.is_empty() {
        return Err(hypothesis_failed("K is nontrivial", None));
    }
    match which {
        Theorem::Peff => peff_pipeline(p, i, &base_k, opts, &mut report)?,
        Theorem::Weff => weff_pipeline(p, i, &base_k, opts, &mut report)?,
        Theorem::Henig1 | Theorem::Henig2 => henig_pipeline(p, i, &base_k, which, opts, &mut report)?,
    }
    report.passed = report.checks.iter().all(|c| c.verdict.passed());
    Ok(report)
}

fn peff_pipeline(
    p: &VOProblem,
    i: usize,
    base_k: &BaseSet,
    opts: &PipelineOptions,
    report: &mut TheoremReport,
) -> Result<()> {
    let amap = amap_cone_at(p, i, AMapVariant::RaysOfDifferences, 0)?;
    let pair = if amap.is_zero() {
        report.vacuous = true;
        let sharp = crate::augdual::find_sharp_pair_on_base(&p.k, base_k, opts.alpha_min, &p.tol)?;
        report.checks.push(named("sharp pair found", sharp.is_some(), None));
        report.amap = Some(amap);
        match sharp {
            Some(s) => s.pair,
            None => return Ok(()),
        }
    } else {
        let cond = check_condition(Condition::Cond4, &amap.cone, &p.k, &p.psi, &p.tol)?;
        require(
            &mut report.hypotheses,
            "cl S_A^0 and cl S_-K are disjoint",
            cond.holds,
            cond.witness,
        )?;
        let cert = find_separating_pair(&amap.cone, &p.k, &p.psi, true, opts.alpha_min, &p.tol)?;
        report.amap = Some(amap);
        report
            .checks
            .push(named("strict separating pair found", cert.is_some(), None));
        let Some(cert) = cert else {
            return Ok(());
        };
        report.checks.push(named(
            "separation conclusions",
            cert.conclusions.passed(),
            cert.conclusions.witness.clone(),
        ));
        let pair = cert.pair.clone();
        report.certificate = Some(cert);
        pair
    };
    let sharp = aug_dual_membership_on_base(&p.k, base_k, &pair, AugDualClass::ASharp, &p.tol)?;
    report.checks.push(NamedCheck {
        name: "pair in K^a#".into(),
        verdict: sharp.verdict,
        witness: sharp.witness,
    });
    eff_conclusions(p, i, &pair, base_k, &mut report.checks)?;
    report.pair = Some(pair);
    Ok(())
}

fn weff_pipeline(
    p: &VOProblem,
    i: usize,
    base_k: &BaseSet,
    opts: &PipelineOptions,
    report: &mut TheoremReport,
) -> Result<()> {
    let n = p.dim();
    let solid = p.k.supports_interior() && interior_point(&p.k, base_k, &p.tol)?.is_some();
    require(&mut report.hypotheses, "K is solid", bool_verdict(solid), None)?;
    let minus_k = hull_base(&p.k.negated(), &p.psi, default_density(n), &p.tol)?;
    let s_minus_k = hull_s0(&minus_k, false)?;
    let full = s_minus_k.affine_dim() == n;
    require(&mut report.hypotheses, "S_-K is solid", bool_verdict(full), None)?;

    let amap = amap_cone_at(p, i, AMapVariant::RaysOfDifferencesPlusK, opts.k_samples)?;
    let base_a = hull_base(&amap.cone, &p.psi, default_density(n), &p.tol)?;
    let s_a = hull_s0(&base_a, true)?;
    let hit = meets_interior(&s_a, &s_minus_k, &p.tol)?;
    require(
        &mut report.hypotheses,
        "S_A^0 misses int S_-K",
        if hit.is_none() {
            Verdict::HoldsOnSamples
        } else {
            Verdict::Fails
        },
        hit,
    )?;
    let cert = find_separating_pair(&amap.cone, &p.k, &p.psi, false, opts.alpha_min, &p.tol)?;
    report.amap = Some(amap);
    report
        .checks
        .push(named("weak separating pair found", cert.is_some(), None));
    let Some(cert) = cert else {
        return Ok(());
    };
    report.checks.push(named(
        "separation conclusions",
        cert.conclusions.passed(),
        cert.conclusions.witness.clone(),
    ));
    let pair = cert.pair.clone();
    report.certificate = Some(cert);
    let circ = aug_dual_membership_on_base(&p.k, base_k, &pair, AugDualClass::ACirc, &p.tol)?;
    report.checks.push(NamedCheck {
        name: "pair in K^a∘".into(),
        verdict: circ.verdict,
        witness: circ.witness,
    });
    weff_conclusions(p, i, &pair, base_k, opts, &mut report.checks)?;
    report.pair = Some(pair);
    Ok(())
}

fn henig_pipeline(
    p: &VOProblem,
    i: usize,
    base_k: &BaseSet,
    which: Theorem,
    opts: &PipelineOptions,
    report: &mut TheoremReport,
) -> Result<()> {
    let d = match &opts.dilating_cone {
        Some(d) => {
            crate::error::check_dim(p.dim(), d.dim())?;
            d.clone()
        }
        None => match peff_henig_check_at(p, i, opts.alpha_min)? {
            Some(pair) => pair.cone(),
            None => return Err(hypothesis_failed("a Bishop-Phelps dilating cone is available", None)),
        },
    };
    report.dilating_cone = Some(d.clone());

    let mut witness = None;
    for b in &base_k.points {
        if d.classify(b, &p.tol)? != Membership::Interior {
            witness = Some(b.clone());
            break;
        }
    }
    let dilating = if witness.is_none() {
        Verdict::Holds.cap(base_k.is_exact())
    } else {
        Verdict::Fails
    };
    require(&mut report.hypotheses, "K\\{0} lies in int D", dilating, witness)?;

    let pd = p.with_cone(d.clone())?;
    match which {
        Theorem::Henig1 => require(
            &mut report.hypotheses,
            "xbar in Eff(D)",
            bool_verdict(is_efficient(&pd, i)?),
            None,
        )?,
        _ => require(
            &mut report.hypotheses,
            "xbar in WEff(D)",
            bool_verdict(is_weakly_efficient(&pd, i)?),
            None,
        )?,
    }

    let dbar = dilation_complement(&d, &p.psi, &p.tol)?;
    let cond = check_condition(Condition::Cond4, &dbar, &p.k, &p.psi, &p.tol)?;
    // The complement is sampled, so an exact-looking verdict is capped.
    require(
        &mut report.hypotheses,
        "cl S_Dbar^0 and cl S_-K are disjoint",
        cond.holds.cap(false),
        cond.witness,
    )?;

    let dbar_points = match &dbar {
        ConeRep::RayUnion { generators, .. } => generators.clone(),
        _ => unreachable!("complement is a ray union"),
    };
    let sol = dilating_pair(p, base_k, &d, &dbar_points, opts.alpha_min)?;
    report
        .checks
        .push(named("dilating separating pair found", sol.is_some(), None));
    let Some(sol) = sol else {
        return Ok(());
    };
    let pair = sol.pair;
    let sharp = aug_dual_membership_on_base(&p.k, base_k, &pair, AugDualClass::ASharp, &p.tol)?;
    report.checks.push(NamedCheck {
        name: "pair in K^a#".into(),
        verdict: sharp.verdict,
        witness: sharp.witness,
    });
    let dil = dilating_inclusion_check(&pair, &d, opts.samples, opts.seed, &p.tol)?;
    report.checks.push(NamedCheck {
        name: "C^> lies in int D".into(),
        verdict: dil.verdict,
        witness: dil.witness,
    });
    match which {
        Theorem::Henig1 => eff_conclusions(p, i, &pair, base_k, &mut report.checks)?,
        _ => weff_conclusions(p, i, &pair, base_k, opts, &mut report.checks)?,
    }
    report.pair = Some(pair);
    Ok(())
}

/// Pair with `h ≥ m > 0` on the K-base and `φ ≥ 0` on the complement
/// samples, solved by constraint generation: the program starts from the
/// samples nearest the boundary of `−D` and adds the most violated ones.
fn dilating_pair(
    p: &VOProblem,
    base_k: &BaseSet,
    d: &ConeRep,
    dbar: &[Point],
    alpha_min: f64,
) -> Result<Option<crate::augdual::PairSolution>> {
    let batch = 4 * p.dim();
    let closeness = |y: &Point| d.slack(&y.neg()).unwrap_or(f64::NEG_INFINITY);
    let mut order: Vec<usize> = (0..dbar.len()).collect();
    order.sort_by(|&a, &b| closeness(&dbar[b]).total_cmp(&closeness(&dbar[a])));
    let mut active: Vec<Point> = order.iter().take(batch).map(|&j| dbar[j].clone()).collect();
    for _ in 0..dbar.len().div_ceil(batch) + 1 {
        let sol = PairProgram {
            psi: &p.psi,
            n: p.dim(),
            k_points: &base_k.points,
            k_side: Side::Margin,
            a_points: &active,
            a_side: Side::Zero,
            alpha_min,
            objective: Objective::Margin,
        }
        .solve()?;
        let Some(sol) = sol.filter(|s| s.margin > p.tol.eps_strict) else {
            return Ok(None);
        };
        let eps = 1e-12 * (1.0 + sol.pair.xstar.norm_inf() + sol.pair.alpha);
        let mut violated: Vec<(f64, usize)> = dbar
            .iter()
            .enumerate()
            .map(|(j, y)| (sol.pair.eval_unchecked(y), j))
            .filter(|(v, _)| *v < -eps)
            .collect();
        if violated.is_empty() {
            return Ok(Some(sol));
        }
        violated.sort_by(|a, b| a.0.total_cmp(&b.0));
        active.extend(violated.iter().take(batch).map(|&(_, j)| dbar[j].clone()));
    }
    Ok(None)
}

fn bool_verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

/// `Y ∖ (−int D)` as a ray union of ψ-normalised directions: sphere samples
/// plus boundary directions of `−D` located by bisection on the slack of `D`.
pub fn dilation_complement(
    d: &ConeRep,
    psi: &crate::cone::SeminormSpec,
    tol: &crate::cone::Tolerances,
) -> Result<ConeRep> {
    let n = d.dim();
    psi.validate(n)?;
    if d.slack(&Point::zeros(n)).is_none() {
        return Err(Error::UnsupportedRepresentation(format!(
            "complement of a {} cone",
            d.kind_name()
        )));
    }
    // y is kept iff −y ∉ int D, i.e. slack_D(−y) ≤ 0.
    let keep = |y: &Point| d.slack(&y.neg()).is_some_and(|s| s <= 0.0);
    let dirs = sphere_directions(n, 4 * default_density(n));
    let (members, outside): (Vec<Point>, Vec<Point>) = dirs.into_iter().partition(|y| keep(y));
    let anchors: Vec<&Point> = members
        .iter()
        .filter(|m| m.iter().filter(|c| **c != 0.0).count() == 1)
        .collect();
    let mut pts = members.clone();
    for o in &outside {
        let mut targets: Vec<&Point> = anchors.clone();
        if targets.is_empty() {
            targets.extend(members.iter().take(2 * n));
        }
        for m in targets {
            if let Some(b) = boundary_between(&keep, m, o) {
                pts.push(b);
            }
        }
    }
    let mut gens = Vec::with_capacity(pts.len());
    for y in pts {
        let v = psi.eval_unchecked(&y);
        if v <= tol.eps_mem * y.norm_inf() {
            return Err(Error::DegenerateSeminorm { direction: y });
        }
        gens.push(y.scale(1.0 / v));
    }
    Ok(ConeRep::ray_union(n, dedup(gens, 1e-9)))
}

/// Last kept direction on the great circle from `inside` (kept) to `outside`.
fn boundary_between<F: Fn(&Point) -> bool>(keep: &F, inside: &Point, outside: &Point) -> Option<Point> {
    let a = inside.scale(1.0 / inside.norm2());
    let b = outside.scale(1.0 / outside.norm2());
    if a.dot(&b) < -0.999 {
        return None;
    }
    let at = |s: f64| {
        let q = a.scale(1.0 - s).add(&b.scale(s));
        q.scale(1.0 / q.norm2())
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if keep(&at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(at(lo))
}

fn close_to(v: ExtReal, target: f64, tol: &crate::cone::Tolerances) -> bool {
    v.finite()
        .is_some_and(|v| (v - target).abs() <= tol.eps_opt * target.abs().max(1.0))
}

/// K-base point with the largest `h`, a direction of `C^>` when the pair is
/// sharp.
fn best_direction(pair: &ScalarizingPair, base_k: &BaseSet) -> Option<Point> {
    base_k
        .points
        .iter()
        .max_by(|a, b| pair.h(a).total_cmp(&pair.h(b)))
        .filter(|b| pair.h(b) > 0.0)
        .cloned()
}

/// Efficiency under `C_ψ(x*, α)` and the equivalent scalar characterisations.
fn eff_conclusions(
    p: &VOProblem,
    i: usize,
    pair: &ScalarizingPair,
    base_k: &BaseSet,
    checks: &mut Vec<NamedCheck>,
) -> Result<()> {
    let c = pair.cone();
    let pc = p.with_cone(c.clone())?;
    let y = &p.images[i];
    let expected = p.labels_of(&p.same_image(i));
    let eff_c = eff_indices(&pc, Exec::Parallel)?;
    let in1 = eff_c.contains(&i);
    checks.push(named("xbar in Eff(C)", in1, None));

    let Some(k) = best_direction(pair, base_k) else {
        checks.push(named("direction k in C^>", false, None));
        return Ok(());
    };
    let r2 = solve_p_phi_ak(&pc, &c, y, &k)?;
    let in2 = close_to(r2.optimum, 0.0, &p.tol) && r2.minimizers == expected;
    checks.push(named(
        "{(x,0) : f(x) = f(xbar)} solves (P_phi^{a,k}) at a = f(xbar)",
        in2,
        None,
    ));

    let phi = ScalarizerSpec::SeminormLinear { pair: pair.clone() };
    let r3 = solve_p_phi_a(p, &phi, y)?;
    let in3 = r3.minimizers == expected;
    checks.push(named("{x : f(x) = f(xbar)} = argmin phi(f(x) - f(xbar))", in3, None));
    checks.push(named(
        "solution-set characterisations agree",
        in1 == in2 && in2 == in3,
        None,
    ));

    gerstewitz_agreement(&pc, &c, &y.axpy(-1.0, &k), &k, checks)?;

    let ps = eff_certificate_via_ps(&pc, &p.labels[i], &[y.axpy(-1.0, &k)], std::slice::from_ref(&k), &[1.0]);
    checks.push(named(
        "covering certificate (a, k, s) verifies",
        matches!(ps, Ok(Some(_))),
        None,
    ));

    let eff_k = eff_indices(p, Exec::Parallel)?;
    let bad = eff_c.iter().find(|j| !eff_k.contains(j));
    checks.push(named(
        "Eff(C) within Eff(K)",
        bad.is_none(),
        bad.map(|&j| p.images[j].clone()),
    ));
    Ok(())
}

/// Weak efficiency under `C_ψ(x*, α)` and its scalar characterisations.
fn weff_conclusions(
    p: &VOProblem,
    i: usize,
    pair: &ScalarizingPair,
    base_k: &BaseSet,
    opts: &PipelineOptions,
    checks: &mut Vec<NamedCheck>,
) -> Result<()> {
    let c = pair.cone();
    let pc = p.with_cone(c.clone())?;
    let y = &p.images[i];
    let label = &p.labels[i];
    let weff_c = weff_indices(&pc, Exec::Parallel)?;
    let in1 = weff_c.contains(&i);
    checks.push(named("xbar in WEff(C)", in1, None));

    let ks = interior_directions(p, pair, &c, base_k, opts.directions)?;
    if ks.is_empty() {
        checks.push(named("direction k in int C", false, None));
        return Ok(());
    }
    let mut in2 = true;
    for k in &ks {
        let r = solve_p_phi_ak(&pc, &c, y, k)?;
        in2 &= close_to(r.optimum, 0.0, &p.tol) && r.is_minimizer(label);
    }
    checks.push(named(
        "(xbar, 0) solves (P_phi^{a,k}) at a = f(xbar) for every k",
        in2,
        None,
    ));

    let phi = ScalarizerSpec::SeminormLinear { pair: pair.clone() };
    let in3 = solve_p_phi_a(p, &phi, y)?.is_minimizer(label);
    checks.push(named("xbar in argmin phi(f(x) - f(xbar))", in3, None));
    checks.push(named(
        "solution-set characterisations agree",
        in1 == in2 && in2 == in3,
        None,
    ));

    let k = &ks[0];
    gerstewitz_agreement(&pc, &c, &y.axpy(-1.0, k), k, checks)?;

    let ps = weff_certificate_via_ps(&pc, label, &[y.axpy(-1.0, k)], std::slice::from_ref(k), &[1.0]);
    checks.push(named(
        "weak covering certificate (a, k, s) verifies",
        matches!(ps, Ok(Some(_))),
        None,
    ));

    if p.k.supports_interior() {
        let weff_k = weff_indices(p, Exec::Parallel)?;
        let bad = weff_c.iter().find(|j| !weff_k.contains(j));
        checks.push(named(
            "WEff(C) within WEff(K)",
            bad.is_none(),
            bad.map(|&j| p.images[j].clone()),
        ));
    }
    Ok(())
}

/// Up to `count` directions in `int C`: an interior point of `K` pushed
/// towards spread-out base points, or the base points themselves.
fn interior_directions(
    p: &VOProblem,
    pair: &ScalarizingPair,
    c: &ConeRep,
    base_k: &BaseSet,
    count: usize,
) -> Result<Vec<Point>> {
    let center = interior_point(&p.k, base_k, &p.tol)?
        .or_else(|| best_direction(pair, base_k))
        .map(|v| v.scale(1.0 / v.norm_inf()));
    let mut cands = Vec::new();
    if let Some(ctr) = &center {
        cands.push(ctr.clone());
    }
    let m = base_k.points.len();
    for j in 0..count.saturating_sub(1) {
        let b = &base_k.points[(j * m) / count.max(1) % m];
        match &center {
            Some(ctr) => cands.push(ctr.axpy(0.5, &b.scale(1.0 / b.norm_inf()))),
            None => cands.push(b.clone()),
        }
    }
    let mut out = Vec::new();
    for k in cands {
        if c.is_interior(&k, &p.tol)? && out.len() < count {
            out.push(k);
        }
    }
    Ok(dedup(out, 1e-12))
}

/// The Gerstewitz and constraint-bisection solvers give the same minimisers
/// and optimal values within `1e-9`.
fn gerstewitz_agreement(pc: &VOProblem, c: &ConeRep, a: &Point, k: &Point, checks: &mut Vec<NamedCheck>) -> Result<()> {
    let g = solve_p_phi_ak(pc, c, a, k)?;
    let b = solve_p_phi_ak_by_constraint(pc, c, a, k)?;
    let same_opt = match (g.optimum, b.optimum) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => (x - y).abs() <= 1e-9,
        (x, y) => x == y,
    };
    checks.push(named(
        "Gerstewitz and constraint forms agree",
        same_opt && g.minimizers == b.minimizers,
        None,
    ));
    Ok(())
}

/// Exactness of the set used as `𝔸(x̄)` in a report.
pub fn amap_exactness(report: &TheoremReport) -> Option<CertExactness> {
    report.amap.as_ref().map(|a| a.exactness)
}
