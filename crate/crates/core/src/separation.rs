//! Cone separation conditions and Bishop-Phelps type separating pairs.
//!
//! For cones `A` and `K` the sets involved are `S_A⁰ = conv({0} ∪ B_A)` and
//! `S_{−K} = conv(B_{−K})`, built from normlike-bases.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::augdual::{interior_point, Objective, PairProgram, Side, Verdict};
use crate::cone::polytope::{polytope_contains, polytopes_disjoint, Polytope};
use crate::cone::rep::generated_residual;
use crate::cone::{
    default_density, hull_base, hull_s0, normlike_base, polytope_contains_zero, sample_cone_point, BaseSet, ConeRep,
    Point, SeminormSpec, Tolerances,
};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::par::{self, stream_rng, Exec};
use crate::scalarizers::ScalarizingPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `cl S_A⁰ ∩ cl S_{−K} = ∅`
    Cond4,
    /// `A ∩ cl conv(−K) = {0}`
    Cond5,
    /// `0 ∉ cl S_{−K}`
    Cond6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertExactness {
    Exact,
    Sampled,
}

impl CertExactness {
    fn from_bases(bases: &[&BaseSet]) -> Self {
        if bases.iter().all(|b| b.is_exact()) {
            CertExactness::Exact
        } else {
            CertExactness::Sampled
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: Verdict,
    pub witness: Option<Point>,
    pub exactness: CertExactness,
}

/// Bases of `A` and `−K` under `ψ`.
struct Bases {
    a: BaseSet,
    minus_k: BaseSet,
}

fn bases(a: &ConeRep, k: &ConeRep, psi: &SeminormSpec, tol: &Tolerances) -> Result<Bases> {
    crate::error::check_dim(k.dim(), a.dim())?;
    let n = k.dim();
    Ok(Bases {
        a: hull_base(a, psi, default_density(n), tol)?,
        minus_k: hull_base(&k.negated(), psi, default_density(n), tol)?,
    })
}

fn hull_or_origin(base: &BaseSet, include_zero: bool, n: usize) -> Result<Polytope> {
    if base.points.is_empty() {
        Polytope::new(vec![Point::zeros(n)])
    } else {
        hull_s0(base, include_zero)
    }
}

pub fn check_condition(
    cond: Condition,
    a: &ConeRep,
    k: &ConeRep,
    psi: &SeminormSpec,
    tol: &Tolerances,
) -> Result<ConditionReport> {
    let b = bases(a, k, psi, tol)?;
    let n = k.dim();
    let report = |ok: bool, witness: Option<Point>, bases: &[&BaseSet]| {
        let exactness = CertExactness::from_bases(bases);
        ConditionReport {
            condition: cond,
            holds: if ok {
                Verdict::Holds.cap(exactness == CertExactness::Exact)
            } else {
                Verdict::Fails
            },
            witness,
            exactness,
        }
    };
    match cond {
        Condition::Cond4 => {
            if b.minus_k.points.is_empty() {
                return Ok(report(true, None, &[&b.a, &b.minus_k]));
            }
            let p = hull_or_origin(&b.a, true, n)?;
            let q = hull_s0(&b.minus_k, false)?;
            let d = polytopes_disjoint(&p, &q, tol)?;
            Ok(report(d.disjoint, d.common_point, &[&b.a, &b.minus_k]))
        }
        Condition::Cond6 => {
            if b.minus_k.points.is_empty() {
                return Ok(report(true, None, &[&b.minus_k]));
            }
            let q = hull_s0(&b.minus_k, false)?;
            let contains = polytope_contains_zero(&q, tol)?;
            Ok(report(!contains, contains.then(|| Point::zeros(n)), &[&b.minus_k]))
        }
        Condition::Cond5 => {
            let witness = cond5_witness(a, k, &b, tol)?;
            Ok(report(witness.is_none(), witness, &[&b.a, &b.minus_k]))
        }
    }
}

/// A nonzero point of `A ∩ cl conv(−K)`, if any.
fn cond5_witness(a: &ConeRep, k: &ConeRep, b: &Bases, tol: &Tolerances) -> Result<Option<Point>> {
    let minus_k = k.negated();
    let minus_k_gens: &[Point] = &b.minus_k.points;
    let in_conv_minus_k = |g: &Point| -> Result<bool> {
        if minus_k.is_convex() {
            minus_k.contains(g, tol)
        } else {
            Ok(generated_residual(minus_k_gens, g)? <= tol.eps_mem * g.norm_inf().max(1.0))
        }
    };
    if !a.is_convex() {
        for g in &b.a.points {
            if in_conv_minus_k(g)? {
                return Ok(Some(g.clone()));
            }
        }
        return Ok(None);
    }
    if b.a.points.is_empty() || minus_k_gens.is_empty() {
        return Ok(None);
    }
    // Conic combinations Σλᵢaᵢ = Σμⱼbⱼ with Σμ = 1, falling back to Σλ = 1.
    for normalize_a in [false, true] {
        if let Some(y) = common_conic_point(&b.a.points, minus_k_gens, normalize_a, tol)? {
            if y.norm_inf() > 1e-7 {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

fn common_conic_point(a: &[Point], b: &[Point], normalize_a: bool, tol: &Tolerances) -> Result<Option<Point>> {
    let n = a[0].dim();
    let (na, nb) = (a.len(), b.len());
    let nv = na + nb + 2 * n;
    let mut lp = LinearProgram::new(nv);
    let mut obj = vec![0.0; nv];
    obj[na + nb..].fill(1.0);
    lp.minimize(&obj);
    for i in 0..n {
        let mut row = vec![0.0; nv];
        for (j, v) in a.iter().enumerate() {
            row[j] = v[i];
        }
        for (j, v) in b.iter().enumerate() {
            row[na + j] = -v[i];
        }
        row[na + nb + i] = 1.0;
        row[na + nb + n + i] = -1.0;
        lp.add(&row, Relation::Eq, 0.0);
    }
    let mut row = vec![0.0; nv];
    if normalize_a {
        row[..na].fill(1.0);
    } else {
        row[na..na + nb].fill(1.0);
    }
    lp.add(&row, Relation::Eq, 1.0);
    let Some(sol) = lp.solve()?.optimal() else {
        return Ok(None);
    };
    if sol.objective > tol.eps_mem {
        return Ok(None);
    }
    let mut y = Point::zeros(n);
    for (l, v) in sol.x[..na].iter().zip(a) {
        y = y.axpy(*l, v);
    }
    Ok(Some(y))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cond9Report {
    pub verdict: Verdict,
    pub witness: Option<Point>,
}

/// Sampled test of `cl S_{−K}(ψ) = {x : ψ(x) ≤ 1, ⟨x*, x⟩ ≥ α}` in both
/// directions.
pub fn check_condition_9(
    k: &ConeRep,
    psi: &SeminormSpec,
    pair: &ScalarizingPair,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Cond9Report> {
    let n = k.dim();
    crate::error::check_dim(n, pair.dim())?;
    let base = hull_base(&k.negated(), psi, default_density(n), tol)?;
    if base.points.is_empty() {
        return Err(Error::PreconditionViolated("cone is trivial".into()));
    }
    let q = hull_s0(&base, false)?;
    let slack = |x: &Point| tol.eps_mem * x.norm_inf().max(1.0);
    let in_slice = |x: &Point| psi.eval_unchecked(x) <= 1.0 + slack(x) && pair.xstar.dot(x) >= pair.alpha - slack(x);

    // ⊆: base points and convex combinations of them lie in the slice.
    let sub = par::map_range(Exec::Parallel, samples, |i| {
        let x = if i < base.points.len() {
            base.points[i].clone()
        } else {
            let mut rng = stream_rng(seed, i as u64);
            random_convex_combination(&base.points, &mut rng)
        };
        (!in_slice(&x)).then_some(x)
    });
    if let Some(w) = sub.into_iter().flatten().next() {
        return Ok(Cond9Report {
            verdict: Verdict::Fails,
            witness: Some(w),
        });
    }

    // ⊇: slice samples lie in the hull. Sampled bases only approximate the
    // curved part of the sphere, so points within the estimated gap of it are
    // skipped.
    let gap = if base.is_exact() { 0.0 } else { sampling_gap(n) };
    let radius = 1.0f64.max(2.0 * base.points.iter().fold(0.0f64, |m, p| m.max(p.norm_inf())));
    let sup = par::map_range(Exec::Parallel, samples, |i| -> Result<Option<Point>> {
        let mut rng = stream_rng(seed ^ 0x9e37_79b9_7f4a_7c15, i as u64);
        let x = Point::raw((0..n).map(|_| rng.random_range(-radius..radius)).collect());
        if !in_slice(&x) || psi.eval_unchecked(&x) > 1.0 - gap {
            return Ok(None);
        }
        Ok((!polytope_contains(&q, &x, tol)?).then_some(x))
    });
    for s in sup {
        if let Some(w) = s? {
            return Ok(Cond9Report {
                verdict: Verdict::Fails,
                witness: Some(w),
            });
        }
    }
    Ok(Cond9Report {
        verdict: Verdict::HoldsOnSamples,
        witness: None,
    })
}

/// Estimated sagitta between sampled sphere points and the true sphere.
fn sampling_gap(n: usize) -> f64 {
    let density = default_density(n) as f64;
    let spacing = if n == 2 {
        2.0 * std::f64::consts::PI / density
    } else {
        2.0 * (4.0 * std::f64::consts::PI / density).powf(1.0 / (n as f64 - 1.0))
    };
    (0.5 * spacing * spacing).min(0.5)
}

fn random_convex_combination<R: Rng>(points: &[Point], rng: &mut R) -> Point {
    let n = points[0].dim();
    let terms = rng.random_range(1..=3usize.min(points.len()));
    let mut weights = Vec::with_capacity(terms);
    let mut chosen = Vec::with_capacity(terms);
    for _ in 0..terms {
        chosen.push(&points[rng.random_range(0..points.len())]);
        weights.push(rng.random_range(0.01..1.0f64));
    }
    let total: f64 = weights.iter().sum();
    let mut x = Point::zeros(n);
    for (w, p) in weights.iter().zip(chosen) {
        x = x.axpy(w / total, p);
    }
    x
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conclusions {
    /// `K ⊆ C_ψ(x*, α)`
    pub k_in_c: Verdict,
    /// `A ∩ −C = {0}` (strict) or `A ∩ −int C = ∅` (weak).
    pub a_meets_minus_c_only_at_0: Verdict,
    /// `K∖{0} ⊆ C^>` (strict) or `int K ⊆ C^>` (weak).
    pub interior_inclusions: Verdict,
    /// Claimed margins are attained and have the required sign.
    pub margins: Verdict,
    pub witness: Option<Point>,
}

impl Conclusions {
    pub fn passed(&self) -> bool {
        self.k_in_c.passed()
            && self.a_meets_minus_c_only_at_0.passed()
            && self.interior_inclusions.passed()
            && self.margins.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub pair: ScalarizingPair,
    pub strict: bool,
    /// `min ⟨x*, b⟩ − αψ(b)` over the K-base.
    pub margin_k: f64,
    /// `min ⟨x*, a⟩ + αψ(a)` over the A-base.
    pub margin_a: f64,
    pub conclusions: Conclusions,
    pub exactness: CertExactness,
}

const VERIFY_SAMPLES: usize = 512;
const VERIFY_SEED: u64 = 0x00c0_ffee;

/// LP search for a Bishop-Phelps separating pair of `A` and `K`.
///
/// Strict: `⟨x*, b⟩ − αψ(b) ≥ m` on the K-base and `⟨x*, a⟩ + αψ(a) ≥ m` on
/// the A-base with `m > eps_strict`. Weak: the same program with `m ≥ 0`; when
/// the optimum is zero a second program maximises `h` at the K-base centroid
/// keeping both families nonnegative.
pub fn find_separating_pair(
    a: &ConeRep,
    k: &ConeRep,
    psi: &SeminormSpec,
    strict: bool,
    alpha_min: f64,
    tol: &Tolerances,
) -> Result<Option<SeparationCertificate>> {
    crate::error::check_dim(k.dim(), a.dim())?;
    let n = k.dim();
    let base_k = normlike_base(k, psi, default_density(n), tol)?;
    let base_a = hull_base(a, psi, default_density(n), tol)?;
    if base_k.points.is_empty() {
        return Err(Error::PreconditionViolated("cone K is trivial".into()));
    }
    let stage1 = PairProgram {
        psi,
        n,
        k_points: &base_k.points,
        k_side: Side::Margin,
        a_points: &base_a.points,
        a_side: Side::Margin,
        alpha_min,
        objective: Objective::Margin,
    }
    .solve()?;
    let Some(s1) = stage1 else {
        return Ok(None);
    };
    let pair = if s1.margin > tol.eps_strict {
        s1.pair
    } else if strict || s1.margin < -tol.eps_strict {
        return Ok(None);
    } else {
        let centroid = Polytope::new(base_k.points.clone())?.centroid();
        let stage2 = PairProgram {
            psi,
            n,
            k_points: &base_k.points,
            k_side: Side::Zero,
            a_points: &base_a.points,
            a_side: Side::Zero,
            alpha_min,
            objective: Objective::HAt(centroid),
        }
        .solve()?;
        match stage2 {
            Some(s2) if s2.objective > tol.eps_strict => s2.pair,
            _ => return Ok(None),
        }
    };
    let margin_k = base_k.points.iter().map(|b| pair.h(b)).fold(f64::INFINITY, f64::min);
    let margin_a = if base_a.points.is_empty() {
        margin_k.max(0.0)
    } else {
        base_a
            .points
            .iter()
            .map(|p| pair.eval_unchecked(p))
            .fold(f64::INFINITY, f64::min)
    };
    let exactness = CertExactness::from_bases(&[&base_k, &base_a]);
    let mut cert = SeparationCertificate {
        pair,
        strict,
        margin_k,
        margin_a,
        conclusions: Conclusions {
            k_in_c: Verdict::Fails,
            a_meets_minus_c_only_at_0: Verdict::Fails,
            interior_inclusions: Verdict::Fails,
            margins: Verdict::Fails,
            witness: None,
        },
        exactness,
    };
    cert.conclusions = verify_certificate(&cert, a, k, VERIFY_SAMPLES, VERIFY_SEED, tol)?;
    Ok(Some(cert))
}

/// Re-tests every conclusion of `cert` on base points and fresh samples.
pub fn verify_certificate(
    cert: &SeparationCertificate,
    a: &ConeRep,
    k: &ConeRep,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Conclusions> {
    let n = k.dim();
    let pair = &cert.pair;
    pair.validate()?;
    let psi = &pair.psi;
    let c = pair.cone();
    let base_k = normlike_base(k, psi, default_density(n), tol)?;
    let base_a = hull_base(a, psi, default_density(n), tol)?;
    let mut witness = None;

    // Margins as claimed.
    let mk = base_k.points.iter().map(|b| pair.h(b)).fold(f64::INFINITY, f64::min);
    let ma = base_a
        .points
        .iter()
        .map(|p| pair.eval_unchecked(p))
        .fold(f64::INFINITY, f64::min);
    let sign_ok = if cert.strict {
        cert.margin_k > tol.eps_strict && cert.margin_a > tol.eps_strict
    } else {
        cert.margin_k >= -tol.eps_strict && cert.margin_a >= -tol.eps_strict
    };
    let margins = if sign_ok && mk >= cert.margin_k - 1e-9 && ma >= cert.margin_a - 1e-9 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };

    // K-side: base points exactly, then random cone samples.
    let k_samples = cone_samples(k, &base_k, samples, seed);
    let mut k_in_c = Verdict::Holds.cap(base_k.is_exact());
    let mut interior = k_in_c;
    for y in base_k.points.iter().chain(&k_samples) {
        let cls = c.classify(y, tol)?;
        if !cls.is_member() {
            k_in_c = Verdict::Fails;
            witness.get_or_insert_with(|| y.clone());
        }
        if cert.strict && cls != crate::cone::Membership::Interior {
            interior = Verdict::Fails;
            witness.get_or_insert_with(|| y.clone());
        }
    }
    if !cert.strict {
        interior = weak_interior_inclusion(k, &base_k, &c, samples, seed, tol, &mut witness)?;
    }

    // A-side: generators exactly for ray unions; convex A also needs samples
    // because φ is only sublinear.
    let a_samples = if a.is_convex() {
        cone_samples(a, &base_a, samples, seed ^ 1)
    } else {
        Vec::new()
    };
    let mut a_side = if a.is_convex() && base_a.points.len() > 1 {
        Verdict::HoldsOnSamples
    } else {
        Verdict::Holds.cap(base_a.is_exact())
    };
    for y in base_a.points.iter().chain(&a_samples) {
        let v = pair.eval_unchecked(y);
        let scale = tol.eps_strict * (1.0 + pair.xstar.norm_inf() + pair.alpha) * y.norm_inf().max(1.0);
        let bad = if cert.strict { v <= scale } else { v < -scale };
        if bad {
            a_side = Verdict::Fails;
            witness.get_or_insert_with(|| y.clone());
        }
    }

    Ok(Conclusions {
        k_in_c,
        a_meets_minus_c_only_at_0: a_side,
        interior_inclusions: interior,
        margins,
        witness,
    })
}

fn cone_samples(cone: &ConeRep, base: &BaseSet, samples: usize, seed: u64) -> Vec<Point> {
    par::map_range(Exec::Parallel, samples, |i| {
        let mut rng = stream_rng(seed, i as u64);
        sample_cone_point(cone, base, &mut rng)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `int K ⊆ C^>` on samples: positive combinations including an interior point.
fn weak_interior_inclusion(
    k: &ConeRep,
    base_k: &BaseSet,
    c: &ConeRep,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
    witness: &mut Option<Point>,
) -> Result<Verdict> {
    let Some(center) = interior_point(k, base_k, tol)? else {
        return Ok(Verdict::Holds);
    };
    let center = center.scale(1.0 / center.norm_inf());
    let mut verdict = Verdict::HoldsOnSamples;
    let pts = cone_samples(k, base_k, samples, seed ^ 2);
    for (i, p) in std::iter::once(Point::zeros(k.dim())).chain(pts).enumerate() {
        let w = 0.05 + 0.95 * ((i * 7919) % 1000) as f64 / 1000.0;
        let y = p.axpy(w, &center);
        if !c.is_interior(&y, tol)? {
            verdict = Verdict::Fails;
            witness.get_or_insert(y);
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DilationCheck {
    pub verdict: Verdict,
    pub witness: Option<Point>,
}

/// Sampled test of `C^>_ψ(x*, α) ⊆ int D`.
pub fn dilating_inclusion_check(
    pair: &ScalarizingPair,
    d: &ConeRep,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<DilationCheck> {
    if !d.supports_interior() {
        return Err(Error::InteriorUnsupported(d.kind_name()));
    }
    let n = pair.dim();
    crate::error::check_dim(d.dim(), n)?;
    let found = par::map_range(Exec::Parallel, samples, |i| -> Result<Option<Point>> {
        let mut rng = stream_rng(seed, i as u64);
        for _ in 0..64 {
            let y = Point::raw((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect());
            if pair.h(&y) > tol.eps_strict * y.norm_inf().max(1.0) * (1.0 + pair.xstar.norm_inf()) {
                return Ok((!d.is_interior(&y, tol)?).then_some(y));
            }
        }
        Ok(None)
    });
    for f in found {
        if let Some(w) = f? {
            return Ok(DilationCheck {
                verdict: Verdict::Fails,
                witness: Some(w),
            });
        }
    }
    Ok(DilationCheck {
        verdict: Verdict::HoldsOnSamples,
        witness: None,
    })
}
