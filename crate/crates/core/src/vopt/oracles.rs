//! Brute-force solution-set oracles over finite image sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::problem::{pair_scale, AMapVariant, Concept, SolutionSet, VOProblem};
use crate::augdual::find_sharp_pair;
use crate::cone::base::dedup;
use crate::cone::{default_density, normlike_base, ConeRep, Point};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::scalarizers::ScalarizingPair;
use crate::separation::{find_separating_pair, CertExactness};

/// Number of K-directions mixed into the sampled `RaysOfDifferencesPlusK` map
/// when no count is given.
pub const DEFAULT_K_SAMPLES: usize = 8;

const PLUS_K_SCALES: [f64; 3] = [0.5, 1.0, 2.0];

/// `f(x̄) − f(x) ∈ K∖{0}`: `x` dominates `x̄`.
fn dominates(p: &VOProblem, x: usize, xbar: usize) -> Result<bool> {
    let d = p.images[xbar].sub(&p.images[x]);
    let scale = pair_scale(&p.images[x], &p.images[xbar]);
    if d.norm_inf() <= p.tol.eps_mem * scale {
        return Ok(false);
    }
    p.k.contains(&d, &p.tol)
}

/// `f(x̄) − f(x) ∈ int K`.
fn strictly_dominates(p: &VOProblem, x: usize, xbar: usize) -> Result<bool> {
    let d = p.images[xbar].sub(&p.images[x]);
    p.k.is_interior(&d, &p.tol)
}

pub(crate) fn is_efficient(p: &VOProblem, xbar: usize) -> Result<bool> {
    for x in 0..p.len() {
        if dominates(p, x, xbar)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn is_weakly_efficient(p: &VOProblem, xbar: usize) -> Result<bool> {
    for x in 0..p.len() {
        if strictly_dominates(p, x, xbar)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn filter_indices<F>(p: &VOProblem, exec: Exec, keep: F) -> Result<Vec<usize>>
where
    F: Fn(usize) -> Result<bool> + Sync + Send,
{
    let flags = par::try_map_range(exec, p.len(), keep)?;
    Ok(flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect())
}

fn solution(p: &VOProblem, concept: Concept, idx: &[usize]) -> SolutionSet {
    SolutionSet {
        concept,
        members: p.labels_of(idx),
        certificates: BTreeMap::new(),
    }
}

pub(crate) fn eff_indices(p: &VOProblem, exec: Exec) -> Result<Vec<usize>> {
    filter_indices(p, exec, |i| is_efficient(p, i))
}

pub(crate) fn weff_indices(p: &VOProblem, exec: Exec) -> Result<Vec<usize>> {
    if !p.k.supports_interior() {
        return Err(Error::InteriorUnsupported(p.k.kind_name()));
    }
    filter_indices(p, exec, |i| is_weakly_efficient(p, i))
}

/// Labels not dominated through `−K∖{0}`.
pub fn eff_set(p: &VOProblem) -> Result<SolutionSet> {
    eff_set_with(p, Exec::Parallel)
}

pub fn eff_set_with(p: &VOProblem, exec: Exec) -> Result<SolutionSet> {
    Ok(solution(p, Concept::Eff, &eff_indices(p, exec)?))
}

/// Labels not dominated through `−int K`.
pub fn weff_set(p: &VOProblem) -> Result<SolutionSet> {
    weff_set_with(p, Exec::Parallel)
}

pub fn weff_set_with(p: &VOProblem, exec: Exec) -> Result<SolutionSet> {
    Ok(solution(p, Concept::Weff, &weff_indices(p, exec)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AMap {
    /// A ray union; no generators means the zero cone.
    pub cone: ConeRep,
    pub variant: AMapVariant,
    pub exactness: CertExactness,
}

impl AMap {
    pub fn generators(&self) -> &[Point] {
        match &self.cone {
            ConeRep::RayUnion { generators, .. } => generators,
            _ => &[],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generators().is_empty()
    }
}

/// Up to `count` unit directions of `K`: generators first, then an even
/// stride through the normlike-base.
fn k_directions(p: &VOProblem, count: usize) -> Result<Vec<Point>> {
    let mut dirs: Vec<Point> =
        p.k.generators()
            .unwrap_or_default()
            .into_iter()
            .filter(|g| g.norm2() > 0.0)
            .map(|g| g.scale(1.0 / g.norm2()))
            .collect();
    if dirs.len() < count {
        let base = normlike_base(&p.k, &p.psi, default_density(p.dim()), &p.tol)?;
        let extra = count - dirs.len();
        let m = base.points.len();
        for j in 0..extra.min(m) {
            let b = &base.points[j * m / extra.min(m)];
            dirs.push(b.scale(1.0 / b.norm2()));
        }
        dirs = dedup(dirs, 1e-9);
    }
    dirs.truncate(count);
    Ok(dirs)
}

/// The cone `𝔸(x̄)` as a ray union.
///
/// `RaysOfDifferences` keeps the raw nonzero differences (one per direction).
/// `RaysOfDifferencesPlusK` uses the unit vectors of `d + s·κ` for `d` a
/// difference or zero, `κ` one of `k_samples` K-directions or zero and
/// `s ∈ {½, 1, 2}`; it under-approximates the true map and is flagged sampled.
pub fn amap_cone(p: &VOProblem, xbar: &str, variant: AMapVariant, k_samples: usize) -> Result<AMap> {
    let i = p.index_of(xbar)?;
    amap_cone_at(p, i, variant, k_samples)
}

pub(crate) fn amap_cone_at(p: &VOProblem, i: usize, variant: AMapVariant, k_samples: usize) -> Result<AMap> {
    let n = p.dim();
    let y = &p.images[i];
    let mut diffs = Vec::new();
    let mut dirs: Vec<Point> = Vec::new();
    for x in &p.images {
        let d = x.sub(y);
        if d.norm_inf() <= p.tol.eps_mem * pair_scale(x, y) {
            continue;
        }
        let u = d.scale(1.0 / d.norm2());
        if dirs
            .iter()
            .any(|v| v.iter().zip(u.iter()).all(|(a, b)| (a - b).abs() <= 1e-9))
        {
            continue;
        }
        dirs.push(u);
        diffs.push(d);
    }
    match variant {
        AMapVariant::RaysOfDifferences => Ok(AMap {
            cone: ConeRep::ray_union(n, diffs),
            variant,
            exactness: CertExactness::Exact,
        }),
        AMapVariant::RaysOfDifferencesPlusK => {
            let kappas = k_directions(p, k_samples)?;
            let mut gens = Vec::new();
            for d in std::iter::once(Point::zeros(n)).chain(diffs) {
                gens.push(d.clone());
                for kap in &kappas {
                    for s in PLUS_K_SCALES {
                        gens.push(d.axpy(s, kap));
                    }
                }
            }
            let gens = gens
                .into_iter()
                .filter(|g| g.norm_inf() > p.tol.eps_mem)
                .map(|g| g.scale(1.0 / g.norm2()))
                .collect();
            Ok(AMap {
                cone: ConeRep::ray_union(n, dedup(gens, 1e-9)),
                variant,
                exactness: CertExactness::Sampled,
            })
        }
    }
}

/// Whether every generator ray of `𝔸(x̄)` avoids `−K∖{0}`.
fn amap_proper(p: &VOProblem, amap: &AMap) -> Result<bool> {
    let minus_k = p.k.negated();
    for g in amap.generators() {
        if g.norm_inf() > p.tol.eps_mem && minus_k.contains(g, &p.tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `𝔸`-proper efficiency: efficient and `𝔸(x̄) ∩ (−K) = {0}`.
pub fn peff_a_set(p: &VOProblem, variant: AMapVariant) -> Result<SolutionSet> {
    peff_a_set_with(p, variant, DEFAULT_K_SAMPLES, Exec::Parallel)
}

pub fn peff_a_set_with(p: &VOProblem, variant: AMapVariant, k_samples: usize, exec: Exec) -> Result<SolutionSet> {
    let idx = filter_indices(p, exec, |i| {
        if !is_efficient(p, i)? {
            return Ok(false);
        }
        let amap = amap_cone_at(p, i, variant, k_samples)?;
        amap_proper(p, &amap)
    })?;
    Ok(solution(p, Concept::PeffA { variant }, &idx))
}

/// Searches a Bishop-Phelps dilating cone certifying Henig proper efficiency
/// of `x̄`. `None` means "not certified", not "not proper".
pub fn peff_henig_check(p: &VOProblem, xbar: &str, alpha_min: f64) -> Result<Option<ScalarizingPair>> {
    let i = p.index_of(xbar)?;
    peff_henig_check_at(p, i, alpha_min)
}

pub(crate) fn peff_henig_check_at(p: &VOProblem, i: usize, alpha_min: f64) -> Result<Option<ScalarizingPair>> {
    if !is_efficient(p, i)? {
        return Ok(None);
    }
    let amap = amap_cone_at(p, i, AMapVariant::RaysOfDifferences, 0)?;
    let pair = if amap.is_zero() {
        match find_sharp_pair(&p.k, &p.psi, alpha_min, &p.tol)? {
            Some(sp) => sp.pair,
            None => return Ok(None),
        }
    } else {
        match find_separating_pair(&amap.cone, &p.k, &p.psi, true, alpha_min, &p.tol)? {
            Some(cert) if cert.conclusions.passed() => cert.pair,
            _ => return Ok(None),
        }
    };
    let reordered = p.with_cone(pair.cone())?;
    Ok(is_efficient(&reordered, i)?.then_some(pair))
}

pub fn peff_henig_set(p: &VOProblem, alpha_min: f64) -> Result<SolutionSet> {
    peff_henig_set_with(p, alpha_min, Exec::Parallel)
}

pub fn peff_henig_set_with(p: &VOProblem, alpha_min: f64, exec: Exec) -> Result<SolutionSet> {
    let found = par::try_map_range(exec, p.len(), |i| peff_henig_check_at(p, i, alpha_min))?;
    let mut set = solution(p, Concept::PeffHenig, &[]);
    for (i, pair) in found.into_iter().enumerate() {
        if let Some(pair) = pair {
            set.members.push(p.labels[i].clone());
            set.certificates.insert(p.labels[i].clone(), pair);
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augdual::DEFAULT_ALPHA_MIN;
    use crate::cone::SeminormSpec;

    fn problem(images: &[[f64; 2]]) -> VOProblem {
        VOProblem::from_images(
            images.iter().map(|p| Point::from(*p)).collect(),
            ConeRep::orthant(2),
            SeminormSpec::L1,
        )
        .unwrap()
    }

    const FIXTURE: [[f64; 2]; 4] = [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0], [3.0, 3.0]];

    #[test]
    fn eff_examples() {
        let p = problem(&FIXTURE);
        assert_eq!(eff_set(&p).unwrap().members, vec!["p0", "p1", "p2"]);
        assert_eq!(eff_set(&problem(&[[5.0, -1.0]])).unwrap().members, vec!["p0"]);
        assert_eq!(
            eff_set(&problem(&[[1.0, 1.0], [1.0, 1.0]])).unwrap().members,
            vec!["p0", "p1"]
        );
    }

    #[test]
    fn weff_examples() {
        let p = problem(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0], [3.0, 3.0], [1.0, 4.0]]);
        let w = weff_set(&p).unwrap();
        assert_eq!(w.members, vec!["p0", "p1", "p2", "p4"]);
        let e = eff_set(&p).unwrap();
        assert!(!e.contains("p4"));
        assert!(e.is_subset_of(&w));
        let ray = ConeRep::generated(vec![Point::from([1.0, 0.0])]);
        let q = p.with_cone(ray).unwrap();
        assert!(matches!(weff_set(&q), Err(Error::InteriorUnsupported(_))));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let p = problem(&FIXTURE);
        assert_eq!(
            eff_set_with(&p, Exec::Sequential).unwrap(),
            eff_set_with(&p, Exec::Parallel).unwrap()
        );
        assert_eq!(
            weff_set_with(&p, Exec::Sequential).unwrap(),
            weff_set_with(&p, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn amap_examples() {
        let p = problem(&[[0.0, 0.0], [1.0, 2.0]]);
        let a = amap_cone(&p, "p0", AMapVariant::RaysOfDifferences, 0).unwrap();
        assert_eq!(a.generators(), &[Point::from([1.0, 2.0])]);
        assert_eq!(a.exactness, CertExactness::Exact);

        let single = problem(&[[4.0, 4.0]]);
        assert!(amap_cone(&single, "p0", AMapVariant::RaysOfDifferences, 0)
            .unwrap()
            .is_zero());

        let plus = amap_cone(&p, "p0", AMapVariant::RaysOfDifferencesPlusK, 2).unwrap();
        assert_eq!(plus.exactness, CertExactness::Sampled);
        let unit = |v: [f64; 2]| {
            let v = Point::from(v);
            v.scale(1.0 / v.norm2())
        };
        let expected = [[1.0, 2.0], [2.0, 2.0], [1.0, 3.0], [1.0, 0.0], [0.0, 1.0]];
        for e in expected {
            let u = unit(e);
            assert!(
                plus.generators().iter().any(|g| g.sub(&u).norm_inf() < 1e-12),
                "missing {u}"
            );
        }
        // Every generator is a unit vector in the positive span of (1,2), e1, e2.
        for g in plus.generators() {
            assert!((g.norm2() - 1.0).abs() < 1e-12);
            assert!(g.iter().all(|&c| c >= 0.0));
        }
        assert!(amap_cone(&p, "nope", AMapVariant::RaysOfDifferences, 0).is_err());
    }

    #[test]
    fn peff_a_examples() {
        let p = problem(&[[0.0, 0.0], [1.0, -1.0]]);
        let s = peff_a_set(&p, AMapVariant::RaysOfDifferences).unwrap();
        assert!(s.contains("p0"));
        let q = problem(&[[0.0, 0.0], [-1.0, 0.0], [-2.0, 1.0]]);
        let s = peff_a_set(&q, AMapVariant::RaysOfDifferences).unwrap();
        assert!(s.contains("p2"));
        let f = problem(&FIXTURE);
        for v in [AMapVariant::RaysOfDifferences, AMapVariant::RaysOfDifferencesPlusK] {
            let s = peff_a_set(&f, v).unwrap();
            assert!(!s.contains("p3"));
            assert!(s.is_subset_of(&eff_set(&f).unwrap()));
        }
    }

    #[test]
    fn henig_examples() {
        let p = problem(&FIXTURE);
        let pair = peff_henig_check(&p, "p1", DEFAULT_ALPHA_MIN)
            .unwrap()
            .expect("certified");
        let reordered = p.with_cone(pair.cone()).unwrap();
        assert!(eff_set(&reordered).unwrap().contains("p1"));
        assert!(peff_henig_check(&p, "p3", DEFAULT_ALPHA_MIN).unwrap().is_none());

        let single = problem(&[[1.0, 1.0]]);
        assert!(peff_henig_check(&single, "p0", DEFAULT_ALPHA_MIN).unwrap().is_some());

        let set = peff_henig_set(&p, DEFAULT_ALPHA_MIN).unwrap();
        assert_eq!(set.members, vec!["p0", "p1", "p2"]);
        assert_eq!(set.certificates.len(), 3);
    }
}
