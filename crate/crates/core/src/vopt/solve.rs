//! Enumerative solvers for the scalar problems `min φ(f(x) − a)` and
//! `min {λ : f(x) ∈ a + λk − C}`.

use serde::{Deserialize, Serialize};

use super::oracles::{is_efficient, is_weakly_efficient};
use super::problem::{pair_scale, VOProblem};
use crate::cone::{ConeRep, Point, Tolerances};
use crate::error::{check_dim, Error, Result};
use crate::par::{self, Exec};
use crate::scalarizers::{
    bisect_sublevel, direction_scale, eval_gerstewitz, representing_value, ExtReal, ScalarizerSpec,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarSolveResult {
    /// Labels whose value is within `eps_opt·max(1, |optimum|)` of the optimum.
    pub minimizers: Vec<String>,
    pub optimum: ExtReal,
    /// Objective value (or minimal feasible `λ`) per label, in problem order.
    pub per_label_values: Vec<ExtReal>,
}

impl ScalarSolveResult {
    pub fn is_minimizer(&self, label: &str) -> bool {
        self.minimizers.iter().any(|m| m == label)
    }
}

fn within(v: f64, opt: f64, tol: &Tolerances) -> bool {
    v <= opt + tol.eps_opt * opt.abs().max(1.0)
}

/// Sequential reduction over per-label values, so the result does not depend
/// on how the values were computed.
fn reduce(p: &VOProblem, values: Vec<ExtReal>) -> ScalarSolveResult {
    let opt = values.iter().filter_map(|v| v.finite()).fold(f64::INFINITY, f64::min);
    let (optimum, minimizers) = if opt.is_finite() {
        let idx: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.finite().is_some_and(|v| within(v, opt, &p.tol)))
            .map(|(i, _)| i)
            .collect();
        (ExtReal::Finite(opt), p.labels_of(&idx))
    } else {
        (ExtReal::PosInf, Vec::new())
    };
    ScalarSolveResult {
        minimizers,
        optimum,
        per_label_values: values,
    }
}

/// `min_x φ(f(x) − a)` by enumeration.
pub fn solve_p_phi_a(p: &VOProblem, phi: &ScalarizerSpec, a: &Point) -> Result<ScalarSolveResult> {
    solve_p_phi_a_with(p, phi, a, Exec::Parallel)
}

pub fn solve_p_phi_a_with(p: &VOProblem, phi: &ScalarizerSpec, a: &Point, exec: Exec) -> Result<ScalarSolveResult> {
    check_dim(p.dim(), a.dim())?;
    let values = par::try_map_range(exec, p.len(), |i| phi.eval(&p.images[i].sub(a), &p.tol))?;
    Ok(reduce(p, values))
}

/// `min {λ : f(x) − a − λk ∈ −C}` with per-label `λ` from the Gerstewitz
/// functional of `C`; `+∞` marks labels with no feasible `λ`.
pub fn solve_p_phi_ak(p: &VOProblem, cone_c: &ConeRep, a: &Point, k: &Point) -> Result<ScalarSolveResult> {
    solve_p_phi_ak_with(p, cone_c, a, k, Exec::Parallel)
}

pub fn solve_p_phi_ak_with(
    p: &VOProblem,
    cone_c: &ConeRep,
    a: &Point,
    k: &Point,
    exec: Exec,
) -> Result<ScalarSolveResult> {
    check_dim(p.dim(), cone_c.dim())?;
    direction_scale(cone_c, k, &p.tol)?;
    let values = par::try_map_range(exec, p.len(), |i| eval_gerstewitz(cone_c, a, k, &p.images[i], &p.tol))?;
    Ok(reduce(p, values))
}

/// Same problem solved from the constraint form: for each label the least
/// `λ` with `φ_C(f(x) − a − λk) ≤ 0` is found by bisection on the
/// representing functional `φ_C`.
pub fn solve_p_phi_ak_by_constraint(
    p: &VOProblem,
    cone_c: &ConeRep,
    a: &Point,
    k: &Point,
) -> Result<ScalarSolveResult> {
    solve_p_phi_ak_by_constraint_with(p, cone_c, a, k, Exec::Parallel)
}

pub fn solve_p_phi_ak_by_constraint_with(
    p: &VOProblem,
    cone_c: &ConeRep,
    a: &Point,
    k: &Point,
    exec: Exec,
) -> Result<ScalarSolveResult> {
    let n = p.dim();
    check_dim(n, cone_c.dim())?;
    check_dim(n, a.dim())?;
    check_dim(n, k.dim())?;
    let den = direction_scale(cone_c, k, &p.tol)?;
    let values = par::try_map_range(exec, p.len(), |i| {
        let ya = p.images[i].sub(a);
        let start = (1.0 + ya.norm_inf()) / den.min(1.0);
        let g = |t: f64| representing_value(cone_c, &ya.axpy(-t, k)).expect("dimensions checked");
        bisect_sublevel(g, start, p.tol.eps_root).ok_or(Error::NoFiniteValue)
    })?;
    Ok(reduce(p, values))
}

/// `y = p + t·k` with `⟨y*, p⟩ = ⟨y*, a⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub t: f64,
    pub p: Point,
}

pub fn hyperplane_decompose(ystar: &Point, a: &Point, k: &Point, y: &Point) -> Result<Decomposition> {
    let n = ystar.dim();
    check_dim(n, a.dim())?;
    check_dim(n, k.dim())?;
    check_dim(n, y.dim())?;
    let den = ystar.dot(k);
    if den <= 0.0 {
        return Err(Error::DegenerateDirection);
    }
    let t = (ystar.dot(y) - ystar.dot(a)) / den;
    Ok(Decomposition { t, p: y.axpy(-t, k) })
}

/// Parameters `(a, k, s)` of a verified Pascoletti-Serafini certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsCertificate {
    pub a: Point,
    pub k: Point,
    pub s: f64,
}

fn decompositions(p: &VOProblem, y: &Point, ps: &[Point], ts: &[Point], rs: &[f64]) -> Result<Vec<PsCertificate>> {
    let mut out = Vec::new();
    for a in ps {
        check_dim(p.dim(), a.dim())?;
        for k in ts {
            check_dim(p.dim(), k.dim())?;
            for &s in rs {
                let z = a.axpy(s, k);
                if z.sub(y).norm_inf() <= p.tol.eps_mem * pair_scale(&z, y) {
                    out.push(PsCertificate {
                        a: a.clone(),
                        k: k.clone(),
                        s,
                    });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::CoveringViolated);
    }
    Ok(out)
}

fn close(v: ExtReal, s: f64, tol: &Tolerances) -> bool {
    v.finite()
        .is_some_and(|v| (v - s).abs() <= tol.eps_opt * s.abs().max(1.0))
}

/// Searches `𝒫 × 𝒯 × ℛ` for `(a, k, s)` with `f(x̄) = a + s·k` whose scalar
/// problem has exactly `{(x, s) : f(x) = f(x̄)}` as solution set.
///
/// `Ok(None)` means decompositions exist but none verifies.
pub fn eff_certificate_via_ps(
    p: &VOProblem,
    xbar: &str,
    ps: &[Point],
    ts: &[Point],
    rs: &[f64],
) -> Result<Option<PsCertificate>> {
    let i = p.index_of(xbar)?;
    if !is_efficient(p, i)? {
        return Err(Error::PreconditionViolated(format!("{xbar} is not efficient")));
    }
    for k in ts {
        let in_k = p.k.contains(k, &p.tol)?;
        let in_lineality = p.k.contains(&k.neg(), &p.tol)?;
        if !in_k || in_lineality {
            return Err(Error::PreconditionViolated(format!(
                "direction {k} is not in K minus its lineality"
            )));
        }
    }
    let expected = p.labels_of(&p.same_image(i));
    for cand in decompositions(p, &p.images[i], ps, ts, rs)? {
        let res = solve_p_phi_ak(p, &p.k, &cand.a, &cand.k)?;
        if close(res.optimum, cand.s, &p.tol) && res.minimizers == expected {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Weak analogue: `k ∈ int K`, and `(x̄, s)` need only be one of the solutions.
pub fn weff_certificate_via_ps(
    p: &VOProblem,
    xbar: &str,
    ps: &[Point],
    ts: &[Point],
    rs: &[f64],
) -> Result<Option<PsCertificate>> {
    let i = p.index_of(xbar)?;
    if !is_weakly_efficient(p, i)? {
        return Err(Error::PreconditionViolated(format!("{xbar} is not weakly efficient")));
    }
    for k in ts {
        if !p.k.is_interior(k, &p.tol)? {
            return Err(Error::PreconditionViolated(format!(
                "direction {k} is not interior to K"
            )));
        }
    }
    for cand in decompositions(p, &p.images[i], ps, ts, rs)? {
        let res = solve_p_phi_ak(p, &p.k, &cand.a, &cand.k)?;
        if close(res.optimum, cand.s, &p.tol) && res.is_minimizer(&p.labels[i]) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::SeminormSpec;
    use crate::scalarizers::ScalarizingPair;
    use crate::vopt::oracles::eff_set;

    fn problem(images: &[[f64; 2]]) -> VOProblem {
        VOProblem::from_images(
            images.iter().map(|p| Point::from(*p)).collect(),
            ConeRep::orthant(2),
            SeminormSpec::L1,
        )
        .unwrap()
    }

    const FIXTURE: [[f64; 2]; 4] = [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0], [3.0, 3.0]];

    fn finite(v: &[ExtReal]) -> Vec<f64> {
        v.iter().map(|x| x.finite().unwrap()).collect()
    }

    #[test]
    fn p_phi_a_examples() {
        let p = problem(&FIXTURE);
        let pair = ScalarizingPair::new([2.0, 2.0], 1.0, SeminormSpec::L1).unwrap();
        let phi = ScalarizerSpec::SeminormLinear { pair };
        let r = solve_p_phi_a(&p, &phi, &Point::zeros(2)).unwrap();
        assert_eq!(finite(&r.per_label_values), vec![12.0, 12.0, 12.0, 18.0]);
        assert_eq!(r.optimum, ExtReal::Finite(12.0));
        assert_eq!(r.minimizers, vec!["p0", "p1", "p2"]);
        let eff = eff_set(&p).unwrap();
        assert!(r.minimizers.iter().all(|m| eff.contains(m)));

        let lin = ScalarizerSpec::SeminormLinear {
            pair: ScalarizingPair::new([1.0, 1.0], 0.0, SeminormSpec::L1).unwrap(),
        };
        let q = problem(&[[1.0, 3.0], [1.0, 2.0], [3.0, 1.0]]);
        let r = solve_p_phi_a(&q, &lin, &Point::zeros(2)).unwrap();
        assert_eq!(r.minimizers, vec!["p1"]);
        assert!(eff_set(&q).unwrap().contains("p1"));
    }

    #[test]
    fn p_phi_ak_examples() {
        let p = problem(&FIXTURE[..3]);
        let k = Point::from([1.0, 1.0]);
        let r = solve_p_phi_ak(&p, &ConeRep::orthant(2), &Point::zeros(2), &k).unwrap();
        assert_eq!(finite(&r.per_label_values), vec![3.0, 2.0, 3.0]);
        assert_eq!(r.optimum, ExtReal::Finite(2.0));
        assert_eq!(r.minimizers, vec!["p1"]);

        let r = solve_p_phi_ak(&p, &ConeRep::orthant(2), &Point::from([2.0, 2.0]), &k).unwrap();
        assert_eq!(finite(&r.per_label_values), vec![1.0, 0.0, 1.0]);
        assert_eq!(r.minimizers, vec!["p1"]);

        let half = ConeRep::halfspace(vec![Point::from([1.0, 0.0])]);
        let r = solve_p_phi_ak(&p, &half, &Point::zeros(2), &Point::from([0.0, 1.0])).unwrap();
        assert!(r.per_label_values.iter().all(|v| *v == ExtReal::PosInf));
        assert_eq!(r.optimum, ExtReal::PosInf);
        assert!(r.minimizers.is_empty());

        let bad = solve_p_phi_ak(&p, &ConeRep::orthant(2), &Point::zeros(2), &Point::from([1.0, -1.0]));
        assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn constraint_form_matches_closed_form() {
        let p = problem(&FIXTURE);
        let k = Point::from([1.0, 2.0]);
        let a = Point::from([0.5, -0.25]);
        for c in [
            ConeRep::orthant(2),
            ConeRep::halfspace(vec![Point::from([1.0, 0.5]), Point::from([0.0, 1.0])]),
            ConeRep::bishop_phelps([1.0, 1.0], 0.5, SeminormSpec::L2),
        ] {
            let g = solve_p_phi_ak(&p, &c, &a, &k).unwrap();
            let b = solve_p_phi_ak_by_constraint(&p, &c, &a, &k).unwrap();
            assert_eq!(g.minimizers, b.minimizers);
            let (x, y) = (g.optimum.finite().unwrap(), b.optimum.finite().unwrap());
            assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn decompose_examples() {
        let d = hyperplane_decompose(
            &Point::from([1.0, 1.0]),
            &Point::zeros(2),
            &Point::from([1.0, 1.0]),
            &Point::from([3.0, 1.0]),
        )
        .unwrap();
        assert_eq!(d.t, 2.0);
        assert_eq!(d.p, Point::from([1.0, -1.0]));

        let y = Point::from([2.0, -2.0]);
        let d = hyperplane_decompose(&Point::from([1.0, 1.0]), &Point::zeros(2), &Point::from([1.0, 1.0]), &y).unwrap();
        assert_eq!(d.t, 0.0);
        assert_eq!(d.p, y);

        let bad = hyperplane_decompose(
            &Point::from([1.0, 1.0]),
            &Point::zeros(2),
            &Point::from([1.0, -1.0]),
            &y,
        );
        assert!(matches!(bad, Err(Error::DegenerateDirection)));
    }

    #[test]
    fn ps_examples() {
        let p = problem(&FIXTURE[..3]);
        let ps = [Point::zeros(2)];
        let ts = [Point::from([1.0, 1.0])];
        let rs = [0.0, 1.0, 2.0, 3.0];
        let c = eff_certificate_via_ps(&p, "p1", &ps, &ts, &rs).unwrap().unwrap();
        assert_eq!((c.a, c.k, c.s), (Point::zeros(2), Point::from([1.0, 1.0]), 2.0));

        let miss = eff_certificate_via_ps(&p, "p0", &ps, &ts, &rs);
        assert!(matches!(miss, Err(Error::CoveringViolated)));

        for (label, y) in [("p0", [1.0, 3.0]), ("p2", [3.0, 1.0])] {
            let c = eff_certificate_via_ps(&p, label, &[Point::from(y)], &[Point::from([0.3, 2.0])], &[0.0])
                .unwrap()
                .unwrap();
            assert_eq!(c.s, 0.0);
        }

        let dominated = problem(&FIXTURE);
        assert!(matches!(
            eff_certificate_via_ps(&dominated, "p3", &ps, &ts, &rs),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            eff_certificate_via_ps(&p, "p1", &ps, &[Point::from([1.0, -1.0])], &rs),
            Err(Error::PreconditionViolated(_))
        ));

        let w = weff_certificate_via_ps(&p, "p1", &ps, &ts, &rs).unwrap().unwrap();
        assert_eq!(w.s, 2.0);
    }
}
