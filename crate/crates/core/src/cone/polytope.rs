use serde::{Deserialize, Serialize};

use super::base::{dedup, BaseSet};
use super::point::{Point, Tolerances};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};

const VERTEX_MERGE_TOL: f64 = 1e-9;

/// Convex hull of a finite vertex list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polytope {
    vertices: Vec<Point>,
}

impl Polytope {
    pub fn new(vertices: Vec<Point>) -> Result<Polytope> {
        if vertices.is_empty() {
            return Err(Error::PreconditionViolated("polytope needs a vertex".into()));
        }
        let n = vertices[0].dim();
        for v in &vertices {
            v.check_dim(n)?;
        }
        Ok(Polytope {
            vertices: dedup(vertices, VERTEX_MERGE_TOL),
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    fn scale(&self) -> f64 {
        self.vertices.iter().fold(1.0, |m, v| m.max(v.norm_inf()))
    }

    /// Arithmetic mean of the vertices.
    pub fn centroid(&self) -> Point {
        let n = self.dim();
        let mut c = Point::zeros(n);
        for v in &self.vertices {
            c = c.add(v);
        }
        c.scale(1.0 / self.vertices.len() as f64)
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let v0 = &self.vertices[0];
        let rows: Vec<Point> = self.vertices[1..].iter().map(|v| v.sub(v0)).collect();
        if rows.is_empty() {
            return 0;
        }
        super::seminorm::rank(&rows, self.dim())
    }
}

/// `conv(base)` or `conv({0} ∪ base)`.
pub fn hull_s0(base: &BaseSet, include_zero: bool) -> Result<Polytope> {
    let mut v = Vec::with_capacity(base.points.len() + 1);
    if include_zero {
        let n = base
            .dim()
            .ok_or_else(|| Error::PreconditionViolated("empty base".into()))?;
        v.push(Point::zeros(n));
    }
    v.extend(base.points.iter().cloned());
    Polytope::new(v)
}

/// Minimal L1 distance between `Σλᵢpᵢ` and `Σμⱼqⱼ` over both simplices, with
/// the optimal weights.
fn hull_distance(p: &[Point], q: &[Point]) -> Result<(f64, Vec<f64>)> {
    let n = p[0].dim();
    let (a, b) = (p.len(), q.len());
    let nv = a + b + 2 * n;
    let mut lp = LinearProgram::new(nv);
    let mut c = vec![0.0; nv];
    for v in c.iter_mut().skip(a + b) {
        *v = 1.0;
    }
    lp.minimize(&c);
    for i in 0..n {
        let mut row = vec![0.0; nv];
        for (j, v) in p.iter().enumerate() {
            row[j] = v[i];
        }
        for (j, v) in q.iter().enumerate() {
            row[a + j] = -v[i];
        }
        row[a + b + i] = 1.0;
        row[a + b + n + i] = -1.0;
        lp.add(&row, Relation::Eq, 0.0);
    }
    let mut row = vec![0.0; nv];
    row[..a].fill(1.0);
    lp.add(&row, Relation::Eq, 1.0);
    let mut row = vec![0.0; nv];
    row[a..a + b].fill(1.0);
    lp.add(&row, Relation::Eq, 1.0);
    let sol = lp
        .solve()?
        .optimal()
        .ok_or_else(|| Error::Lp("hull distance program has no optimum".into()))?;
    Ok((sol.objective, sol.x[..a].to_vec()))
}

pub fn polytope_contains_zero(p: &Polytope, tol: &Tolerances) -> Result<bool> {
    let zero = [Point::zeros(p.dim())];
    let (d, _) = hull_distance(&p.vertices, &zero)?;
    Ok(d <= tol.eps_mem * p.scale())
}

/// L1 distance from `x` to the polytope.
pub fn polytope_distance(p: &Polytope, x: &Point) -> Result<f64> {
    Ok(hull_distance(&p.vertices, std::slice::from_ref(x))?.0)
}

pub fn polytope_contains(p: &Polytope, x: &Point, tol: &Tolerances) -> Result<bool> {
    Ok(polytope_distance(p, x)? <= tol.eps_mem * p.scale().max(x.norm_inf()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disjointness {
    pub disjoint: bool,
    /// ℓ¹ distance between the two hulls.
    pub distance: f64,
    pub common_point: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
/// Functional `u` with `u(p) ≥ beta1 > beta2 ≥ u(q)` on two hulls.
pub struct Separator {
    pub u: Point,
    pub beta1: f64,
    pub beta2: f64,
}

pub fn polytopes_disjoint(p: &Polytope, q: &Polytope, tol: &Tolerances) -> Result<Disjointness> {
    let scale = p.scale().max(q.scale());
    let (d, lambda) = hull_distance(&p.vertices, &q.vertices)?;
    if d <= tol.eps_mem * scale {
        let mut x = Point::zeros(p.dim());
        for (l, v) in lambda.iter().zip(&p.vertices) {
            x = x.axpy(*l, v);
        }
        return Ok(Disjointness {
            disjoint: false,
            distance: d,
            common_point: Some(x),
        });
    }
    Ok(Disjointness {
        disjoint: true,
        distance: d,
        common_point: None,
    })
}

/// A strictly separating functional, or `None` when the hulls meet.
pub fn separating_hyperplane(p: &Polytope, q: &Polytope) -> Result<Option<Separator>> {
    let sep = separate(&p.vertices, &q.vertices)?;
    Ok((sep.beta1 > sep.beta2).then_some(sep))
}

/// Maximises the gap `δ` in `u·pᵢ ≥ c + δ`, `u·qⱼ ≤ c − δ`, `|u|∞ ≤ 1`.
fn separate(p: &[Point], q: &[Point]) -> Result<Separator> {
    let n = p[0].dim();
    // Variables: u (n, free), c (free), δ.
    let nv = n + 2;
    let mut lp = LinearProgram::new(nv);
    for j in 0..=n {
        lp.set_free(j);
    }
    let mut obj = vec![0.0; nv];
    obj[n + 1] = 1.0;
    lp.maximize(&obj);
    for v in p {
        let mut row = v.to_vec();
        row.push(-1.0);
        row.push(-1.0);
        lp.add(&row, Relation::Ge, 0.0);
    }
    for v in q {
        let mut row = v.to_vec();
        row.push(-1.0);
        row.push(1.0);
        lp.add(&row, Relation::Le, 0.0);
    }
    for j in 0..n {
        lp.add_sparse(&[(j, 1.0)], Relation::Le, 1.0);
        lp.add_sparse(&[(j, 1.0)], Relation::Ge, -1.0);
    }
    let sol = lp
        .solve()?
        .optimal()
        .ok_or_else(|| Error::Lp("separation program has no optimum".into()))?;
    let u = Point::new(sol.x[..n].to_vec())?;
    let beta1 = p.iter().map(|v| u.dot(v)).fold(f64::INFINITY, f64::min);
    let beta2 = q.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max);
    Ok(Separator { u, beta1, beta2 })
}

/// Whether `conv(p) ∩ int conv(q)` is nonempty; returns a witness point.
pub fn meets_interior(p: &Polytope, q: &Polytope, tol: &Tolerances) -> Result<Option<Point>> {
    let n = p.dim();
    if q.affine_dim() < n {
        return Ok(None);
    }
    let (a, b) = (p.vertices.len(), q.vertices.len());
    // Variables: λ (a), μ (b), ε. Maximise ε with μⱼ ≥ ε.
    let nv = a + b + 1;
    let mut lp = LinearProgram::new(nv);
    let mut obj = vec![0.0; nv];
    obj[a + b] = 1.0;
    lp.maximize(&obj);
    for i in 0..n {
        let mut row = vec![0.0; nv];
        for (j, v) in p.vertices.iter().enumerate() {
            row[j] = v[i];
        }
        for (j, v) in q.vertices.iter().enumerate() {
            row[a + j] = -v[i];
        }
        lp.add(&row, Relation::Eq, 0.0);
    }
    let mut row = vec![0.0; nv];
    row[..a].fill(1.0);
    lp.add(&row, Relation::Eq, 1.0);
    let mut row = vec![0.0; nv];
    row[a..a + b].fill(1.0);
    lp.add(&row, Relation::Eq, 1.0);
    for j in 0..b {
        lp.add_sparse(&[(a + j, 1.0), (a + b, -1.0)], Relation::Ge, 0.0);
    }
    let Some(sol) = lp.solve()?.optimal() else {
        return Ok(None);
    };
    if sol.objective <= tol.eps_strict {
        return Ok(None);
    }
    let mut x = vec![0.0; n];
    for (l, v) in sol.x[..a].iter().zip(&p.vertices) {
        for i in 0..n {
            x[i] += l * v[i];
        }
    }
    Ok(Some(Point::new(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::base::Exactness;
    use crate::cone::SeminormSpec;

    fn poly(v: &[[f64; 2]]) -> Polytope {
        Polytope::new(v.iter().map(|p| Point::from(*p)).collect()).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn hull_examples() {
        let base = BaseSet {
            points: vec![[1.0, 0.0].into(), [0.0, 1.0].into()],
            exactness: Exactness::ExactVertices,
            seminorm: SeminormSpec::L1,
        };
        assert_eq!(hull_s0(&base, true).unwrap().vertices().len(), 3);
        let single = BaseSet {
            points: vec![[1.0, 0.0].into()],
            ..base
        };
        assert_eq!(hull_s0(&single, false).unwrap().vertices(), &[Point::from([1.0, 0.0])]);
    }

    #[test]
    fn duplicates_are_merged() {
        let p = poly(&[[1.0, 0.0], [1.0 + 1e-12, 0.0], [0.0, 1.0]]);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn contains_zero_examples() {
        assert!(!polytope_contains_zero(&poly(&[[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]]), &tol()).unwrap());
        assert!(polytope_contains_zero(&poly(&[[-1.0, 0.0], [1.0, 0.0]]), &tol()).unwrap());
        assert!(!polytope_contains_zero(&poly(&[[1.0, 0.0]]), &tol()).unwrap());
    }

    #[test]
    fn disjointness_examples() {
        let p = poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let q = poly(&[[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]]);
        let d = polytopes_disjoint(&p, &q, &tol()).unwrap();
        assert!(d.disjoint);
        let s = separating_hyperplane(&p, &q).unwrap().unwrap();
        assert!(s.beta1 > s.beta2);
        for v in p.vertices() {
            assert!(s.u.dot(v) >= s.beta1 - 1e-12);
        }
        for v in q.vertices() {
            assert!(s.u.dot(v) <= s.beta2 + 1e-12);
        }

        let q2 = poly(&[[0.0, 0.0], [-1.0, 0.0]]);
        let d = polytopes_disjoint(&p, &q2, &tol()).unwrap();
        assert!(!d.disjoint);
        assert!(d.common_point.unwrap().is_zero(1e-9));
        assert!(separating_hyperplane(&p, &q2).unwrap().is_none());

        assert!(!polytopes_disjoint(&p, &p, &tol()).unwrap().disjoint);
    }

    #[test]
    fn interior_meeting() {
        let q = poly(&[[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]]);
        let inside = poly(&[[-0.6, -0.6]]);
        assert!(meets_interior(&inside, &q, &tol()).unwrap().is_some());
        let edge = poly(&[[-0.5, -0.5], [0.0, 0.0]]);
        assert!(meets_interior(&edge, &q, &tol()).unwrap().is_none());
        let flat = poly(&[[-1.0, 0.0], [0.0, -1.0]]);
        assert!(meets_interior(&edge, &flat, &tol()).unwrap().is_none());
    }
}
