use serde::{Deserialize, Serialize};

use super::point::{dot, norm_inf, Point, Tolerances};
use super::seminorm::{null_space, SeminormSpec};
use crate::error::{check_dim, Error, Result};
use crate::lp::{LinearProgram, Relation};

/// A cone in Rⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeRep {
    /// Nonnegative orthant.
    Orthant { dim: usize },
    /// `{y : ⟨wᵢ, y⟩ ≥ 0 ∀i}`
    Halfspace { dim: usize, normals: Vec<Point> },
    /// Convex conic hull of the generators.
    Generated { dim: usize, generators: Vec<Point> },
    /// Union of the rays `ℝ₊·gᵢ`; an empty list is the zero cone.
    RayUnion { dim: usize, generators: Vec<Point> },
    /// `{y : ⟨x*, y⟩ ≥ α·ψ(y)}`
    BishopPhelps {
        xstar: Point,
        alpha: f64,
        psi: SeminormSpec,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary,
    /// In the cone; interior status not decided for this representation.
    Member,
    Outside,
}

impl Membership {
    pub fn is_member(self) -> bool {
        self != Membership::Outside
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lineality {
    pub basis: Vec<Point>,
    pub pointed: bool,
}

impl ConeRep {
    pub fn orthant(dim: usize) -> ConeRep {
        ConeRep::Orthant { dim }
    }

    pub fn bishop_phelps(xstar: impl Into<Point>, alpha: f64, psi: SeminormSpec) -> ConeRep {
        ConeRep::BishopPhelps {
            xstar: xstar.into(),
            alpha,
            psi,
        }
    }

    pub fn generated(generators: Vec<Point>) -> ConeRep {
        let dim = generators.first().map_or(0, |g| g.dim());
        ConeRep::Generated { dim, generators }
    }

    pub fn ray_union(dim: usize, generators: Vec<Point>) -> ConeRep {
        ConeRep::RayUnion { dim, generators }
    }

    pub fn halfspace(normals: Vec<Point>) -> ConeRep {
        let dim = normals.first().map_or(0, |g| g.dim());
        ConeRep::Halfspace { dim, normals }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConeRep::Orthant { dim }
            | ConeRep::Halfspace { dim, .. }
            | ConeRep::Generated { dim, .. }
            | ConeRep::RayUnion { dim, .. } => *dim,
            ConeRep::BishopPhelps { xstar, .. } => xstar.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConeRep::Orthant { .. } => "orthant",
            ConeRep::Halfspace { .. } => "halfspace",
            ConeRep::Generated { .. } => "generated",
            ConeRep::RayUnion { .. } => "ray_union",
            ConeRep::BishopPhelps { .. } => "bishop_phelps",
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            ConeRep::RayUnion { dim, generators } => {
                // A union of rays is convex only in trivial cases.
                generators.len() <= 1 || *dim == 1
            }
            _ => true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::InvalidCone("dimension must be at least 1".into()));
        }
        match self {
            ConeRep::Orthant { .. } => Ok(()),
            ConeRep::Halfspace { normals, .. } => normals.iter().try_for_each(|w| check_dim(n, w.dim())),
            ConeRep::Generated { generators, .. } | ConeRep::RayUnion { generators, .. } => {
                for g in generators {
                    check_dim(n, g.dim())?;
                    if g.is_zero(0.0) {
                        return Err(Error::InvalidCone("generators must be nonzero".into()));
                    }
                }
                if matches!(self, ConeRep::Generated { .. }) && generators.is_empty() {
                    return Err(Error::InvalidCone("generated cone needs a generator".into()));
                }
                Ok(())
            }
            ConeRep::BishopPhelps { alpha, psi, .. } => {
                if !(alpha.is_finite() && *alpha >= 0.0) {
                    return Err(Error::InvalidCone("alpha must be a nonnegative real".into()));
                }
                psi.validate(n)
            }
        }
    }

    /// `-K` in the same family where possible.
    pub fn negated(&self) -> ConeRep {
        let neg = |v: &[Point]| v.iter().map(Point::neg).collect::<Vec<_>>();
        match self {
            ConeRep::Orthant { dim } => ConeRep::Generated {
                dim: *dim,
                generators: (0..*dim).map(|i| Point::unit(*dim, i).neg()).collect(),
            },
            ConeRep::Halfspace { dim, normals } => ConeRep::Halfspace {
                dim: *dim,
                normals: neg(normals),
            },
            ConeRep::Generated { dim, generators } => ConeRep::Generated {
                dim: *dim,
                generators: neg(generators),
            },
            ConeRep::RayUnion { dim, generators } => ConeRep::RayUnion {
                dim: *dim,
                generators: neg(generators),
            },
            ConeRep::BishopPhelps { xstar, alpha, psi } => ConeRep::BishopPhelps {
                xstar: xstar.neg(),
                alpha: *alpha,
                psi: psi.clone(),
            },
        }
    }

    /// Finite generator list for polyhedral representations given by rays.
    pub fn generators(&self) -> Option<Vec<Point>> {
        match self {
            ConeRep::Orthant { dim } => Some((0..*dim).map(|i| Point::unit(*dim, i)).collect()),
            ConeRep::Generated { generators, .. } | ConeRep::RayUnion { generators, .. } => Some(generators.clone()),
            _ => None,
        }
    }

    /// Scale used to relativise tolerances at `y`.
    pub fn scale_at(&self, y: &[f64]) -> f64 {
        let psi = match self {
            ConeRep::BishopPhelps { psi, .. } => psi.eval_unchecked(y),
            _ => 0.0,
        };
        1.0f64.max(psi).max(norm_inf(y))
    }

    /// Value whose sign decides membership for inequality representations:
    /// `min ⟨wᵢ, y⟩ / ‖wᵢ‖∞` or `⟨x*, y⟩ − α·ψ(y)`.
    pub fn slack(&self, y: &[f64]) -> Option<f64> {
        match self {
            ConeRep::Orthant { .. } => Some(y.iter().fold(f64::INFINITY, |m, v| m.min(*v))),
            ConeRep::Halfspace { normals, .. } => Some(normals.iter().fold(f64::INFINITY, |m, w| {
                let s = w.norm_inf();
                if s == 0.0 {
                    m
                } else {
                    m.min(dot(w, y) / s)
                }
            })),
            ConeRep::BishopPhelps { xstar, alpha, psi } => Some(dot(xstar, y) - alpha * psi.eval_unchecked(y)),
            _ => None,
        }
    }

    pub fn classify(&self, y: &[f64], tol: &Tolerances) -> Result<Membership> {
        check_dim(self.dim(), y.len())?;
        let eps = tol.eps_mem * self.scale_at(y);
        if let Some(s) = self.slack(y) {
            // An empty normal list is the whole space.
            return Ok(if s > eps {
                Membership::Interior
            } else if s >= -eps {
                Membership::Boundary
            } else {
                Membership::Outside
            });
        }
        let member = match self {
            ConeRep::Generated { generators, .. } => generated_residual(generators, y)? <= eps,
            ConeRep::RayUnion { generators, .. } => ray_union_member(generators, y, eps),
            _ => unreachable!(),
        };
        Ok(if member {
            Membership::Member
        } else {
            Membership::Outside
        })
    }

    pub fn contains(&self, y: &[f64], tol: &Tolerances) -> Result<bool> {
        Ok(self.classify(y, tol)?.is_member())
    }

    pub fn is_interior(&self, y: &[f64], tol: &Tolerances) -> Result<bool> {
        match self {
            ConeRep::Generated { .. } => Err(Error::InteriorUnsupported("generated")),
            ConeRep::RayUnion { .. } => Err(Error::InteriorUnsupported("ray-union")),
            _ => Ok(self.classify(y, tol)? == Membership::Interior),
        }
    }

    pub fn supports_interior(&self) -> bool {
        !matches!(self, ConeRep::Generated { .. } | ConeRep::RayUnion { .. })
    }

    pub fn lineality(&self, _tol: &Tolerances) -> Result<Lineality> {
        let n = self.dim();
        let basis = match self {
            ConeRep::Orthant { .. } => Vec::new(),
            ConeRep::Halfspace { normals, .. } => null_space(normals, n),
            ConeRep::BishopPhelps { xstar, alpha, psi } => {
                let mut rows = vec![xstar.clone()];
                if *alpha > 0.0 {
                    match psi.kernel_functionals() {
                        None => {
                            return Ok(Lineality {
                                basis: Vec::new(),
                                pointed: true,
                            })
                        }
                        Some(ws) => rows.extend(ws),
                    }
                }
                null_space(&rows, n)
            }
            _ => {
                return Err(Error::UnsupportedRepresentation(format!(
                    "lineality of a {} cone",
                    self.kind_name()
                )))
            }
        };
        Ok(Lineality {
            pointed: basis.is_empty(),
            basis,
        })
    }
}

/// Minimal L1 distance from `y` to the conic hull of `generators`.
pub(crate) fn generated_residual(generators: &[Point], y: &[f64]) -> Result<f64> {
    let n = y.len();
    let m = generators.len();
    // Variables: λ (m), s⁺ (n), s⁻ (n).
    let nv = m + 2 * n;
    let mut lp = LinearProgram::new(nv);
    let mut c = vec![0.0; nv];
    for v in c.iter_mut().skip(m) {
        *v = 1.0;
    }
    lp.minimize(&c);
    for i in 0..n {
        let mut row = vec![0.0; nv];
        for (j, g) in generators.iter().enumerate() {
            row[j] = g[i];
        }
        row[m + i] = 1.0;
        row[m + n + i] = -1.0;
        lp.add(&row, Relation::Eq, y[i]);
    }
    let sol = lp
        .solve()?
        .optimal()
        .ok_or_else(|| Error::Lp("membership program has no optimum".into()))?;
    Ok(sol.objective)
}

fn ray_union_member(generators: &[Point], y: &[f64], eps: f64) -> bool {
    if norm_inf(y) <= eps {
        return true;
    }
    generators.iter().any(|g| {
        let t = dot(g, y) / dot(g, g);
        t >= 0.0 && y.iter().zip(g.iter()).all(|(yi, gi)| (yi - t * gi).abs() <= eps)
    })
}
