use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::point::{dot, Point};
use crate::error::{check_dim, Error, Result};

/// Catalog of seminorms on Rⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeminormSpec {
    L1,
    L2,
    LInf,
    /// `|⟨w, y⟩|`
    AbsFunctional {
        w: Point,
    },
    /// `maxᵢ |⟨wᵢ, y⟩|`
    MaxAbsFunctionals {
        ws: Vec<Point>,
    },
    /// `Σᵢ |⟨wᵢ, y⟩|`
    SumAbsFunctionals {
        ws: Vec<Point>,
    },
    /// `max{φ(y), φ(−y)}` with `φ(y) = maxᵢ ⟨cᵢ, y⟩`.
    PsiMaxOfSublinear {
        cs: Vec<Point>,
    },
}

impl SeminormSpec {
    /// Checks the description against ambient dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            SeminormSpec::L1 | SeminormSpec::L2 | SeminormSpec::LInf => Ok(()),
            SeminormSpec::AbsFunctional { w } => check_dim(n, w.dim()),
            SeminormSpec::MaxAbsFunctionals { ws }
            | SeminormSpec::SumAbsFunctionals { ws }
            | SeminormSpec::PsiMaxOfSublinear { cs: ws } => {
                if ws.is_empty() {
                    return Err(Error::InvalidSeminorm("functional list is empty".into()));
                }
                ws.iter().try_for_each(|w| check_dim(n, w.dim()))
            }
        }
    }

    pub fn eval(&self, y: &[f64]) -> Result<f64> {
        if let Some(n) = self.fixed_dim() {
            check_dim(n, y.len())?;
        }
        Ok(self.eval_unchecked(y))
    }

    /// Evaluation without the dimension check; callers have validated inputs.
    pub fn eval_unchecked(&self, y: &[f64]) -> f64 {
        match self {
            SeminormSpec::L1 => y.iter().map(|v| v.abs()).sum(),
            SeminormSpec::L2 => dot(y, y).sqrt(),
            SeminormSpec::LInf => y.iter().fold(0.0, |m, v| m.max(v.abs())),
            SeminormSpec::AbsFunctional { w } => dot(w, y).abs(),
            SeminormSpec::MaxAbsFunctionals { ws } => ws.iter().fold(0.0, |m, w| m.max(dot(w, y).abs())),
            SeminormSpec::SumAbsFunctionals { ws } => ws.iter().map(|w| dot(w, y).abs()).sum(),
            SeminormSpec::PsiMaxOfSublinear { cs } => {
                let (lo, hi) = cs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                    let v = dot(c, y);
                    (lo.min(v), hi.max(v))
                });
                hi.max(-lo)
            }
        }
    }

    /// Dimension implied by the functionals, if any.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            SeminormSpec::L1 | SeminormSpec::L2 | SeminormSpec::LInf => None,
            SeminormSpec::AbsFunctional { w } => Some(w.dim()),
            SeminormSpec::MaxAbsFunctionals { ws }
            | SeminormSpec::SumAbsFunctionals { ws }
            | SeminormSpec::PsiMaxOfSublinear { cs: ws } => ws.first().map(|w| w.dim()),
        }
    }

    /// Functionals whose common kernel is the kernel of ψ (None for norms).
    pub fn kernel_functionals(&self) -> Option<Vec<Point>> {
        match self {
            SeminormSpec::L1 | SeminormSpec::L2 | SeminormSpec::LInf => None,
            SeminormSpec::AbsFunctional { w } => Some(vec![w.clone()]),
            SeminormSpec::MaxAbsFunctionals { ws }
            | SeminormSpec::SumAbsFunctionals { ws }
            | SeminormSpec::PsiMaxOfSublinear { cs: ws } => Some(ws.clone()),
        }
    }

    /// Basis of `{y : ψ(y) = 0}` in Rⁿ.
    pub fn kernel(&self, n: usize) -> Vec<Point> {
        match self.kernel_functionals() {
            None => Vec::new(),
            Some(ws) => null_space(&ws, n),
        }
    }

    pub fn is_norm(&self, n: usize) -> bool {
        self.kernel(n).is_empty()
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeminormSpec::L1 => "l1",
            SeminormSpec::L2 => "l2",
            SeminormSpec::LInf => "linf",
            SeminormSpec::AbsFunctional { .. } => "abs_functional",
            SeminormSpec::MaxAbsFunctionals { .. } => "max_abs_functionals",
            SeminormSpec::SumAbsFunctionals { .. } => "sum_abs_functionals",
            SeminormSpec::PsiMaxOfSublinear { .. } => "psi_max",
        }
    }
}

/// Orthonormal basis of the null space of the matrix with the given rows.
pub fn null_space(rows: &[Point], n: usize) -> Vec<Point> {
    // Pad to a square matrix so the SVD returns a full right-singular basis.
    let m = rows.len().max(n);
    let mut a = DMatrix::<f64>::zeros(m, n);
    for (i, r) in rows.iter().enumerate() {
        for j in 0..n {
            a[(i, j)] = r[j];
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().fold(0.0f64, |acc, s| acc.max(*s));
    let cutoff = 1e-10 * smax.max(1.0);
    let mut basis = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= cutoff {
            basis.push(Point::raw(v_t.row(i).iter().copied().collect()));
        }
    }
    basis
}

/// Numerical rank of the matrix with the given rows.
pub fn rank(rows: &[Point], n: usize) -> usize {
    n - null_space(rows, n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn catalog_examples() {
        assert_eq!(SeminormSpec::L1.eval(&[1.0, -1.0]).unwrap(), 2.0);
        let abs = SeminormSpec::AbsFunctional { w: [1.0, 1.0].into() };
        assert_eq!(abs.eval(&[1.0, -1.0]).unwrap(), 0.0);
        let pm = SeminormSpec::PsiMaxOfSublinear {
            cs: vec![[1.0, 0.0].into(), [0.0, 1.0].into()],
        };
        assert_eq!(pm.eval(&[2.0, -3.0]).unwrap(), 3.0);
    }

    #[test]
    fn dimension_mismatch() {
        let abs = SeminormSpec::AbsFunctional { w: [1.0, 1.0].into() };
        assert_eq!(abs.eval(&[1.0]), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn norms_and_kernels() {
        assert!(SeminormSpec::L2.is_norm(3));
        let abs = SeminormSpec::AbsFunctional { w: [1.0, 1.0].into() };
        assert!(!abs.is_norm(2));
        let k = abs.kernel(2);
        assert_eq!(k.len(), 1);
        assert_abs_diff_eq!(k[0][0] + k[0][1], 0.0, epsilon = 1e-12);
        let two = SeminormSpec::MaxAbsFunctionals {
            ws: vec![[1.0, 0.0].into(), [0.0, 1.0].into()],
        };
        assert!(two.is_norm(2));
    }

    #[test]
    fn rejects_empty_lists() {
        let s = SeminormSpec::SumAbsFunctionals { ws: vec![] };
        assert!(matches!(s.validate(2), Err(Error::InvalidSeminorm(_))));
    }
}
