use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::cone::{ConeRep, Point, SeminormSpec, Tolerances};
use crate::error::{Error, Result};
use crate::scalarizers::ScalarizingPair;

/// A vector optimization problem over a finite feasible set: minimise the
/// images with respect to the preorder induced by `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VOProblem {
    pub labels: Vec<String>,
    pub images: Vec<Point>,
    pub k: ConeRep,
    pub psi: SeminormSpec,
    #[serde(default)]
    pub tol: Tolerances,
}

impl VOProblem {
    pub fn new(
        labels: Vec<String>,
        images: Vec<Point>,
        k: ConeRep,
        psi: SeminormSpec,
        tol: Tolerances,
    ) -> Result<Self> {
        let p = VOProblem {
            labels,
            images,
            k,
            psi,
            tol,
        };
        p.validate()?;
        Ok(p)
    }

    /// Labels `p0, p1, …` in image order.
    pub fn from_images(images: Vec<Point>, k: ConeRep, psi: SeminormSpec) -> Result<Self> {
        let labels = (0..images.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, images, k, psi, Tolerances::default())
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.is_empty() {
            return Err(Error::PreconditionViolated("problem has no feasible points".into()));
        }
        if self.labels.len() != self.images.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} labels for {} images",
                self.labels.len(),
                self.images.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &self.labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::PreconditionViolated(format!("duplicate label {l:?}")));
            }
        }
        self.tol.validate()?;
        self.k.validate()?;
        let n = self.k.dim();
        self.psi.validate(n)?;
        for y in &self.images {
            y.check_dim(n)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn image(&self, label: &str) -> Result<&Point> {
        Ok(&self.images[self.index_of(label)?])
    }

    /// The same feasible set ordered by another cone.
    pub fn with_cone(&self, k: ConeRep) -> Result<VOProblem> {
        VOProblem::new(self.labels.clone(), self.images.clone(), k, self.psi.clone(), self.tol)
    }

    /// Labels whose image coincides with that of `idx` (within tolerance).
    pub(crate) fn same_image(&self, idx: usize) -> Vec<usize> {
        let y = &self.images[idx];
        (0..self.len())
            .filter(|&j| {
                let d = self.images[j].sub(y);
                d.norm_inf() <= self.tol.eps_mem * pair_scale(y, &self.images[j])
            })
            .collect()
    }

    pub(crate) fn labels_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

pub(crate) fn pair_scale(a: &Point, b: &Point) -> f64 {
    1.0f64.max(a.norm_inf()).max(b.norm_inf())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AMapVariant {
    /// `𝔸(x̄) = ℝ₊·(f[Ω] − f(x̄))`
    RaysOfDifferences,
    /// `𝔸(x̄) = ℝ₊·(f[Ω] + K − f(x̄))`, sampled.
    RaysOfDifferencesPlusK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Concept {
    Eff,
    Weff,
    PeffA { variant: AMapVariant },
    PeffHenig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub concept: Concept,
    /// Members in problem order.
    pub members: Vec<String>,
    /// Witnessing pairs per member, where the concept has them.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, ScalarizingPair>,
}

impl SolutionSet {
    pub fn contains(&self, label: &str) -> bool {
        self.members.iter().any(|m| m == label)
    }

    pub fn is_subset_of(&self, other: &SolutionSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthant_problem(images: &[[f64; 2]]) -> Result<VOProblem> {
        VOProblem::from_images(
            images.iter().map(|p| Point::from(*p)).collect(),
            ConeRep::orthant(2),
            SeminormSpec::L1,
        )
    }

    #[test]
    fn validation() {
        assert!(orthant_problem(&[]).is_err());
        let p = orthant_problem(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(p.labels, vec!["p0", "p1"]);
        assert_eq!(p.index_of("p1").unwrap(), 1);
        assert!(matches!(p.index_of("zz"), Err(Error::UnknownLabel(_))));
        let dup = VOProblem::new(
            vec!["a".into(), "a".into()],
            vec![Point::from([0.0, 0.0]), Point::from([1.0, 1.0])],
            ConeRep::orthant(2),
            SeminormSpec::L1,
            Tolerances::default(),
        );
        assert!(dup.is_err());
        let bad_dim = VOProblem::from_images(vec![Point::from([1.0])], ConeRep::orthant(2), SeminormSpec::L1);
        assert!(matches!(bad_dim, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn same_image_groups_duplicates() {
        let p = orthant_problem(&[[1.0, 1.0], [2.0, 0.0], [1.0, 1.0]]).unwrap();
        assert_eq!(p.same_image(0), vec![0, 2]);
        assert_eq!(p.same_image(1), vec![1]);
    }
}
