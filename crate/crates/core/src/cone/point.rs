use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A vector in Rⁿ with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Point> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Point(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Callers guarantee finiteness (e.g. arithmetic on finite points).
    pub(crate) fn raw(coords: Vec<f64>) -> Point {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    pub fn zeros(n: usize) -> Point {
        Point(vec![0.0; n])
    }

    pub fn unit(n: usize, i: usize) -> Point {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Point(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        dot(&self.0, other)
    }

    pub fn norm_inf(&self) -> f64 {
        norm_inf(&self.0)
    }

    pub fn norm2(&self) -> f64 {
        self.dot(&self.0).sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm_inf() <= tol
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, t: f64) -> Point {
        Point(self.0.iter().map(|a| a * t).collect())
    }

    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }

    /// `self + t * dir`
    pub fn axpy(&self, t: f64, dir: &Point) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, d)| a + t * d).collect())
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        check_dim(n, self.dim())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Point> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.0
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    /// Panics on non-finite input; intended for literals.
    fn from(a: [f64; N]) -> Point {
        Point::new(a.to_vec()).expect("finite literal")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Numerical tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative membership tolerance.
    pub eps_mem: f64,
    /// Margin for strict inequalities.
    pub eps_strict: f64,
    /// Optimality tolerance for argmin ties.
    pub eps_opt: f64,
    /// Absolute bisection tolerance on the root.
    pub eps_root: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_mem: 1e-9,
            eps_strict: 1e-9,
            eps_opt: 1e-9,
            eps_root: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_mem, self.eps_strict, self.eps_opt, self.eps_root];
        if !all.iter().all(|e| e.is_finite() && *e > 0.0) {
            return Err(Error::InvalidTolerances("all tolerances must be positive".into()));
        }
        if self.eps_root > self.eps_mem {
            return Err(Error::InvalidTolerances("eps_root must not exceed eps_mem".into()));
        }
        Ok(())
    }
}
