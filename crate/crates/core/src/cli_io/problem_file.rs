use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::cone::{ConeRep, Point, SeminormSpec, Tolerances};
use crate::expr;
use crate::vopt::VOProblem;

pub const MAX_GRID_IMAGES: u64 = 1_000_000;

/// On-disk problem description; see `docs/schema/problem.schema.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub cone: ConeRep,
    pub seminorm: SeminormSpec,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    /// Dilating cone for the Henig theorems.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilating_cone: Option<ConeRep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Images(ImageSource),
    Grid(GridSource),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageSource {
    pub images: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSource {
    #[serde(rename = "box")]
    pub bounds: Vec<[f64; 2]>,
    /// Points per axis.
    pub grid: usize,
    pub objectives: Vec<String>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl ProblemFile {
    pub fn from_json_str(text: &str) -> Result<ProblemFile, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ProblemFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let pointer = if path == "." {
                String::new()
            } else {
                format!("/{}", path.replace('.', "/").replace(['[', ']'], ""))
            };
            schema(pointer, e.into_inner().to_string())
        })?;
        file.validate()?;
        Ok(file)
    }

    /// Semantic checks serde cannot express; errors carry JSON pointers.
    pub fn validate(&self) -> Result<(), CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(schema("/dim", "must be at least 1"));
        }
        validate_cone(&self.cone, n, "/cone")?;
        self.seminorm
            .validate(n)
            .map_err(|e| schema("/seminorm", e.to_string()))?;
        if let Some(t) = &self.tolerances {
            t.validate().map_err(|e| schema("/tolerances", e.to_string()))?;
        }
        if let Some(d) = &self.dilating_cone {
            validate_cone(d, n, "/dilating_cone")?;
        }
        match &self.source {
            Source::Images(s) => {
                if s.images.is_empty() {
                    return Err(schema("/source/images", "at least one image is required"));
                }
                for (i, y) in s.images.iter().enumerate() {
                    if y.len() != n {
                        return Err(schema(
                            format!("/source/images/{i}"),
                            format!("expected {n} components, got {}", y.len()),
                        ));
                    }
                }
                if let Some(labels) = &s.labels {
                    if labels.len() != s.images.len() {
                        return Err(schema("/source/labels", "one label per image is required"));
                    }
                    for (i, l) in labels.iter().enumerate() {
                        if labels[..i].contains(l) {
                            return Err(schema(format!("/source/labels/{i}"), format!("duplicate label {l:?}")));
                        }
                    }
                }
            }
            Source::Grid(g) => {
                if g.bounds.is_empty() {
                    return Err(schema("/source/box", "at least one variable is required"));
                }
                for (i, [lo, hi]) in g.bounds.iter().enumerate() {
                    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                        return Err(schema(
                            format!("/source/box/{i}"),
                            "bounds must be finite with lo <= hi",
                        ));
                    }
                }
                if g.grid == 0 {
                    return Err(schema("/source/grid", "must be at least 1"));
                }
                let total = u32::try_from(g.bounds.len())
                    .ok()
                    .and_then(|m| (g.grid as u64).checked_pow(m));
                if total.is_none_or(|t| t > MAX_GRID_IMAGES) {
                    return Err(schema("/source/grid", format!("grid exceeds {MAX_GRID_IMAGES} images")));
                }
                if g.objectives.len() != n {
                    return Err(schema(
                        "/source/objectives",
                        format!("expected {n} objectives, got {}", g.objectives.len()),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Builds the finite problem, sampling grid sources row-major (last axis
    /// fastest).
    pub fn to_problem(&self) -> Result<VOProblem, CliError> {
        let (labels, images) = match &self.source {
            Source::Images(s) => {
                let images = s
                    .images
                    .iter()
                    .enumerate()
                    .map(|(i, y)| {
                        Point::new(y.clone()).map_err(|e| schema(format!("/source/images/{i}"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let labels = s
                    .labels
                    .clone()
                    .unwrap_or_else(|| (0..images.len()).map(|i| format!("p{i}")).collect());
                (labels, images)
            }
            Source::Grid(g) => {
                let images = sample_grid(g)?;
                ((0..images.len()).map(|i| format!("p{i}")).collect(), images)
            }
        };
        VOProblem::new(
            labels,
            images,
            self.cone.clone(),
            self.seminorm.clone(),
            self.tolerances.unwrap_or_default(),
        )
        .map_err(CliError::Core)
    }
}

fn validate_cone(cone: &ConeRep, n: usize, at: &str) -> Result<(), CliError> {
    if let ConeRep::BishopPhelps { alpha, .. } = cone {
        if !(alpha.is_finite() && *alpha >= 0.0) {
            return Err(schema(format!("{at}/alpha"), "alpha must be a nonnegative real"));
        }
    }
    cone.validate().map_err(|e| schema(at, e.to_string()))?;
    if cone.dim() != n {
        return Err(schema(
            at,
            format!("cone dimension {} differs from dim {n}", cone.dim()),
        ));
    }
    Ok(())
}

/// Decision points of the grid in row-major order.
pub fn grid_points(g: &GridSource) -> Vec<Vec<f64>> {
    let m = g.bounds.len();
    let axis = |j: usize, t: usize| {
        let [lo, hi] = g.bounds[j];
        if g.grid == 1 {
            lo
        } else {
            lo + (hi - lo) * t as f64 / (g.grid - 1) as f64
        }
    };
    let total = g.grid.pow(m as u32);
    (0..total)
        .map(|mut idx| {
            let mut x = vec![0.0; m];
            for j in (0..m).rev() {
                x[j] = axis(j, idx % g.grid);
                idx /= g.grid;
            }
            x
        })
        .collect()
}

fn sample_grid(g: &GridSource) -> Result<Vec<Point>, CliError> {
    let m = g.bounds.len();
    let asts = g
        .objectives
        .iter()
        .enumerate()
        .map(|(index, src)| expr::parse(src, m).map_err(|source| CliError::Objective { index, source }))
        .collect::<Result<Vec<_>, _>>()?;
    grid_points(g)
        .iter()
        .map(|x| {
            let f = asts
                .iter()
                .enumerate()
                .map(|(index, a)| a.eval(x).map_err(|source| CliError::Objective { index, source }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Point::new(f).expect("expression values are finite"))
        })
        .collect()
}

pub fn load_problem_file(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ProblemFile::from_json_str(&text)
}

pub fn load_problem(path: &Path) -> Result<VOProblem, CliError> {
    load_problem_file(path)?.to_problem()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ExprError;

    const ORTHANT: &str = r#""dim": 2, "cone": {"kind": "orthant", "dim": 2}, "seminorm": {"kind": "l1"}"#;

    fn parse(body: &str) -> Result<VOProblem, CliError> {
        ProblemFile::from_json_str(&format!("{{{ORTHANT}, {body}}}"))?.to_problem()
    }

    fn schema_path(r: Result<impl std::fmt::Debug, CliError>) -> String {
        match r {
            Err(CliError::Schema { path, .. }) => path,
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_images() {
        let p = parse(r#""source": {"images": [[1,3],[2,2],[3,1]]}"#).unwrap();
        assert_eq!(p.labels, ["p0", "p1", "p2"]);
        assert_eq!(p.images[1], Point::from([2.0, 2.0]));
        let p = parse(r#""source": {"images": [[1,3],[2,2]], "labels": ["a", "b"]}"#).unwrap();
        assert_eq!(p.index_of("b").unwrap(), 1);
    }

    #[test]
    fn grid_is_row_major() {
        let p = parse(r#""source": {"box": [[0,1],[0,1]], "grid": 3, "objectives": ["x1", "x2"]}"#).unwrap();
        assert_eq!(p.len(), 9);
        let want: Vec<Point> = [0.0, 0.5, 1.0]
            .iter()
            .flat_map(|&a| [0.0, 0.5, 1.0].map(|b| Point::from([a, b])))
            .collect();
        assert_eq!(p.images, want);
    }

    #[test]
    fn negative_alpha_is_a_schema_error() {
        let text = r#"{"dim": 2, "cone": {"kind": "bishop_phelps", "xstar": [1,1], "alpha": -1, "psi": {"kind": "l1"}},
            "seminorm": {"kind": "l1"}, "source": {"images": [[0,0]]}}"#;
        assert_eq!(schema_path(ProblemFile::from_json_str(text)), "/cone/alpha");
    }

    #[test]
    fn schema_errors_carry_pointers() {
        assert_eq!(
            schema_path(parse(r#""source": {"images": [[1,2],[3]]}"#)),
            "/source/images/1"
        );
        let bad_kind =
            r#"{"dim": 2, "cone": {"kind": "nope"}, "seminorm": {"kind": "l1"}, "source": {"images": [[0,0]]}}"#;
        assert_eq!(schema_path(ProblemFile::from_json_str(bad_kind)), "/cone/kind");
        let bad_tol = format!(r#"{{{ORTHANT}, "source": {{"images": [[0,0]]}}, "tolerances": {{"eps_mem": "x"}}}}"#);
        assert_eq!(schema_path(ProblemFile::from_json_str(&bad_tol)), "/tolerances/eps_mem");
        assert_eq!(
            schema_path(parse(r#""source": {"box": [[0,1]], "grid": 2, "objectives": ["x1"]}"#)),
            "/source/objectives"
        );
        assert_eq!(
            schema_path(parse(
                r#""source": {"box": [[0,1],[0,1]], "grid": 1001, "objectives": ["x1","x2"]}"#
            )),
            "/source/grid"
        );
        assert_eq!(
            schema_path(parse(
                r#""source": {"box": [[1,0]], "grid": 2, "objectives": ["x1","x1"]}"#
            )),
            "/source/box/0"
        );
    }

    #[test]
    fn expression_errors_name_the_objective() {
        let r = parse(r#""source": {"box": [[0,1]], "grid": 2, "objectives": ["x1", "x2"]}"#);
        assert!(matches!(
            r,
            Err(CliError::Objective {
                index: 1,
                source: ExprError::UnknownIdentifier { .. }
            })
        ));
        let r = parse(r#""source": {"box": [[0,1]], "grid": 2, "objectives": ["x1", "1/x1"]}"#);
        assert!(matches!(
            r,
            Err(CliError::Objective {
                index: 1,
                source: ExprError::EvalError { .. }
            })
        ));
    }

    #[test]
    fn grid_cap_allows_exactly_one_million() {
        let g = GridSource {
            bounds: vec![[0.0, 1.0]; 2],
            grid: 1000,
            objectives: vec!["x1".into(), "x2".into()],
        };
        let file = ProblemFile {
            dim: 2,
            cone: ConeRep::orthant(2),
            seminorm: SeminormSpec::L1,
            source: Source::Grid(g),
            tolerances: None,
            dilating_cone: None,
        };
        assert!(file.validate().is_ok());
    }
}
