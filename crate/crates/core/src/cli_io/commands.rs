use std::time::Instant;

use super::problem_file::load_problem_file;
use super::report::{LabelRow, MonotoneSummary, Outcome, RunReport, ScalarSummary, TheoremOutcome};
use super::{CliError, Command, ConceptArg, PairArgs, Phi, TheoremArg, VariantArg};
use crate::augdual::{aug_dual_membership, AugDualClass, Verdict, DEFAULT_ALPHA_MIN};
use crate::cone::Point;
use crate::error::Error;
use crate::scalarizers::{check_monotone, MonotoneMode, ScalarizerSpec, ScalarizingPair};
use crate::separation::{check_condition, find_separating_pair, Condition};
use crate::vopt::{
    amap_cone, eff_set, peff_a_set, peff_henig_set, run_theorem_pipeline_with, solve_p_phi_a, solve_p_phi_ak,
    solve_p_phi_ak_by_constraint, weff_set, AMapVariant, PipelineOptions, SolutionSet, Theorem, VOProblem,
    DEFAULT_K_SAMPLES,
};

const MONOTONE_SAMPLES: usize = 2000;

/// Runs one subcommand and returns its report.
pub fn run(cmd: &Command) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let common = cmd.common();
    let file = load_problem_file(&common.problem)?;
    let p = file.to_problem()?;
    let name = match cmd {
        Command::SolveScalar { .. } => "solve-scalar",
        Command::SolveVector { .. } => "solve-vector",
        Command::CheckCone { .. } => "check-cone",
        Command::Separate { .. } => "separate",
        Command::VerifyTheorems { .. } => "verify-theorems",
        Command::Report { .. } => "report",
    };
    let mut r = RunReport::new(name, common.seed);
    r.rows = p
        .labels
        .iter()
        .zip(&p.images)
        .map(|(label, f)| LabelRow {
            label: label.clone(),
            f: f.clone(),
            value: None,
            in_eff: None,
            in_weff: None,
            in_peff: None,
        })
        .collect();
    match cmd {
        Command::SolveScalar { phi, pair, a, k, .. } => {
            solve_scalar(&p, &mut r, *phi, pair, a.as_ref(), k.as_ref())?;
        }
        Command::SolveVector { concept, variant, .. } => {
            let eff = eff_set(&p)?;
            fill(&mut r.rows, &eff, |row, v| row.in_eff = Some(v));
            r.solution_sets.push(eff);
            match weff_set(&p) {
                Ok(w) => {
                    fill(&mut r.rows, &w, |row, v| row.in_weff = Some(v));
                    r.solution_sets.push(w);
                }
                Err(Error::InteriorUnsupported(kind)) if *concept != ConceptArg::Weff => {
                    r.notes
                        .push(format!("weak efficiency skipped: no interior for {kind} cones"));
                }
                Err(e) => return Err(e.into()),
            }
            if let Some(s) = proper_set(&p, *concept, *variant)? {
                fill(&mut r.rows, &s, |row, v| row.in_peff = Some(v));
                r.solution_sets.push(s);
            }
        }
        Command::CheckCone { pair, .. } => check_cone(&p, &mut r, pair)?,
        Command::Separate {
            xbar, variant, weak, ..
        } => {
            let amap = amap_cone(&p, xbar, amap_variant(*variant), DEFAULT_K_SAMPLES)?;
            for cond in [Condition::Cond4, Condition::Cond5, Condition::Cond6] {
                r.conditions
                    .push(check_condition(cond, &amap.cone, &p.k, &p.psi, &p.tol)?);
            }
            match find_separating_pair(&amap.cone, &p.k, &p.psi, !*weak, DEFAULT_ALPHA_MIN, &p.tol)? {
                None => {
                    r.outcome = Outcome::HypothesisFailed;
                    r.notes.push(format!("no separating pair for A({xbar}) and K"));
                }
                Some(cert) => {
                    if !cert.conclusions.passed() {
                        r.outcome = Outcome::VerificationFailed;
                        r.notes.push("separating certificate failed re-verification".into());
                    }
                    r.certificate = Some(cert);
                }
            }
        }
        Command::VerifyTheorems { theorem, xbar, .. } => {
            let opts = PipelineOptions {
                seed: common.seed,
                dilating_cone: file.dilating_cone.clone(),
                ..PipelineOptions::default()
            };
            verify_theorems(&p, &mut r, *theorem, xbar, &opts)?;
        }
        Command::Report {
            concept,
            phi,
            pair,
            a,
            k,
            ..
        } => {
            if matches!(concept, ConceptArg::Eff | ConceptArg::Weff) {
                return Err(CliError::Usage("report --concept must be peff-a or peff-henig".into()));
            }
            let eff = eff_set(&p)?;
            fill(&mut r.rows, &eff, |row, v| row.in_eff = Some(v));
            r.solution_sets.push(eff);
            match weff_set(&p) {
                Ok(w) => {
                    fill(&mut r.rows, &w, |row, v| row.in_weff = Some(v));
                    r.solution_sets.push(w);
                }
                Err(Error::InteriorUnsupported(kind)) => {
                    r.notes
                        .push(format!("weak efficiency skipped: no interior for {kind} cones"));
                }
                Err(e) => return Err(e.into()),
            }
            if let Some(s) = proper_set(&p, *concept, VariantArg::Rays)? {
                fill(&mut r.rows, &s, |row, v| row.in_peff = Some(v));
                r.solution_sets.push(s);
            }
            if let Some(phi) = phi {
                solve_scalar(&p, &mut r, *phi, pair, a.as_ref(), k.as_ref())?;
            }
        }
    }
    if common.timing {
        r.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(r)
}

fn fill(rows: &mut [LabelRow], set: &SolutionSet, mut put: impl FnMut(&mut LabelRow, bool)) {
    for row in rows {
        let v = set.contains(&row.label);
        put(row, v);
    }
}

fn amap_variant(v: VariantArg) -> AMapVariant {
    match v {
        VariantArg::Rays => AMapVariant::RaysOfDifferences,
        VariantArg::RaysPlusK => AMapVariant::RaysOfDifferencesPlusK,
    }
}

fn proper_set(p: &VOProblem, concept: ConceptArg, variant: VariantArg) -> Result<Option<SolutionSet>, CliError> {
    Ok(match concept {
        ConceptArg::PeffA => Some(peff_a_set(p, amap_variant(variant))?),
        ConceptArg::PeffHenig => Some(peff_henig_set(p, DEFAULT_ALPHA_MIN)?),
        ConceptArg::Eff | ConceptArg::Weff => None,
    })
}

fn require_pair(p: &VOProblem, pair: &PairArgs) -> Result<ScalarizingPair, CliError> {
    match (&pair.xstar, pair.alpha) {
        (Some(x), Some(alpha)) => Ok(ScalarizingPair::new(x.clone(), alpha, p.psi.clone())?),
        _ => Err(CliError::Usage("--xstar and --alpha are required".into())),
    }
}

fn solve_scalar(
    p: &VOProblem,
    r: &mut RunReport,
    phi: Phi,
    pair: &PairArgs,
    a: Option<&Point>,
    k: Option<&Point>,
) -> Result<(), CliError> {
    let a = a.cloned().unwrap_or_else(|| Point::zeros(p.dim()));
    let (spec, res) = match phi {
        Phi::SeminormLinear => {
            let pair = require_pair(p, pair)?;
            let spec = ScalarizerSpec::SeminormLinear { pair };
            let res = solve_p_phi_a(p, &spec, &a)?;
            (spec, res)
        }
        Phi::Gerstewitz => {
            let k = k.ok_or_else(|| CliError::Usage("--k is required for gerstewitz".into()))?;
            let cone = match (&pair.xstar, pair.alpha) {
                (None, None) => p.k.clone(),
                _ => require_pair(p, pair)?.cone(),
            };
            let res = solve_p_phi_ak(p, &cone, &a, k)?;
            // Both solution paths must agree on the minimizers.
            let alt = solve_p_phi_ak_by_constraint(p, &cone, &a, k)?;
            if alt.minimizers != res.minimizers {
                r.outcome = r.outcome.worst(Outcome::VerificationFailed);
                r.notes.push(format!(
                    "closed form and constraint form disagree: {:?} vs {:?}",
                    res.minimizers, alt.minimizers
                ));
            }
            let spec = ScalarizerSpec::Gerstewitz {
                cone,
                a: a.clone(),
                k: k.clone(),
            };
            (spec, res)
        }
    };
    for (row, v) in r.rows.iter_mut().zip(&res.per_label_values) {
        row.value = Some(*v);
    }
    r.scalar = Some(ScalarSummary {
        k: match &spec {
            ScalarizerSpec::Gerstewitz { k, .. } => Some(k.clone()),
            ScalarizerSpec::SeminormLinear { .. } => None,
        },
        scalarizer: spec,
        a,
        optimum: res.optimum,
        minimizers: res.minimizers,
    });
    Ok(())
}

/// Augmented dual verdicts, cross-checked against sampled monotonicity of
/// the seminorm-linear functional: a `Holds` verdict must admit no
/// counterexample and a counterexample must come with `Fails`.
fn check_cone(p: &VOProblem, r: &mut RunReport, pair: &PairArgs) -> Result<(), CliError> {
    let pair = require_pair(p, pair)?;
    let phi = ScalarizerSpec::SeminormLinear { pair: pair.clone() };
    let classes = [
        (AugDualClass::APlus, MonotoneMode::Increasing),
        (AugDualClass::ACirc, MonotoneMode::Strictly),
        (AugDualClass::ASharp, MonotoneMode::Strongly),
    ];
    for (i, (class, mode)) in classes.into_iter().enumerate() {
        let rep = aug_dual_membership(&p.k, &p.psi, &pair, class, &p.tol)?;
        match check_monotone(
            &phi,
            &p.k,
            mode,
            MONOTONE_SAMPLES,
            r.seed.wrapping_add(i as u64),
            &p.tol,
        ) {
            Ok(check) => {
                let contradiction = (rep.verdict == Verdict::Holds && !check.holds_on_samples)
                    || (check.counterexample.is_some() && rep.verdict != Verdict::Fails);
                if contradiction {
                    r.outcome = r.outcome.worst(Outcome::VerificationFailed);
                    r.notes
                        .push(format!("{class:?} verdict contradicts sampled {mode:?} monotonicity"));
                }
                r.monotonicity.push(MonotoneSummary { mode, check });
            }
            Err(Error::InteriorUnsupported(kind)) => {
                r.notes
                    .push(format!("{mode:?} monotonicity skipped: no interior for {kind} cones"));
            }
            Err(e) => return Err(e.into()),
        }
        r.aug_dual.push(rep);
    }
    Ok(())
}

fn verify_theorems(
    p: &VOProblem,
    r: &mut RunReport,
    theorem: TheoremArg,
    xbars: &[String],
    opts: &PipelineOptions,
) -> Result<(), CliError> {
    let which = match theorem {
        TheoremArg::Weff => Theorem::Weff,
        TheoremArg::Peff => Theorem::Peff,
        TheoremArg::Henig1 => Theorem::Henig1,
        TheoremArg::Henig2 => Theorem::Henig2,
    };
    let points = if xbars.is_empty() {
        let set = match which {
            Theorem::Weff => weff_set(p)?,
            Theorem::Peff => peff_a_set(p, AMapVariant::RaysOfDifferences)?,
            Theorem::Henig1 | Theorem::Henig2 => peff_henig_set(p, opts.alpha_min)?,
        };
        if set.members.is_empty() {
            r.notes.push("no candidate points for this theorem".into());
        }
        let members = set.members.clone();
        r.solution_sets.push(set);
        members
    } else {
        xbars.to_vec()
    };
    for xbar in &points {
        let outcome = match run_theorem_pipeline_with(p, which, xbar, opts) {
            Ok(report) if report.passed => TheoremOutcome::Certified { report },
            Ok(report) => {
                r.outcome = r.outcome.worst(Outcome::VerificationFailed);
                TheoremOutcome::Refuted { report }
            }
            Err(Error::HypothesisFailed { condition, witness }) => {
                r.outcome = r.outcome.worst(Outcome::HypothesisFailed);
                TheoremOutcome::HypothesisFailed {
                    theorem: which,
                    xbar: xbar.clone(),
                    condition,
                    witness,
                }
            }
            Err(e) => return Err(e.into()),
        };
        r.theorems.push(outcome);
    }
    Ok(())
}
