//! Vector optimization over finite image sets: brute-force solution-set
//! oracles, enumerative scalar solvers and the theorem pipelines.

pub mod oracles;
pub mod pipeline;
pub mod problem;
pub mod solve;

pub use oracles::{
    amap_cone, eff_set, eff_set_with, peff_a_set, peff_a_set_with, peff_henig_check, peff_henig_set,
    peff_henig_set_with, weff_set, weff_set_with, AMap, DEFAULT_K_SAMPLES,
};
pub use pipeline::{
    dilation_complement, run_theorem_pipeline, run_theorem_pipeline_with, NamedCheck, PipelineOptions, Theorem,
    TheoremReport,
};
pub use problem::{AMapVariant, Concept, SolutionSet, VOProblem};
pub use solve::{
    eff_certificate_via_ps, hyperplane_decompose, solve_p_phi_a, solve_p_phi_a_with, solve_p_phi_ak,
    solve_p_phi_ak_by_constraint, solve_p_phi_ak_by_constraint_with, solve_p_phi_ak_with, weff_certificate_via_ps,
    Decomposition, PsCertificate, ScalarSolveResult,
};
