//! Bishop-Phelps type conic scalarization for finite-dimensional vector
//! optimization.
//!
//! The crate is organised bottom-up:
//!
//! - [`lp`]: a small dense two-phase simplex solver (Bland's rule), the only
//!   LP engine used anywhere in the crate.
//! - [`cone`]: points, seminorms, cone representations, membership tests,
//!   lineality spaces, normlike-bases and the polytopes `S_K`, `S_K^0`.
//! - [`scalarizers`]: seminorm-linear and Gerstewitz functionals together with
//!   sampling falsifiers for cone representation and monotonicity.
//! - [`augdual`]: membership in the augmented dual cones `K^{a+}`, `K^{a∘}`,
//!   `K^{a#}` and LP search for sharp pairs.
//! - [`separation`]: cone separation conditions and Bishop-Phelps separating
//!   certificates.
//! - [`vopt`]: finite vector optimization problems, brute-force efficiency
//!   oracles, scalar solvers and the theorem-verification pipelines.
//! - [`expr`]: objective expression parser used by problem files.
//! - [`cli_io`]: problem files, reports and the command implementations behind
//!   the `bpscal` binary.
//!
//! Per-label loops run on rayon when the `parallel` feature is enabled (the
//! default); results are identical to the sequential path.

pub mod augdual;
pub mod cli_io;
pub mod cone;
pub mod error;
pub mod expr;
pub mod lp;
pub mod par;
pub mod scalarizers;
pub mod separation;
pub mod vopt;

pub use cone::{ConeRep, Point, SeminormSpec, Tolerances};
pub use error::{Error, Result};
