//! Kite central configurations of the Newtonian four-body problem: shapes,
//! mass map, Morse index, solvers, linear stability, scans and the `kite` CLI.

pub mod cc;
pub mod cli;
pub mod domain;
pub mod error;
pub mod export;
pub mod index;
pub mod numkit;
pub mod scan;
pub mod solver;
pub mod stability;

pub use cc::{cc_residual, dziobek_residual, lambda_hat, limit_masses_13gon, mass_map, CCResidual};
pub use cli::{run_cli, run_cli_with};
pub use domain::{classify_region, MassTriple, ReducedShape, Region};
pub use error::{KiteError, Result};
pub use index::{f_value, index_sign, nontrivial_product};
pub use scan::{scan_region, trace_degeneracy_curve, ScanRow, What};
pub use solver::{solve_concave, solve_convex, SolveResult};
pub use stability::{shape_stability, trace_stability_boundary, SpectrumReport};
