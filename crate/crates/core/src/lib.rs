//! Exact computation and verification of multivariate q-binomial identities.
//!
//! Everything reduces to Laurent polynomials in `x = q^(1/2)` with
//! arbitrary-precision integer coefficients:
//!
//! - [`laurent`] and [`rational`]: exact polynomial and fraction arithmetic
//! - [`factored`] and [`qbinomial`]: symmetric q-integers, q-Pochhammer
//!   symbols and q-binomials in the factored `x^p prod (1 - x^e)^m` form
//! - [`partition`] and [`refined`]: partitions with multiplicities, the
//!   refined sum `f(d0, d1, k0)` and the theorem left-hand sides
//! - [`hypergeometric`]: terminating `_{r+1}phi_r` series and the
//!   q-Pfaff-Saalschütz summation
//! - [`closed_forms`]: the right-hand sides and generating-series values
//! - [`verify`]: parameter grids, records and traces

pub mod closed_forms;
pub mod error;
pub mod factored;
pub mod hypergeometric;
pub mod laurent;
pub mod partition;
pub mod qbinomial;
pub mod rational;
pub mod refined;
pub mod verify;

pub use closed_forms::{nlog_value, prop3_rhs, theorem1_rhs, theorem2_rhs, SurfaceTag};
pub use error::{Error, Result};
pub use factored::QFactored;
pub use hypergeometric::{
    is_saalschutzian, match_saalschutz, phi_evaluate, saalschutz_rhs, theorem1_proof_series, theorem2_proof_series,
    verify_saalschutz, PhiSeries, SaalschutzInstance,
};
pub use laurent::{LaurentPoly, RenderStyle};
pub use partition::{enumerate_indices, PartitionedIndex};
pub use qbinomial::{q_binomial, q_binomial_general, q_int, q_pochhammer, qbinom, QBinomialArgs};
pub use rational::RationalFunction;
pub use refined::{
    f_enumerated, f_recursive, f_recursive_with, f_term, theorem1_lhs, theorem2_lhs, FCache, FSumSpec, Summand,
};
pub use verify::{
    evaluate_cell, explain, run_grid, CellOutcome, Explanation, GridReport, GridSpec, Identity, ParamRange, Params,
    Side, Summary, VerificationRecord,
};
