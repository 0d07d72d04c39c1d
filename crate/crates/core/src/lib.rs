//! Route-selection toolkit: pick `xi` of `N` places and an order to visit
//! them so total priority is maximal while the round trip from home fits a
//! time budget.
//!
//! The crate offers three attacks on the same problem. [`classical`]
//! enumerates or samples permutations directly. [`qubo`] lowers an instance
//! onto `N*xi` binary variables whose quadratic energy reproduces the route
//! objective plus constraint penalties, so annealing-style samplers in
//! [`sampler`] can search it. [`analysis`] cross-checks the two views
//! (ground-state confirmation, energy scatter, histograms) and drives the
//! end-to-end step-count sweep.
//!
//! Everything numeric is generic over [`Scalar`]. The parameter defaults to
//! `f64` on every public type, so `JspInstance`, `QuboModel` and friends act
//! as double-precision aliases unless another width is requested.

pub mod analysis;
pub mod classical;
pub mod model;
pub mod qubo;
pub mod sampler;

pub(crate) mod seed;

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the solvers run on. Implemented for `f32` and
/// `f64`; the bound set is what the pipelines actually use (arithmetic,
/// conversions, reductions, printing, thread hand-off).
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + fmt::Display
    + fmt::Debug
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts a finite `f64` into the working scalar, rounding once.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 converts to every supported scalar")
}

/// Seed used by command-line front ends when the user gives none.
pub const DEFAULT_SEED: u64 = 42;

pub mod fixtures {
    //! Bundled example instance: nine candidate stops around Hobbiton.

    use crate::model::{parse_instance, JspInstance};
    use crate::Scalar;

    /// Text of the instance file shipped at the repository root.
    pub const MIDDLE_EARTH: &str = include_str!("../../../middle_earth.jsp");

    /// Parsed copy of [`MIDDLE_EARTH`].
    pub fn middle_earth<T: Scalar>() -> JspInstance<T> {
        parse_instance(MIDDLE_EARTH).expect("bundled instance parses")
    }
}

pub use analysis::{
    confirm_ground_state, histogram, scatter_data, sweep, sweep_range, violation_breakdown,
    AnalysisError, CoeffInputs, ConfirmationReport, Histogram, RangeSweep, ScatterData,
    SolverConfig, SweepResult, ViolationBreakdown, XiOutcome,
};
pub use classical::{
    count_routes, exhaustive_csv, exhaustive_search, expected_hits, greedy_guess, random_csv,
    random_sample_search, route_stats, ClassicalError, ExhaustiveReport, RandomReport, Route,
};
pub use model::{
    derive_coefficients, parse_instance, CoefficientSet, JspInstance, ModelError, ParseError,
    Place, Violation, DEFAULT_C_P, DEFAULT_OAM_MULTIPLIER, DEFAULT_OPS_MULTIPLIER,
    DEFAULT_P_GUESS,
};
pub use qubo::{
    build_qubo, decode, encode_route, natural_energy, BitString, DecodedAssignment, QuboError,
    QuboModel, VarIndex,
};
pub use sampler::{
    dummy_problem, export_qubo, import_qubo, sample_uniform, simulated_anneal, AnnealParams,
    SampleRecord, SampleSet, SamplerError,
};
