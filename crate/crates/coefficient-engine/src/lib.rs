//! Symbolic coefficient engine: model operators from real-frame formulas,
//! the resolvent pipeline for 𝓕_r and J_r, Toeplitz and star-product
//! coefficients at the base point, and comparison with closed forms.

pub mod checks;
pub mod closed;
pub mod dictionary;
pub mod error;
pub mod frame;
pub mod observables;
pub mod operators;
pub mod pipeline;
pub mod traces;

pub use checks::{check_ids, run_checks, CheckOutcome};
pub use dictionary::{lookup, Invariant};
pub use error::EngineError;
pub use operators::{build_operators, ModelOperatorSet};
pub use pipeline::Pipeline;
