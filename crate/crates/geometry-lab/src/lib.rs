//! Bergman kernels, Toeplitz operators and asymptotic fits on CP¹ with the
//! Fubini–Study metric and on the flat square torus, both of volume one.
//!
//! Operator norms are spectral norms of the finite Toeplitz matrices, which
//! equal the operator norms on the range of the Bergman projection.

pub mod error;
pub mod experiments;
pub mod fit;
pub mod model;
pub mod observable;
pub mod par;
pub mod space;

pub use error::LabError;
pub use experiments::{check_ids, run_checks, CsvRow, NamedFit, NumericConfig, NumericOutcome};
pub use fit::{fit, fitted_exponent, loglog_slope, AsymptoticFit};
pub use model::{by_name, Cp1, Model, Point, Torus};
pub use observable::Observable;
pub use space::{eigenvalues, gram, hermitian_deviation, operator_norm, orthonormal_basis, BergmanSpace, ToeplitzData};
