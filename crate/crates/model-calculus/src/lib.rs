//! Kernel calculus of the model operator 𝓛 = Σ b_j b⁺_j on ℂⁿ.
//!
//! Letters satisfy [b_i, b⁺_j] = −4πδ_ij, [b_i, z_j] = −2δ_ij,
//! [b⁺_i, z̄_j] = 2δ_ij, all others commuting. Kernels are polynomials times
//! 𝒫(Z, Z′), composed with the Gaussian moment rule.

pub mod kernel;
pub mod operator;
pub mod oracle;
pub mod random;

pub use kernel::{
    adjoint, apply_to_p, compose, compose_at_origin, compose_fock, eval_origin, fock_form, inv_l_perp, project, project_perp, FockForm,
    Kernel,
};
pub use operator::{normal_order, OperatorExpr};
pub use oracle::{fock_oracle, OracleError};
