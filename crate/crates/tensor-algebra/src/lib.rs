//! Exact coefficient ring for curvature contractions on Kähler manifolds.
//!
//! Monomials carry tensor factors with contracted indices, commuting model
//! variables and an optional ordered operator word. Scalars are exact complex
//! rationals times powers of π and of the dimension symbol `n`.

pub mod error;
pub mod exec;
pub mod factor;
pub mod index;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod relations;
pub mod render;
pub mod scalar;

pub use error::AlgebraError;
pub use factor::{Factor, Kind};
pub use index::{fr, free, is_free, End, Label};
pub use mono::{Mono, Var, VarKind};
pub use parse::{p, parse};
pub use poly::Poly;
pub use relations::{RelationSet, Verdict};
pub use scalar::{rat, CRat};

/// Canonical representative of a monomial.
pub fn canonical_term(m: &Mono) -> Result<Mono, AlgebraError> {
    m.validate()?;
    Ok(m.canonical())
}

pub fn equal_mod_relations(a: &Poly, b: &Poly, rels: &RelationSet) -> Result<Verdict, AlgebraError> {
    rels.equal_mod(a, b)
}
