//! Index forms at the base point for the invariants appearing in the closed
//! formulas. Observable jets are coordinate derivatives in normal
//! coordinates, so Laplacians of derivatives carry Ricci corrections.

use crate::error::EngineError;
use crate::observables::retag;
use tensor_algebra::{p, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// Δu
    Lap(u8),
    /// Δ²u
    Lap2(u8),
    /// {u, v}
    Poisson(u8, u8),
    /// ⟨∂̄u, ∂v⟩
    DbarD(u8, u8),
    /// ⟨∂u, ∂̄v⟩
    DDbar(u8, u8),
    /// ⟨∂̄u, ∂Δv⟩
    DbarDLap(u8, u8),
    /// ⟨∂̄Δu, ∂v⟩
    DbarLapD(u8, u8),
    /// ⟨∂̄u ∧ ∂v, R^E⟩
    DbarWedgeDRE(u8, u8),
    /// ⟨∂u ∧ ∂̄v, R^E⟩
    DWedgeDbarRE(u8, u8),
    /// ⟨ric_ω, ∂u ∧ ∂̄v⟩
    RicDWedgeDbar(u8, u8),
    /// ⟨D^{1,0}∂u, D^{0,1}∂̄v⟩
    HessHol(u8, u8),
    /// ⟨D^{0,1}∂̄u, D^{1,0}∂v⟩
    HessAhol(u8, u8),
    /// ⟨ric_ω, ∂∂̄u⟩
    RicDDbar(u8),
    /// ⟨∂∂̄u, R^E⟩
    DDbarRE(u8),
    /// ⟨du, ∇^E R^E_Λ⟩
    DRLambda(u8),
    /// ⟨∂u, ∇^{1,0*}R^E⟩
    DNablaStarRE(u8),
    /// ⟨∂̄u, ∂̄^{E*}R^E⟩
    DbarDbarStarRE(u8),
    /// br
    Br,
    /// Δ br
    LapBr,
    /// |R^{TX}|²
    RiemNormSq,
    /// |ric_ω|²
    RicNormSq,
    /// R^E_Λ
    RLambda,
    /// ⟨ric_ω, R^E⟩
    RicRE,
    /// ⟨R^E, R^E⟩
    RENormSq,
    /// Δ^E R^E_Λ
    LapRLambda,
    /// ∂̄*∇*R^E
    DbarStarNablaStarRE,
    /// Anything not catalogued.
    Other(String),
}

fn two(s: &str, u: u8, v: u8) -> Poly {
    retag(&p(s), &[(0, u), (1, v)])
}

pub fn lookup(inv: &Invariant) -> Result<Poly, EngineError> {
    use Invariant::*;
    Ok(match inv {
        Lap(u) => two("-4 f(;q,q~)", *u, *u),
        Lap2(u) => two(
            "16 f(;i,q,i~,q~) - 16/3 ric(m,l~) f(;l,m~) \
             - 4/3 ric(m,l~;m~) f(;l) - 4/3 ric(m,m~;l~) f(;l) \
             - 4/3 ric(l,m~;m) f(;l~) - 4/3 ric(m,m~;l) f(;l~)",
            *u,
            *u,
        ),
        Poisson(u, v) => two("i pi^-1 f(;k) g(;k~) - i pi^-1 f(;k~) g(;k)", *u, *v),
        DbarD(u, v) => two("2 f(;k~) g(;k)", *u, *v),
        DDbar(u, v) => two("2 f(;k) g(;k~)", *u, *v),
        DbarDLap(u, v) => two("-8 f(;q~) g(;q,i,i~) + 8/3 f(;q~) ric(q,l~) g(;l)", *u, *v),
        DbarLapD(u, v) => two("-8 f(;i,q~,i~) g(;q) + 8/3 f(;l~) ric(l,q~) g(;q)", *u, *v),
        DbarWedgeDRE(u, v) => two("4 f(;m~) g(;l) E(m,l~)", *u, *v),
        DWedgeDbarRE(u, v) => two("-4 f(;l) g(;m~) E(m,l~)", *u, *v),
        RicDWedgeDbar(u, v) => two("-4 i ric(l,m~) f(;m) g(;l~)", *u, *v),
        HessHol(u, v) => two("4 f(;a,b) g(;a~,b~)", *u, *v),
        HessAhol(u, v) => two("4 f(;a~,b~) g(;a,b)", *u, *v),
        RicDDbar(u) => two("-4 i ric(l,m~) f(;m,l~)", *u, *u),
        DDbarRE(u) => two("-4 f(;l,m~) E(m,l~)", *u, *u),
        DRLambda(u) => two("-4 i f(;k) E(q,q~;k~) - 4 i f(;k~) E(q,q~;k)", *u, *u),
        DNablaStarRE(u) => two("-4 f(;k) E(q,k~;q~)", *u, *u),
        DbarDbarStarRE(u) => two("4 f(;k~) E(k,q~;q)", *u, *u),
        Br => p("sc"),
        LapBr => p("lapsc"),
        RiemNormSq => p("16 R(k,l~,m,q~) R(l,k~,q,m~)"),
        RicNormSq => p("4 ric(l,m~) ric(m,l~)"),
        RLambda => p("-2 i E(k,k~)"),
        RicRE => p("-4 i ric(l,m~) E(m,l~)"),
        RENormSq => p("-4 E(l,m~) E(m,l~)"),
        LapRLambda => p("8 i E(k,k~;q,q~)"),
        DbarStarNablaStarRE => p("4 E(m,k~;k,m~)"),
        Other(name) => return Err(EngineError::Unsupported(name.clone())),
    })
}

/// Shorthand for catalogued invariants.
pub fn inv(i: Invariant) -> Poly {
    lookup(&i).expect("catalogued invariant")
}
