//! The model operators 𝒪₂, 𝒪₃, 𝒪₄ as real-frame expressions.

use crate::frame::{re, ric, riem, Expr, V};
use model_calculus::OperatorExpr;
use tensor_algebra::{p, CRat};

use V::{Ahol, Hol, Zb, E, JE, R, Z};

/// Normal-ordered 𝒪₂, 𝒪₃, 𝒪₄.
#[derive(Clone, Debug)]
pub struct ModelOperatorSet {
    pub o2: OperatorExpr,
    pub o3: OperatorExpr,
    pub o4: OperatorExpr,
}

fn t(x: crate::frame::T) -> Expr {
    Expr::t(x)
}

fn nab(v: V) -> Expr {
    Expr::nabla(v)
}

fn pi(e: &Expr, k: i32) -> Expr {
    e.scale(CRat::one(), k)
}

/// A₁Z(x, y) = ⟨R_{;(Z,Z)}(𝓡, x)𝓡, y⟩
pub fn a1(x: V, y: V) -> Expr {
    t(riem(R, x, R, y).d(&[R, R]))
}

/// A₂Z(x, y) = ⟨R(𝓡, x)𝓡, R(𝓡, y)𝓡⟩, the inner product through a frame pair.
pub fn a2(x: V, y: V) -> Expr {
    t(riem(R, x, R, E(60))).mul(&t(riem(R, y, R, E(60))))
}

/// ric(𝓡, 𝓡)
pub fn ric_rr() -> Expr {
    t(ric(R, R))
}

pub fn o2_expr() -> Expr {
    let second = t(riem(R, E(0), R, E(1))).mul(&nab(E(0))).mul(&nab(E(1))).frac(1, 3);
    let first = pi(&t(riem(Z, Zb, R, E(0))), 1)
        .frac(1, 3)
        .add(&t(ric(R, E(0))).frac(2, 3))
        .sub(&t(re(R, E(0))))
        .sub(&t(ric(R, E(0))).frac(1, 3))
        .mul(&nab(E(0)));
    second.add(&first).add(&Expr::explicit(p("-2 E(k,k~) - 1/6 sc")))
}

pub fn o3_expr() -> Expr {
    let second = t(riem(R, E(0), R, E(1)).d(&[R])).mul(&nab(E(0))).mul(&nab(E(1))).frac(1, 6);
    let first = pi(&t(riem(Z, Zb, R, E(0)).d(&[R])), 1)
        .frac(2, 15)
        .add(&t(ric(R, E(0)).d(&[R])).frac(1, 6))
        .add(&t(riem(R, E(1), R, E(0)).d(&[E(1)])).frac(1, 6))
        .sub(&t(re(R, E(0)).d(&[R])).frac(2, 3))
        .mul(&nab(E(0)));
    let zeroth = pi(&t(riem(Z, Zb, R, E(1)).d(&[E(1)])), 1)
        .frac(1, 15)
        .sub(&t(ric(R, E(0)).d(&[E(0)])).frac(1, 6))
        .sub(&t(ric(E(0), E(0)).d(&[R])).frac(1, 12))
        .sub(&t(re(R, E(0)).d(&[E(0)])).frac(1, 3))
        .add(&t(re(E(0), JE(0)).d(&[R])).scale(&CRat::frac(-1, 2) * &CRat::i(), 0));
    second.add(&first).add(&zeroth)
}

pub fn o41() -> Expr {
    a1(E(0), E(1)).sub(&a2(E(0), E(1)).frac(4, 3)).frac(1, 20).mul(&nab(E(0))).mul(&nab(E(1)))
}

pub fn o42() -> Expr {
    let rr2 = ric_rr().mul(&ric_rr());
    let inner = a1(E(0), E(0))
        .frac(1, 80)
        .sub(&a2(E(0), E(0)).frac(1, 360))
        .frac(-1, 1)
        .sub(&rr2.frac(1, 288));
    Expr::lap().commutator(&inner).add(&Expr::lap().mul(&rr2).frac(1, 144))
}

pub fn o43() -> Expr {
    ric_rr().mul(&Expr::lap()).mul(&ric_rr()).frac(-1, 144)
}

pub fn o44() -> Expr {
    let dj = a1(E(0), E(1)).frac(1, 20).add(&a2(E(0), E(1)).frac(2, 45)).d_z(1);
    let di = a1(E(1), E(1)).frac(1, 40).add(&a2(E(1), E(1)).frac(1, 45)).d_z(0);
    pi(&a1(Zb, E(0)), 1)
        .frac(1, 30)
        .sub(&pi(&a2(Zb, E(0)), 1).frac(1, 10))
        .add(&dj)
        .sub(&di)
        .mul(&nab(E(0)))
}

pub fn o45() -> Expr {
    let rr = t(riem(R, E(1), R, E(2))).mul(&t(riem(R, E(1), E(0), E(2)))).frac(2, 9);
    let rric = t(riem(R, E(0), R, E(1))).mul(&t(ric(R, E(1)))).frac(1, 9);
    let rre = t(riem(R, E(0), R, E(1))).mul(&t(re(R, E(1)))).frac(1, 4);
    let ezz = t(re(R, E(0)).d(&[R, R])).frac(1, 4);
    rr.sub(&rric).add(&rre).sub(&ezz).mul(&nab(E(0)))
}

pub fn o46() -> Expr {
    let a = pi(&a2(Zb, Zb), 2).frac(-1, 36);
    let b = pi(&t(riem(Z, Zb, R, E(0)).d(&[R, E(0)])), 1).frac(1, 30);
    let c = pi(&t(riem(Z, Zb, R, E(0))).mul(&t(ric(R, E(0)))), 1).frac(-1, 20);
    let d = Expr::explicit(p("4/9 ric(k,m~) ric(m,l~) z(k) zb(l) - 4/9 R(k,l~,m,q~) ric(l,m~) z(k) zb(q)"));
    let e = pi(&t(riem(Z, Zb, R, E(0))).mul(&t(re(R, E(0)))), 1).frac(1, 6);
    let f = t(ric(R, E(0))).mul(&t(re(R, E(0)))).frac(1, 8);
    let g = Expr::explicit(p("E(k,m~) E(m,l~) z(k) zb(l)"));
    let h = t(re(R, E(0)).d(&[R, E(0)])).frac(-1, 4);
    let k = t(re(Hol(5), Ahol(5)).d(&[R, R])).frac(-1, 1);
    a.add(&b).add(&c).add(&d).add(&e).add(&f).add(&g).add(&h).add(&k)
}

pub fn o4_expr() -> Expr {
    o41().add(&o42()).add(&o43()).add(&o44()).add(&o45()).add(&o46())
}

pub fn build_operators() -> ModelOperatorSet {
    ModelOperatorSet { o2: o2_expr().to_operator(), o3: o3_expr().to_operator(), o4: o4_expr().to_operator() }
}
