use coefficient_engine::frame::{ric, Expr, V};
use coefficient_engine::operators::*;
use coefficient_engine::traces::expand_traces;
use tensor_algebra::p;

fn o2_normal() -> tensor_algebra::Poly {
    p("1/3 R(k,m~,l,q~) b(m) b(q) z(k) z(l) \
        - 1/3 pi R(k,m~,l,q~) b(q) z(k) z(l) zb(m) + 2 R(l,k~,k,q~) b(q) z(l) + E(l,q~) b(q) z(l) \
        + 2/3 R(k,m~,l,q~) b(q) z(k) zb(m) bp(l) - 1/3 pi R(k,m~,l,q~) z(k) zb(m) zb(q) bp(l) \
        + 2 R(k,k~,l,m~) zb(m) bp(l) + E(l,m~) zb(m) bp(l) \
        + 1/3 R(k,m~,l,q~) zb(m) zb(q) bp(k) bp(l)")
}

#[test]
fn o2_real_frame_matches_complex_form() {
    let o2 = o2_expr().to_operator();
    assert_eq!(expand_traces(&o2.0), o2_normal(), "got {}", o2);
}

#[test]
fn ric_of_radial_field() {
    let e = Expr::t(ric(V::R, V::R));
    assert_eq!(e.to_operator().0, p("2 ric(k,q~) z(k) zb(q)"));
}

#[test]
fn operators_are_self_adjoint() {
    let ops = build_operators();
    for (name, o) in [("O2", &ops.o2), ("O3", &ops.o3), ("O4", &ops.o4)] {
        let d = expand_traces(&o.adjoint().sub(o).0);
        assert!(d.is_zero(), "{name} not self-adjoint: {}", d);
    }
}
