//! Registry of symbolic checks. Each check produces two tensor polynomials
//! that must agree modulo the curvature relations.

use crate::closed;
use crate::error::EngineError;
use crate::observables::{obs, product, subst, F, G, H};
use crate::pipeline::{taylor, Pipeline};
use crate::traces::expand_traces;
use model_calculus::{adjoint, compose, compose_at_origin, eval_origin, Kernel};
use std::sync::OnceLock;
use std::time::Instant;
use tensor_algebra::{equal_mod_relations, exec, p, Kind, Poly, RelationSet};

type Sides = Result<(Poly, Poly), EngineError>;

pub struct SymbolicCheck {
    pub id: &'static str,
    pub anchor: &'static str,
    sides: fn(&Pipeline) -> Sides,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    /// Rendered residue modulo relations; `0` on success.
    pub residue: String,
    pub residue_terms: usize,
    pub wall_time_ms: f64,
}

pub fn relations() -> &'static RelationSet {
    static RELS: OnceLock<RelationSet> = OnceLock::new();
    RELS.get_or_init(RelationSet::standard)
}

/// Compares two sides after rewriting ric, sc and Δsc as traces of R.
pub fn compare(a: &Poly, b: &Poly) -> Result<(bool, Poly), EngineError> {
    let v = equal_mod_relations(&expand_traces(a), &expand_traces(b), relations())?;
    Ok((v.equal, v.residue))
}

fn drop_twist(p: &Poly) -> Poly {
    p.filter(|m| m.factors.iter().all(|f| f.kind != Kind::E))
}

fn origin(k: &Kernel) -> Poly {
    eval_origin(k)
}

/// ∫ 𝒫(0,Z′) J₂(Z′,0) 𝒫(Z′,0) dZ′, which is 𝒦[1, J₂](0,0).
fn sandwich_j2(pl: &Pipeline) -> Poly {
    origin(&compose(&Kernel::projector(), pl.f(2)))
}

fn b2h(pl: &Pipeline) -> Poly {
    pl.b_f(H, 2)
}

/// Displayed normal form of 𝒪₂.
pub fn o2_displayed() -> Poly {
    p("1/3 R(k,m~,l,q~) b(m) b(q) z(k) z(l) \
        - 1/3 pi R(k,m~,l,q~) b(q) z(k) z(l) zb(m) + 2 R(l,k~,k,q~) b(q) z(l) + E(l,q~) b(q) z(l) \
        + 2/3 R(k,m~,l,q~) b(q) z(k) zb(m) bp(l) - 1/3 pi R(k,m~,l,q~) z(k) zb(m) zb(q) bp(l) \
        + 2 R(k,k~,l,m~) zb(m) bp(l) + E(l,m~) zb(m) bp(l) \
        + 1/3 R(k,m~,l,q~) zb(m) zb(q) bp(k) bp(l)")
}

macro_rules! check {
    ($id:expr, $anchor:expr, $f:expr) => {
        SymbolicCheck { id: $id, anchor: $anchor, sides: $f }
    };
}

pub fn registry() -> Vec<SymbolicCheck> {
    let mut v = vec![
        check!("PO2P", "Eq. bk3.0a", |pl| Ok((pl.p_o2_p().0, Poly::zero()))),
        check!("O2-normal-form", "Eq. bk3.4", |pl| Ok((pl.ops.o2.0.clone(), o2_displayed()))),
        check!("O-self-adjoint", "Remark toet2.7", |pl| {
            let mut d = Poly::zero();
            for o in [&pl.ops.o2, &pl.ops.o3, &pl.ops.o4] {
                d.add_assign_poly(&(&o.adjoint().0 - &o.0));
            }
            Ok((d, Poly::zero()))
        }),
        check!("F2", "Eq. bk2.6", |pl| Ok((origin(pl.f(2)), closed::b1()))),
        check!("b1-invariant", "Eq. abk2.6", |_| Ok((closed::b1_invariant(), closed::b1()))),
        check!("PJ2P", "Eq. n55", |pl| {
            let pj = sandwich_j2(pl);
            Ok((drop_twist(&pj), closed::pj2p_trivial_bundle()))
        }),
        check!("PJ2P-twisted", "Eq. n55", |pl| {
            let pj = sandwich_j2(pl);
            Ok((pj, closed::pj2p()))
        }),
        check!("bk3.0b", "Eq. bk3.0b", |pl| Ok((origin(&pl.t5), closed::bk3_0b()))),
        check!("bk3.0c", "Eq. bk3.0c", |pl| Ok((origin(&compose(&adjoint(&pl.a2), &pl.a2)), closed::bk3_0c()))),
        check!("bk3.12", "Lemma bkt3.2, Eq. bk3.12", |pl| Ok((origin(&pl.t1), closed::bk3_12()))),
        check!("lm3.31", "Lemma bkt3.4, Eq. lm3.31", |pl| Ok((origin(&pl.t2), closed::lm3_31()))),
        check!("F4", "Theorem bkt3.0", |pl| Ok((pl.f4_origin(), closed::b2(false)))),
        check!("F4-footnote", "Theorem bkt3.0, footnote to Eq. bk2.6", |pl| Ok((pl.f4_origin(), closed::b2(true)))),
        check!("b2-invariant", "Eq. abk2.6", |_| Ok((closed::b2_invariant(), closed::b2(false)))),
        check!("F-self-adjoint", "Remark toet2.7", |pl| {
            let (f2, f4) = (origin(pl.f(2)), pl.f4_origin());
            Ok((&f2.conj_kernel() + &f4.conj_kernel(), &f2 + &f4))
        }),
        check!("J4-idempotent", "Eq. bk4.10", |pl| {
            let pp = Kernel::projector();
            let lhs = compose(&pp, pl.f(4)).add(&compose(pl.f(2), pl.f(2))).add(&compose(pl.f(4), &pp));
            Ok((origin(&lhs), pl.f4_origin()))
        }),
        check!("Q0", "Eq. toe2.15", |pl| Ok((pl.qf_origin(F, 0), obs(F)))),
        check!("bk4.18", "Lemma bkt4.3, Eq. bk4.18", |pl| {
            let t1 = taylor(F, 1);
            let pp = Kernel::projector();
            let a = compose_at_origin(pl.f(3), &Kernel(t1.mul_poly(&pp.0)));
            let b = compose_at_origin(&pp, &Kernel(t1.mul_poly(&pl.f(3).0)));
            Ok((&a + &b, closed::k3f(F).scale_pi(-2)))
        }),
        check!("b1f", "Eq. bk4.3", |pl| Ok((pl.b_f(F, 1), closed::b1f(F)))),
        check!("b2f", "Eq. bk4.4", |pl| Ok((pl.b_f(F, 2), closed::b2f_index(F)))),
        check!("b2f-invariant", "Eq. abk4.4", |pl| Ok((pl.b_f(F, 2), closed::b2f(F, false)))),
        check!("b0fg", "Theorem toet4.6", |pl| Ok((pl.b_fg(F, G, 0), product(F, G)))),
        check!("b1fg", "Eq. toe4.31", |pl| Ok((pl.b_fg(F, G, 1), closed::b1fg(F, G)))),
        check!("b2fg", "Eq. toe4.32", |pl| Ok((pl.b_fg(F, G, 2), closed::b2fg(F, G)))),
        check!("C0", "Eq. toe4.3", |pl| Ok((pl.b_fg(F, G, 0), product(F, G)))),
        check!("C1", "Eq. toe4.8", |pl| {
            let b1h = pl.b_f(H, 1);
            let c1 = &pl.b_fg(F, G, 1) - &subst(&b1h, H, &product(F, G))?;
            Ok((c1, closed::c1(F, G)))
        }),
        check!("C2", "Eq. toe4.3a", |pl| {
            Ok((closed::c2_from(&pl.b_fg(F, G, 2), &b2h(pl), F, G), closed::c2(F, G)))
        }),
        check!("poisson", "Eq. toe4.5", |_| Ok((closed::poisson_defect(), Poly::zero()))),
        check!("assoc-1", "Eq. toe4.4", |_| Ok((closed::associativity_defect_first(), Poly::zero()))),
        check!("assoc-2", "Eq. toe4.4", |_| Ok((closed::associativity_defect(), Poly::zero()))),
    ];
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// The shared pipeline, built once per process.
pub fn pipeline() -> &'static Pipeline {
    static PL: OnceLock<Pipeline> = OnceLock::new();
    PL.get_or_init(Pipeline::build)
}

fn run_one(c: &SymbolicCheck, pl: &Pipeline) -> CheckOutcome {
    let t = Instant::now();
    let res = (c.sides)(pl).and_then(|(a, b)| compare(&a, &b));
    let (passed, residue, residue_terms) = match res {
        Ok((eq, r)) => (eq, if eq { "0".to_string() } else { r.to_string() }, r.len()),
        Err(e) => (false, format!("error: {e}"), 0),
    };
    CheckOutcome {
        id: c.id.to_string(),
        anchor: c.anchor.to_string(),
        passed,
        residue,
        residue_terms,
        wall_time_ms: t.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs the selected checks (all when `filter` is empty), in parallel, and
/// returns outcomes sorted by id.
pub fn run_checks(filter: &[String]) -> Result<Vec<CheckOutcome>, EngineError> {
    let all = registry();
    for name in filter {
        if !all.iter().any(|c| c.id == name) {
            return Err(EngineError::UnknownCheck(name.clone()));
        }
    }
    let selected: Vec<&SymbolicCheck> =
        all.iter().filter(|c| filter.is_empty() || filter.iter().any(|f| f == c.id)).collect();
    let pl = pipeline();
    let mut out = exec::current().map(&selected, |c| run_one(c, pl));
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
