//! Real-frame expressions and their conversion to complex operator words.
//!
//! A term is an ordered product of items: curvature tensors evaluated on
//! vector arguments, covariant derivative letters ∇_{0,v}, the model operator
//! 𝓛 and explicit index-form polynomials. Real frame vectors e_i come in
//! contracted pairs identified by a small id.

use model_calculus::operator::as_word;
use model_calculus::{normal_order, OperatorExpr};
use tensor_algebra::{CRat, Factor, Label, Mono, Poly, VarKind};

/// Vector arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum V {
    /// radial field 𝓡 = Σ Z_i e_i
    R,
    /// z = Σ z_s ∂/∂z_s
    Z,
    /// z̄ = Σ z̄_s ∂/∂z̄_s
    Zb,
    /// real frame vector e_i, id shared by the two occurrences
    E(u8),
    /// J e_i
    JE(u8),
    /// ∂/∂z_c, paired with `Ahol(c)`
    Hol(u8),
    /// ∂/∂z̄_c
    Ahol(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TKind {
    /// ⟨R(a, b) c, d⟩
    Riem,
    Ric,
    /// R^E(a, b)
    RE,
}

/// A tensor with argument slots and derivative directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T {
    pub kind: TKind,
    pub args: Vec<V>,
    pub dirs: Vec<V>,
}

impl T {
    pub fn d(mut self, dirs: &[V]) -> T {
        self.dirs = dirs.to_vec();
        self
    }
}

pub fn riem(a: V, b: V, c: V, d: V) -> T {
    T { kind: TKind::Riem, args: vec![a, b, c, d], dirs: vec![] }
}

pub fn ric(a: V, b: V) -> T {
    T { kind: TKind::Ric, args: vec![a, b], dirs: vec![] }
}

pub fn re(a: V, b: V) -> T {
    T { kind: TKind::RE, args: vec![a, b], dirs: vec![] }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    T(T),
    Nabla(V),
    Lap,
    Explicit(Poly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub c: CRat,
    pub pi: i32,
    pub items: Vec<Item>,
}

/// A sum of terms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr(pub Vec<Term>);

impl Expr {
    pub fn one() -> Expr {
        Expr(vec![Term { c: CRat::one(), pi: 0, items: vec![] }])
    }

    pub fn item(it: Item) -> Expr {
        Expr(vec![Term { c: CRat::one(), pi: 0, items: vec![it] }])
    }

    pub fn t(t: T) -> Expr {
        Expr::item(Item::T(t))
    }

    pub fn nabla(v: V) -> Expr {
        Expr::item(Item::Nabla(v))
    }

    pub fn lap() -> Expr {
        Expr::item(Item::Lap)
    }

    /// Index-form multiplication operator; multi-term input is split.
    pub fn explicit(p: Poly) -> Expr {
        explicit_sum(&p)
    }

    pub fn scale(&self, c: CRat, pi: i32) -> Expr {
        Expr(self.0.iter().map(|t| Term { c: &t.c * &c, pi: t.pi + pi, items: t.items.clone() }).collect())
    }

    pub fn frac(&self, n: i64, d: i64) -> Expr {
        self.scale(CRat::frac(n, d), 0)
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut v = self.0.clone();
        v.extend(o.0.iter().cloned());
        Expr(v)
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.frac(-1, 1))
    }

    /// Ordered product. Equal frame ids on both sides are contracted.
    pub fn mul(&self, o: &Expr) -> Expr {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &o.0 {
                let mut items = a.items.clone();
                items.extend(b.items.iter().cloned());
                out.push(Term { c: &a.c * &b.c, pi: a.pi + b.pi, items });
            }
        }
        Expr(out)
    }

    /// [self, o]
    pub fn commutator(&self, o: &Expr) -> Expr {
        self.mul(o).sub(&o.mul(self))
    }

    /// ∂/∂Z_j by the product rule over every occurrence of 𝓡; the
    /// differentiated occurrence becomes e_j.
    pub fn d_z(&self, j: u8) -> Expr {
        let mut out = Vec::new();
        for t in &self.0 {
            for (ii, it) in t.items.iter().enumerate() {
                let Item::T(tt) = it else { continue };
                let slots: Vec<V> = tt.args.iter().chain(tt.dirs.iter()).copied().collect();
                for (si, v) in slots.iter().enumerate() {
                    if *v != V::R {
                        continue;
                    }
                    let mut nt = tt.clone();
                    if si < nt.args.len() {
                        nt.args[si] = V::E(j);
                    } else {
                        let k = si - nt.args.len();
                        nt.dirs[k] = V::E(j);
                    }
                    let mut items = t.items.clone();
                    items[ii] = Item::T(nt);
                    out.push(Term { c: t.c.clone(), pi: t.pi, items });
                }
            }
        }
        Expr(out)
    }

    /// Converts to a normal-ordered operator expression.
    pub fn to_operator(&self) -> OperatorExpr {
        normal_order(&OperatorExpr(self.raw()))
    }

    /// Complex-frame expansion with ordered (not yet normal-ordered) words.
    pub fn raw(&self) -> Poly {
        let mut raw: Vec<(CRat, Mono)> = Vec::new();
        for t in &self.0 {
            expand_term(t, &mut raw);
        }
        Poly::from_terms(raw)
    }
}

fn vec_ids(v: &V) -> Option<u8> {
    match v {
        V::E(i) | V::JE(i) => Some(*i),
        _ => None,
    }
}

/// A complex basis vector: `hol` is ∂/∂z (unbarred), otherwise ∂/∂z̄.
#[derive(Clone, Copy)]
struct CVec {
    hol: bool,
    label: Label,
    /// coefficient variable carried by 𝓡, z or z̄
    var: Option<VarKind>,
}

/// Position of every vector occurrence: (item, slot).
fn occurrences(t: &Term) -> Vec<(usize, usize, V)> {
    let mut out = Vec::new();
    for (ii, it) in t.items.iter().enumerate() {
        match it {
            Item::T(tt) => {
                for (si, v) in tt.args.iter().chain(tt.dirs.iter()).enumerate() {
                    out.push((ii, si, *v));
                }
            }
            Item::Nabla(v) => out.push((ii, 0, *v)),
            _ => {}
        }
    }
    out
}

fn expand_term(t: &Term, out: &mut Vec<(CRat, Mono)>) {
    let occ = occurrences(t);
    // pair ids: label per id, fixed complex ids for Hol/Ahol
    let mut ids: Vec<u8> = occ.iter().filter_map(|(_, _, v)| vec_ids(v)).collect();
    ids.sort_unstable();
    ids.dedup();
    for id in &ids {
        let n = occ.iter().filter(|(_, _, v)| vec_ids(v) == Some(*id)).count();
        assert_eq!(n, 2, "frame vector e_{id} must appear exactly twice");
    }
    let nr = occ.iter().filter(|(_, _, v)| *v == V::R).count();
    let choices = ids.len() + nr;
    // labels: one per occurrence slot, pairs share
    let mut next: Label = 0;
    let mut label_of_id = std::collections::BTreeMap::new();
    let mut labels: Vec<Label> = Vec::with_capacity(occ.len());
    for (_, _, v) in &occ {
        let l = match v {
            V::E(i) | V::JE(i) => *label_of_id.entry(('e', *i)).or_insert_with(|| {
                next += 1;
                next - 1
            }),
            V::Hol(i) | V::Ahol(i) => *label_of_id.entry(('c', *i)).or_insert_with(|| {
                next += 1;
                next - 1
            }),
            _ => {
                next += 1;
                next - 1
            }
        };
        labels.push(l);
    }
    let reserved = next + occ.len() as Label + 4;

    for mask in 0u64..(1u64 << choices) {
        let bit = |k: usize| mask >> k & 1 == 1;
        let mut coeff = t.c.clone();
        let mut cv: Vec<CVec> = Vec::with_capacity(occ.len());
        let mut first_seen: Vec<u8> = Vec::new();
        let mut rk = 0usize;
        for (oi, (_, _, v)) in occ.iter().enumerate() {
            let label = labels[oi];
            let c = match v {
                V::R => {
                    let hol = !bit(ids.len() + rk);
                    rk += 1;
                    CVec { hol, label, var: Some(if hol { VarKind::Z } else { VarKind::Zb }) }
                }
                V::Z => CVec { hol: true, label, var: Some(VarKind::Z) },
                V::Zb => CVec { hol: false, label, var: Some(VarKind::Zb) },
                V::Hol(_) => CVec { hol: true, label, var: None },
                V::Ahol(_) => CVec { hol: false, label, var: None },
                V::E(i) | V::JE(i) => {
                    let k = ids.iter().position(|x| x == i).expect("id");
                    let first = !first_seen.contains(i);
                    if first {
                        first_seen.push(*i);
                        coeff = &coeff * &CRat::int(2);
                    }
                    // first occurrence ∂ when bit clear, second the opposite type
                    let hol = bit(k) ^ first;
                    if matches!(v, V::JE(_)) {
                        coeff = &coeff * &if hol { CRat::i() } else { -CRat::i() };
                    }
                    CVec { hol, label, var: None }
                }
            };
            cv.push(c);
        }
        if let Some((c2, mut mono)) = assemble(t, &occ, &cv, reserved) {
            mono.pi += t.pi;
            out.push((&coeff * &c2, mono));
        }
    }
}

/// Builds the monomial of one complex assignment, or `None` when a tensor
/// vanishes on pure-type arguments.
fn assemble(t: &Term, occ: &[(usize, usize, V)], cv: &[CVec], reserved: Label) -> Option<(CRat, Mono)> {
    let mut m = Mono::one();
    let mut sign = CRat::one();
    let mut next_free = reserved;
    let mut k = 0usize;
    for (ii, it) in t.items.iter().enumerate() {
        let start = k;
        while k < occ.len() && occ[k].0 == ii {
            k += 1;
        }
        let vs = &cv[start..k];
        match it {
            Item::T(tt) => {
                let na = tt.args.len();
                let (args, dirs) = vs.split_at(na);
                let du: Vec<Label> = dirs.iter().filter(|v| v.hol).map(|v| v.label).collect();
                let db: Vec<Label> = dirs.iter().filter(|v| !v.hol).map(|v| v.label).collect();
                let f = match tt.kind {
                    TKind::Riem => {
                        let (a, b, c, d) = (args[0], args[1], args[2], args[3]);
                        if a.hol == b.hol || c.hol == d.hol {
                            return None;
                        }
                        let (k1, m1) = if a.hol { (a.label, b.label) } else { (b.label, a.label) };
                        let (l1, q1) = if c.hol { (c.label, d.label) } else { (d.label, c.label) };
                        if !a.hol {
                            sign = -sign;
                        }
                        if !c.hol {
                            sign = -sign;
                        }
                        Factor::r(k1, m1, l1, q1)
                    }
                    TKind::Ric => {
                        let (a, b) = (args[0], args[1]);
                        if a.hol == b.hol {
                            return None;
                        }
                        if a.hol {
                            Factor::ric(a.label, b.label)
                        } else {
                            Factor::ric(b.label, a.label)
                        }
                    }
                    TKind::RE => {
                        let (a, b) = (args[0], args[1]);
                        if a.hol == b.hol {
                            return None;
                        }
                        if a.hol {
                            Factor::e(a.label, b.label)
                        } else {
                            sign = -sign;
                            Factor::e(b.label, a.label)
                        }
                    }
                };
                m.factors.push(f.with_d(du, db));
                for v in vs {
                    if let Some(kind) = v.var {
                        m.word.push((kind, v.label));
                    }
                }
            }
            Item::Nabla(_) => {
                let v = vs[0];
                if let Some(kind) = v.var {
                    m.word.push((kind, v.label));
                }
                // ∇_{∂} = −b/2, ∇_{∂̄} = b⁺/2
                if v.hol {
                    sign = &sign * &CRat::frac(-1, 2);
                    m.word.push((VarKind::B, v.label));
                } else {
                    sign = &sign * &CRat::frac(1, 2);
                    m.word.push((VarKind::Bp, v.label));
                }
            }
            Item::Lap => {
                let j = next_free;
                next_free += 1;
                m.word.push((VarKind::B, j));
                m.word.push((VarKind::Bp, j));
            }
            Item::Explicit(p) => {
                let mut acc: Option<(CRat, Mono)> = None;
                // only single-term explicit items are expanded inline
                for (em, ec) in p.iter() {
                    assert!(acc.is_none(), "explicit items must be monomials");
                    let mut e = as_word(em);
                    e.shift_dummies(next_free);
                    next_free = next_free.max(e.fresh());
                    acc = Some((ec.clone(), e));
                }
                let (ec, e) = acc?;
                sign = &sign * &ec;
                m.pi += e.pi;
                m.nexp += e.nexp;
                m.factors.extend(e.factors);
                m.vars.extend(e.vars);
                m.word.extend(e.word);
            }
        }
    }
    Some((sign, m))
}

/// Splits a polynomial into monomial explicit items so that every item is a
/// single term.
pub fn explicit_sum(p: &Poly) -> Expr {
    let mut out = Vec::new();
    for (m, c) in p.sorted() {
        out.push(Term { c: c.clone(), pi: 0, items: vec![Item::Explicit(Poly::mono(m.clone()))] });
    }
    Expr(out)
}
