//! Operator expressions in the letters b, b⁺, z, z̄ and their normal ordering.
//!
//! A term is a monomial whose commuting variables hold an already normal
//! ordered product b^α (z, z̄) b⁺^γ, followed by an ordered raw word.

use std::fmt;
use tensor_algebra::{CRat, Label, Mono, Poly, VarKind};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr(pub Poly);

pub fn is_letter(k: VarKind) -> bool {
    matches!(k, VarKind::B | VarKind::Bp | VarKind::Z | VarKind::Zb)
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr(Poly::zero())
    }

    pub fn identity() -> Self {
        OperatorExpr(Poly::one())
    }

    pub fn parse(src: &str) -> Result<Self, tensor_algebra::AlgebraError> {
        tensor_algebra::parse(src).map(OperatorExpr)
    }

    /// 𝓛 = Σ_j b_j b⁺_j.
    pub fn laplacian() -> Self {
        OperatorExpr(tensor_algebra::p("b(j) bp(j)"))
    }

    pub fn is_normal(&self) -> bool {
        self.0.iter().all(|(m, _)| m.word.is_empty())
    }

    /// Largest number of letters in a term.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|(m, _)| m.word.len() + m.vars.len()).max().unwrap_or(0)
    }

    /// Formal adjoint: b ↔ b⁺, z ↔ z̄, words reversed, scalars conjugated.
    pub fn adjoint(&self) -> Self {
        OperatorExpr(self.0.flat_map(|m, c| {
            let mut m = m.clone();
            // the normal-ordered part reverses into the front of the raw word
            let mut word: Vec<_> = letters_in_order(&m);
            word.append(&mut m.word);
            m.vars.clear();
            m.word = word;
            vec![(c.conj(), m.conj_operator())]
        }))
        .normal()
    }

    pub fn normal(&self) -> OperatorExpr {
        normal_order(self)
    }

    pub fn add(&self, o: &OperatorExpr) -> OperatorExpr {
        OperatorExpr(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &OperatorExpr) -> OperatorExpr {
        OperatorExpr(&self.0 - &o.0)
    }

    pub fn scale(&self, c: &CRat) -> OperatorExpr {
        OperatorExpr(self.0.scale(c))
    }

    /// Operator product, normal ordered.
    pub fn compose(&self, o: &OperatorExpr) -> OperatorExpr {
        let left = normal_order(self);
        let right = OperatorExpr(o.0.map_monos(as_word));
        let mut prod = Poly::zero();
        for (a, ca) in left.0.iter() {
            for (b, cb) in right.0.iter() {
                prod.add_term(ca * cb, a.mul(b));
            }
        }
        normal_order(&OperatorExpr(prod))
    }

    pub fn commutator(&self, o: &OperatorExpr) -> OperatorExpr {
        self.compose(o).sub(&o.compose(self))
    }
}

/// Letters of the normal-ordered part in operator order.
fn letters_in_order(m: &Mono) -> Vec<(VarKind, Label)> {
    let mut v: Vec<_> = m.vars.iter().copied().filter(|(k, _)| is_letter(*k)).collect();
    v.sort_by_key(|(k, _)| match k {
        VarKind::B => 0,
        VarKind::Z | VarKind::Zb => 1,
        _ => 2,
    });
    v
}

/// Moves the normal-ordered part into the raw word, keeping operator order.
pub fn as_word(m: &Mono) -> Mono {
    let mut out = m.clone();
    let mut word = letters_in_order(m);
    word.extend(m.word.iter().copied());
    out.vars.retain(|(k, _)| !is_letter(*k));
    out.word = word;
    out
}

/// Multiplies the normal-ordered part on the right by one letter.
fn push_letter(m: &Mono, c: &CRat, letter: (VarKind, Label)) -> Vec<(CRat, Mono)> {
    let (kind, j) = letter;
    let mut base = m.clone();
    base.word.remove(0);
    let mut out = Vec::new();
    match kind {
        VarKind::Bp | VarKind::Z => {
            base.vars.push(letter);
            out.push((c.clone(), base));
        }
        VarKind::Zb => {
            // [b⁺_i, z̄_j] = 2δ_ij
            for (i, v) in base.vars.iter().enumerate() {
                if v.0 == VarKind::Bp {
                    let mut t = base.clone();
                    t.vars.remove(i);
                    out.push((c * &CRat::int(2), t.delta(j, v.1)));
                }
            }
            base.vars.push(letter);
            out.push((c.clone(), base));
        }
        VarKind::B => {
            for (i, v) in base.vars.iter().enumerate() {
                match v.0 {
                    // z b = b z + 2δ
                    VarKind::Z => {
                        let mut t = base.clone();
                        t.vars.remove(i);
                        out.push((c * &CRat::int(2), t.delta(j, v.1)));
                    }
                    // b⁺ b = b b⁺ + 4πδ
                    VarKind::Bp => {
                        let mut t = base.clone();
                        t.vars.remove(i);
                        t.pi += 1;
                        out.push((c * &CRat::int(4), t.delta(j, v.1)));
                    }
                    _ => {}
                }
            }
            base.vars.push(letter);
            out.push((c.clone(), base));
        }
        other => panic!("{other:?} is not an operator letter"),
    }
    out
}

/// Rewrites every word into b^α (z, z̄) b⁺^γ form.
pub fn normal_order(e: &OperatorExpr) -> OperatorExpr {
    let mut cur = e.0.clone();
    while cur.iter().any(|(m, _)| !m.word.is_empty()) {
        cur = cur.flat_map(|m, c| match m.word.first() {
            Some(l) => push_letter(m, c, *l),
            None => vec![(c.clone(), m.clone())],
        });
    }
    OperatorExpr(cur)
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
