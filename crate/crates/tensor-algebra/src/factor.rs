//! Curvature, derivative and observable symbols with their slot symmetries.

use crate::error::AlgebraError;
use crate::index::{free_name, is_free, End, Label};

/// Tensor kinds. `F(tag)` is an observable jet symbol; `Kd` is a Kronecker
/// delta between two distinct free indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    R,
    Ric,
    E,
    Sc,
    LapSc,
    F(u8),
    Kd,
}

impl Kind {
    pub fn slot_ends(self) -> &'static [End] {
        match self {
            Kind::R => &[End::U, End::B, End::U, End::B],
            Kind::Ric | Kind::E | Kind::Kd => &[End::U, End::B],
            Kind::Sc | Kind::LapSc | Kind::F(_) => &[],
        }
    }

    pub fn name(self) -> String {
        match self {
            Kind::R => "R".into(),
            Kind::Ric => "ric".into(),
            Kind::E => "R^E".into(),
            Kind::Sc => "sc".into(),
            Kind::LapSc => "Δsc".into(),
            Kind::F(t) => observable_name(t),
            Kind::Kd => "δ".into(),
        }
    }
}

pub fn observable_name(tag: u8) -> String {
    match tag {
        0 => "f".into(),
        1 => "g".into(),
        2 => "h".into(),
        t => format!("f{t}"),
    }
}

/// A symbol with base slots and symmetric lists of unbarred (`du`) and barred
/// (`db`) derivative indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Factor {
    pub kind: Kind,
    pub slots: Vec<Label>,
    pub du: Vec<Label>,
    pub db: Vec<Label>,
}

impl Factor {
    pub fn new(kind: Kind, slots: Vec<Label>) -> Self {
        Factor { kind, slots, du: Vec::new(), db: Vec::new() }
    }
    pub fn r(k: Label, m: Label, l: Label, q: Label) -> Self {
        Factor::new(Kind::R, vec![k, m, l, q])
    }
    pub fn ric(k: Label, l: Label) -> Self {
        Factor::new(Kind::Ric, vec![k, l])
    }
    pub fn e(k: Label, q: Label) -> Self {
        Factor::new(Kind::E, vec![k, q])
    }
    pub fn sc() -> Self {
        Factor::new(Kind::Sc, vec![])
    }
    pub fn lapsc() -> Self {
        Factor::new(Kind::LapSc, vec![])
    }
    pub fn obs(tag: u8) -> Self {
        Factor::new(Kind::F(tag), vec![])
    }
    pub fn kd(u: Label, b: Label) -> Self {
        Factor::new(Kind::Kd, vec![u, b])
    }
    pub fn with_d(mut self, du: Vec<Label>, db: Vec<Label>) -> Self {
        self.du = du;
        self.db = db;
        self
    }

    /// Every label occurrence together with the contraction end it provides.
    pub fn ends(&self) -> impl Iterator<Item = (Label, End)> + '_ {
        let ends = self.kind.slot_ends();
        self.slots
            .iter()
            .zip(ends.iter())
            .map(|(l, e)| (*l, *e))
            .chain(self.du.iter().map(|l| (*l, End::U)))
            .chain(self.db.iter().map(|l| (*l, End::B)))
    }

    pub fn labels_mut(&mut self) -> impl Iterator<Item = &mut Label> {
        self.slots.iter_mut().chain(self.du.iter_mut()).chain(self.db.iter_mut())
    }

    /// Block signature used when enumerating factor orderings.
    pub fn signature(&self) -> (Kind, usize, usize) {
        (self.kind, self.du.len(), self.db.len())
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            Kind::Kd => 0,
            _ => 1,
        }
    }

    pub fn check(&self) -> Result<(), AlgebraError> {
        let want = self.kind.slot_ends().len();
        if self.slots.len() != want {
            return Err(self.structural(format!("expected {want} slots, found {}", self.slots.len())));
        }
        if self.kind == Kind::Kd {
            if !self.du.is_empty() || !self.db.is_empty() {
                return Err(self.structural("delta carries no derivatives".into()));
            }
            if !is_free(self.slots[0]) || !is_free(self.slots[1]) || self.slots[0] == self.slots[1] {
                return Err(self.structural("delta needs two distinct free indices".into()));
            }
        }
        Ok(())
    }

    fn structural(&self, reason: String) -> AlgebraError {
        AlgebraError::Structural { factor: self.debug_name(), reason }
    }

    pub fn debug_name(&self) -> String {
        let show = |v: &[Label]| {
            v.iter()
                .map(|l| if is_free(*l) { free_name(*l) } else { format!("#{l}") })
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}[{}|{}|{}]", self.kind.name(), show(&self.slots), show(&self.du), show(&self.db))
    }

    /// All images under the symmetry group of the symbol.
    pub fn images(&self) -> Vec<Factor> {
        let bases: Vec<Vec<Label>> = match self.kind {
            Kind::R => {
                let s = &self.slots;
                vec![
                    s.clone(),
                    vec![s[2], s[1], s[0], s[3]],
                    vec![s[0], s[3], s[2], s[1]],
                    vec![s[2], s[3], s[0], s[1]],
                ]
            }
            Kind::Kd => vec![self.slots.clone(), vec![self.slots[1], self.slots[0]]],
            _ => vec![self.slots.clone()],
        };
        let dus = distinct_perms(&self.du);
        let dbs = distinct_perms(&self.db);
        let mut out = Vec::with_capacity(bases.len() * dus.len() * dbs.len());
        for b in &bases {
            for u in &dus {
                for d in &dbs {
                    let f = Factor { kind: self.kind, slots: b.clone(), du: u.clone(), db: d.clone() };
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
        out
    }

    /// Complex conjugate: every slot changes type.
    pub fn conj(&self) -> Factor {
        let slots = match self.kind {
            Kind::R => {
                let s = &self.slots;
                vec![s[1], s[0], s[3], s[2]]
            }
            Kind::Ric | Kind::E | Kind::Kd => vec![self.slots[1], self.slots[0]],
            _ => Vec::new(),
        };
        Factor { kind: self.kind, slots, du: self.db.clone(), db: self.du.clone() }
    }
}

pub(crate) fn distinct_perms(v: &[Label]) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(v.len());
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut used = vec![false; v.len()];
    fn rec(s: &[Label], used: &mut [bool], cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i]);
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut cur, &mut out);
    out
}
