//! Contraction monomials: tensor factors, commuting variables, an optional
//! ordered operator word, a power of π and a power of the dimension symbol n.

use crate::error::AlgebraError;
use crate::factor::{Factor, Kind};
use crate::index::{is_free, End, Label};
use rustc_hash::FxHashMap;
use std::cmp::Ordering;

/// Variable and operator letter families. The order is the display order of
/// commuting variables (b first, b⁺ last).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum VarKind {
    /// b
    B,
    /// z
    Z,
    /// z̄
    Zb,
    /// z′
    Zp,
    /// z̄′
    Zbp,
    /// Wick variable a = u − z
    A,
    /// Wick variable c = ū − z̄″
    C,
    /// b⁺
    Bp,
    /// spectator z during Fock-route composition
    Sz,
    /// spectator z̄ during Fock-route composition
    Szb,
}

impl VarKind {
    pub const ALL: [VarKind; 10] = [
        VarKind::B,
        VarKind::Z,
        VarKind::Zb,
        VarKind::Zp,
        VarKind::Zbp,
        VarKind::A,
        VarKind::C,
        VarKind::Bp,
        VarKind::Sz,
        VarKind::Szb,
    ];

    pub fn end(self) -> End {
        match self {
            VarKind::B | VarKind::Zb | VarKind::Zbp | VarKind::C | VarKind::Szb => End::U,
            VarKind::Z | VarKind::Zp | VarKind::Bp | VarKind::A | VarKind::Sz => End::B,
        }
    }

    pub fn code(self) -> u32 {
        self as u32
    }

    /// Partner under the kernel adjoint (Z, Z′) ↦ (Z′, Z) with conjugation.
    pub fn kernel_conj(self) -> VarKind {
        match self {
            VarKind::Z => VarKind::Zbp,
            VarKind::Zbp => VarKind::Z,
            VarKind::Zb => VarKind::Zp,
            VarKind::Zp => VarKind::Zb,
            VarKind::B => VarKind::Bp,
            VarKind::Bp => VarKind::B,
            VarKind::A => VarKind::C,
            VarKind::C => VarKind::A,
            VarKind::Sz => VarKind::Szb,
            VarKind::Szb => VarKind::Sz,
        }
    }

    /// Partner under the operator adjoint (b ↔ b⁺, z ↔ z̄).
    pub fn operator_conj(self) -> VarKind {
        match self {
            VarKind::B => VarKind::Bp,
            VarKind::Bp => VarKind::B,
            VarKind::Z => VarKind::Zb,
            VarKind::Zb => VarKind::Z,
            VarKind::Zp => VarKind::Zbp,
            VarKind::Zbp => VarKind::Zp,
            VarKind::A => VarKind::C,
            VarKind::C => VarKind::A,
            VarKind::Sz => VarKind::Szb,
            VarKind::Szb => VarKind::Sz,
        }
    }
}

pub type Var = (VarKind, Label);

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Mono {
    pub pi: i32,
    pub nexp: u32,
    pub factors: Vec<Factor>,
    /// Commuting variables, sorted in canonical form.
    pub vars: Vec<Var>,
    /// Ordered operator letters (not yet normal ordered).
    pub word: Vec<Var>,
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn from_factors(factors: Vec<Factor>) -> Self {
        Mono { factors, ..Mono::default() }
    }

    pub fn with_vars(mut self, vars: Vec<Var>) -> Self {
        self.vars.extend(vars);
        self
    }

    pub fn with_pi(mut self, pi: i32) -> Self {
        self.pi += pi;
        self
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty() && self.word.is_empty()
    }

    /// Symbol degree: number of tensor factors excluding deltas.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Factor::degree).sum()
    }

    pub fn occurrences(&self) -> impl Iterator<Item = (Label, End)> + '_ {
        self.factors
            .iter()
            .flat_map(|f| f.ends())
            .chain(self.word.iter().chain(self.vars.iter()).map(|(k, l)| (*l, k.end())))
    }

    pub fn labels_mut(&mut self) -> impl Iterator<Item = &mut Label> {
        self.factors
            .iter_mut()
            .flat_map(|f| f.labels_mut())
            .chain(self.word.iter_mut().chain(self.vars.iter_mut()).map(|(_, l)| l))
    }

    pub fn max_dummy(&self) -> Option<Label> {
        self.occurrences().map(|(l, _)| l).filter(|l| !is_free(*l)).max()
    }

    pub fn fresh(&self) -> Label {
        self.max_dummy().map_or(0, |m| m + 1)
    }

    pub fn dummy_count(&self) -> usize {
        let mut v: Vec<Label> = self.occurrences().map(|(l, _)| l).filter(|l| !is_free(*l)).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    pub fn free_labels(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.occurrences().map(|(l, _)| l).filter(|l| is_free(*l)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn rename(&mut self, mut f: impl FnMut(Label) -> Label) {
        for l in self.labels_mut() {
            *l = f(*l);
        }
    }

    pub fn shift_dummies(&mut self, by: Label) {
        self.rename(|l| if is_free(l) { l } else { l + by });
    }

    /// Checks slot arities, delta structure and that every dummy is contracted
    /// exactly once between a U end and a B end.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for f in &self.factors {
            f.check()?;
        }
        let mut seen: FxHashMap<Label, (usize, usize)> = FxHashMap::default();
        for (l, e) in self.occurrences() {
            if is_free(l) {
                continue;
            }
            let c = seen.entry(l).or_default();
            match e {
                End::U => c.0 += 1,
                End::B => c.1 += 1,
            }
        }
        for (l, (u, b)) in seen {
            if u != 1 || b != 1 {
                let owner = self
                    .factors
                    .iter()
                    .find(|f| f.ends().any(|(x, _)| x == l))
                    .map(|f| f.debug_name())
                    .unwrap_or_else(|| "variables".into());
                return Err(AlgebraError::Structural {
                    factor: owner,
                    reason: format!("dummy #{l} has {u} unbarred and {b} barred occurrences"),
                });
            }
        }
        Ok(())
    }

    /// Product with dummies of `other` shifted apart.
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut o = other.clone();
        o.shift_dummies(self.fresh());
        let mut m = self.clone();
        m.pi += o.pi;
        m.nexp += o.nexp;
        m.factors.extend(o.factors);
        m.vars.extend(o.vars);
        m.word.extend(o.word);
        m
    }

    /// Contracts a removed U end labelled `x` with a removed B end labelled `y`.
    pub fn delta(&self, x: Label, y: Label) -> Mono {
        let mut m = self.clone();
        if x == y {
            if !is_free(x) {
                m.nexp += 1;
            }
        } else if !is_free(x) {
            m.rename(|l| if l == x { y } else { l });
        } else if !is_free(y) {
            m.rename(|l| if l == y { x } else { l });
        } else {
            m.factors.push(Factor::kd(x, y));
        }
        m
    }

    /// Replaces the given free labels by fresh dummies.
    pub fn bind(&self, labels: &[Label]) -> Mono {
        let mut m = self.clone();
        let base = m.fresh();
        m.rename(|l| match labels.iter().position(|x| *x == l) {
            Some(i) => base + i as Label,
            None => l,
        });
        m
    }

    pub fn conj_with(&self, map: impl Fn(VarKind) -> VarKind, reverse_word: bool) -> Mono {
        let mut m = self.clone();
        m.factors = self.factors.iter().map(Factor::conj).collect();
        m.vars = self.vars.iter().map(|(k, l)| (map(*k), *l)).collect();
        m.word = self.word.iter().map(|(k, l)| (map(*k), *l)).collect();
        if reverse_word {
            m.word.reverse();
        }
        m
    }

    pub fn conj_kernel(&self) -> Mono {
        self.conj_with(VarKind::kernel_conj, false)
    }

    pub fn conj_operator(&self) -> Mono {
        self.conj_with(VarKind::operator_conj, true)
    }

    pub fn count_var(&self, k: VarKind) -> usize {
        self.vars.iter().filter(|(x, _)| *x == k).count()
    }

    /// Canonical representative under factor symmetries, factor reordering
    /// and dummy renaming.
    pub fn canonical(&self) -> Mono {
        Canon::new(self).run()
    }
}

const UNSET: u32 = u32::MAX;

struct Canon<'a> {
    src: &'a Mono,
    order: Vec<usize>,
    block_start: Vec<usize>,
    images: Vec<Vec<Factor>>,
    used: Vec<bool>,
    map: Vec<u32>,
    next: u32,
    cur: Vec<u32>,
    choice: Vec<(usize, usize)>,
    best: Option<Vec<u32>>,
    best_choice: Vec<(usize, usize)>,
    best_map: Vec<u32>,
}

impl<'a> Canon<'a> {
    fn new(src: &'a Mono) -> Self {
        let n = src.factors.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|a, b| src.factors[*a].signature().cmp(&src.factors[*b].signature()));
        let mut block_start = vec![0; n];
        for i in 1..n {
            let same = src.factors[order[i]].signature() == src.factors[order[i - 1]].signature();
            block_start[i] = if same { block_start[i - 1] } else { i };
        }
        let images = src.factors.iter().map(Factor::images).collect();
        let size = src.max_dummy().map_or(0, |m| m as usize + 1);
        Canon {
            src,
            order,
            block_start,
            images,
            used: vec![false; n],
            map: vec![UNSET; size],
            next: 0,
            cur: Vec::new(),
            choice: Vec::new(),
            best: None,
            best_choice: Vec::new(),
            best_map: Vec::new(),
        }
    }

    fn label(&mut self, l: Label, fresh: &mut Vec<Label>) -> u32 {
        if is_free(l) {
            return l;
        }
        let slot = &mut self.map[l as usize];
        if *slot == UNSET {
            *slot = self.next;
            self.next += 1;
            fresh.push(l);
        }
        *slot
    }

    fn run(mut self) -> Mono {
        self.dfs(0);
        self.build()
    }

    /// Compares `cur` against the same prefix of the best key.
    fn prefix_cmp(&self, from: usize) -> Ordering {
        match &self.best {
            None => Ordering::Less,
            Some(b) => self.cur[from..].cmp(&b[from..self.cur.len()]),
        }
    }


    fn dfs(&mut self, pos: usize) {
        let n = self.src.factors.len();
        if pos == n {
            self.leaf();
            return;
        }
        let start = self.block_start[pos];
        let mut end = start;
        while end < n && self.block_start[end] == start {
            end += 1;
        }
        for slot in start..end {
            let fi = self.order[slot];
            if self.used[fi] {
                continue;
            }
            // identical factors give identical subtrees
            if (start..slot).any(|s| {
                let o = self.order[s];
                !self.used[o] && self.src.factors[o] == self.src.factors[fi]
            }) {
                continue;
            }
            self.used[fi] = true;
            for ii in 0..self.images[fi].len() {
                let mark = self.cur.len();
                let mut fresh = Vec::new();
                let labels: Vec<Label> = {
                    let img = &self.images[fi][ii];
                    img.slots.iter().chain(img.du.iter()).chain(img.db.iter()).copied().collect()
                };
                for l in labels {
                    let v = self.label(l, &mut fresh);
                    self.cur.push(v);
                }
                let ord = self.prefix_cmp(0);
                if ord != Ordering::Greater {
                    self.choice.push((fi, ii));
                    self.dfs(pos + 1);
                    self.choice.pop();
                }
                self.cur.truncate(mark);
                for l in fresh.iter().rev() {
                    self.map[*l as usize] = UNSET;
                    self.next -= 1;
                }
            }
            self.used[fi] = false;
        }
    }

    fn leaf(&mut self) {
        let mark = self.cur.len();
        let saved_next = self.next;
        let mut fresh = Vec::new();
        let word: Vec<Var> = self.src.word.clone();
        for (k, l) in &word {
            let v = self.label(*l, &mut fresh);
            self.cur.push(k.code());
            self.cur.push(v);
        }
        // variables contracted only among themselves
        let mut open: FxHashMap<Label, Vec<VarKind>> = FxHashMap::default();
        for (k, l) in &self.src.vars {
            if !is_free(*l) && self.map[*l as usize] == UNSET {
                open.entry(*l).or_default().push(*k);
            }
        }
        let mut groups: Vec<(Vec<VarKind>, Label)> = open
            .into_iter()
            .map(|(l, mut ks)| {
                ks.sort();
                (ks, l)
            })
            .collect();
        groups.sort();
        for (_, l) in &groups {
            self.label(*l, &mut fresh);
        }
        let mut vars: Vec<(u32, u32)> = Vec::with_capacity(self.src.vars.len());
        for (k, l) in &self.src.vars {
            let v = if is_free(*l) { *l } else { self.map[*l as usize] };
            vars.push((k.code(), v));
        }
        vars.sort_unstable();
        for (k, v) in vars {
            self.cur.push(k);
            self.cur.push(v);
        }
        let ord = self.prefix_cmp(0);
        if ord == Ordering::Less {
            self.best = Some(self.cur.clone());
            self.best_choice = self.choice.clone();
            self.best_map = self.map.clone();
        }
        self.cur.truncate(mark);
        for l in fresh.iter().rev() {
            self.map[*l as usize] = UNSET;
        }
        self.next = saved_next;
    }

    fn build(self) -> Mono {
        let map = &self.best_map;
        let relabel = |l: Label| if is_free(l) { l } else { map[l as usize] };
        let factors = self
            .best_choice
            .iter()
            .map(|(fi, ii)| {
                let mut f = self.images[*fi][*ii].clone();
                for l in f.labels_mut() {
                    *l = relabel(*l);
                }
                f
            })
            .collect();
        let word = self.src.word.iter().map(|(k, l)| (*k, relabel(*l))).collect();
        let mut vars: Vec<Var> = self.src.vars.iter().map(|(k, l)| (*k, relabel(*l))).collect();
        vars.sort_unstable();
        Mono { pi: self.src.pi, nexp: self.src.nexp, factors, vars, word }
    }
}

impl Factor {
    pub fn is_observable(&self) -> bool {
        matches!(self.kind, Kind::F(_))
    }
}
