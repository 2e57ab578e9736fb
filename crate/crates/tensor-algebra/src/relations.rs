//! Identities used only for equality testing, never for canonicalization.

use crate::error::AlgebraError;
use crate::factor::Factor;
use crate::index::{free, is_free, End, Label};
use crate::mono::Mono;
use crate::parse::p;
use crate::poly::Poly;
use crate::scalar::CRat;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::BTreeMap;

pub const MAX_FACTORS: usize = 8;
pub const MAX_DUMMIES: usize = 8;

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub generators: Vec<Poly>,
}

/// Outcome of a modular comparison; `residue` is the reduced difference.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub equal: bool,
    pub residue: Poly,
    pub instances: usize,
}

/// One generator term usable as a match pattern.
struct Pattern {
    gen: usize,
    factor: Factor,
    free: Vec<(Label, End)>,
    canon: Mono,
}

fn derivative_patterns() -> Vec<(&'static str, &'static str)> {
    vec![("", ""), (";u", "u"), (";u~", "u"), (";u,v", "u v"), (";u,v~", "u v"), (";u~,v~", "u v")]
}

impl RelationSet {
    pub fn empty() -> Self {
        RelationSet { generators: Vec::new() }
    }

    /// Second Bianchi contractions, the Δsc identities, sc and ric traces,
    /// and the abelian Bianchi identity for R^E.
    pub fn standard() -> Self {
        let mut g = vec![
            p("R(l,l~,m,m~;k~) - R(l,l~,m,k~;m~)"),
            p("lapsc + 32 R(k,m~,q,q~;m,k~)"),
            p("lapsc + 32 R(m,m~,q,q~;k,k~)"),
            p("E(m,k~;k,m~) - E(k,k~;m,m~)"),
        ];
        let bianchi_conj = g[0].conj_kernel();
        g.insert(1, bianchi_conj);
        for (d, _) in derivative_patterns() {
            let dd = d.trim_start_matches(';');
            let open = if d.is_empty() { String::new() } else { format!(";{dd}") };
            g.push(p(&format!("ric(a,b~{open}) - 2 R(a,x~,x,b~{open})")));
            let sc = if d.is_empty() { "sc".to_string() } else { format!("sc({open})") };
            g.push(p(&format!("{sc} - 8 R(y,x~,x,y~{open})")));
        }
        RelationSet { generators: g }
    }

    pub fn with(mut self, gen: Poly) -> Self {
        self.generators.push(gen);
        self
    }

    /// Generators together with every self-contraction of their free labels.
    fn expanded(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for g in &self.generators {
            let Some((m0, _)) = g.iter().next() else { continue };
            let frees = m0.free_labels();
            let end_of = |l: Label| m0.occurrences().find(|(x, _)| *x == l).map(|(_, e)| e);
            let us: Vec<Label> = frees.iter().copied().filter(|l| end_of(*l) == Some(End::U)).collect();
            let bs: Vec<Label> = frees.iter().copied().filter(|l| end_of(*l) == Some(End::B)).collect();
            for pairs in partial_matchings(&us, &bs) {
                let from: Vec<Label> = pairs.iter().map(|(_, b)| *b).collect();
                let to: Vec<Label> = pairs.iter().map(|(u, _)| *u).collect();
                let bound: Vec<Label> = to.clone();
                let h = g.rename_free(&from, &to).map_monos(|m| m.bind(&bound));
                if !h.is_zero() && !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }

    fn patterns(&self, gens: &[Poly]) -> Vec<Pattern> {
        let mut out = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            for (m, _) in g.iter() {
                if m.factors.len() != 1 || !m.is_constant() {
                    continue;
                }
                let f = m.factors[0].clone();
                let mut free: Vec<(Label, End)> = f.ends().filter(|(l, _)| is_free(*l)).collect();
                free.sort();
                free.dedup();
                out.push(Pattern { gen: gi, canon: Mono::from_factors(vec![f.clone()]).canonical(), factor: f, free });
            }
        }
        out
    }

    /// Decides whether `a − b` lies in the span of generator instances.
    pub fn equal_mod(&self, a: &Poly, b: &Poly) -> Result<Verdict, AlgebraError> {
        let d = a - b;
        let gens = self.expanded();
        let patterns = self.patterns(&gens);
        let temps: Vec<Label> = (0..MAX_DUMMIES + 4).map(|i| free(&format!("'{i}")).expect("temp name")).collect();

        let mut seen: FxHashSet<Mono> = FxHashSet::default();
        let mut queue: Vec<Mono> = Vec::new();
        for (m, _) in d.iter() {
            if seen.insert(m.clone()) {
                queue.push(m.clone());
            }
        }
        let mut rows: Vec<BTreeMap<Mono, BigRational>> = Vec::new();
        let mut row_keys: FxHashSet<Vec<(Mono, BigRational)>> = FxHashSet::default();

        while let Some(m) = queue.pop() {
            if m.factors.len() > MAX_FACTORS {
                return Err(AlgebraError::Resource { what: "factors", got: m.factors.len(), limit: MAX_FACTORS });
            }
            let dc = m.dummy_count();
            if dc > MAX_DUMMIES {
                return Err(AlgebraError::Resource { what: "dummy indices", got: dc, limit: MAX_DUMMIES });
            }
            for fi in 0..m.factors.len() {
                let phi = &m.factors[fi];
                let mut rest = m.clone();
                rest.factors.remove(fi);
                let outside: FxHashSet<Label> = rest.occurrences().map(|(l, _)| l).collect();
                // external dummies become temporary free labels on both sides
                let mut ext: Vec<Label> = Vec::new();
                for (l, _) in phi.ends() {
                    if !is_free(l) && outside.contains(&l) && !ext.contains(&l) {
                        ext.push(l);
                    }
                }
                let to_temp = |l: Label| ext.iter().position(|x| *x == l).map_or(l, |i| temps[i]);
                let mut phi_t = phi.clone();
                for l in phi_t.labels_mut() {
                    *l = to_temp(*l);
                }
                let mut rest_t = rest.clone();
                rest_t.rename(to_temp);
                let mut phi_free: Vec<(Label, End)> = phi_t.ends().filter(|(l, _)| is_free(*l)).collect();
                phi_free.sort();
                phi_free.dedup();
                let phi_canon = Mono::from_factors(vec![phi_t.clone()]).canonical();
                let bound: Vec<Label> = temps[..ext.len()].to_vec();

                for pat in &patterns {
                    if pat.factor.signature() != phi_t.signature() || pat.free.len() != phi_free.len() {
                        continue;
                    }
                    if pat.canon.factors[0].slots.len() != phi_canon.factors[0].slots.len() {
                        continue;
                    }
                    for sigma in bijections(&pat.free, &phi_free) {
                        let from: Vec<Label> = pat.free.iter().map(|x| x.0).collect();
                        let mut img = pat.factor.clone();
                        for l in img.labels_mut() {
                            if let Some(i) = from.iter().position(|x| x == l) {
                                *l = sigma[i];
                            }
                        }
                        if Mono::from_factors(vec![img]).canonical() != phi_canon {
                            continue;
                        }
                        let g = gens[pat.gen].rename_free(&from, &sigma);
                        let mut row: BTreeMap<Mono, BigRational> = BTreeMap::new();
                        for (gm, gc) in g.iter() {
                            let inst = rest_t.mul(gm).bind(&bound).canonical();
                            let v = row.entry(inst).or_insert_with(BigRational::zero);
                            *v += &gc.re;
                        }
                        row.retain(|_, v| !v.is_zero());
                        if row.is_empty() {
                            continue;
                        }
                        let lead = row.values().next_back().cloned().expect("nonempty");
                        let key: Vec<(Mono, BigRational)> = row.iter().map(|(m, v)| (m.clone(), v / &lead)).collect();
                        if !row_keys.insert(key) {
                            continue;
                        }
                        for mm in row.keys() {
                            if seen.insert(mm.clone()) {
                                queue.push(mm.clone());
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }

        let instances = rows.len();
        let basis = Echelon::build(rows);
        let re = basis.reduce(d.real_part().into_iter().collect());
        let im = basis.reduce(d.imag_part().into_iter().collect());
        let mut residue = Poly::zero();
        for (m, v) in re {
            residue.add_canonical(CRat::real(v), m);
        }
        for (m, v) in im {
            residue.add_canonical(CRat { re: BigRational::zero(), im: v }, m);
        }
        Ok(Verdict { equal: residue.is_zero(), residue, instances })
    }
}

/// All sets of disjoint (u, b) pairs, including the empty set.
fn partial_matchings(us: &[Label], bs: &[Label]) -> Vec<Vec<(Label, Label)>> {
    let Some((&u, rest)) = us.split_first() else { return vec![Vec::new()] };
    let mut out = partial_matchings(rest, bs);
    for (j, &b) in bs.iter().enumerate() {
        let mut others = bs.to_vec();
        others.remove(j);
        for mut m in partial_matchings(rest, &others) {
            m.push((u, b));
            out.push(m);
        }
    }
    out
}

/// End-preserving bijections from pattern labels onto target labels.
fn bijections(from: &[(Label, End)], to: &[(Label, End)]) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut used = vec![false; to.len()];
    let mut cur = Vec::new();
    fn rec(from: &[(Label, End)], to: &[(Label, End)], used: &mut [bool], cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        let i = cur.len();
        if i == from.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..to.len() {
            if !used[j] && to[j].1 == from[i].1 {
                used[j] = true;
                cur.push(to[j].0);
                rec(from, to, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(from, to, &mut used, &mut cur, &mut out);
    out
}

/// Row echelon form keyed by leading (largest) monomial.
struct Echelon {
    pivots: FxHashMap<Mono, BTreeMap<Mono, BigRational>>,
}

impl Echelon {
    fn build(rows: Vec<BTreeMap<Mono, BigRational>>) -> Self {
        let mut e = Echelon { pivots: FxHashMap::default() };
        for row in rows {
            let mut r = row;
            while let Some((lead, lc)) = r.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
                match e.pivots.get(&lead) {
                    Some(prow) => sub_scaled(&mut r, prow, &lc),
                    None => {
                        let inv = BigRational::one() / &lc;
                        for v in r.values_mut() {
                            *v *= &inv;
                        }
                        e.pivots.insert(lead, r);
                        break;
                    }
                }
            }
        }
        e
    }

    fn reduce(&self, mut t: BTreeMap<Mono, BigRational>) -> BTreeMap<Mono, BigRational> {
        let mut residue = BTreeMap::new();
        while let Some((lead, lc)) = t.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match self.pivots.get(&lead) {
                Some(prow) => sub_scaled(&mut t, prow, &lc),
                None => {
                    t.remove(&lead);
                    residue.insert(lead, lc);
                }
            }
        }
        residue
    }
}

fn sub_scaled(r: &mut BTreeMap<Mono, BigRational>, prow: &BTreeMap<Mono, BigRational>, c: &BigRational) {
    for (m, v) in prow {
        let e = r.entry(m.clone()).or_insert_with(BigRational::zero);
        *e -= v * c;
        if e.is_zero() {
            r.remove(m);
        }
    }
}
