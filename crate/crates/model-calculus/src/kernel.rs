//! Kernels F(Z, Z′)·𝒫(Z, Z′) with polynomial F and their calculus.
//!
//! 𝒫(Z, Z′) = exp(−π/2 Σ(|z_i|² + |z′_i|² − 2 z_i z̄′_i)). Variables: z (Z),
//! z̄ (Zb), z′ (Zp), z̄′ (Zbp). Fock forms additionally use b (B) and carry no z̄.

use crate::operator::OperatorExpr;
use std::fmt;
use tensor_algebra::{CRat, Mono, Poly, VarKind};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Kernel(pub Poly);

/// Σ b^α z^β g(z′, z̄′) 𝒫 with tensor coefficients; no z̄ variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockForm(pub Poly);

impl Kernel {
    pub fn zero() -> Self {
        Kernel(Poly::zero())
    }

    /// The Bergman projector kernel 𝒫 itself.
    pub fn projector() -> Self {
        Kernel(Poly::one())
    }

    pub fn parse(src: &str) -> Result<Self, tensor_algebra::AlgebraError> {
        tensor_algebra::parse(src).map(Kernel)
    }

    pub fn add(&self, o: &Kernel) -> Kernel {
        Kernel(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Kernel) -> Kernel {
        Kernel(&self.0 - &o.0)
    }

    pub fn scale(&self, c: &CRat) -> Kernel {
        Kernel(self.0.scale(c))
    }

    pub fn neg(&self) -> Kernel {
        self.scale(&CRat::int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Total polynomial degree of the highest term.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|(m, _)| m.vars.len()).max().unwrap_or(0)
    }

    /// Restriction to Z′ = 0.
    pub fn at_zprime_zero(&self) -> Kernel {
        Kernel(self.0.filter(|m| m.vars.iter().all(|(k, _)| !matches!(k, VarKind::Zp | VarKind::Zbp))))
    }
}

fn remove_var(m: &Mono, i: usize) -> Mono {
    let mut t = m.clone();
    t.vars.remove(i);
    t
}

/// Applies one pending b⁺ or b variable of each term. Operator z, z̄ are held
/// as spectators until every b⁺ has acted.
fn act_once(m: &Mono, c: &CRat) -> Vec<(CRat, Mono)> {
    if let Some(pos) = m.vars.iter().position(|(k, _)| *k == VarKind::Bp) {
        let j = m.vars[pos].1;
        let base = remove_var(m, pos);
        // b⁺_j = 2∂/∂z̄_j on the polynomial factor
        return base
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0 == VarKind::Zb)
            .map(|(i, v)| (c * &CRat::int(2), remove_var(&base, i).delta(v.1, j)))
            .collect();
    }
    if m.vars.iter().any(|(k, _)| matches!(k, VarKind::Sz | VarKind::Szb)) {
        let mut t = m.clone();
        for v in t.vars.iter_mut() {
            v.0 = match v.0 {
                VarKind::Sz => VarKind::Z,
                VarKind::Szb => VarKind::Zb,
                k => k,
            };
        }
        return vec![(c.clone(), t)];
    }
    if let Some(pos) = m.vars.iter().position(|(k, _)| *k == VarKind::B) {
        let j = m.vars[pos].1;
        let base = remove_var(m, pos);
        // b_j = −2∂/∂z_j + 2π(z̄_j − z̄′_j)
        let mut out: Vec<(CRat, Mono)> = base
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0 == VarKind::Z)
            .map(|(i, v)| (c * &CRat::int(-2), remove_var(&base, i).delta(j, v.1)))
            .collect();
        let mut up = base.clone();
        up.pi += 1;
        let mut t = up.clone();
        t.vars.push((VarKind::Zb, j));
        out.push((c * &CRat::int(2), t));
        let mut t = up;
        t.vars.push((VarKind::Zbp, j));
        out.push((c * &CRat::int(-2), t));
        return out;
    }
    vec![(c.clone(), m.clone())]
}

fn has_pending(m: &Mono) -> bool {
    m.vars.iter().any(|(k, _)| matches!(k, VarKind::B | VarKind::Bp | VarKind::Sz | VarKind::Szb))
}

fn run_actions(mut cur: Poly) -> Poly {
    while cur.iter().any(|(m, _)| has_pending(m)) {
        cur = cur.flat_map(|m, c| if has_pending(m) { act_once(m, c) } else { vec![(c.clone(), m.clone())] });
    }
    cur
}

/// (e·(K𝒫)) as a kernel, for normal-ordered e.
pub fn apply_to_p(e: &OperatorExpr, k: &Kernel) -> Kernel {
    let e = if e.is_normal() { e.clone() } else { e.normal() };
    let mut raw = Poly::zero();
    for (om, oc) in e.0.iter() {
        let mut op = om.clone();
        for v in op.vars.iter_mut() {
            v.0 = match v.0 {
                VarKind::Z => VarKind::Sz,
                VarKind::Zb => VarKind::Szb,
                k => k,
            };
        }
        for (km, kc) in k.0.iter() {
            raw.add_term(oc * kc, op.mul(km));
        }
    }
    Kernel(run_actions(raw))
}

/// Re-expands b variables of a Fock form into a kernel.
fn expand_b(p: &Poly) -> Poly {
    run_actions(p.clone())
}

/// Eliminates z̄ using z̄_k F𝒫 = (1/2π) b_k(F𝒫) + (1/π)(∂F/∂z_k)𝒫 + z̄′_k F𝒫.
pub fn fock_form(k: &Kernel) -> FockForm {
    let mut cur = k.0.clone();
    let has_zb = |m: &Mono| m.vars.iter().any(|(k, _)| *k == VarKind::Zb);
    while cur.iter().any(|(m, _)| has_zb(m)) {
        cur = cur.flat_map(|m, c| {
            let Some(pos) = m.vars.iter().position(|(k, _)| *k == VarKind::Zb) else {
                return vec![(c.clone(), m.clone())];
            };
            let kl = m.vars[pos].1;
            let base = remove_var(m, pos);
            let mut out = Vec::new();
            let mut t = base.clone();
            t.vars.push((VarKind::B, kl));
            t.pi -= 1;
            out.push((c * &CRat::frac(1, 2), t));
            for (i, v) in base.vars.iter().enumerate() {
                if v.0 == VarKind::Z {
                    let mut t = remove_var(&base, i).delta(kl, v.1);
                    t.pi -= 1;
                    out.push((c.clone(), t));
                }
            }
            let mut t = base;
            t.vars.push((VarKind::Zbp, kl));
            out.push((c.clone(), t));
            out
        });
    }
    FockForm(cur)
}

impl FockForm {
    pub fn to_kernel(&self) -> Kernel {
        Kernel(expand_b(&self.0))
    }

    /// Restriction to Z′ = 0.
    pub fn at_zprime_zero(&self) -> FockForm {
        FockForm(self.0.filter(|m| m.vars.iter().all(|(k, _)| !matches!(k, VarKind::Zp | VarKind::Zbp))))
    }

    pub fn level(m: &Mono) -> usize {
        m.count_var(VarKind::B)
    }
}

/// Left projection 𝒫·K: the |α| = 0 part of the Fock form.
pub fn project(k: &Kernel) -> Kernel {
    Kernel(fock_form(k).0.filter(|m| FockForm::level(m) == 0))
}

pub fn project_perp(k: &Kernel) -> Kernel {
    k.sub(&project(k))
}

/// 𝓛⁻¹𝒫^⊥: each |α| > 0 Fock term divided by 4π|α|.
pub fn inv_l_perp(k: &Kernel) -> Kernel {
    let ff = fock_form(k);
    let scaled = ff.0.flat_map(|m, c| {
        let a = FockForm::level(m);
        if a == 0 {
            return Vec::new();
        }
        let mut t = m.clone();
        t.pi -= 1;
        vec![(c * &CRat::frac(1, 4 * a as i64), t)]
    });
    FockForm(scaled).to_kernel()
}

/// K*(Z, Z′) = conj K(Z′, Z).
pub fn adjoint(k: &Kernel) -> Kernel {
    Kernel(k.0.conj_kernel())
}

/// Value at Z = Z′ = 0.
pub fn eval_origin(k: &Kernel) -> Poly {
    k.0.filter(|m| m.vars.is_empty())
}

/// Sum over perfect matchings of a (B end) with c (U end) variables, each
/// pair contributing δ/π.
fn wick_contract(m: &Mono, c: &CRat) -> Vec<(CRat, Mono)> {
    let a: Vec<usize> = (0..m.vars.len()).filter(|i| m.vars[*i].0 == VarKind::A).collect();
    let cc: Vec<usize> = (0..m.vars.len()).filter(|i| m.vars[*i].0 == VarKind::C).collect();
    if a.len() != cc.len() {
        return Vec::new();
    }
    if a.is_empty() {
        return vec![(c.clone(), m.clone())];
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..cc.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        // pending variables stay in place so later pairs see renamed labels
        let mut t = m.clone();
        for (i, j) in p.iter().enumerate() {
            let x = t.vars[cc[*j]].1;
            let y = t.vars[a[i]].1;
            t = t.delta(x, y);
        }
        t.vars.retain(|(k, _)| !matches!(k, VarKind::A | VarKind::C));
        t.pi -= a.len() as i32;
        out.push((c.clone(), t));
    });
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Replaces every variable of kind `from` by a sum of the two given kinds.
fn split_vars(p: &Poly, rules: &[(VarKind, VarKind, VarKind)]) -> Poly {
    p.flat_map(|m, c| {
        let mut acc: Vec<Mono> = vec![Mono { vars: Vec::new(), ..m.clone() }];
        for v in &m.vars {
            match rules.iter().find(|r| r.0 == v.0) {
                Some(&(_, x, y)) => {
                    let mut next = Vec::with_capacity(acc.len() * 2);
                    for t in &acc {
                        let mut a = t.clone();
                        a.vars.push((x, v.1));
                        next.push(a);
                        let mut b = t.clone();
                        b.vars.push((y, v.1));
                        next.push(b);
                    }
                    acc = next;
                }
                None => acc.iter_mut().for_each(|t| t.vars.push(*v)),
            }
        }
        acc.into_iter().map(|t| (c.clone(), t)).collect()
    })
}

fn rekind(p: &Poly, rules: &[(VarKind, VarKind)]) -> Poly {
    p.map_monos(|m| {
        let mut t = m.clone();
        for v in t.vars.iter_mut() {
            if let Some(r) = rules.iter().find(|r| r.0 == v.0) {
                v.0 = r.1;
            }
        }
        t
    })
}

/// 𝒦[F, G]: (F𝒫)∘(G𝒫) = 𝒦[F, G]𝒫, by the Gaussian moment (Wick) rule.
pub fn compose(k1: &Kernel, k2: &Kernel) -> Kernel {
    // K1(Z, U): u = a + z, ū = c + z̄′ ; K2(U, Z′): same substitution
    let left = split_vars(&k1.0, &[(VarKind::Zp, VarKind::A, VarKind::Z), (VarKind::Zbp, VarKind::C, VarKind::Zbp)]);
    let right = split_vars(&k2.0, &[(VarKind::Z, VarKind::A, VarKind::Z), (VarKind::Zb, VarKind::C, VarKind::Zbp)]);
    let prod = &left * &right;
    Kernel(prod.flat_map(wick_contract))
}

/// 𝒦[F, G](0, 0) without forming the full composition: only the parts of
/// K1 free of first-slot variables and of K2 free of second-slot variables
/// contribute, and only fully contracted Wick terms survive.
pub fn compose_at_origin(k1: &Kernel, k2: &Kernel) -> Poly {
    let pick = |k: &Kernel, keep: [VarKind; 2]| -> Vec<(i64, Mono, CRat)> {
        k.0.iter()
            .filter(|(m, _)| m.vars.iter().all(|(v, _)| keep.contains(v)))
            .map(|(m, c)| {
                let mut t = m.clone();
                for v in t.vars.iter_mut() {
                    v.0 = if v.0 == keep[0] { VarKind::A } else { VarKind::C };
                }
                let bal = t.vars.iter().map(|(v, _)| if *v == VarKind::A { 1i64 } else { -1 }).sum();
                (bal, t, c.clone())
            })
            .collect()
    };
    let left = pick(k1, [VarKind::Zp, VarKind::Zbp]);
    let right = pick(k2, [VarKind::Z, VarKind::Zb]);
    let mut raw: Vec<(CRat, Mono)> = Vec::new();
    for (bl, ml, cl) in &left {
        for (br, mr, cr) in &right {
            if bl + br == 0 {
                raw.extend(wick_contract(&ml.mul(mr), &(cl * cr)));
            }
        }
    }
    Poly::from_terms(raw)
}

/// 𝒦[F, G] via the Fock route: the first-slot variables of K1 are spectators,
/// its second-slot variables act on K2, and the result is left-projected.
pub fn compose_fock(k1: &Kernel, k2: &Kernel) -> Kernel {
    let spect = rekind(&k1.0, &[(VarKind::Z, VarKind::Sz), (VarKind::Zb, VarKind::Szb)]);
    let moved = rekind(&spect, &[(VarKind::Zp, VarKind::Z), (VarKind::Zbp, VarKind::Zb)]);
    let prod = &moved * &k2.0;
    let proj = project(&Kernel(prod));
    Kernel(rekind(&proj.0, &[(VarKind::Sz, VarKind::Z), (VarKind::Szb, VarKind::Zb)]))
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·𝒫", self.0)
    }
}

impl fmt::Display for FockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·𝒫", self.0)
    }
}
