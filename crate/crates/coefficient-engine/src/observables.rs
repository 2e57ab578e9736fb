//! Observable jets: retagging, Leibniz derivatives and substitution of an
//! expression in f, g, h for an observable symbol.

use crate::error::EngineError;
use tensor_algebra::{fr, is_free, AlgebraError, CRat, Factor, Kind, Label, Mono, Poly};

/// Observable tags used in the engine.
pub const F: u8 = 0;
pub const G: u8 = 1;
pub const H: u8 = 2;
/// Placeholder tags for generic arguments of closed forms.
pub const U: u8 = 10;
pub const W: u8 = 11;

pub fn obs(tag: u8) -> Poly {
    Poly::mono(Mono::from_factors(vec![Factor::obs(tag)]))
}

/// Renames observable tags according to `map`.
pub fn retag(p: &Poly, map: &[(u8, u8)]) -> Poly {
    p.map_monos(|m| {
        let mut t = m.clone();
        for f in t.factors.iter_mut() {
            if let Kind::F(x) = f.kind {
                if let Some((_, to)) = map.iter().find(|(from, _)| *from == x) {
                    f.kind = Kind::F(*to);
                }
            }
        }
        t
    })
}

/// Derivative of a polynomial in observable jets along ∂/∂z_l (`hol`) or
/// ∂/∂z̄_l, by the Leibniz rule. Curvature factors are rejected since their
/// derivatives are not jets of the inputs.
pub fn d_obs(p: &Poly, l: Label, hol: bool) -> Result<Poly, EngineError> {
    let mut raw: Vec<(CRat, Mono)> = Vec::new();
    for (m, c) in p.iter() {
        for (i, f) in m.factors.iter().enumerate() {
            match f.kind {
                Kind::F(_) => {
                    let mut t = m.clone();
                    if hol {
                        t.factors[i].du.push(l);
                    } else {
                        t.factors[i].db.push(l);
                    }
                    raw.push((c.clone(), t));
                }
                Kind::Kd => {}
                _ => return Err(AlgebraError::NotObservable(f.debug_name()).into()),
            }
        }
    }
    Ok(Poly::from_terms(raw))
}

fn temps() -> Vec<Label> {
    (0..10).map(|i| fr(&format!("'{i}"))).collect()
}

/// Replaces every occurrence of observable `tag` (with its derivatives) by the
/// corresponding derivatives of `expr`.
pub fn subst(p: &Poly, tag: u8, expr: &Poly) -> Result<Poly, EngineError> {
    let mut cur = p.clone();
    let tmp = temps();
    loop {
        let mut next = Poly::zero();
        let mut changed = false;
        for (m, c) in cur.iter() {
            let Some(i) = m.factors.iter().position(|f| f.kind == Kind::F(tag)) else {
                next.add_canonical(c.clone(), m.clone());
                continue;
            };
            changed = true;
            let target = m.factors[i].clone();
            let mut rest = m.clone();
            rest.factors.remove(i);
            // derivative labels become temporary free labels on both sides
            let mut labels: Vec<Label> = target.du.iter().chain(target.db.iter()).copied().collect();
            labels.retain(|l| !is_free(*l));
            labels.sort_unstable();
            labels.dedup();
            let to_tmp = |l: Label| labels.iter().position(|x| *x == l).map_or(l, |k| tmp[k]);
            rest.rename(to_tmp);
            let mut d = expr.clone();
            for l in &target.du {
                d = d_obs(&d, to_tmp(*l), true)?;
            }
            for l in &target.db {
                d = d_obs(&d, to_tmp(*l), false)?;
            }
            let bound: Vec<Label> = tmp[..labels.len()].to_vec();
            for (dm, dc) in d.iter() {
                next.add_term(c * dc, rest.mul(dm).bind(&bound));
            }
        }
        cur = next;
        if !changed {
            return Ok(cur);
        }
    }
}

/// The product fg of two observables, as an expression for substitution.
pub fn product(a: u8, b: u8) -> Poly {
    &obs(a) * &obs(b)
}
