//! Rewrites ric, sc and Δsc into traces of R.

use tensor_algebra::{CRat, Factor, Kind, Mono, Poly};

/// ric_{kl̄;D} = 2 R_{k m̄ m l̄;D}, sc_{;D} = 8 R_{m m̄ q q̄;D}, Δsc = −32 R_{m m̄ q q̄;k k̄}.
pub fn expand_traces(p: &Poly) -> Poly {
    p.flat_map(|m, c| {
        let mut c = c.clone();
        let mut out = m.clone();
        out.factors.clear();
        let mut next = m.fresh();
        let mut fresh = || {
            next += 1;
            next - 1
        };
        for f in &m.factors {
            match f.kind {
                Kind::Ric => {
                    let x = fresh();
                    out.factors.push(Factor::r(f.slots[0], x, x, f.slots[1]).with_d(f.du.clone(), f.db.clone()));
                    c = &c * &CRat::int(2);
                }
                Kind::Sc => {
                    let (x, y) = (fresh(), fresh());
                    out.factors.push(Factor::r(x, x, y, y).with_d(f.du.clone(), f.db.clone()));
                    c = &c * &CRat::int(8);
                }
                Kind::LapSc => {
                    let (x, y, k) = (fresh(), fresh(), fresh());
                    out.factors.push(Factor::r(x, x, y, y).with_d(vec![k], vec![k]));
                    c = &c * &CRat::int(-32);
                }
                _ => out.factors.push(f.clone()),
            }
        }
        vec![(c, out)]
    })
}

pub fn has_traces(m: &Mono) -> bool {
    m.factors.iter().any(|f| matches!(f.kind, Kind::Ric | Kind::Sc | Kind::LapSc))
}
