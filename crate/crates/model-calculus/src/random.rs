//! Random closed kernels and operator words for property tests and the
//! oracle-equivalence checks.

use crate::{Kernel, OperatorExpr};
use rand::Rng;
use tensor_algebra::{CRat, End, Factor, Kind, Label, Mono, Poly, VarKind};

const KERNEL_KINDS: [VarKind; 4] = [VarKind::Z, VarKind::Zb, VarKind::Zp, VarKind::Zbp];
const LETTERS: [VarKind; 4] = [VarKind::B, VarKind::Bp, VarKind::Z, VarKind::Zb];

/// Contracts the given variable slots randomly with each other or with
/// observable jets of random tags.
fn close_up<R: Rng>(rng: &mut R, kinds: &[VarKind]) -> Mono {
    let mut us: Vec<usize> = (0..kinds.len()).filter(|i| kinds[*i].end() == End::U).collect();
    let mut bs: Vec<usize> = (0..kinds.len()).filter(|i| kinds[*i].end() == End::B).collect();
    let mut labels: Vec<Label> = vec![0; kinds.len()];
    let mut next: Label = 0;
    while !us.is_empty() && !bs.is_empty() && rng.random_bool(0.5) {
        let u = us.swap_remove(rng.random_range(0..us.len()));
        let b = bs.swap_remove(rng.random_range(0..bs.len()));
        labels[u] = next;
        labels[b] = next;
        next += 1;
    }
    let mut factors = Vec::new();
    let mut open: Vec<(usize, End)> = us.iter().map(|i| (*i, End::U)).chain(bs.iter().map(|i| (*i, End::B))).collect();
    while !open.is_empty() {
        let take = rng.random_range(1..=open.len().min(2));
        let mut f = Factor::obs(rng.random_range(0..2));
        for _ in 0..take {
            let (i, e) = open.swap_remove(rng.random_range(0..open.len()));
            labels[i] = next;
            match e {
                End::U => f.db.push(next),
                End::B => f.du.push(next),
            }
            next += 1;
        }
        factors.push(f);
    }
    if rng.random_bool(0.3) {
        factors.push(Factor::new(Kind::E, vec![next, next]));
    }
    let mut m = Mono::from_factors(factors);
    m.vars = kinds.iter().zip(labels).map(|(k, l)| (*k, l)).collect();
    m
}

/// Sum of `terms` random monomials of degree ≤ `max_deg` in z, z̄, z′, z̄′.
pub fn random_kernel<R: Rng>(rng: &mut R, max_deg: usize, terms: usize) -> Kernel {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_deg);
        let kinds: Vec<VarKind> = (0..deg).map(|_| KERNEL_KINDS[rng.random_range(0..4)]).collect();
        let m = close_up(rng, &kinds);
        p.add_term(CRat::frac(rng.random_range(-5..=5), rng.random_range(1..=3)), m);
    }
    Kernel(p)
}

/// Sum of `terms` random words of length ≤ `max_deg` in b, b⁺, z, z̄.
pub fn random_operator<R: Rng>(rng: &mut R, max_deg: usize, terms: usize) -> OperatorExpr {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_deg);
        let kinds: Vec<VarKind> = (0..deg).map(|_| LETTERS[rng.random_range(0..4)]).collect();
        let mut m = close_up(rng, &kinds);
        m.word = std::mem::take(&mut m.vars);
        p.add_term(CRat::frac(rng.random_range(-5..=5), rng.random_range(1..=3)), m);
    }
    OperatorExpr(p)
}
