#![allow(dead_code)]

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use tensor_algebra::{End, Factor, Kind, Label, Mono, Poly, VarKind, CRat};

/// A random well-formed monomial with up to `max_factors` factors.
pub fn random_mono<R: Rng>(rng: &mut R, max_factors: usize) -> Mono {
    let nf = rng.random_range(1..=max_factors);
    let mut factors = Vec::new();
    for _ in 0..nf {
        let kind = match rng.random_range(0..6) {
            0 | 1 => Kind::R,
            2 => Kind::Ric,
            3 => Kind::E,
            4 => Kind::F(rng.random_range(0..2)),
            _ => Kind::Sc,
        };
        let nd = rng.random_range(0..=2);
        let mut du = 0;
        let mut db = 0;
        for _ in 0..nd {
            if rng.random_bool(0.5) {
                du += 1
            } else {
                db += 1
            }
        }
        let slots = vec![0; kind.slot_ends().len()];
        factors.push(Factor::new(kind, slots).with_d(vec![0; du], vec![0; db]));
    }
    let mut m = Mono::from_factors(factors);
    let (mut u, mut b) = (0usize, 0usize);
    for (_, e) in m.occurrences() {
        match e {
            End::U => u += 1,
            End::B => b += 1,
        }
    }
    while u < b {
        m.vars.push((*[VarKind::Zb, VarKind::Zbp, VarKind::B].choose(rng).unwrap(), 0));
        u += 1;
    }
    while b < u {
        m.vars.push((*[VarKind::Z, VarKind::Zp, VarKind::Bp].choose(rng).unwrap(), 0));
        b += 1;
    }
    if rng.random_bool(0.3) {
        m.vars.push((VarKind::Z, 0));
        m.vars.push((VarKind::Zbp, 0));
        u += 1;
    }
    let mut labels: Vec<Label> = (0..u as Label).collect();
    labels.shuffle(rng);
    let (mut ui, mut bi) = (0usize, 0usize);
    let mut set = |e: End| -> Label {
        match e {
            End::U => {
                ui += 1;
                (ui - 1) as Label
            }
            End::B => {
                bi += 1;
                labels[bi - 1]
            }
        }
    };
    for f in m.factors.iter_mut() {
        let ends = f.kind.slot_ends().to_vec();
        for (i, e) in ends.iter().enumerate() {
            f.slots[i] = set(*e);
        }
        for x in f.du.iter_mut() {
            *x = set(End::U);
        }
        for x in f.db.iter_mut() {
            *x = set(End::B);
        }
    }
    for (k, l) in m.vars.iter_mut() {
        *l = set(k.end());
    }
    m.pi = rng.random_range(-2..=1);
    m
}

/// Applies a random symmetry image to each factor, shuffles factors and
/// variables and renames dummies bijectively.
pub fn scramble<R: Rng>(rng: &mut R, m: &Mono) -> Mono {
    let mut out = m.clone();
    for f in out.factors.iter_mut() {
        let imgs = f.images();
        *f = imgs.choose(rng).unwrap().clone();
    }
    out.factors.shuffle(rng);
    out.vars.shuffle(rng);
    let n = m.max_dummy().map_or(0, |x| x + 1);
    let mut perm: Vec<Label> = (0..n).map(|i| i * 3 + 7).collect();
    perm.shuffle(rng);
    out.rename(|l| if tensor_algebra::is_free(l) { l } else { perm[l as usize] });
    out
}

pub fn random_poly<R: Rng>(rng: &mut R, terms: usize) -> Poly {
    random_poly_with(rng, terms, 3)
}

pub fn random_poly_with<R: Rng>(rng: &mut R, terms: usize, max_factors: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let c = CRat::frac(rng.random_range(-9..=9), rng.random_range(1..=6));
        p.add_term(c, random_mono(rng, max_factors));
    }
    p
}
