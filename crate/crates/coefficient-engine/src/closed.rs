//! Closed forms for the expansion coefficients, in index form at the base
//! point. Invariant formulas go through the dictionary.

use crate::dictionary::{inv, Invariant::*};
use crate::observables::{obs, product, retag, subst, F, G, H, U, W};
use tensor_algebra::{p, CRat, Poly};

fn c(num: i64, den: i64) -> CRat {
    CRat::frac(num, den)
}

fn i() -> CRat {
    CRat::i()
}

fn lin(terms: &[(CRat, i32, &Poly)]) -> Poly {
    let mut out = Poly::zero();
    for (k, pi, t) in terms {
        out.add_assign_poly(&t.scale(k).scale_pi(*pi));
    }
    out
}

/// b₁ in index form.
pub fn b1() -> Poly {
    p("pi^-1 R(k,k~,m,m~) + pi^-1 E(m,m~)")
}

/// b₁ from the invariant formula.
pub fn b1_invariant() -> Poly {
    lin(&[(c(1, 8), -1, &inv(Br)), (&c(1, 2) * &i(), -1, &inv(RLambda))])
}

/// b_{2ℂ} in index form (without 1/π²).
pub fn b2c() -> Poly {
    p("-1/48 lapsc + 1/6 R(k,l~,m,q~) R(l,k~,q,m~) - 2/3 R(l,l~,m,q~) R(k,k~,q,m~) \
       + 1/2 R(l,l~,q,q~) R(k,k~,m,m~)")
}

/// b_{2E} in index form (without 1/π²); `footnote` selects the variant with
/// the single second derivative term.
pub fn b2e(footnote: bool) -> Poly {
    let base = p("E(q,q~) R(k,k~,m,m~) - E(m,q~) R(k,k~,q,m~) + 1/2 E(q,q~) E(m,m~) - 1/2 E(m,q~) E(q,m~)");
    let tail = if footnote {
        p("1/2 E(k,k~;m,m~)")
    } else {
        p("-1/4 E(k,k~;m,m~) + 3/4 E(m,k~;k,m~)")
    };
    &base + &tail
}

pub fn b2(footnote: bool) -> Poly {
    (&b2c() + &b2e(footnote)).scale_pi(-2)
}

/// b₂ from the invariant formula.
pub fn b2_invariant() -> Poly {
    let br = inv(Br);
    let rl = inv(RLambda);
    let bc = lin(&[
        (c(-1, 48), 0, &inv(LapBr)),
        (c(1, 96), 0, &inv(RiemNormSq)),
        (c(-1, 24), 0, &inv(RicNormSq)),
        (c(1, 128), 0, &br.mul_poly(&br)),
    ]);
    let i32_ = &c(1, 32) * &i();
    let be = lin(&[
        (&i32_ * &c(2, 1), 0, &br.mul_poly(&rl)),
        (&i32_ * &c(-4, 1), 0, &inv(RicRE)),
        (i32_.clone(), 0, &inv(LapRLambda)),
        (c(-1, 8), 0, &rl.mul_poly(&rl)),
        (c(1, 8), 0, &inv(RENormSq)),
        (c(3, 16), 0, &inv(DbarStarNablaStarRE)),
    ]);
    (&bc + &be).scale_pi(-2)
}

/// 𝒦[𝓛⁻¹𝒫^⊥𝒪₂𝒫, 𝒫𝒪₂𝓛⁻¹𝒫^⊥](0,0)
pub fn bk3_0b() -> Poly {
    p("1/4 pi^-2 R(m,m~,k,k~) R(q,q~,l,l~) + 1/2 pi^-2 R(m,m~,k,k~) E(l,l~) + 1/4 pi^-2 E(k,k~) E(l,l~)")
}

/// (𝒫𝒪₂𝓛⁻²𝒫^⊥𝒪₂𝒫)(0,0)
pub fn bk3_0c() -> Poly {
    p("1/36 pi^-2 R(m,k~,q,l~) R(k,m~,l,q~) + 4/9 pi^-2 R(q,m~,m,l~) R(l,k~,k,q~) \
       + 1/3 pi^-2 R(q,m~,m,l~) E(l,q~) + 1/3 pi^-2 E(q,l~) R(l,k~,k,q~) + 1/4 pi^-2 E(q,l~) E(l,q~)")
}

/// (𝓛⁻¹𝒫^⊥𝒪₂𝓛⁻¹𝒫^⊥𝒪₂𝒫)(0,0)
pub fn bk3_12() -> Poly {
    p("-25/216 R(m,k~,q,l~) R(k,m~,l,q~) - 47/54 R(k,k~,q,l~) R(m,m~,l,q~) \
       + 1/8 R(k,k~,l,l~) R(m,m~,q,q~) + 1/4 E(l,l~) R(m,m~,q,q~) - 7/6 E(q,l~) R(m,m~,l,q~) \
       + 1/8 E(l,l~) E(q,q~) - 3/8 E(q,l~) E(l,q~)")
    .scale_pi(-2)
}

/// −(𝓛⁻¹𝒫^⊥𝒪₄𝒫)(0,0)
pub fn lm3_31() -> Poly {
    p("-1/96 lapsc + 23/108 R(m,s~,q,t~) R(s,m~,t,q~) + 41/54 R(s,s~,q,t~) R(m,m~,t,q~) \
       + R(m,m~,q,k~) E(k,q~) - 1/8 E(m,m~;q,q~) + 3/8 E(q,m~;m,q~) + 1/4 E(k,q~) E(q,k~)")
    .scale_pi(-2)
}

/// (𝒫J₂𝒫)(0,0) in index form.
pub fn pj2p() -> Poly {
    p("1/2 pi^-1 R(k,k~,q,q~) + 1/2 pi^-1 E(q,q~)")
}

/// sc/16π
pub fn pj2p_trivial_bundle() -> Poly {
    p("1/16 pi^-1 sc")
}

/// K_{3f}
pub fn k3f(tag: u8) -> Poly {
    let k = p("1/6 R(k,k~,m,m~;u~) f(;u) - 1/3 R(k,k~,m,u~;m~) f(;u) \
        + 1/6 R(k,k~,m,m~;u) f(;u~) - 1/3 R(k,k~,u,m~;m) f(;u~) \
        + 1/6 E(k,k~;u~) f(;u) - 1/2 E(q,u~;q~) f(;u) + 1/3 E(m,u~;m~) f(;u) \
        + 1/6 E(k,k~;u) f(;u~) - 1/2 E(u,q~;q) f(;u~) + 1/3 E(u,m~;m) f(;u~)");
    retag(&k, &[(F, tag)])
}

/// b_{1,f} for a scalar function, generic in the Laplacian of f so that it
/// also applies to composite functions.
pub fn b1_of(f: &Poly, lap_f: &Poly) -> Poly {
    &b1_invariant().mul_poly(f) + &lap_f.scale(&c(-1, 4)).scale_pi(-1)
}

pub fn b1f(tag: u8) -> Poly {
    b1_of(&obs(tag), &inv(Lap(tag)))
}

/// b_{2,f} for a scalar function.
pub fn b2f(tag: u8, footnote: bool) -> Poly {
    let f = obs(tag);
    let lap = inv(Lap(tag));
    let br = inv(Br);
    let rl = inv(RLambda);
    let mi8 = &c(-1, 8) * &i();
    let rest = lin(&[
        (c(1, 32), 0, &inv(Lap2(tag))),
        (c(-1, 32), 0, &br.mul_poly(&lap)),
        (mi8.clone(), 0, &inv(RicDDbar(tag))),
        (&c(1, 24) * &i(), 0, &inv(DRLambda(tag))),
        (c(1, 24), 0, &inv(DNablaStarRE(tag))),
        (c(-1, 24), 0, &inv(DbarDbarStarRE(tag))),
        (mi8, 0, &lap.mul_poly(&rl)),
        (c(1, 4), 0, &inv(DDbarRE(tag))),
    ]);
    &b2(footnote).mul_poly(&f) + &rest.scale_pi(-2)
}

/// b_{1,f,g}
pub fn b1fg(f: u8, g: u8) -> Poly {
    let (ff, gg) = (obs(f), obs(g));
    let fg = ff.mul_poly(&gg);
    lin(&[
        (c(1, 8), -1, &inv(Br).mul_poly(&fg)),
        (&c(1, 2) * &i(), -1, &inv(RLambda).mul_poly(&fg)),
        (c(-1, 4), -1, &(&ff.mul_poly(&inv(Lap(g))) + &inv(Lap(f)).mul_poly(&gg))),
        (c(1, 2), -1, &inv(DbarD(f, g))),
    ])
}

/// b_{2,f,g}
pub fn b2fg(f: u8, g: u8) -> Poly {
    let (ff, gg) = (obs(f), obs(g));
    let fg = ff.mul_poly(&gg);
    let head = &(&ff.mul_poly(&b2f(g, false)) + &gg.mul_poly(&b2f(f, false))) - &fg.mul_poly(&b2(false));
    let braces = lin(&[
        (c(-1, 8), 0, &inv(DbarDLap(f, g))),
        (c(-1, 8), 0, &inv(DbarLapD(f, g))),
        (c(1, 2), 1, &inv(DbarD(f, g)).mul_poly(&b1())),
        (c(-1, 4), 0, &inv(DbarWedgeDRE(f, g))),
        (c(1, 16), 0, &inv(Lap(f)).mul_poly(&inv(Lap(g)))),
        (c(1, 8), 0, &inv(HessAhol(f, g))),
    ]);
    &head + &braces.scale_pi(-2)
}

/// C₁(f, g)
pub fn c1(f: u8, g: u8) -> Poly {
    inv(DDbar(f, g)).scale(&c(-1, 2)).scale_pi(-1)
}

/// C₂(f, g) for scalar functions.
pub fn c2(f: u8, g: u8) -> Poly {
    lin(&[
        (c(1, 8), -2, &inv(HessHol(f, g))),
        (&c(1, 4) * &i(), -2, &inv(RicDWedgeDbar(f, g))),
        (c(-1, 4), -2, &inv(DWedgeDbarRE(f, g))),
    ])
}

/// Δ⟨∂f, ∂̄g⟩ at the base point.
pub fn lap_pairing(f: u8, g: u8) -> Poly {
    let t = p("-8 f(;u,i,i~) g(;u~) + 8/3 ric(u,l~) f(;l) g(;u~) \
        - 8 f(;u) g(;u~,i,i~) + 8/3 f(;u) ric(l,u~) g(;l~) \
        - 8 f(;a,b) g(;a~,b~) - 8 f(;a~,b) g(;a,b~) - 8 ric(m,q~) g(;m~) f(;q)");
    retag(&t, &[(F, f), (G, g)])
}

/// b_{1,C₁(f,g)}, with the Laplacian of C₁ including the metric correction.
pub fn b1_of_c1(f: u8, g: u8) -> Poly {
    let lap = lap_pairing(f, g).scale(&c(-1, 2)).scale_pi(-1);
    b1_of(&c1(f, g), &lap)
}

/// b_{2,fg} from a computed b_{2,h}, by the Leibniz rule.
pub fn at_product(b_h: &Poly, f: u8, g: u8) -> Poly {
    subst(b_h, H, &product(f, g)).expect("b_{2,h} is polynomial in jets of h")
}

/// C₂(f,g) = b_{2,f,g} − b_{2,fg} − b_{1,C₁(f,g)} from computed coefficients.
pub fn c2_from(b2fg: &Poly, b2h: &Poly, f: u8, g: u8) -> Poly {
    &(b2fg - &at_product(b2h, f, g)) - &b1_of_c1(f, g)
}

/// Left minus right side of the ħ² associativity identity for the star product
/// with C₀ = fg and the closed C₁, C₂.
pub fn associativity_defect() -> Poly {
    let c1uw = c1(U, W);
    let c2uw = c2(U, W);
    let s = |poly: &Poly, u: &Poly, w: &Poly| {
        let a = subst(poly, U, u).expect("jets");
        subst(&a, W, w).expect("jets")
    };
    let (f, h) = (obs(F), obs(H));
    let lhs = &(&s(&c2uw, &product(F, G), &h) + &s(&c1uw, &c1(F, G), &h)) + &c2(F, G).mul_poly(&h);
    let rhs = &(&s(&c2uw, &f, &product(G, H)) + &s(&c1uw, &f, &c1(G, H))) + &f.mul_poly(&c2(G, H));
    &lhs - &rhs
}

/// Associativity at order ħ: C₁(fg,h) + C₁(f,g)h − C₁(f,gh) − fC₁(g,h).
pub fn associativity_defect_first() -> Poly {
    let c1uw = c1(U, W);
    let s = |u: &Poly, w: &Poly| subst(&subst(&c1uw, U, u).expect("jets"), W, w).expect("jets");
    let (f, h) = (obs(F), obs(H));
    let lhs = &s(&product(F, G), &h) + &c1(F, G).mul_poly(&h);
    let rhs = &s(&f, &product(G, H)) + &f.mul_poly(&c1(G, H));
    &lhs - &rhs
}

/// C₁(f,g) − C₁(g,f) − i{f,g}
pub fn poisson_defect() -> Poly {
    let d = &c1(F, G) - &c1(G, F);
    &d - &inv(Poisson(F, G)).scale(&i())
}

/// b_{2,f} in the index form assembled from b_{ℂf}, b_{Ef1}, b_{Ef2}.
pub fn b2f_index(tag: u8) -> Poly {
    let bcf = p("R(m,m~,q,q~) f(;k,k~) - R(l,k~,k,q~) f(;q,l~)");
    let bef1 = p("1/6 f(;u) E(k,k~;u~) - 5/12 f(;u) E(q,u~;q~) + 1/4 f(;u) E(m,u~;m~) \
        + 1/6 f(;u~) E(k,k~;u) - 5/12 f(;u~) E(u,q~;q) + 1/4 f(;u~) E(u,m~;m)");
    let bef2 = p("f(;k,k~) E(q,q~) - f(;q,l~) E(l,q~)");
    let local = retag(&(&(&bcf + &bef1) + &bef2), &[(F, tag)]);
    let lap2 = inv(Lap2(tag)).scale(&c(1, 32));
    &b2(false).mul_poly(&obs(tag)) + &(&local + &lap2).scale_pi(-2)
}
