//! Resolvent pipeline: the kernels 𝓕₂, 𝓕₃, 𝓕₄ and the Toeplitz kernels
//! Q_r(f), Q_r(f, g) at the base point.

use crate::operators::{build_operators, ModelOperatorSet};
use model_calculus::{
    adjoint, apply_to_p, compose, compose_at_origin, eval_origin, inv_l_perp, project, Kernel,
};
use tensor_algebra::{exec, CRat, Factor, Label, Mono, Poly, VarKind};

/// Every kernel of the 𝓕₄ expansion, kept separately for the lemma checks.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub ops: ModelOperatorSet,
    /// 𝒪₂𝒫
    pub o2p: Kernel,
    /// 𝓛⁻¹𝒫^⊥𝒪₂𝒫
    pub a2: Kernel,
    /// 𝓛⁻¹𝒫^⊥𝒪₃𝒫
    pub a3: Kernel,
    /// 𝓛⁻¹𝒫^⊥𝒪₂𝓛⁻¹𝒫^⊥𝒪₂𝒫
    pub t1: Kernel,
    /// −𝓛⁻¹𝒫^⊥𝒪₄𝒫
    pub t2: Kernel,
    /// 𝓛⁻¹𝒫^⊥𝒪₂𝒫𝒪₂𝓛⁻¹𝒫^⊥
    pub t5: Kernel,
    /// −𝒫𝒪₂𝓛⁻²𝒫^⊥𝒪₂𝒫
    pub t6: Kernel,
    /// J₀ … J₄ (J₁ = 0)
    pub j: [Kernel; 5],
}

impl Pipeline {
    pub fn build() -> Self {
        Self::from_operators(build_operators())
    }

    pub fn from_operators(ops: ModelOperatorSet) -> Self {
        let p = Kernel::projector();
        let ex = exec::current();
        let o2p = apply_to_p(&ops.o2, &p);
        let a2 = inv_l_perp(&o2p);
        let heavy = ex.map(&[0u8, 1, 2], |which| match which {
            0 => inv_l_perp(&apply_to_p(&ops.o3, &p)),
            1 => inv_l_perp(&apply_to_p(&ops.o2, &a2)),
            _ => inv_l_perp(&apply_to_p(&ops.o4, &p)).neg(),
        });
        let [a3, t1, t2]: [Kernel; 3] = heavy.try_into().expect("three kernels");
        let a2d = adjoint(&a2);
        let t5 = compose(&a2, &a2d);
        let t6 = compose(&a2d, &a2).neg();
        let f2 = a2.add(&a2d).neg();
        let f3 = a3.add(&adjoint(&a3)).neg();
        let f41 = t1.add(&t2);
        let f4 = f41.add(&adjoint(&f41)).add(&t5).add(&t6);
        Pipeline { ops, o2p, a2, a3, t1, t2, t5, t6, j: [p, Kernel::zero(), f2, f3, f4] }
    }

    pub fn f(&self, r: usize) -> &Kernel {
        &self.j[r]
    }

    /// 𝒫𝒪₂𝒫
    pub fn p_o2_p(&self) -> Kernel {
        project(&self.o2p)
    }

    /// Q_r(f) restricted to Z = 0 (a kernel in Z′ only).
    pub fn qf_left(&self, tag: u8, r: usize) -> Kernel {
        self.qf(tag, r, Side::Left)
    }

    /// Q_r(f) restricted to Z′ = 0.
    pub fn qf_right(&self, tag: u8, r: usize) -> Kernel {
        self.qf(tag, r, Side::Right)
    }

    /// Full kernel Q_r(f).
    pub fn qf_full(&self, tag: u8, r: usize) -> Kernel {
        self.qf(tag, r, Side::Full)
    }

    fn qf(&self, tag: u8, r: usize, side: Side) -> Kernel {
        let mut acc = Kernel::zero();
        for r1 in 0..=r {
            for k in 0..=(r - r1) {
                let r2 = r - r1 - k;
                if r1 == 1 || r2 == 1 {
                    continue;
                }
                let right = Kernel(taylor(tag, k).mul_poly(&self.j[r2].0));
                let piece = match side {
                    Side::Full => compose(&self.j[r1], &right),
                    Side::Left => restrict_left(&compose(&restrict_left(&self.j[r1]), &right)),
                    Side::Right => compose(&self.j[r1], &right.at_zprime_zero()).at_zprime_zero(),
                };
                acc = acc.add(&piece);
            }
        }
        acc
    }

    /// Q_r(f)(0, 0)
    pub fn qf_origin(&self, tag: u8, r: usize) -> Poly {
        let mut acc = Poly::zero();
        for (a, b) in self.qf_parts(tag, r) {
            acc.add_assign_poly(&compose_at_origin(&self.j[a], &b));
        }
        acc
    }

    /// The summands 𝒦[J_{r₁}, T_k(f) J_{r₂}] as (r₁, right kernel).
    pub fn qf_parts(&self, tag: u8, r: usize) -> Vec<(usize, Kernel)> {
        let mut out = Vec::new();
        for r1 in 0..=r {
            for k in 0..=(r - r1) {
                let r2 = r - r1 - k;
                if r1 == 1 || r2 == 1 {
                    continue;
                }
                out.push((r1, Kernel(taylor(tag, k).mul_poly(&self.j[r2].0))));
            }
        }
        out
    }

    /// b_{r,f} = Q_{2r}(f)(0, 0)
    pub fn b_f(&self, tag: u8, r: usize) -> Poly {
        self.qf_origin(tag, 2 * r)
    }

    /// b_{r,f,g} = Σ_{r₁+r₂=2r} 𝒦[Q_{r₁}(f), Q_{r₂}(g)](0, 0)
    pub fn b_fg(&self, f: u8, g: u8, r: usize) -> Poly {
        let n = 2 * r;
        let ex = exec::current();
        let parts = ex.map_range(n + 1, |r1| {
            let left = self.qf_left(f, r1);
            let right = self.qf_right(g, n - r1);
            compose_at_origin(&left, &right)
        });
        let mut acc = Poly::zero();
        for p in parts {
            acc.add_assign_poly(&p);
        }
        acc
    }

    /// 𝓕₄(0, 0)
    pub fn f4_origin(&self) -> Poly {
        eval_origin(&self.j[4])
    }
}

#[derive(Clone, Copy)]
enum Side {
    Full,
    Left,
    Right,
}

/// Drops every monomial carrying a first-slot variable (restriction to Z = 0).
pub fn restrict_left(k: &Kernel) -> Kernel {
    Kernel(k.0.filter(|m| m.vars.iter().all(|(v, _)| !matches!(v, VarKind::Z | VarKind::Zb))))
}

/// Σ_{|α|=k} (∂^α f)(0) Z^α/α! in complex form:
/// Σ_{a+b=k} f_{;u₁…u_a v̄₁…v̄_b} z_{u₁}…z_{u_a} z̄_{v₁}…z̄_{v_b} / (a! b!).
pub fn taylor(tag: u8, k: usize) -> Poly {
    let mut out = Poly::zero();
    for a in 0..=k {
        let b = k - a;
        let du: Vec<Label> = (0..a as Label).collect();
        let db: Vec<Label> = (a as Label..k as Label).collect();
        let mut m = Mono::from_factors(vec![Factor::obs(tag).with_d(du.clone(), db.clone())]);
        m.vars.extend(du.iter().map(|l| (VarKind::Z, *l)));
        m.vars.extend(db.iter().map(|l| (VarKind::Zb, *l)));
        let denom = factorial(a) * factorial(b);
        out.add_term(CRat::frac(1, denom), m);
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}
