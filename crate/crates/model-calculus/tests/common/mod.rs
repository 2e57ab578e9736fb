#![allow(dead_code)]

pub use model_calculus::random::{random_kernel, random_operator};
use model_calculus::Kernel;
use num_complex::Complex64;
use tensor_algebra::VarKind;

/// Numeric value of a kernel polynomial at n = 1, with symbols from the oracle.
pub fn eval_kernel(k: &Kernel, z: Complex64, zp: Complex64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (m, c) in k.0.iter() {
        let (re, im) = c.to_f64();
        let mut v = Complex64::new(re, im) * std::f64::consts::PI.powi(m.pi);
        for f in &m.factors {
            v *= model_calculus::oracle::symbol_value(f);
        }
        for (kind, _) in &m.vars {
            v *= match kind {
                VarKind::Z => z,
                VarKind::Zb => z.conj(),
                VarKind::Zp => zp,
                VarKind::Zbp => zp.conj(),
                other => panic!("{other:?}"),
            };
        }
        total += v;
    }
    total
}

pub fn gauss(z: Complex64, zp: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    (-(pi / 2.0) * (z.norm_sqr() + zp.norm_sqr() - 2.0 * z * zp.conj())).exp()
}
