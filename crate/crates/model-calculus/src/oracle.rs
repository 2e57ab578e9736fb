//! Independent numerical check of the letter algebra at n = 1.
//!
//! Two-mode Fock realization: b = 2√π a₁†, b⁺ = 2√π a₁, z = (a₁ + a₂†)/√π,
//! z̄ = (a₁† + a₂)/√π. Tensor symbols receive fixed pseudo-random values.

use crate::operator::OperatorExpr;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::PI;
use std::hash::{Hash, Hasher};
use tensor_algebra::{Factor, Kind, Mono, VarKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("truncation {n} is below the expression degree {degree}")]
    Truncation { n: usize, degree: usize },
    #[error("variable {0:?} has no operator meaning")]
    NotALetter(VarKind),
}

/// Matrix of an expression on states with a₁, a₂ occupation sum ≤ N. Columns
/// at level ≤ N − degree are exact.
#[derive(Clone, Debug)]
pub struct OracleMatrix {
    pub matrix: DMatrix<Complex64>,
    pub levels: Vec<usize>,
    pub trusted_level: usize,
}

impl OracleMatrix {
    /// Largest entry difference on trusted columns relative to the largest entry.
    pub fn rel_diff(&self, o: &OracleMatrix) -> f64 {
        let lim = self.trusted_level.min(o.trusted_level);
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for (j, l) in self.levels.iter().enumerate() {
            if *l > lim {
                continue;
            }
            for i in 0..self.matrix.nrows() {
                diff = diff.max((self.matrix[(i, j)] - o.matrix[(i, j)]).norm());
                scale = scale.max(self.matrix[(i, j)].norm()).max(o.matrix[(i, j)].norm());
            }
        }
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

struct Basis {
    states: Vec<(usize, usize)>,
    n: usize,
}

impl Basis {
    fn new(n: usize) -> Self {
        let mut states = Vec::new();
        for l in 0..=n {
            for n1 in 0..=l {
                states.push((n1, l - n1));
            }
        }
        Basis { states, n }
    }

    fn index(&self, s: (usize, usize)) -> Option<usize> {
        let l = s.0 + s.1;
        if l > self.n {
            return None;
        }
        Some(l * (l + 1) / 2 + s.0)
    }

    fn ladder(&self, mode: usize, raise: bool) -> DMatrix<Complex64> {
        let d = self.states.len();
        let mut m = DMatrix::zeros(d, d);
        for (j, &(n1, n2)) in self.states.iter().enumerate() {
            let occ = if mode == 0 { n1 } else { n2 };
            let (target, amp) = if raise {
                (if mode == 0 { (n1 + 1, n2) } else { (n1, n2 + 1) }, ((occ + 1) as f64).sqrt())
            } else {
                if occ == 0 {
                    continue;
                }
                (if mode == 0 { (n1 - 1, n2) } else { (n1, n2 - 1) }, (occ as f64).sqrt())
            };
            if let Some(i) = self.index(target) {
                m[(i, j)] = Complex64::new(amp, 0.0);
            }
        }
        m
    }
}

/// Deterministic value of a tensor symbol at n = 1.
pub fn symbol_value(f: &Factor) -> f64 {
    if f.kind == Kind::Kd {
        return 1.0;
    }
    let mut h = rustc_hash::FxHasher::default();
    (f.kind, f.du.len(), f.db.len()).hash(&mut h);
    let x = h.finish();
    0.5 + (x % 10_007) as f64 / 10_007.0
}

fn scalar_value(m: &Mono) -> f64 {
    PI.powi(m.pi) * m.factors.iter().map(symbol_value).product::<f64>()
}

pub fn fock_oracle(e: &OperatorExpr, n: usize) -> Result<OracleMatrix, OracleError> {
    let degree = e.degree();
    if n < degree {
        return Err(OracleError::Truncation { n, degree });
    }
    let basis = Basis::new(n);
    let a1 = basis.ladder(0, false);
    let a1d = basis.ladder(0, true);
    let a2 = basis.ladder(1, false);
    let a2d = basis.ladder(1, true);
    let sp = PI.sqrt();
    let letter = |k: VarKind| -> Result<DMatrix<Complex64>, OracleError> {
        Ok(match k {
            VarKind::B => &a1d * Complex64::new(2.0 * sp, 0.0),
            VarKind::Bp => &a1 * Complex64::new(2.0 * sp, 0.0),
            VarKind::Z => (&a1 + &a2d) * Complex64::new(1.0 / sp, 0.0),
            VarKind::Zb => (&a1d + &a2) * Complex64::new(1.0 / sp, 0.0),
            other => return Err(OracleError::NotALetter(other)),
        })
    };
    let d = basis.states.len();
    let mut total = DMatrix::<Complex64>::zeros(d, d);
    for (m, c) in e.0.iter() {
        let (re, im) = (c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
        let coef = Complex64::new(re, im) * scalar_value(m);
        let mut prod = DMatrix::<Complex64>::identity(d, d);
        let mut vars = m.vars.clone();
        vars.sort_by_key(|(k, _)| *k);
        for (k, _) in vars.iter().chain(m.word.iter()) {
            prod *= letter(*k)?;
        }
        total += prod * coef;
    }
    let levels = basis.states.iter().map(|(a, b)| a + b).collect();
    Ok(OracleMatrix { matrix: total, levels, trusted_level: n - degree })
}
