//! Seeded oracle-equivalence checks for the kernel calculus.

use model_calculus::random::{random_kernel, random_operator};
use model_calculus::{compose, compose_fock, fock_oracle, normal_order};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const WICK_FOCK: &str = "oracle-wick-fock";
pub const NORMAL_ORDER: &str = "oracle-normal-order";

pub const PAIRS: usize = 200;
pub const EXPRESSIONS: usize = 100;
pub const TRUNCATION: usize = 12;

pub struct OracleOutcome {
    pub id: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub residue: String,
}

pub fn ids() -> Vec<&'static str> {
    vec![NORMAL_ORDER, WICK_FOCK]
}

/// Wick-rule and Fock-route compositions on random kernel pairs of degree ≤ 4.
pub fn wick_vs_fock(seed: u64) -> OracleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..PAIRS {
        let a = random_kernel(&mut rng, 4, 2);
        let b = random_kernel(&mut rng, 4, 2);
        let (w, f) = (compose(&a, &b), compose_fock(&a, &b));
        if w != f {
            bad.push(format!("pair {i}: {}", w.sub(&f).0));
        }
    }
    OracleOutcome {
        id: WICK_FOCK,
        anchor: "Lemma toet1.1",
        passed: bad.is_empty(),
        residue: if bad.is_empty() { format!("0 ({PAIRS} pairs)") } else { bad.join("; ") },
    }
}

/// normal_order against the truncated Fock matrix at n = 1.
pub fn normal_order_vs_matrix(seed: u64, tol: f64) -> OracleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for i in 0..EXPRESSIONS {
        let e = random_operator(&mut rng, 4, 3);
        let n = normal_order(&e);
        let d = match (fock_oracle(&e, TRUNCATION), fock_oracle(&n, TRUNCATION)) {
            (Ok(a), Ok(b)) => a.rel_diff(&b),
            (Err(err), _) | (_, Err(err)) => {
                bad.push(format!("expression {i}: {err}"));
                continue;
            }
        };
        worst = worst.max(d);
        if !n.is_normal() || d > tol {
            bad.push(format!("expression {i}: relative difference {d:e}"));
        }
    }
    OracleOutcome {
        id: NORMAL_ORDER,
        anchor: "",
        passed: bad.is_empty(),
        residue: if bad.is_empty() { format!("max relative difference {worst:.3e} ({EXPRESSIONS} expressions)") } else { bad.join("; ") },
    }
}
