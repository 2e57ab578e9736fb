//! Deterministic plain-text rendering.

use crate::factor::{Factor, Kind};
use crate::index::{dummy_names, free_name, is_free, Label};
use crate::mono::{Mono, VarKind};
use crate::poly::Poly;
use crate::scalar::CRat;
use num_traits::{One, Signed};
use std::fmt;

const MACRON: char = '\u{304}';

struct Names {
    dummies: Vec<String>,
}

impl Names {
    fn for_mono(m: &Mono) -> Self {
        let taken: Vec<String> = m.free_labels().into_iter().map(free_name).collect();
        let count = m.max_dummy().map_or(0, |x| x as usize + 1);
        let dummies = dummy_names(count, &taken).into_iter().map(|s| if s == "l" { "ℓ".into() } else { s }).collect();
        Names { dummies }
    }

    fn plain(&self, l: Label) -> String {
        if is_free(l) {
            free_name(l)
        } else {
            self.dummies[l as usize].clone()
        }
    }

    fn barred(&self, l: Label) -> String {
        let mut s = self.plain(l);
        s.push(MACRON);
        s
    }
}

fn factor_str(f: &Factor, n: &Names) -> String {
    let mut idx = String::new();
    for (i, l) in f.slots.iter().enumerate() {
        let barred = i % 2 == 1;
        idx.push_str(&if barred { n.barred(*l) } else { n.plain(*l) });
    }
    if !f.du.is_empty() || !f.db.is_empty() {
        idx.push(';');
        for l in &f.du {
            idx.push_str(&n.plain(*l));
        }
        for l in &f.db {
            idx.push_str(&n.barred(*l));
        }
    }
    let name = f.kind.name();
    if idx.is_empty() {
        name
    } else if f.kind == Kind::Kd {
        format!("δ_{{{}{}}}", n.plain(f.slots[0]), n.plain(f.slots[1]))
    } else {
        format!("{name}_{{{idx}}}")
    }
}

fn var_prefix(k: VarKind) -> &'static str {
    match k {
        VarKind::B => "b",
        VarKind::Bp => "b⁺",
        VarKind::Z => "z",
        VarKind::Zb => "z̄",
        VarKind::Zp => "z′",
        VarKind::Zbp => "z̄′",
        VarKind::A => "a",
        VarKind::C => "c",
        VarKind::Sz => "ζ",
        VarKind::Szb => "ζ̄",
    }
}

/// Renders the symbolic part of a monomial (no coefficient).
pub fn mono_body(m: &Mono) -> String {
    let n = Names::for_mono(m);
    let mut parts: Vec<String> = Vec::new();
    if m.pi != 0 {
        parts.push(format!("π^{}", m.pi));
    }
    if m.nexp == 1 {
        parts.push("n".into());
    } else if m.nexp > 1 {
        parts.push(format!("n^{}", m.nexp));
    }
    parts.extend(m.factors.iter().map(|f| factor_str(f, &n)));
    parts.extend(m.vars.iter().map(|(k, l)| format!("{}_{}", var_prefix(*k), n.plain(*l))));
    if !m.word.is_empty() {
        let w: Vec<String> = m.word.iter().map(|(k, l)| format!("{}_{}", var_prefix(*k), n.plain(*l))).collect();
        parts.push(format!("[{}]", w.join(" ")));
    }
    parts.join(" ")
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = mono_body(self);
        if b.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{b}")
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted().into_iter().enumerate() {
            let (neg, mag) = if c.is_real() && c.re.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let body = mono_body(m);
            let unit = mag.is_real() && mag.re.is_one();
            match (unit, body.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "{}", mag)?,
                (false, false) => write!(f, "{} {body}", mag)?,
            }
        }
        Ok(())
    }
}

pub fn scalar_str(c: &CRat) -> String {
    c.to_string()
}
