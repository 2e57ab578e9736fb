//! A small text syntax for contraction polynomials.
//!
//! Terms are products of atoms: a rational `3/4`, `i`, `pi^-2`, `n`, tensors
//! `R(k,m~,l,q~;s,t~)`, `ric(k,l~)`, `E(k,q~)`, `sc`, `lapsc`, `d(a,b~)`,
//! observables `f`, `g(;u,v~)`, variables `z(k)`, `zb(k)`, `zp(k)`, `zbp(k)`,
//! `b(k)`, `bp(k)`, and an ordered word `[b(k) bp(k)]`. A `~` marks a barred
//! index. Names used twice in a term are summed, names used once are free.

use crate::error::AlgebraError;
use crate::factor::{Factor, Kind};
use crate::index::{free, Label};
use crate::mono::{Mono, VarKind};
use crate::poly::Poly;
use crate::scalar::CRat;
use num_bigint::BigInt;
use num_rational::BigRational;
use rustc_hash::FxHashMap;

pub fn parse(src: &str) -> Result<Poly, AlgebraError> {
    Parser { s: src.as_bytes(), pos: 0 }.poly()
}

/// Parses a polynomial, panicking on malformed input. For literals in code.
pub fn p(src: &str) -> Poly {
    parse(src).unwrap_or_else(|e| panic!("{e} in `{src}`"))
}

#[derive(Clone, Copy)]
enum Slot {
    Plain(Kind),
    Var(VarKind),
}

struct RawIdx {
    name: String,
    barred: bool,
}

enum Item {
    Factor(Kind, Vec<RawIdx>, Vec<RawIdx>),
    Var(VarKind, RawIdx, bool),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] == b' ' || self.s[self.pos] == b'*' || self.s[self.pos] == b'\n') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Poly, AlgebraError> {
        let mut out = Poly::zero();
        let mut first = true;
        loop {
            self.ws();
            let sign = match self.peek() {
                None if !first => break,
                None => return self.err("empty expression"),
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(format!("expected + or -, found `{}`", c as char)),
            };
            first = false;
            let (c, m) = self.term()?;
            out.add_term(c.scale(&BigRational::from_integer(BigInt::from(sign))), m);
        }
        Ok(out)
    }

    fn word(&mut self) -> Result<String, AlgebraError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'\'' || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<i64, AlgebraError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        match txt.parse::<i64>() {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => self.err("expected an integer"),
        }
    }

    fn term(&mut self) -> Result<(CRat, Mono), AlgebraError> {
        let mut coef = CRat::one();
        let mut mono = Mono::one();
        let mut items: Vec<Item> = Vec::new();
        let mut any = false;
        loop {
            self.ws();
            let Some(c) = self.peek() else { break };
            if c == b'+' || c == b'-' {
                break;
            }
            any = true;
            if c.is_ascii_digit() {
                let n = self.int()?;
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.int()?
                } else {
                    1
                };
                if d == 0 {
                    return self.err("zero denominator");
                }
                coef = &coef * &CRat::frac(n, d);
                continue;
            }
            if c == b'[' {
                self.pos += 1;
                loop {
                    self.ws();
                    if self.peek() == Some(b']') {
                        self.pos += 1;
                        break;
                    }
                    match self.atom()? {
                        Item::Var(k, i, _) => items.push(Item::Var(k, i, true)),
                        _ => return self.err("only letters may appear in a word"),
                    }
                }
                continue;
            }
            let save = self.pos;
            let name = self.word()?;
            match name.as_str() {
                "i" => coef = &coef * &CRat::i(),
                "n" => mono.nexp += 1,
                "pi" => {
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        mono.pi += self.int()? as i32;
                    } else {
                        mono.pi += 1;
                    }
                }
                _ => {
                    self.pos = save;
                    items.push(self.atom()?);
                }
            }
        }
        if !any {
            return self.err("empty term");
        }
        self.assemble(coef, mono, items)
    }

    fn atom(&mut self) -> Result<Item, AlgebraError> {
        let name = self.word()?;
        let slot = match name.as_str() {
            "R" => Slot::Plain(Kind::R),
            "ric" => Slot::Plain(Kind::Ric),
            "E" => Slot::Plain(Kind::E),
            "sc" => Slot::Plain(Kind::Sc),
            "lapsc" => Slot::Plain(Kind::LapSc),
            "d" => Slot::Plain(Kind::Kd),
            "f" => Slot::Plain(Kind::F(0)),
            "g" => Slot::Plain(Kind::F(1)),
            "h" => Slot::Plain(Kind::F(2)),
            "z" => Slot::Var(VarKind::Z),
            "zb" => Slot::Var(VarKind::Zb),
            "zp" => Slot::Var(VarKind::Zp),
            "zbp" => Slot::Var(VarKind::Zbp),
            "b" => Slot::Var(VarKind::B),
            "bp" => Slot::Var(VarKind::Bp),
            "a" => Slot::Var(VarKind::A),
            "c" => Slot::Var(VarKind::C),
            other => return self.err(format!("unknown symbol `{other}`")),
        };
        let (base, derivs) = if self.peek() == Some(b'(') {
            self.pos += 1;
            self.args()?
        } else {
            (Vec::new(), Vec::new())
        };
        match slot {
            Slot::Plain(kind) => Ok(Item::Factor(kind, base, derivs)),
            Slot::Var(k) => {
                if base.len() != 1 || !derivs.is_empty() {
                    return self.err(format!("variable `{name}` takes exactly one index"));
                }
                let idx = base.into_iter().next().expect("one index");
                Ok(Item::Var(k, idx, false))
            }
        }
    }

    fn args(&mut self) -> Result<(Vec<RawIdx>, Vec<RawIdx>), AlgebraError> {
        let mut base = Vec::new();
        let mut derivs = Vec::new();
        let mut in_d = false;
        loop {
            while matches!(self.peek(), Some(b' ') | Some(b',')) {
                self.pos += 1;
            }
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b';') => {
                    self.pos += 1;
                    in_d = true;
                }
                Some(_) => {
                    let name = self.word()?;
                    let barred = self.peek() == Some(b'~');
                    if barred {
                        self.pos += 1;
                    }
                    let idx = RawIdx { name, barred };
                    if in_d {
                        derivs.push(idx);
                    } else {
                        base.push(idx);
                    }
                }
                None => return self.err("unclosed `(`"),
            }
        }
        Ok((base, derivs))
    }

    fn assemble(&self, coef: CRat, mut mono: Mono, items: Vec<Item>) -> Result<(CRat, Mono), AlgebraError> {
        let mut counts: FxHashMap<String, usize> = FxHashMap::default();
        let mut note = |i: &RawIdx| *counts.entry(i.name.clone()).or_default() += 1;
        for it in &items {
            match it {
                Item::Factor(_, b, d) => b.iter().chain(d.iter()).for_each(&mut note),
                Item::Var(_, i, _) => note(i),
            }
        }
        let mut names: Vec<&String> = counts.keys().collect();
        names.sort();
        let mut labels: FxHashMap<String, Label> = FxHashMap::default();
        let mut next = 0;
        for n in names {
            let l = match counts[n] {
                1 => free(n)?,
                2 => {
                    next += 1;
                    next - 1
                }
                k => return self.err(format!("index `{n}` used {k} times")),
            };
            labels.insert(n.clone(), l);
        }
        for it in items {
            match it {
                Item::Factor(kind, base, derivs) => {
                    let ends = kind.slot_ends();
                    if base.len() != ends.len() {
                        return self.err(format!("{} takes {} slots", kind.name(), ends.len()));
                    }
                    for (i, idx) in base.iter().enumerate() {
                        if idx.barred != (ends[i] == crate::index::End::B) {
                            return Err(AlgebraError::Structural {
                                factor: kind.name(),
                                reason: format!("slot {i} (`{}`) has the wrong type", idx.name),
                            });
                        }
                    }
                    let slots = base.iter().map(|i| labels[&i.name]).collect();
                    let du = derivs.iter().filter(|i| !i.barred).map(|i| labels[&i.name]).collect();
                    let db = derivs.iter().filter(|i| i.barred).map(|i| labels[&i.name]).collect();
                    mono.factors.push(Factor::new(kind, slots).with_d(du, db));
                }
                Item::Var(k, idx, in_word) => {
                    let v = (k, labels[&idx.name]);
                    if in_word {
                        mono.word.push(v);
                    } else {
                        mono.vars.push(v);
                    }
                }
            }
        }
        mono.validate()?;
        Ok((coef, mono))
    }
}
