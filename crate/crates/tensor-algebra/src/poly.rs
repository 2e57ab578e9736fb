//! Sparse polynomials over exact complex rationals, keyed by canonical monomials.

use crate::error::AlgebraError;
use crate::exec;
use crate::index::Label;
use crate::mono::Mono;
use crate::scalar::CRat;
use num_rational::BigRational;
use rustc_hash::FxHashMap;
use std::ops::{Add, Mul, Neg, Sub};

const PAR_THRESHOLD: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: FxHashMap<Mono, CRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: CRat) -> Self {
        let mut p = Poly::zero();
        p.add_canonical(c, Mono::one());
        p
    }

    pub fn one() -> Self {
        Poly::constant(CRat::one())
    }

    pub fn term(c: CRat, m: Mono) -> Self {
        let mut p = Poly::zero();
        p.add_term(c, m);
        p
    }

    pub fn mono(m: Mono) -> Self {
        Poly::term(CRat::one(), m)
    }

    /// Builds a polynomial from raw terms, canonicalizing in parallel when large.
    pub fn from_terms(raw: Vec<(CRat, Mono)>) -> Self {
        let ex = if raw.len() >= PAR_THRESHOLD { exec::current() } else { exec::Executor::Sequential };
        let canon = ex.map(&raw, |(c, m)| (c.clone(), m.canonical()));
        let mut p = Poly::zero();
        for (c, m) in canon {
            p.add_canonical(c, m);
        }
        p
    }

    pub fn add_term(&mut self, c: CRat, m: Mono) {
        self.add_canonical(c, m.canonical());
    }

    /// Adds a term whose monomial is already canonical.
    pub fn add_canonical(&mut self, c: CRat, m: Mono) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_poly(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_canonical(c.clone(), m.clone());
        }
    }

    pub fn add_scaled(&mut self, c: &CRat, o: &Poly) {
        for (m, v) in &o.terms {
            self.add_canonical(c * v, m.clone());
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &CRat)> {
        self.terms.iter()
    }

    /// Terms in the deterministic rendering order.
    pub fn sorted(&self) -> Vec<(&Mono, &CRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, m: &Mono) -> CRat {
        self.terms.get(&m.canonical()).cloned().unwrap_or_else(CRat::zero)
    }

    pub fn scale(&self, c: &CRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), c * v)).collect() }
    }

    pub fn scale_pi(&self, k: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m = m.clone();
                    m.pi += k;
                    (m, v.clone())
                })
                .collect(),
        }
    }

    /// Applies `f` to every term and collects the results.
    pub fn flat_map<F>(&self, f: F) -> Poly
    where
        F: Fn(&Mono, &CRat) -> Vec<(CRat, Mono)> + Sync + Send,
    {
        let items: Vec<(&Mono, &CRat)> = self.terms.iter().collect();
        let ex = if items.len() >= 8 { exec::current() } else { exec::Executor::Sequential };
        let parts = ex.map(&items, |(m, c)| {
            f(m, c).into_iter().map(|(c, m)| (c, m.canonical())).collect::<Vec<_>>()
        });
        let mut out = Poly::zero();
        for part in parts {
            for (c, m) in part {
                out.add_canonical(c, m);
            }
        }
        out
    }

    pub fn map_monos<F>(&self, f: F) -> Poly
    where
        F: Fn(&Mono) -> Mono + Sync + Send,
    {
        self.flat_map(|m, c| vec![(c.clone(), f(m))])
    }

    pub fn filter<F>(&self, keep: F) -> Poly
    where
        F: Fn(&Mono) -> bool,
    {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn conj_kernel(&self) -> Poly {
        self.flat_map(|m, c| vec![(c.conj(), m.conj_kernel())])
    }

    pub fn conj_operator(&self) -> Poly {
        self.flat_map(|m, c| vec![(c.conj(), m.conj_operator())])
    }

    pub fn rename_free(&self, from: &[Label], to: &[Label]) -> Poly {
        self.map_monos(|m| {
            let mut m = m.clone();
            m.rename(|l| from.iter().position(|x| *x == l).map_or(l, |i| to[i]));
            m
        })
    }

    pub fn real_part(&self) -> FxHashMap<Mono, BigRational> {
        self.terms.iter().filter(|(_, c)| c.re != BigRational::default()).map(|(m, c)| (m.clone(), c.re.clone())).collect()
    }

    pub fn imag_part(&self) -> FxHashMap<Mono, BigRational> {
        self.terms.iter().filter(|(_, c)| c.im != BigRational::default()).map(|(m, c)| (m.clone(), c.im.clone())).collect()
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        self.terms.keys().try_for_each(Mono::validate)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Constant (variable-free, word-free) part.
    pub fn constant_part(&self) -> Poly {
        self.filter(Mono::is_constant)
    }

    pub fn mul_poly(&self, o: &Poly) -> Poly {
        let left: Vec<(&Mono, &CRat)> = self.terms.iter().collect();
        let right: Vec<(&Mono, &CRat)> = o.terms.iter().collect();
        let ex = if left.len() * right.len() >= PAR_THRESHOLD { exec::current() } else { exec::Executor::Sequential };
        let parts = ex.map(&left, |(a, ca)| {
            right.iter().map(|(b, cb)| (*ca * *cb, a.mul(b).canonical())).collect::<Vec<_>>()
        });
        let mut out = Poly::zero();
        for part in parts {
            for (c, m) in part {
                out.add_canonical(c, m);
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_assign_poly(o);
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(&CRat::int(-1), o);
        p
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_poly(o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&CRat::int(-1))
    }
}

impl FromIterator<(CRat, Mono)> for Poly {
    fn from_iter<I: IntoIterator<Item = (CRat, Mono)>>(it: I) -> Self {
        Poly::from_terms(it.into_iter().collect())
    }
}
