//! Buchberger's algorithm over an arbitrary coefficient field, and Krull
//! dimension from leading monomials.
//!
//! Polynomials here have any number of variables; the trivariate
//! [`crate::TriPoly`] is only a front end for the classifier.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};

/// Default cap on the number of basis elements.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Coefficient arithmetic needed by the engine.
pub trait Coeffs: Clone {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

impl Coeffs for Field {
    type E = Elem;
    fn zero(&self) -> Elem {
        Field::zero(self)
    }
    fn one(&self) -> Elem {
        Field::one(self)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        Field::is_zero(self, a)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Field::mul(self, a, b)
    }
    fn inv(&self, a: &Elem) -> Elem {
        Field::inv(self, a).expect("inverse of nonzero element")
    }
}

/// Word-sized prime field, much faster than [`Field`] inside Buchberger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp(pub u64);

impl Coeffs for Zp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        crate::algebra::fp::inv(*a, self.0).expect("inverse of nonzero element")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

pub type Exps = Vec<u16>;

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Sparse polynomial with terms sorted in decreasing monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<E> {
    pub terms: Vec<(Exps, E)>,
}

impl<E: Clone + PartialEq + Debug> MPoly<E> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms<C: Coeffs<E = E>>(k: &C, order: MonomialOrder, mut raw: Vec<(Exps, E)>) -> Self {
        raw.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut terms: Vec<(Exps, E)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = k.add(lc, &c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !k.is_zero(c));
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Exps {
        &self.terms[0].0
    }

    fn monic<C: Coeffs<E = E>>(&self, k: &C) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = k.inv(&self.terms[0].1);
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), k.mul(c, &li))).collect() }
    }

    /// `self - c * x^shift * g`
    fn sub_scaled<C: Coeffs<E = E>>(&self, k: &C, order: MonomialOrder, c: &E, shift: &[u16], g: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let shifted: Vec<(Exps, E)> = g
            .terms
            .iter()
            .map(|(m, a)| (m.iter().zip(shift).map(|(x, y)| x + y).collect(), k.mul(a, c)))
            .collect();
        let mut j = 0;
        while i < self.terms.len() || j < shifted.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == shifted.len() {
                Ordering::Greater
            } else {
                order.cmp(&self.terms[i].0, &shifted[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, a) = &shifted[j];
                    out.push((m.clone(), k.sub(&k.zero(), a)));
                    j += 1;
                }
                Ordering::Equal => {
                    let d = k.sub(&self.terms[i].1, &shifted[j].1);
                    if !k.is_zero(&d) {
                        out.push((self.terms[i].0.clone(), d));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { terms: out }
    }
}

/// Full reduction of `p` by `basis` (each element monic).
pub fn reduce<C: Coeffs>(k: &C, order: MonomialOrder, p: &MPoly<C::E>, basis: &[MPoly<C::E>]) -> MPoly<C::E> {
    let mut p = p.clone();
    let mut rem: Vec<(Exps, C::E)> = Vec::new();
    while !p.is_zero() {
        let (lm, lc) = p.terms[0].clone();
        let g = basis.iter().find(|g| divides(g.lead(), &lm));
        match g {
            Some(g) => {
                let shift: Exps = lm.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
                p = p.sub_scaled(k, order, &lc, &shift, g);
            }
            None => {
                rem.push((lm, lc));
                p.terms.remove(0);
            }
        }
    }
    MPoly { terms: rem }
}

fn s_poly<C: Coeffs>(k: &C, order: MonomialOrder, f: &MPoly<C::E>, g: &MPoly<C::E>) -> MPoly<C::E> {
    let l = lcm(f.lead(), g.lead());
    let sf: Exps = l.iter().zip(f.lead()).map(|(a, b)| a - b).collect();
    let sg: Exps = l.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
    let zero = MPoly::zero();
    let a = zero.sub_scaled(k, order, &k.sub(&k.zero(), &k.one()), &sf, f);
    a.sub_scaled(k, order, &k.one(), &sg, g)
}

/// Gröbner basis (minimal, monic) of the ideal generated by `gens`.
pub fn groebner_basis<C: Coeffs>(
    k: &C,
    order: MonomialOrder,
    gens: &[MPoly<C::E>],
    budget: usize,
) -> Result<Vec<MPoly<C::E>>> {
    let mut basis: Vec<MPoly<C::E>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |basis: &mut Vec<MPoly<C::E>>, pairs: &mut Vec<(usize, usize)>, g: MPoly<C::E>| {
        let n = basis.len();
        pairs.extend((0..n).map(|i| (i, n)));
        basis.push(g);
    };

    for g in gens {
        let r = reduce(k, order, g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r.monic(k));
        }
    }
    while !pairs.is_empty() {
        // normal selection: the pair with the smallest lcm
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order.cmp(&lcm(basis[a.0].lead(), basis[a.1].lead()), &lcm(basis[b.0].lead(), basis[b.1].lead()))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        done.insert((i, j));
        let (li, lj) = (basis[i].lead().clone(), basis[j].lead().clone());
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        let chain = (0..basis.len()).any(|t| {
            t != i
                && t != j
                && divides(basis[t].lead(), &l)
                && done.contains(&(i.min(t), i.max(t)))
                && done.contains(&(j.min(t), j.max(t)))
        });
        if chain {
            continue;
        }
        let s = s_poly(k, order, &basis[i], &basis[j]);
        let r = reduce(k, order, &s, &basis);
        if !r.is_zero() {
            if basis.len() >= budget {
                return Err(Error::OracleOverflow { budget });
            }
            add(&mut basis, &mut pairs, r.monic(k));
        }
    }
    // minimalise: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<MPoly<C::E>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lead(), g.lead()) && (h.lead() != g.lead() || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    Ok(keep)
}

/// Krull dimension of `k[x_1..x_n]/M` for the monomial ideal `M` generated
/// by `gens`: `n` minus the smallest set of variables meeting every support.
pub fn monomial_dimension(nvars: usize, gens: &[Exps]) -> usize {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        // the unit ideal; by convention the empty quotient has dimension 0
        return 0;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    let mut best = nvars;
    fn search(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let open = supports.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        match open {
            None => *best = size,
            Some(&s) => {
                let mut bits = s;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    search(supports, chosen | b, size + 1, best);
                    bits &= bits - 1;
                }
            }
        }
    }
    assert!(nvars <= 64, "monomial dimension supports at most 64 variables");
    search(&supports, 0, 0, &mut best);
    nvars - best
}

/// Krull dimension of `k[x_1..x_n]/I`.
pub fn dimension<C: Coeffs>(k: &C, nvars: usize, gens: &[MPoly<C::E>], budget: usize) -> Result<usize> {
    let gb = groebner_basis(k, MonomialOrder::GrevLex, gens, budget)?;
    let leads: Vec<Exps> = gb.iter().map(|g| g.lead().clone()).collect();
    Ok(monomial_dimension(nvars, &leads))
}

/// Height (codimension) of the ideal in a polynomial ring in `nvars`
/// variables; the unit ideal is given height `nvars + 1`.
pub fn height<C: Coeffs>(k: &C, nvars: usize, gens: &[MPoly<C::E>], budget: usize) -> Result<usize> {
    let gb = groebner_basis(k, MonomialOrder::GrevLex, gens, budget)?;
    if gb.iter().any(|g| g.lead().iter().all(|&e| e == 0)) {
        return Ok(nvars + 1);
    }
    let leads: Vec<Exps> = gb.iter().map(|g| g.lead().clone()).collect();
    Ok(nvars - monomial_dimension(nvars, &leads))
}

/// Helper for tests and small callers: `c * x^e` terms over `k`.
pub fn poly<C: Coeffs>(k: &C, order: MonomialOrder, terms: &[(C::E, Exps)]) -> MPoly<C::E> {
    MPoly::from_terms(k, order, terms.iter().map(|(c, e)| (e.clone(), c.clone())).collect())
}

/// All S-polynomials of `basis` reduce to zero.
pub fn is_groebner<C: Coeffs>(k: &C, order: MonomialOrder, basis: &[MPoly<C::E>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_poly(k, order, &basis[i], &basis[j]);
            if !reduce(k, order, &s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Unit vector exponent helper.
pub fn var_exps(nvars: usize, i: usize, e: u16) -> Exps {
    let mut v = vec![0; nvars];
    v[i] = e;
    v
}
