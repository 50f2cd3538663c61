//! Sparse polynomials in x, y, z.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Elem, Embedding, Field};
use super::upoly::{find_roots, UPoly};
use crate::error::{Error, Result};

/// Exponent vector of `x^a y^b z^c`. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &Weight) -> u64 {
        (0..3).map(|i| self.0[i] as u64 * w.0[i]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, v) in ["x", "y", "z"].iter().enumerate() {
            match self.0[i] {
                0 => {}
                1 => parts.push(String::from(*v)),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A weight vector in Z^3_{>=0}, not all zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub [u64; 3]);

impl Weight {
    pub const STANDARD: Weight = Weight([1, 1, 1]);

    pub fn new(w: [u64; 3]) -> Result<Weight> {
        if w == [0, 0, 0] {
            return Err(Error::InvalidInput("weight vector must be nonzero".into()));
        }
        Ok(Weight(w))
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Sparse polynomial in x, y, z over a field; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPoly {
    field: Field,
    terms: BTreeMap<Monomial, Elem>,
}

impl TriPoly {
    pub fn zero(field: &Field) -> TriPoly {
        TriPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> TriPoly {
        TriPoly::term(field, c, Monomial::ONE)
    }

    pub fn one(field: &Field) -> TriPoly {
        TriPoly::constant(field, field.one())
    }

    pub fn var(field: &Field, i: usize) -> TriPoly {
        TriPoly::term(field, field.one(), Monomial::var(i))
    }

    pub fn term(field: &Field, c: Elem, m: Monomial) -> TriPoly {
        let mut p = TriPoly::zero(field);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from small integer coefficients.
    pub fn from_terms(field: &Field, terms: &[(i64, [u32; 3])]) -> TriPoly {
        let mut p = TriPoly::zero(field);
        for &(c, e) in terms {
            p.add_term(Monomial(e), field.from_i64(c));
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff_of(&self, e: [u32; 3]) -> Elem {
        self.coeff(&Monomial(e))
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TriPoly {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (m, a) in &self.terms {
            out.add_term(*m, self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        self.mul_truncated(other, None)
    }

    /// Product keeping only terms of total degree `<= max_degree`.
    pub fn mul_truncated(&self, other: &TriPoly, max_degree: Option<u32>) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let m = ma.mul(mb);
                if max_degree.is_some_and(|d| m.degree() > d) {
                    continue;
                }
                out.add_term(m, self.field.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TriPoly {
        self.pow_truncated(e, None)
    }

    pub fn pow_truncated(&self, mut e: u32, max_degree: Option<u32>) -> TriPoly {
        let mut acc = TriPoly::one(&self.field).truncate_degree_opt(max_degree);
        let mut base = self.truncate_degree_opt(max_degree);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, max_degree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, max_degree);
            }
        }
        acc
    }

    fn truncate_degree_opt(&self, d: Option<u32>) -> TriPoly {
        match d {
            Some(d) => self.truncate_degree(d),
            None => self.clone(),
        }
    }

    /// Terms of total degree `<= d`.
    pub fn truncate_degree(&self, d: u32) -> TriPoly {
        self.filter(|m| m.degree() <= d)
    }

    /// Terms whose `w`-weight is `<= max`.
    pub fn truncate_weight(&self, w: &Weight, max: u64) -> TriPoly {
        self.filter(|m| m.weighted_degree(w) <= max)
    }

    /// The `w`-homogeneous part of weighted degree `d`.
    pub fn weighted_part(&self, w: &Weight, d: u64) -> TriPoly {
        self.filter(|m| m.weighted_degree(w) == d)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> TriPoly {
        TriPoly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// `min { w.m : m in supp f }`; `None` stands for +infinity (f = 0).
    pub fn ord_w(&self, w: &Weight) -> Option<u64> {
        self.terms.keys().map(|m| m.weighted_degree(w)).min()
    }

    /// Multiplicity at the origin.
    pub fn ord(&self) -> Option<u64> {
        self.ord_w(&Weight::STANDARD)
    }

    /// The initial form: terms of minimal `w`-weight.
    pub fn in_w(&self, w: &Weight) -> TriPoly {
        match self.ord_w(w) {
            None => self.clone(),
            Some(d) => self.weighted_part(w, d),
        }
    }

    pub fn is_weighted_homogeneous(&self, w: &Weight) -> bool {
        self.in_w(w) == *self
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(&Monomial::ONE)
    }

    /// Whether `f` lies in the maximal ideal `(x, y, z)`.
    pub fn in_maximal_ideal(&self) -> bool {
        self.field.is_zero(&self.constant_term())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn derivative(&self, var: usize) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[var] -= 1;
            out.add_term(n, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        out
    }

    /// Simultaneous substitution `x_i -> images[i]`. Every image must lie in
    /// the maximal ideal so that the map is a local automorphism candidate.
    pub fn substitute(&self, images: &[TriPoly; 3]) -> Result<TriPoly> {
        self.substitute_truncated(images, None)
    }

    /// As [`TriPoly::substitute`], dropping terms above a total degree.
    /// Exact in low degrees because images have no constant term.
    pub fn substitute_truncated(&self, images: &[TriPoly; 3], max_degree: Option<u32>) -> Result<TriPoly> {
        for (i, img) in images.iter().enumerate() {
            if !img.in_maximal_ideal() {
                return Err(Error::NonLocalSubstitution { var: ['x', 'y', 'z'][i] });
            }
        }
        let mut powers: [Vec<TriPoly>; 3] = Default::default();
        for i in 0..3 {
            let top = self.degree_in(i);
            let mut v = vec![TriPoly::one(&self.field)];
            for k in 1..=top {
                let next = v[k as usize - 1].mul_truncated(&images[i], max_degree);
                v.push(next);
            }
            powers[i] = v;
        }
        let mut out = TriPoly::zero(&self.field);
        for (m, c) in &self.terms {
            if max_degree.is_some_and(|d| m.degree() > d) {
                continue;
            }
            let t = powers[0][m.0[0] as usize]
                .mul_truncated(&powers[1][m.0[1] as usize], max_degree)
                .mul_truncated(&powers[2][m.0[2] as usize], max_degree);
            for (n, a) in &t.terms {
                out.add_term(*n, self.field.mul(a, c));
            }
        }
        Ok(out)
    }

    /// Image of the polynomial under a field embedding.
    pub fn embed(&self, e: &Embedding) -> TriPoly {
        let mut out = TriPoly::zero(e.target());
        for (m, c) in &self.terms {
            out.add_term(*m, e.apply(c));
        }
        out
    }

    pub fn eval(&self, point: &[Elem; 3]) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t = f.mul(&t, &f.pow(&point[i], m.0[i] as u128));
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Univariate restriction `t -> f(a(t), b(t), c(t))` for linear
    /// parametrisations `x_i = p_i + q_i t`.
    pub fn restrict_to_line(&self, base: &[Elem; 3], dir: &[Elem; 3]) -> UPoly {
        let f = &self.field;
        let lin: Vec<UPoly> = (0..3).map(|i| UPoly::new(f, vec![base[i].clone(), dir[i].clone()])).collect();
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UPoly::constant(f, c.clone());
            for i in 0..3 {
                for _ in 0..m.0[i] {
                    t = t.mul(f, &lin[i]);
                }
            }
            acc = acc.add(f, &t);
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    /// Scales so the lexicographically largest term has coefficient 1.
    pub fn monic(&self) -> TriPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &TriPoly) -> Option<TriPoly> {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let dc_inv = self.field.inv(dc).unwrap();
        let mut r = self.clone();
        let mut q = TriPoly::zero(&self.field);
        while let Some((m, c)) = r.leading() {
            if !dm.divides(m) {
                return None;
            }
            let t = TriPoly::term(&self.field, self.field.mul(c, &dc_inv), m.div(dm));
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    fn main_var(&self) -> Option<usize> {
        (0..3).rev().find(|&v| self.degree_in(v) > 0)
    }

    /// Coefficient of `x_v^k`, as a polynomial free of `x_v`.
    fn coeff_in(&self, v: usize, k: u32) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (m, c) in &self.terms {
            if m.0[v] == k {
                let mut n = *m;
                n.0[v] = 0;
                out.add_term(n, c.clone());
            }
        }
        out
    }

    fn shift_var(&self, v: usize, k: u32) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let mut n = *m;
            n.0[v] += k;
            out.add_term(n, c.clone());
        }
        out
    }

    fn content_in(&self, v: usize) -> TriPoly {
        let mut g = TriPoly::zero(&self.field);
        for k in 0..=self.degree_in(v) {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                g = g.gcd(&c);
                if g.total_degree() == Some(0) {
                    break;
                }
            }
        }
        g
    }

    fn pseudo_rem(&self, b: &TriPoly, v: usize) -> TriPoly {
        let db = b.degree_in(v);
        let lb = b.coeff_in(v, db);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coeff_in(v, dr);
            r = r.mul(&lb).sub(&b.mul(&lr).shift_var(v, dr - db));
        }
        r
    }

    /// Greatest common divisor, normalised by [`TriPoly::monic`].
    pub fn gcd(&self, other: &TriPoly) -> TriPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let v = match (self.main_var(), other.main_var()) {
            (None, _) | (_, None) => return TriPoly::one(&self.field),
            (Some(a), Some(b)) => a.max(b),
        };
        if self.degree_in(v) == 0 {
            return self.gcd(&other.content_in(v));
        }
        if other.degree_in(v) == 0 {
            return other.gcd(&self.content_in(v));
        }
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let mut a = self.div_exact(&ca).unwrap();
        let mut b = other.div_exact(&cb).unwrap();
        if a.degree_in(v) < b.degree_in(v) {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b, v);
            a = b;
            b = if r.is_zero() || r.degree_in(v) == 0 {
                r
            } else {
                r.div_exact(&r.content_in(v)).unwrap()
            };
            if !b.is_zero() && b.degree_in(v) == 0 {
                // a nonzero remainder free of v: the primitive parts are coprime
                a = TriPoly::one(&self.field);
                break;
            }
        }
        let pp = if a.degree_in(v) == 0 { TriPoly::one(&self.field) } else { a.div_exact(&a.content_in(v)).unwrap() };
        pp.mul(&ca.gcd(&cb)).monic()
    }

    /// No repeated irreducible factor (coefficient fields here are perfect).
    pub fn is_squarefree(&self) -> bool {
        if self.total_degree().unwrap_or(0) == 0 {
            return !self.is_zero();
        }
        let mut g = self.clone();
        for v in 0..3 {
            g = g.gcd(&self.derivative(v));
        }
        g.total_degree() == Some(0)
    }

    /// For `d = c * l^k` with `l` a linear form, returns `l` (normalised to
    /// have coefficient 1 on its first variable). `None` if `d` is not of
    /// that shape or the root lies outside the field.
    pub fn linear_radical(&self) -> Option<TriPoly> {
        let k = self.total_degree()?;
        if k == 0 || self.ord() != Some(k as u64) {
            return None;
        }
        let f = &self.field;
        let v = (0..3).find(|&i| {
            let mut e = [0; 3];
            e[i] = k;
            !f.is_zero(&self.coeff_of(e))
        })?;
        let mut l = TriPoly::var(f, v);
        for u in 0..3 {
            if u == v {
                continue;
            }
            // d restricted to x_v = t, x_u = 1, others 0 is c (a t + b)^k
            let mut base = [f.zero(), f.zero(), f.zero()];
            base[u] = f.one();
            let mut dir = [f.zero(), f.zero(), f.zero()];
            dir[v] = f.one();
            let g = self.restrict_to_line(&base, &dir);
            let rs = find_roots(&g, f, false).ok()?;
            if rs.roots.len() != 1 || rs.roots[0].1 != k as usize {
                return None;
            }
            let t0 = rs.roots[0].0.clone();
            l = l.add(&TriPoly::term(f, f.neg(&t0), Monomial::var(u)));
        }
        let lk = l.pow(k);
        let c = f.div(&self.coeff_of(Monomial::var(v).0.map(|e| e * k)), &lk.coeff_of(Monomial::var(v).0.map(|e| e * k)))?;
        if lk.scale(&c) == *self {
            Some(l)
        } else {
            None
        }
    }

    /// Canonical text: ascending total degree, lexicographically descending
    /// within a degree; parseable back for prime fields and Q.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ms: Vec<&Monomial> = self.terms.keys().collect();
        ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
        let f = &self.field;
        let mut out = String::new();
        for m in ms {
            let c = &self.terms[m];
            let neg = f.is_negative(c);
            let mag = if neg { f.neg(c) } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *m == Monomial::ONE {
                out.push_str(&f.format(&mag));
            } else if f.is_one(&mag) {
                out.push_str(&format!("{m}"));
            } else {
                out.push_str(&format!("{}*{m}", f.format(&mag)));
            }
        }
        out
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn ord_and_initial_forms() {
        let f = TriPoly::from_terms(&q(), &[(1, [2, 0, 0]), (1, [0, 3, 0]), (1, [0, 2, 1]), (1, [0, 0, 4])]);
        let w = Weight([3, 2, 2]);
        assert_eq!(f.ord_w(&w), Some(6));
        let expect = TriPoly::from_terms(&q(), &[(1, [2, 0, 0]), (1, [0, 3, 0]), (1, [0, 2, 1])]);
        assert_eq!(f.in_w(&w), expect);
        let g = TriPoly::from_terms(&q(), &[(1, [2, 0, 0]), (1, [0, 3, 0])]);
        assert_eq!(g.ord_w(&Weight([21, 14, 6])), Some(42));
        assert_eq!(TriPoly::zero(&q()).ord_w(&w), None);
    }

    #[test]
    fn binomial_substitution() {
        // (y^3 + z^6) with y -> y - z^2
        let f = TriPoly::from_terms(&q(), &[(1, [0, 3, 0]), (1, [0, 0, 6])]);
        let images = [
            TriPoly::var(&q(), 0),
            TriPoly::from_terms(&q(), &[(1, [0, 1, 0]), (-1, [0, 0, 2])]),
            TriPoly::var(&q(), 2),
        ];
        let g = f.substitute(&images).unwrap();
        let expect = TriPoly::from_terms(&q(), &[(1, [0, 3, 0]), (-3, [0, 2, 2]), (3, [0, 1, 4])]);
        assert_eq!(g, expect);
    }

    #[test]
    fn non_local_substitution_rejected() {
        let f = TriPoly::var(&q(), 0);
        let images = [TriPoly::one(&q()), TriPoly::var(&q(), 1), TriPoly::var(&q(), 2)];
        assert_eq!(f.substitute(&images), Err(Error::NonLocalSubstitution { var: 'x' }));
    }

    #[test]
    fn gcds() {
        let x = TriPoly::var(&q(), 0);
        let y = TriPoly::var(&q(), 1);
        let z = TriPoly::var(&q(), 2);
        let a = x.add(&y.mul(&z)).mul(&x.sub(&z));
        let b = x.add(&y.mul(&z)).mul(&y.add(&z).pow(2));
        assert_eq!(a.gcd(&b), x.add(&y.mul(&z)).monic());
        assert_eq!(x.gcd(&y).total_degree(), Some(0));
    }

    #[test]
    fn squarefree() {
        let f2 = Field::prime(2).unwrap();
        let x2y = TriPoly::from_terms(&q(), &[(1, [2, 1, 0])]);
        assert!(!x2y.is_squarefree());
        assert!(TriPoly::from_terms(&q(), &[(1, [1, 1, 1])]).is_squarefree());
        let g = TriPoly::from_terms(&f2, &[(1, [2, 0, 0]), (1, [0, 2, 2])]);
        assert!(!g.is_squarefree());
        let g = TriPoly::from_terms(&q(), &[(1, [2, 0, 0]), (1, [0, 2, 2])]);
        assert!(g.is_squarefree());
    }

    #[test]
    fn radical_of_linear_power() {
        let f3 = Field::prime(3).unwrap();
        let l = TriPoly::from_terms(&f3, &[(1, [1, 0, 0]), (2, [0, 1, 0]), (1, [0, 0, 1])]);
        let d = l.pow(3).scale(&Elem::P(2));
        assert_eq!(d.linear_radical(), Some(l));
    }

    #[test]
    fn printing() {
        let f = TriPoly::from_terms(&q(), &[(1, [0, 3, 0]), (1, [2, 0, 0]), (-2, [1, 1, 0])]);
        assert_eq!(f.format(), "x^2 - 2*x*y + y^3");
    }
}
