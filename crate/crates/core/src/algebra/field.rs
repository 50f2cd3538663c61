//! Exact coefficient fields: the rationals and finite fields F_{p^n}.
//!
//! A [`Field`] is a cheap shared handle. Elements ([`Elem`]) carry no
//! reference to their field, so every arithmetic operation goes through the
//! field that owns the operands. Finite fields of degree `n > 1` are
//! presented as F_p[u]/(m(u)) for a monic irreducible `m`; the default choice
//! is the smallest such `m` with coefficient vectors compared from the
//! constant term upwards, so enlargements are reproducible.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp;
use crate::error::{Error, Result};

/// An element of some [`Field`].
///
/// Finite-field elements of degree-one fields use [`Elem::P`]; proper
/// extensions use a coefficient vector of length `n` (ascending powers of
/// the generator `u`). The derived order is the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Q(BigRational),
    P(u64),
    E(Vec<u64>),
}

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

/// The rationals, or F_{p^n} presented by a fixed irreducible modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field(Arc<FieldData>);

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldData { p: 0, n: 1, modulus: vec![0, 1] }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldData { p, n: 1, modulus: vec![0, 1] })))
    }

    /// `Q` for `p = 0`, otherwise F_p.
    pub fn with_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            Ok(Field::rationals())
        } else {
            Field::prime(p)
        }
    }

    /// F_p[u]/(modulus); the modulus is made monic and must be irreducible.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 {
            return Err(Error::InvalidInput("modulus must have degree at least 1".into()));
        }
        fp::make_monic(&mut m, p);
        if m.len() == 2 {
            return Field::prime(p);
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::InvalidInput("modulus is not irreducible".into()));
        }
        let n = m.len() - 1;
        Ok(Field(Arc::new(FieldData { p, n, modulus: m })))
    }

    /// F_{p^n} presented by the canonical (smallest) irreducible modulus.
    pub fn canonical(p: u64, n: usize) -> Result<Field> {
        if n == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 1 {
            return Field::prime(p);
        }
        let m = fp::canonical_modulus(p, n);
        Ok(Field(Arc::new(FieldData { p, n, modulus: m })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Monic modulus, ascending coefficients. Degree-one fields report `u`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.0.p == 0
    }

    pub fn is_finite(&self) -> bool {
        self.0.p != 0
    }

    /// Number of elements, `None` for Q or when it overflows `u128`.
    pub fn order(&self) -> Option<u128> {
        if self.is_rational() {
            return None;
        }
        let mut q: u128 = 1;
        for _ in 0..self.0.n {
            q = q.checked_mul(self.0.p as u128)?;
        }
        Some(q)
    }

    pub fn zero(&self) -> Elem {
        match (self.0.p, self.0.n) {
            (0, _) => Elem::Q(BigRational::zero()),
            (_, 1) => Elem::P(0),
            (_, n) => Elem::E(vec![0; n]),
        }
    }

    pub fn one(&self) -> Elem {
        self.of_u64(1)
    }

    fn of_u64(&self, c: u64) -> Elem {
        match (self.0.p, self.0.n) {
            (0, _) => Elem::Q(BigRational::from_integer(BigInt::from(c))),
            (p, 1) => Elem::P(c % p),
            (p, n) => {
                let mut v = vec![0; n];
                v[0] = c % p;
                Elem::E(v)
            }
        }
    }

    pub fn from_i64(&self, c: i64) -> Elem {
        self.from_bigint(&BigInt::from(c))
    }

    pub fn from_bigint(&self, c: &BigInt) -> Elem {
        if self.is_rational() {
            return Elem::Q(BigRational::from_integer(c.clone()));
        }
        let r = c.mod_floor(&BigInt::from(self.0.p));
        self.of_u64(r.to_u64().expect("residue fits"))
    }

    /// `num / den`; `None` when the denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Elem> {
        if self.is_rational() {
            if den.is_zero() {
                return None;
            }
            return Some(Elem::Q(BigRational::new(num.clone(), den.clone())));
        }
        let d = self.from_bigint(den);
        let d_inv = self.inv(&d)?;
        Some(self.mul(&self.from_bigint(num), &d_inv))
    }

    /// Element with the given coefficient vector over F_p (finite fields).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        let (p, n) = (self.0.p, self.0.n);
        if p == 0 {
            return Err(Error::InvalidInput("coefficient vectors need a finite field".into()));
        }
        if coeffs.len() > n {
            return Err(Error::InvalidInput(format!(
                "coefficient vector longer than extension degree {n}"
            )));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput("coefficient out of range".into()));
        }
        if n == 1 {
            return Ok(Elem::P(coeffs.first().copied().unwrap_or(0)));
        }
        let mut v = coeffs.to_vec();
        v.resize(n, 0);
        Ok(Elem::E(v))
    }

    /// Coefficient vector over F_p (length `n`) of a finite-field element.
    pub fn coeffs(&self, a: &Elem) -> Vec<u64> {
        match a {
            Elem::P(c) => vec![*c],
            Elem::E(v) => v.clone(),
            Elem::Q(_) => panic!("rational element has no coefficient vector"),
        }
    }

    /// The class of `u` in F_p[u]/(m). For degree-one fields this is the
    /// root of `u`, i.e. zero.
    pub fn generator(&self) -> Elem {
        match (self.0.p, self.0.n) {
            (0, _) => self.zero(),
            (_, 1) => Elem::P(0),
            (_, n) => {
                let mut v = vec![0; n];
                v[1] = 1;
                Elem::E(v)
            }
        }
    }

    /// The `i`-th element in little-endian base-p digit order.
    pub fn elem_by_index(&self, mut i: u128) -> Elem {
        let (p, n) = (self.0.p, self.0.n);
        let mut v = vec![0u64; n];
        for slot in v.iter_mut() {
            *slot = (i % p as u128) as u64;
            i /= p as u128;
        }
        if n == 1 {
            Elem::P(v[0])
        } else {
            Elem::E(v)
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_zero(),
            Elem::P(c) => *c == 0,
            Elem::E(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Elem::P(x), Elem::P(y)) => Elem::P(fp::add(*x, *y, p)),
            (Elem::E(x), Elem::E(y)) => {
                Elem::E(x.iter().zip(y).map(|(&s, &t)| fp::add(s, t, p)).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let p = self.0.p;
        match a {
            Elem::Q(x) => Elem::Q(-x),
            Elem::P(x) => Elem::P(fp::neg(*x, p)),
            Elem::E(x) => Elem::E(x.iter().map(|&c| fp::neg(c, p)).collect()),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Elem::P(x), Elem::P(y)) => Elem::P(fp::mul(*x, *y, p)),
            (Elem::E(x), Elem::E(y)) => {
                let prod = fp::poly_mulmod(x, y, &self.0.modulus, p);
                Elem::E(self.pad(prod))
            }
            _ => panic!("mixed field elements"),
        }
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.0.n, 0);
        v
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.0.p;
        Some(match a {
            Elem::Q(x) => Elem::Q(x.recip()),
            Elem::P(x) => Elem::P(fp::inv(*x, p)?),
            Elem::E(x) => {
                let mut v = x.clone();
                fp::trim(&mut v);
                Elem::E(self.pad(fp::poly_invmod(&v, &self.0.modulus, p)?))
            }
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// `a^k` for a signed exponent; `None` for a negative power of zero.
    pub fn powi(&self, a: &Elem, k: i64) -> Option<Elem> {
        if k >= 0 {
            Some(self.pow(a, k as u128))
        } else {
            Some(self.pow(&self.inv(a)?, k.unsigned_abs() as u128))
        }
    }

    /// The unique `b` with `b^p = a` in a finite field (Frobenius is bijective).
    pub fn frobenius_root(&self, a: &Elem) -> Elem {
        let q = self.order().expect("finite field of manageable size");
        self.pow(a, q / self.0.p as u128)
    }

    /// Image of an element of the prime subfield (Q or F_p) in this field.
    pub fn from_prime_subfield(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(r) => {
                assert!(self.is_rational(), "rational element into finite field");
                Elem::Q(r.clone())
            }
            Elem::P(c) => self.of_u64(*c),
            Elem::E(_) => panic!("not a prime-subfield element"),
        }
    }

    pub fn rational_value<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Q(r) => Some(r),
            _ => None,
        }
    }

    /// Canonical text form: reduced fraction, residue, or `(c0+c1*u+...)`.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::P(c) => format!("{c}"),
            Elem::E(v) => {
                let mut parts = Vec::new();
                for (i, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let s = match (i, c) {
                        (0, c) => format!("{c}"),
                        (1, 1) => "u".into(),
                        (1, c) => format!("{c}*u"),
                        (i, 1) => format!("u^{i}"),
                        (i, c) => format!("{c}*u^{i}"),
                    };
                    parts.push(s);
                }
                if parts.is_empty() {
                    "0".into()
                } else if parts.len() == 1 && v[0] != 0 {
                    parts.remove(0)
                } else {
                    format!("({})", parts.join("+"))
                }
            }
        }
    }

    /// Whether `a` is a "negative" coefficient for printing (rationals only).
    pub(crate) fn is_negative(&self, a: &Elem) -> bool {
        matches!(a, Elem::Q(r) if r.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.0.p, self.0.n) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "F_{p}"),
            (p, n) => write!(f, "F_{p}^{n}"),
        }
    }
}

/// A field homomorphism `source -> target` between fields of the same
/// characteristic, determined by the image of the source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Field,
    target: Field,
    gen_image: Elem,
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        Embedding { source: field.clone(), target: field.clone(), gen_image: field.generator() }
    }

    /// Embedding determined by sending the source generator to `gen_image`,
    /// which must be a root of the source modulus in `target`.
    pub fn new(source: Field, target: Field, gen_image: Elem) -> Embedding {
        Embedding { source, target, gen_image }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        if self.source == self.target {
            return a.clone();
        }
        match a {
            Elem::Q(_) | Elem::P(_) => self.target.from_prime_subfield(a),
            Elem::E(v) => {
                let t = &self.target;
                let mut acc = t.zero();
                for &c in v.iter().rev() {
                    acc = t.mul(&acc, &self.gen_image);
                    acc = t.add(&acc, &t.from_prime_subfield(&Elem::P(c)));
                }
                acc
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        assert_eq!(self.target, other.source, "embeddings do not compose");
        let gen_image = other.apply(&self.gen_image);
        Embedding { source: self.source.clone(), target: other.target.clone(), gen_image }
    }
}
