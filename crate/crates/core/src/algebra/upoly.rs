//! Univariate polynomials over a [`Field`], root finding and the on-demand
//! construction of splitting fields.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Elem, Embedding, Field};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> UPoly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> UPoly {
        UPoly::new(field, vec![c])
    }

    /// `t - r`
    pub fn linear(field: &Field, r: &Elem) -> UPoly {
        UPoly::new(field, vec![field.neg(r), field.one()])
    }

    pub fn from_i64s(field: &Field, cs: &[i64]) -> UPoly {
        UPoly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, field: &Field, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, field: &Field, x: &Elem) -> Elem {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i))).collect();
        UPoly::new(field, v)
    }

    pub fn sub(&self, field: &Field, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i))).collect();
        UPoly::new(field, v)
    }

    pub fn mul(&self, field: &Field, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = field.add(&v[i + j], &field.mul(a, b));
            }
        }
        UPoly::new(field, v)
    }

    pub fn scale(&self, field: &Field, c: &Elem) -> UPoly {
        UPoly::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, field: &Field, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = field.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = field.mul(&r[k], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            let shift = k - dd;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[shift + j] = field.sub(&r[shift + j], &field.mul(&c, b));
            }
            q[shift] = c;
        }
        r.truncate(dd);
        (UPoly::new(field, q), UPoly::new(field, r))
    }

    pub fn rem(&self, field: &Field, d: &UPoly) -> UPoly {
        self.divrem(field, d).1
    }

    pub fn monic(&self, field: &Field) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(field, &field.inv(l).unwrap()),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, field: &Field, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &Field) -> UPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
            .collect();
        UPoly::new(field, v)
    }

    fn mulmod(&self, field: &Field, other: &UPoly, m: &UPoly) -> UPoly {
        self.mul(field, other).rem(field, m)
    }

    fn powmod(&self, field: &Field, e: &BigUint, m: &UPoly) -> UPoly {
        let mut acc = UPoly::constant(field, field.one()).rem(field, m);
        let base = self.rem(field, m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(field, &acc, m);
            if e.bit(i) {
                acc = acc.mulmod(field, &base, m);
            }
        }
        acc
    }

    /// `self^(p^k) mod m`, computed by `k` successive p-th powers so that
    /// large field orders never need to be materialised.
    fn frobenius_power(&self, field: &Field, k: usize, m: &UPoly) -> UPoly {
        let p = BigUint::from(field.characteristic());
        let mut acc = self.rem(field, m);
        for _ in 0..k {
            acc = acc.powmod(field, &p, m);
        }
        acc
    }

    pub fn embed(&self, e: &Embedding) -> UPoly {
        UPoly::new(e.target(), self.coeffs.iter().map(|c| e.apply(c)).collect())
    }

    /// Text form in the variable `t`, highest degree first.
    pub fn format(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let neg = field.is_negative(c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if var.is_empty() {
                out.push_str(&field.format(&mag));
            } else if field.is_one(&mag) {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{}*{var}", field.format(&mag)));
            }
        }
        out
    }
}

/// Roots of a univariate polynomial, possibly over an enlarged field.
#[derive(Clone, Debug)]
pub struct RootSet {
    /// The field the roots live in.
    pub field: Field,
    /// Embedding from the field of the input polynomial into `field`.
    pub embedding: Embedding,
    /// Distinct roots with multiplicity, in canonical element order.
    pub roots: Vec<(Elem, usize)>,
    /// Whether the multiplicities sum to the degree.
    pub complete: bool,
}

impl RootSet {
    pub fn first(&self) -> Option<&Elem> {
        self.roots.first().map(|(r, _)| r)
    }

    pub fn extended(&self) -> bool {
        self.embedding.source() != self.embedding.target()
    }
}

fn needs_extension(g: &UPoly, field: &Field) -> Error {
    Error::NeedsAlgebraicExtension { poly: g.format(field), branch: String::new() }
}

/// Degree over F_p of the smallest extension of `field` containing all roots
/// of `g`: `n * lcm(degrees of the irreducible factors)`.
pub fn splitting_degree(g: &UPoly, field: &Field) -> usize {
    assert!(field.is_finite(), "splitting degrees are only defined over finite fields");
    let n = field.degree();
    let mut h = g.monic(field);
    let t = UPoly::new(field, vec![field.zero(), field.one()]);
    let mut l = 1usize;
    let mut d = 0usize;
    while h.degree().unwrap_or(0) > 0 {
        d += 1;
        let frob = t.frobenius_power(field, n * d, &h).sub(field, &t);
        let common = h.gcd(field, &frob);
        if common.degree().unwrap_or(0) > 0 {
            l = l.lcm(&d);
            // strip every factor of degree d, including repeated ones
            loop {
                let c = h.gcd(field, &common);
                if c.degree().unwrap_or(0) == 0 {
                    break;
                }
                h = h.divrem(field, &c).0;
            }
        }
    }
    n * l
}

/// Smallest field F_{p^N} (canonical presentation) containing `field`, with
/// `N` a multiple of its degree, together with the embedding.
pub fn extend_to(field: &Field, big_n: usize) -> Result<(Field, Embedding)> {
    let n = field.degree();
    assert!(big_n.is_multiple_of(n), "target degree must be a multiple of the current degree");
    if big_n == n {
        return Ok((field.clone(), Embedding::identity(field)));
    }
    let target = Field::canonical(field.characteristic(), big_n)?;
    let gen_image = if n == 1 {
        target.zero()
    } else {
        let m = UPoly::new(
            &target,
            field.modulus().iter().map(|&c| target.from_prime_subfield(&Elem::P(c))).collect(),
        );
        distinct_roots_here(&m, &target)
            .into_iter()
            .next()
            .expect("the old modulus splits in a field of multiple degree")
    };
    Ok((target.clone(), Embedding::new(field.clone(), target, gen_image)))
}

/// Distinct roots of `g` lying in `field` itself, sorted canonically.
fn distinct_roots_here(g: &UPoly, field: &Field) -> Vec<Elem> {
    match g.degree() {
        Some(d) if d > 0 => {}
        _ => return Vec::new(),
    };
    let small = field.order().is_some_and(|q| q <= 1 << 16);
    let mut roots = if small {
        let q = field.order().unwrap();
        (0..q).map(|i| field.elem_by_index(i)).filter(|x| field.is_zero(&g.eval(field, x))).collect()
    } else {
        let t = UPoly::new(field, vec![field.zero(), field.one()]);
        let g = g.monic(field);
        let frob = t.frobenius_power(field, field.degree(), &g).sub(field, &t);
        let split = g.gcd(field, &frob);
        let mut out = Vec::new();
        equal_degree_split(&split, field, &mut out);
        out
    };
    roots.sort();
    roots
}

/// Splits a monic product of distinct linear factors into its roots.
fn equal_degree_split(r: &UPoly, field: &Field, out: &mut Vec<Elem>) {
    match r.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(field.neg(&r.coeffs()[0]));
            return;
        }
        _ => {}
    }
    let t = UPoly::new(field, vec![field.zero(), field.one()]);
    let p = field.characteristic();
    let k = field.degree();
    let mut i: u128 = 0;
    loop {
        i += 1;
        let a = field.elem_by_index(i);
        let probe = if p == 2 {
            // absolute trace of a*t: sum of its 2^j powers for j < k
            let at = t.scale(field, &a).rem(field, r);
            let mut acc = UPoly::zero();
            let mut cur = at;
            for _ in 0..k {
                acc = acc.add(field, &cur);
                cur = cur.mulmod(field, &cur, r);
            }
            acc
        } else {
            let q = BigUint::from(p).pow(k as u32);
            let e = (q - 1u32) / 2u32;
            let shifted = UPoly::new(field, vec![a, field.one()]);
            shifted.powmod(field, &e, r).sub(field, &UPoly::constant(field, field.one()))
        };
        let d = r.gcd(field, &probe);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < r.degree().unwrap() {
            let other = r.divrem(field, &d).0.monic(field);
            equal_degree_split(&d, field, out);
            equal_degree_split(&other, field, out);
            return;
        }
    }
}

fn multiplicities(g: &UPoly, field: &Field, distinct: Vec<Elem>) -> Vec<(Elem, usize)> {
    distinct
        .into_iter()
        .map(|r| {
            let lin = UPoly::linear(field, &r);
            let mut h = g.clone();
            let mut m = 0;
            loop {
                let (q, rem) = h.divrem(field, &lin);
                if !rem.is_zero() {
                    break;
                }
                h = q;
                m += 1;
            }
            (r, m)
        })
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn rational_roots(g: &UPoly, field: &Field) -> Vec<Elem> {
    // clear denominators, then apply the rational root theorem
    let qs: Vec<&BigRational> = g.coeffs().iter().map(|c| field.rational_value(c).unwrap()).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|c| (*c * &l).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Vec::new();
    if low > 0 {
        out.push(field.zero());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let a0 = &ints[0];
        let an = ints.last().unwrap();
        for num in divisors(a0) {
            for den in divisors(an) {
                for s in [-1, 1] {
                    let r = BigRational::new(&num * s, den.clone());
                    let e = Elem::Q(r);
                    if field.is_zero(&g.eval(field, &e)) && !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Roots of `g` with multiplicities.
///
/// Over a finite field with `allow_extension`, the field is first enlarged to
/// the splitting field of `g`, so the result is complete. Over Q only the
/// rational roots are returned and `complete` says whether that is all of
/// them.
pub fn find_roots(g: &UPoly, field: &Field, allow_extension: bool) -> Result<RootSet> {
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidInput("root finding needs a polynomial of positive degree".into()));
    }
    let (target, embedding) = if field.is_finite() && allow_extension {
        extend_to(field, splitting_degree(g, field))?
    } else {
        (field.clone(), Embedding::identity(field))
    };
    let h = g.embed(&embedding);
    let distinct = if target.is_rational() {
        rational_roots(&h, &target)
    } else {
        distinct_roots_here(&h, &target)
    };
    let roots = multiplicities(&h, &target, distinct);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    let complete = total == h.degree().unwrap();
    Ok(RootSet { field: target, embedding, roots, complete })
}

/// Like [`find_roots`], but fails unless every root is available.
pub fn find_all_roots(g: &UPoly, field: &Field, allow_extension: bool) -> Result<RootSet> {
    let rs = find_roots(g, field, allow_extension)?;
    if !rs.complete {
        return Err(needs_extension(g, field));
    }
    Ok(rs)
}

/// Some `b` with `b^n = a`.
///
/// Roots already in `field` are preferred, so the field is only enlarged
/// when it has none. Among candidates the canonically first is returned,
/// except over Q where the positive root is preferred.
pub fn nth_root(a: &Elem, n: usize, field: &Field, allow_extension: bool) -> Result<(Elem, RootSet)> {
    if n == 0 || field.is_zero(a) {
        return Err(Error::InvalidInput("nth_root needs n >= 1 and a nonzero element".into()));
    }
    let mut cs = vec![field.zero(); n + 1];
    cs[0] = field.neg(a);
    cs[n] = field.one();
    let g = UPoly::new(field, cs);
    // a root already in the field beats enlarging it
    let mut rs = find_roots(&g, field, false)?;
    if rs.roots.is_empty() && allow_extension && field.is_finite() {
        rs = find_roots(&g, field, true)?;
    }
    let pick = if field.is_rational() {
        rs.roots.iter().map(|(r, _)| r).find(|r| !rs.field.is_negative(r)).or(rs.first())
    } else {
        rs.first()
    };
    match pick {
        Some(b) => Ok((b.clone(), rs.clone())),
        None => Err(needs_extension(&g, field)),
    }
}

impl RootSet {
    /// Small-integer view of a prime-field root, handy in tests.
    pub fn root_values(&self) -> Vec<i64> {
        self.roots
            .iter()
            .filter_map(|(r, _)| match r {
                Elem::P(c) => Some(*c as i64),
                Elem::Q(q) if q.is_integer() => q.to_integer().to_i64(),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_of_two_mod_seven() {
        let f7 = Field::prime(7).unwrap();
        let g = UPoly::from_i64s(&f7, &[-2, 0, 1]);
        let rs = find_roots(&g, &f7, true).unwrap();
        assert_eq!(rs.roots, vec![(Elem::P(3), 1), (Elem::P(4), 1)]);
        assert!(!rs.extended());
    }

    #[test]
    fn cube_plus_one_over_q() {
        let q = Field::rationals();
        let g = UPoly::from_i64s(&q, &[1, 0, 0, 1]);
        let rs = find_roots(&g, &q, true).unwrap();
        assert_eq!(rs.root_values(), vec![-1]);
        assert!(!rs.complete);
        assert!(find_all_roots(&g, &q, true).is_err());
    }

    #[test]
    fn f4_from_t2_t_1() {
        let f2 = Field::prime(2).unwrap();
        let g = UPoly::from_i64s(&f2, &[1, 1, 1]);
        let rs = find_roots(&g, &f2, true).unwrap();
        assert_eq!(rs.field.degree(), 2);
        let f4 = &rs.field;
        let u = f4.generator();
        let u1 = f4.add(&u, &f4.one());
        assert_eq!(rs.roots, vec![(u, 1), (u1, 1)]);
    }

    #[test]
    fn nth_root_examples() {
        let f7 = Field::prime(7).unwrap();
        let (b, _) = nth_root(&Elem::P(4), 2, &f7, true).unwrap();
        assert_eq!(b, Elem::P(2));
        let q = Field::rationals();
        assert!(matches!(
            nth_root(&q.from_i64(3), 2, &q, false),
            Err(Error::NeedsAlgebraicExtension { .. })
        ));
        let (b, _) = nth_root(&q.from_i64(4), 2, &q, false).unwrap();
        assert_eq!(b, q.from_i64(2));
        let f2 = Field::prime(2).unwrap();
        let (b, rs) = nth_root(&Elem::P(1), 5, &f2, true).unwrap();
        assert_eq!(rs.field.degree(), 1);
        assert!(rs.field.is_one(&b));
        let (b, rs) = nth_root(&Elem::P(2), 2, &Field::prime(5).unwrap(), true).unwrap();
        assert_eq!(rs.field.degree(), 2);
        assert_eq!(rs.field.mul(&b, &b), rs.field.from_i64(2));
    }

    #[test]
    fn multiplicities_and_splitting() {
        let f3 = Field::prime(3).unwrap();
        // (t-1)^2 (t^2+1)
        let g = UPoly::from_i64s(&f3, &[1, -2, 1])
            .mul(&f3, &UPoly::from_i64s(&f3, &[1, 0, 1]));
        assert_eq!(splitting_degree(&g, &f3), 2);
        let rs = find_all_roots(&g, &f3, true).unwrap();
        let total: usize = rs.roots.iter().map(|r| r.1).sum();
        assert_eq!(total, 4);
        let h = g.embed(&rs.embedding);
        for (r, _) in &rs.roots {
            assert!(rs.field.is_zero(&h.eval(&rs.field, r)));
        }
    }

    #[test]
    fn large_field_equal_degree_splitting() {
        let p = 1_000_003;
        let fp = Field::prime(p).unwrap();
        // (t-5)(t-17)(t+2)
        let g = UPoly::from_i64s(&fp, &[-5, 1])
            .mul(&fp, &UPoly::from_i64s(&fp, &[-17, 1]))
            .mul(&fp, &UPoly::from_i64s(&fp, &[2, 1]));
        let rs = find_roots(&g, &fp, false).unwrap();
        assert_eq!(rs.root_values(), vec![5, 17, p as i64 - 2]);
        let f2 = Field::canonical(2, 17).unwrap();
        let a = f2.elem_by_index(12345);
        let b = f2.elem_by_index(999);
        let g = UPoly::linear(&f2, &a).mul(&f2, &UPoly::linear(&f2, &b));
        let rs = find_roots(&g, &f2, false).unwrap();
        let mut want = vec![a, b];
        want.sort();
        assert_eq!(rs.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), want);
    }

    #[test]
    fn tower_embedding_is_a_homomorphism() {
        let f4 = Field::canonical(2, 2).unwrap();
        let (f16, e) = extend_to(&f4, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let a = f4.elem_by_index(i);
                let b = f4.elem_by_index(j);
                assert_eq!(e.apply(&f4.mul(&a, &b)), f16.mul(&e.apply(&a), &e.apply(&b)));
                assert_eq!(e.apply(&f4.add(&a, &b)), f16.add(&e.apply(&a), &e.apply(&b)));
            }
        }
    }
}
