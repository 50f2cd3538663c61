//! Double points with `in_{(1,1,1)} f = in_{(3,2,2)} f = x^2`, read through
//! the `(2,1,1)`-initial form `x^2 + x Q(y,z) + B(y,z)`.

use alloc::vec::Vec;

use super::doublepoint::binary_roots;
use super::quadric::map_forms_yz;
use super::session::Session;
use super::{Basis, Terminal};
use crate::algebra::{Elem, Weight};
use crate::error::Result;

pub(crate) const W211: Weight = Weight([2, 1, 1]);
pub(crate) const W1054: Weight = Weight([10, 5, 4]);
pub(crate) const W1586: Weight = Weight([15, 8, 6]);

fn q_coeffs(s: &Session) -> [Elem; 3] {
    // coefficients of x y^2, x y z, x z^2
    [s.c([1, 2, 0]), s.c([1, 1, 1]), s.c([1, 0, 2])]
}

/// Coefficients of `B` from `z^4` up to `y^4`.
fn b_coeffs(s: &Session) -> Vec<Elem> {
    (0..=4u32).map(|i| s.c([0, i, 4 - i])).collect()
}

/// Whether `h = f - x^2` has `(2,1,1)`-order at least 5.
fn h4_is_zero(s: &Session) -> bool {
    s.f.weighted_part(&W211, 4).terms().keys().all(|m| m.0 == [2, 0, 0])
}

fn term(mld: Option<i64>, weight: Weight, basis: Basis) -> Terminal {
    Terminal { mld, weight, basis }
}

fn ord5(s: &mut Session) -> Terminal {
    debug_assert_eq!(s.f.ord_w(&W1054), Some(20));
    s.label("q1 ord_(2,1,1) h >= 5");
    term(None, W1054, Basis::ToricWitness)
}

pub(crate) fn normalize(s: &mut Session) -> Result<Terminal> {
    debug_assert_eq!(s.f.ord_w(&W211), Some(4));
    if s.char2() {
        char2(s)
    } else {
        odd(s)
    }
}

fn char2(s: &mut Session) -> Result<Terminal> {
    let [a2, a1, a3] = q_coeffs(s);
    let k = s.field.clone();
    if !k.is_zero(&a3) {
        if k.is_zero(&a1) && k.is_zero(&a2) {
            s.swap(1, 2)?;
        } else {
            // z^2 coefficient of Q(y + t z, z) is a2 t^2 + a1 t + a3
            let g = s.upoly(&[a3, a1, a2]);
            let t = s.some_root(&g)?;
            s.shift(1, s.mono(&t, [0, 0, 1]))?;
        }
    }
    let a2 = s.c([1, 2, 0]);
    let a4 = s.c([0, 4, 0]);
    if !s.field.is_zero(&a4) {
        let g = s.upoly(&[a4, a2, s.field.one()]);
        let gamma = s.some_root(&g)?;
        s.shift(0, s.mono(&gamma, [0, 2, 0]))?;
    }
    if h4_is_zero(s) {
        return Ok(ord5(s));
    }
    let k = s.field.clone();
    let (a1, a2) = (s.c([1, 1, 1]), s.c([1, 2, 0]));
    if !k.is_zero(&a1) {
        s.label("q2 a1 != 0");
        return Ok(term(Some(0), W211, Basis::Fedder));
    }
    if !k.is_zero(&a2) {
        let a3 = s.c([0, 3, 1]);
        let b1 = k.div(&k.add(&k.one(), &a3), &a2).unwrap();
        let b2 = k.frobenius_root(&k.inv(&a2).unwrap());
        let b3 = k.inv(&k.pow(&b2, 3)).unwrap();
        s.shift(0, s.mono(&b1, [0, 1, 1]))?;
        s.scale(1, b2)?;
        s.scale(2, b3)?;
        s.label("q3 x^2+xy^2+y^3z+c1y^2z^2+c2yz^3+c3z^4");
        return Ok(term(Some(0), W211, Basis::SimpleElliptic));
    }
    let added = s.mono(&k.frobenius_root(&s.c([0, 2, 2])), [0, 1, 1]).add(&s.mono(&k.frobenius_root(&s.c([0, 0, 4])), [0, 0, 2]));
    s.shift(0, added)?;
    // B = a3 y^3 z + a5 y z^3 = y z l^2 with l = sqrt(a3) y + sqrt(a5) z
    let (a3, a5) = (s.c([0, 3, 1]), s.c([0, 1, 3]));
    if h4_is_zero(s) {
        return Ok(ord5(s));
    }
    let l = [k.frobenius_root(&a3), k.frobenius_root(&a5)];
    let other = if k.is_zero(&a3) { [k.one(), k.zero()] } else { [k.zero(), k.one()] };
    map_forms_yz(s, &l, &other)?;
    let c5 = s.c([0, 2, 2]);
    s.shift(0, s.mono(&k.frobenius_root(&c5), [0, 1, 1]))?;
    let e = s.c([0, 3, 1]);
    if k.is_zero(&e) {
        return Ok(ord5(s));
    }
    s.param("e", e);
    s.label("q4 x^2+ey^3z");
    debug_assert_eq!(s.f.ord_w(&W1586), Some(30));
    Ok(term(None, W1586, Basis::ToricWitness))
}

fn odd(s: &mut Session) -> Result<Terminal> {
    let k = s.field.clone();
    let half = k.inv(&k.from_i64(2)).unwrap();
    let [q2, q1, q0] = q_coeffs(s);
    let added = s
        .mono(&k.neg(&k.mul(&q2, &half)), [0, 2, 0])
        .add(&s.mono(&k.neg(&k.mul(&q1, &half)), [0, 1, 1]))
        .add(&s.mono(&k.neg(&k.mul(&q0, &half)), [0, 0, 2]));
    s.shift(0, added)?;
    let bs = b_coeffs(s);
    if h4_is_zero(s) {
        return Ok(ord5(s));
    }
    let roots = binary_roots(s, &bs)?;
    let k = s.field.clone();
    let form = |r: &Option<Elem>| match r {
        Some(r) => [k.one(), k.neg(r)],
        None => [k.zero(), k.one()],
    };
    let mults: Vec<usize> = roots.iter().map(|r| r.1).collect();
    let l1 = form(&roots[0].0);
    let l2 = if roots.len() > 1 {
        form(&roots[1].0)
    } else if k.is_zero(&l1[1]) {
        [k.zero(), k.one()]
    } else {
        [k.one(), k.zero()]
    };
    map_forms_yz(s, &l1, &l2)?;
    if roots.len() >= 3 {
        // l3 is now p y + q z with p, q nonzero; z -> (p/q) z makes it p(y + z)
        let l3 = third_form(s, &roots, &l1, &l2);
        let ratio = k.div(&l3[0], &l3[1]).unwrap();
        s.scale(2, ratio)?;
    }
    match mults.as_slice() {
        [4] => {
            s.label("q5 y^4");
            debug_assert_eq!(s.f.ord_w(&W1054), Some(20));
            Ok(term(None, W1054, Basis::ToricWitness))
        }
        [3, 1] => {
            let c = s.c([0, 3, 1]);
            s.scale(2, s.inv(&c))?;
            s.label("q4 y^3z");
            Ok(term(None, W1586, Basis::ToricWitness))
        }
        [2, 2] | [2, 1, 1] => {
            let (normal, form) = if mults.len() == 2 { ([0, 2, 2], "y^2z^2") } else { ([0, 3, 1], "y^2z(y+z)") };
            unit_fix(s, normal)?;
            if s.field.is_rational() {
                s.label(&alloc::format!("q3-1 {form}"));
                Ok(term(Some(0), W211, Basis::Table))
            } else {
                s.label(&alloc::format!("q3-2 {form}"));
                Ok(term(Some(0), W211, Basis::Fedder))
            }
        }
        _ => {
            unit_fix(s, [0, 3, 1])?;
            // now B = yz(y+z)(y+az): the y z^3 coefficient is a
            let a = s.field.div(&s.c([0, 1, 3]), &s.c([0, 3, 1])).unwrap();
            s.param("a", a);
            s.label("q2 yz(y+z)(y+az)");
            Ok(term(Some(0), W211, Basis::SimpleElliptic))
        }
    }
}

/// Image of the third root's linear form under the change already applied.
fn third_form(s: &Session, roots: &[(Option<Elem>, usize)], l1: &[Elem; 2], l2: &[Elem; 2]) -> [Elem; 2] {
    let k = &s.field;
    let l3 = match &roots[2].0 {
        Some(r) => [k.one(), k.neg(r)],
        None => [k.zero(), k.one()],
    };
    // l3 = p l1 + q l2 for the new coordinates y = l1, z = l2
    let det = k.sub(&k.mul(&l1[0], &l2[1]), &k.mul(&l1[1], &l2[0]));
    let p = k.div(&k.sub(&k.mul(&l3[0], &l2[1]), &k.mul(&l3[1], &l2[0])), &det).unwrap();
    let q = k.div(&k.sub(&k.mul(&l1[0], &l3[1]), &k.mul(&l1[1], &l3[0])), &det).unwrap();
    [p, q]
}

/// Divides by the coefficient `c` of the normal-form monomial and restores
/// `x^2` with `x -> sqrt(c) x`; over Q an irrational root leaves `c` in place.
fn unit_fix(s: &mut Session, mono: [u32; 3]) -> Result<()> {
    let c = s.c(mono);
    if let Some(r) = s.sqrt_if_available(&c)? {
        let c = s.c(mono);
        s.rescale(s.inv(&c))?;
        s.scale(0, r)?;
    }
    Ok(())
}
