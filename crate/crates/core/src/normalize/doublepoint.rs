//! The weighted initial-form cascade for double points whose quadratic part
//! is `x^2`.

use alloc::vec::Vec;

use super::quadric::map_forms_yz;
use super::session::Session;
use super::{Basis, Terminal};
use crate::algebra::{Elem, Weight};
use crate::error::Result;

pub(crate) const W2: Weight = Weight([3, 2, 2]);
pub(crate) const W3: Weight = Weight([6, 4, 3]);
pub(crate) const W4: Weight = Weight([9, 6, 4]);
pub(crate) const W5: Weight = Weight([15, 10, 6]);
pub(crate) const W6: Weight = Weight([3, 2, 1]);
pub(crate) const W7: Weight = Weight([21, 14, 6]);

/// A linear form `a y + b z`; `None` root means the root at infinity (`z`).
fn root_form(s: &Session, r: &Option<Elem>) -> [Elem; 2] {
    let k = &s.field;
    match r {
        Some(r) => [k.one(), k.neg(r)],
        None => [k.zero(), k.one()],
    }
}

/// Roots of the binary form `sum_i cs[i] y^i z^(d-i)` as points of P^1,
/// sorted by multiplicity (descending), then canonically, infinity last.
pub(crate) fn binary_roots(s: &mut Session, cs: &[Elem]) -> Result<Vec<(Option<Elem>, usize)>> {
    let d = cs.len() - 1;
    let g = s.upoly(cs);
    let deg = g.degree().expect("nonzero binary form");
    let mut out: Vec<(Option<Elem>, usize)> = if deg > 0 {
        s.roots_all(&g)?.into_iter().map(|(r, m)| (Some(r), m)).collect()
    } else {
        Vec::new()
    };
    if deg < d {
        out.push((None, d - deg));
    }
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.is_none().cmp(&b.0.is_none())).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// A form independent of `l`.
fn complement(s: &Session, l: &[Elem; 2]) -> [Elem; 2] {
    let k = &s.field;
    if k.is_zero(&l[1]) {
        [k.zero(), k.one()]
    } else {
        [k.one(), k.zero()]
    }
}

/// `x_i -> c^(w_i) x_i`, then divide by `c^total`; a root-free substitute
/// for scaling one variable by a root of `c`.
fn weighted_unit(s: &mut Session, w: [u32; 3], c: &Elem, total: u32) -> Result<()> {
    for (i, &wi) in w.iter().enumerate() {
        let u = s.field.pow(c, wi as u128);
        s.scale(i, u)?;
    }
    let inv = s.inv(&s.field.pow(c, total as u128));
    s.rescale(inv)
}

#[derive(Debug)]
pub(crate) enum Next {
    Continue,
    Quartic,
    Done(Terminal),
}

fn done(mld: Option<i64>, weight: Weight, basis: Basis) -> Next {
    Next::Done(Terminal { mld, weight, basis })
}

/// `in_{(3,2,2)} f = x^2 + C(y,z)`.
pub(crate) fn step2(s: &mut Session) -> Result<Next> {
    let cs: Vec<Elem> = (0..=3u32).map(|i| s.c([0, i, 3 - i])).collect();
    if cs.iter().all(|c| s.field.is_zero(c)) {
        s.label("2-1 x^2");
        return Ok(Next::Quartic);
    }
    let roots = binary_roots(s, &cs)?;
    let l1 = root_form(s, &roots[0].0);
    match roots.len() {
        1 => {
            let l2 = complement(s, &l1);
            map_forms_yz(s, &l1, &l2)?;
            let c = s.c([0, 3, 0]);
            let k = s.field.clone();
            s.scale(0, k.mul(&c, &c))?;
            s.scale(1, c.clone())?;
            s.rescale(k.inv(&k.pow(&c, 4)).unwrap())?;
            s.label("2-1 x^2+y^3");
            Ok(Next::Continue)
        }
        2 => {
            let l2 = root_form(s, &roots[1].0);
            map_forms_yz(s, &l1, &l2)?;
            let c = s.c([0, 2, 1]);
            s.scale(2, s.inv(&c))?;
            s.label("2-2 x^2+y^2z");
            Ok(done(Some(1), W2, Basis::Monotonicity))
        }
        _ => {
            let l2 = root_form(s, &roots[1].0);
            map_forms_yz(s, &l1, &l2)?;
            let a = s.c([0, 2, 1]);
            s.scale(2, s.inv(&a))?;
            let a = s.c([0, 1, 2]);
            s.param("a", a);
            s.label("2-2 x^2+yz(y+az)");
            Ok(done(Some(1), W2, Basis::Monotonicity))
        }
    }
}

/// `in_{(6,4,3)} f = x^2 + y^3 + a1 x z^2 + a2 z^4`.
pub(crate) fn step3(s: &mut Session) -> Result<Next> {
    debug_assert_eq!(s.f.ord_w(&W3), Some(12));
    let (a1, a2) = (s.c([1, 0, 2]), s.c([0, 0, 4]));
    if !s.field.is_zero(&a2) {
        let g = s.upoly(&[a2, a1, s.field.one()]);
        let b = s.some_root(&g)?;
        s.shift(0, s.mono(&b, [0, 0, 2]))?;
    }
    let c = s.c([1, 0, 2]);
    if s.field.is_zero(&c) {
        s.label("3 x^2+y^3");
        return Ok(Next::Continue);
    }
    weighted_unit(s, [3, 2, 1], &c, 6)?;
    s.label("3 x^2+y^3+xz^2");
    Ok(done(Some(1), W3, Basis::RationalDoublePoint))
}

/// `in_{(9,6,4)} f = x^2 + y^3 + a y z^3`.
pub(crate) fn step4(s: &mut Session) -> Result<Next> {
    debug_assert_eq!(s.f.ord_w(&W4), Some(18));
    let a = s.c([0, 1, 3]);
    if s.field.is_zero(&a) {
        s.label("4 x^2+y^3");
        return Ok(Next::Continue);
    }
    weighted_unit(s, [3, 2, 1], &a, 6)?;
    s.label("4 x^2+y^3+yz^3");
    Ok(done(Some(1), W4, Basis::RationalDoublePoint))
}

/// `in_{(15,10,6)} f = x^2 + y^3 + a z^5`.
pub(crate) fn step5(s: &mut Session) -> Result<Next> {
    debug_assert_eq!(s.f.ord_w(&W5), Some(30));
    let a = s.c([0, 0, 5]);
    if s.field.is_zero(&a) {
        s.label("5 x^2+y^3");
        return Ok(Next::Continue);
    }
    weighted_unit(s, [3, 2, 1], &a, 6)?;
    s.label("5 x^2+y^3+z^5");
    Ok(done(Some(1), W5, Basis::RationalDoublePoint))
}

/// `in_{(3,2,1)} f = x^2 + y^3 + a1 xyz + a2 xz^3 + a3 z^6 + a4 yz^4 + a5 y^2z^2`.
pub(crate) fn step6(s: &mut Session) -> Result<Next> {
    debug_assert_eq!(s.f.ord_w(&W6), Some(6));
    if s.char2() {
        step6_char2(s)
    } else {
        step6_odd(s)
    }
}

fn step6_char2(s: &mut Session) -> Result<Next> {
    let k = s.field.clone();
    if !k.is_zero(&s.c([1, 1, 1])) {
        s.label("6-1-1");
        return Ok(done(Some(0), W6, Basis::Fedder));
    }
    let b = k.frobenius_root(&s.c([0, 1, 4]));
    s.shift(1, s.mono(&b, [0, 0, 2]))?;
    let a2 = s.c([1, 0, 3]);
    let a3 = s.c([0, 0, 6]);
    if !k.is_zero(&a2) {
        let g = s.upoly(&[a3, a2, k.one()]);
        let c = s.some_root(&g)?;
        s.shift(0, s.mono(&c, [0, 0, 3]))?;
        let d = s.c([0, 2, 2]);
        let a2 = s.c([1, 0, 3]);
        s.param("a2", a2);
        s.param("d", d);
        s.label("6-1-2 x^2+y^3+a2xz^3+dy^2z^2");
        return Ok(done(Some(0), W6, Basis::SimpleElliptic));
    }
    let mut added = s.mono(&k.frobenius_root(&a3), [0, 0, 3]);
    added = added.add(&s.mono(&k.frobenius_root(&s.c([0, 2, 2])), [0, 1, 1]));
    s.shift(0, added)?;
    s.label("6-1-3 x^2+y^3");
    Ok(Next::Continue)
}

fn step6_odd(s: &mut Session) -> Result<Next> {
    let k = s.field.clone();
    let half = k.inv(&k.from_i64(2)).unwrap();
    let (a1, a2) = (s.c([1, 1, 1]), s.c([1, 0, 3]));
    let added = s.mono(&k.neg(&k.mul(&a1, &half)), [0, 1, 1]).add(&s.mono(&k.neg(&k.mul(&a2, &half)), [0, 0, 3]));
    s.shift(0, added)?;
    let (a3, a4, a5) = (s.c([0, 0, 6]), s.c([0, 1, 4]), s.c([0, 2, 2]));
    if !k.is_zero(&a3) {
        let g = s.upoly(&[a3, a4, a5, k.one()]);
        let c = s.some_root(&g)?;
        s.shift(1, s.mono(&c, [0, 0, 2]))?;
    }
    let k = s.field.clone();
    let (e, d) = (s.c([0, 2, 2]), s.c([0, 1, 4]));
    if k.is_zero(&e) && k.is_zero(&d) {
        s.label("6-2 x^2+y^3");
        return Ok(Next::Continue);
    }
    // y^2 + e y z^2 + d z^4 = (y - alpha z^2)(y - beta z^2)
    let g = s.upoly(&[d, e, k.one()]);
    let roots = s.roots_all(&g)?;
    let k = s.field.clone();
    let mut rs: Vec<Elem> = roots.iter().flat_map(|(r, m)| core::iter::repeat_n(r.clone(), *m)).collect();
    let pos = rs.iter().position(|r| !k.is_zero(r)).expect("a nonzero root");
    let alpha = rs.remove(pos);
    let beta = rs.remove(0);
    let delta = k.div(&beta, &alpha).unwrap();
    match s.sqrt_if_available(&k.inv(&alpha).unwrap())? {
        Some(gamma) => s.scale(2, gamma)?,
        None => {
            // over Q: y -> alpha y and divide by alpha^3 instead
            let k = s.field.clone();
            s.scale(1, alpha.clone())?;
            s.rescale(k.inv(&k.pow(&alpha, 3)).unwrap())?;
        }
    }
    s.param("delta", delta.clone());
    let k = s.field.clone();
    if !k.is_zero(&delta) && !k.is_one(&delta) {
        s.label("6-2-1 x^2+y(y-z^2)(y-delta z^2)");
        Ok(done(Some(0), W6, Basis::SimpleElliptic))
    } else if k.is_rational() {
        s.label("6-2-2");
        Ok(done(Some(0), W6, Basis::Table))
    } else {
        s.label("6-2-3");
        Ok(done(Some(0), W6, Basis::Fedder))
    }
}

pub(crate) fn step7(s: &mut Session) -> Result<Next> {
    debug_assert_eq!(s.f.ord_w(&W7), Some(42));
    s.label("7 x^2+y^3");
    Ok(done(None, W7, Basis::ToricWitness))
}

/// Runs Steps 2 through 7 from a polynomial with quadratic part `x^2`.
pub(crate) fn cascade(s: &mut Session) -> Result<Next> {
    type StepFn = fn(&mut Session) -> Result<Next>;
    let steps: [(&str, StepFn); 6] =
        [("step 2", step2), ("step 3", step3), ("step 4", step4), ("step 5", step5), ("step 6", step6), ("step 7", step7)];
    for (stage, st) in steps {
        s.stage = stage;
        match st(s)? {
            Next::Continue => continue,
            other => return Ok(other),
        }
    }
    unreachable!("step 7 always terminates")
}
