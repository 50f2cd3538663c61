//! Degree-two part of a double point.

use super::automorphism::{identity3, inverse3};
use super::session::Session;
use crate::algebra::{Elem, Monomial, TriPoly, Weight};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum QuadricKind {
    /// The quadratic part is now exactly `x^2`.
    Square,
    /// Rank at least two; the double point is an A_n point of mld 1.
    Nondegenerate,
}

fn quad(s: &Session) -> TriPoly {
    s.f.weighted_part(&Weight::STANDARD, 2)
}

fn e2(i: usize, j: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i] += 1;
    e[j] += 1;
    e
}

pub(crate) fn normalize(s: &mut Session) -> Result<QuadricKind> {
    if s.char2() {
        char2(s)
    } else {
        odd(s)
    }
}

/// Diagonalize by completing squares, then scale to unit coefficients when
/// the square roots exist.
fn odd(s: &mut Session) -> Result<QuadricKind> {
    let mut rank = 0;
    for k in 0..3 {
        let q = quad(s);
        let has = |i: usize, j: usize| !s.field.is_zero(&q.coeff_of(e2(i, j)));
        let square = (k..3).find(|&i| has(i, i));
        let pivot = match square {
            Some(i) => i,
            None => match (k..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).find(|&(i, j)| has(i, j)) {
                None => break,
                Some((i, j)) => {
                    // x_i x_j -> x_i^2 - x_j^2
                    let kf = s.field.clone();
                    let mut m = identity3(&kf);
                    m[i][j] = kf.one();
                    m[j][i] = kf.one();
                    m[j][j] = kf.neg(&kf.one());
                    s.linear(m)?;
                    i
                }
            },
        };
        if pivot != k {
            s.swap(pivot, k)?;
        }
        let q = quad(s);
        let a = q.coeff_of(e2(k, k));
        let two_a = s.field.add(&a, &a);
        let mut added = TriPoly::zero(&s.field);
        for j in k + 1..3 {
            let c = q.coeff_of(e2(k, j));
            let t = s.field.neg(&s.field.div(&c, &two_a).unwrap());
            added.add_term(Monomial::var(j), t);
        }
        s.shift(k, added)?;
        rank += 1;
    }
    let q = quad(s);
    if rank == 1 {
        let a = q.coeff_of([2, 0, 0]);
        s.rescale(s.inv(&a))?;
        s.label("1-1 x^2");
        return Ok(QuadricKind::Square);
    }
    for k in 0..rank {
        let a = quad(s).coeff_of(e2(k, k));
        if let Some(r) = s.sqrt_if_available(&a)? {
            let u = s.inv(&r);
            s.scale(k, u)?;
        }
    }
    s.label(if rank == 2 { "1-1 x^2+y^2" } else { "1-1 x^2+y^2+z^2" });
    Ok(QuadricKind::Nondegenerate)
}

fn char2(s: &mut Session) -> Result<QuadricKind> {
    let q = quad(s);
    let k = s.field.clone();
    let cross = [(0, 1), (0, 2), (1, 2)].into_iter().find(|&(i, j)| !k.is_zero(&q.coeff_of(e2(i, j))));
    let Some((i, j)) = cross else {
        // q = l^2 with l = sum sqrt(c_ii) x_i; move a variable of l to x
        let first = (0..3).find(|&i| !k.is_zero(&q.coeff_of(e2(i, i)))).unwrap();
        if first != 0 {
            s.swap(first, 0)?;
        }
        let q = quad(s);
        let l: [Elem; 3] = core::array::from_fn(|i| k.frobenius_root(&q.coeff_of(e2(i, i))));
        let a_inv = k.inv(&l[0]).unwrap();
        let mut m = identity3(&k);
        m[0] = [a_inv.clone(), k.neg(&k.mul(&l[1], &a_inv)), k.neg(&k.mul(&l[2], &a_inv))];
        s.linear(m)?;
        s.label("1-2 x^2");
        return Ok(QuadricKind::Square);
    };
    // send x_i -> y, x_j -> z, the remaining variable -> x
    let other = 3 - i - j;
    let mut m = [[k.zero(), k.zero(), k.zero()], [k.zero(), k.zero(), k.zero()], [k.zero(), k.zero(), k.zero()]];
    m[i][1] = k.one();
    m[j][2] = k.one();
    m[other][0] = k.one();
    s.linear(m)?;
    let c = quad(s).coeff_of([0, 1, 1]);
    s.scale(2, s.inv(&c))?;
    let q = quad(s);
    let (d, e) = (q.coeff_of([1, 1, 0]), q.coeff_of([1, 0, 1]));
    s.shift(1, s.mono(&e, [1, 0, 0]))?;
    s.shift(2, s.mono(&d, [1, 0, 0]))?;
    // b y^2 + yz + c z^2 splits into two distinct linear forms
    let q = quad(s);
    let (b, c) = (q.coeff_of([0, 2, 0]), q.coeff_of([0, 0, 2]));
    let k = s.field.clone();
    let (l1, l2) = if k.is_zero(&b) {
        ([k.one(), c], [k.zero(), k.one()])
    } else {
        let g = s.upoly(&[c, k.one(), b]);
        let r1 = s.some_root(&g)?;
        let k = s.field.clone();
        let b = quad(s).coeff_of([0, 2, 0]);
        // other root: r1 + r2 = 1/b in characteristic 2
        let r2 = k.add(&r1, &k.inv(&b).unwrap());
        ([b.clone(), k.neg(&k.mul(&b, &r1))], [k.one(), k.neg(&r2)])
    };
    map_forms_yz(s, &l1, &l2)?;
    let a = quad(s).coeff_of([2, 0, 0]);
    if s.field.is_zero(&a) {
        s.label("1-2 yz");
    } else {
        let r = s.field.frobenius_root(&a);
        s.scale(0, s.inv(&r))?;
        s.label("1-2 x^2+yz");
    }
    Ok(QuadricKind::Nondegenerate)
}

/// Linear change of y, z taking the forms `l1 = a y + b z`, `l2 = c y + d z`
/// to `y` and `z`.
pub(crate) fn map_forms_yz(s: &mut Session, l1: &[Elem; 2], l2: &[Elem; 2]) -> Result<()> {
    let k = s.field.clone();
    let mut m = identity3(&k);
    m[1] = [k.zero(), l1[0].clone(), l1[1].clone()];
    m[2] = [k.zero(), l2[0].clone(), l2[1].clone()];
    let inv = inverse3(&k, &m).expect("independent linear forms");
    s.linear(inv)
}
