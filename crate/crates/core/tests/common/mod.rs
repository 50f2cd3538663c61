//! Fixtures and random generators shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use slc_core::algebra::parse_poly;
use slc_core::normalize::{det3, Step};
use slc_core::{Elem, Field, Monomial, TriPoly};

/// A terminal verdict of the classification tree.
pub struct Fixture {
    pub char: u64,
    pub poly: &'static str,
    /// `None` for minus infinity.
    pub mld: Option<u8>,
    pub weight: [u64; 3],
    pub certificate: &'static str,
    pub branch: &'static str,
}

const fn fx(
    char: u64,
    poly: &'static str,
    mld: Option<u8>,
    weight: [u64; 3],
    certificate: &'static str,
    branch: &'static str,
) -> Fixture {
    Fixture { char, poly, mld, weight, certificate, branch }
}

pub const FIXTURES: &[Fixture] = &[
    fx(0, "1+x", Some(3), [1, 1, 1], "monotonicity", "unit"),
    fx(7, "3+y*z+x^5", Some(3), [1, 1, 1], "monotonicity", "unit"),
    fx(0, "x+y^2", Some(2), [1, 1, 1], "monotonicity", "smooth"),
    fx(2, "y+x*z+z^3", Some(2), [1, 1, 1], "monotonicity", "smooth"),
    fx(0, "x^2+y^2", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(3, "x^2+y^2+z^2", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(7, "x^2+y^2+z^7", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(2, "x^2+x*y", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(2, "x^2+y*z", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(2, "x^2+x*y+x*z+y*z", Some(1), [1, 1, 1], "monotonicity", "step 1"),
    fx(0, "x^2+y^2*z", Some(1), [3, 2, 2], "monotonicity", "step 2-2"),
    fx(5, "x^2+y^2*z", Some(1), [3, 2, 2], "monotonicity", "step 2-2"),
    fx(7, "x^2+y*z*(y+2*z)", Some(1), [3, 2, 2], "monotonicity", "step 2-2"),
    fx(0, "x^2+y*z*(y-3*z)", Some(1), [3, 2, 2], "monotonicity", "step 2-2"),
    fx(0, "x^2+y^3+x*z^2", Some(1), [6, 4, 3], "rational_double_point", "step 3"),
    fx(7, "x^2+y^3+x*z^2", Some(1), [6, 4, 3], "rational_double_point", "step 3"),
    fx(0, "x^2+y^3+y*z^3", Some(1), [9, 6, 4], "rational_double_point", "step 4"),
    fx(11, "x^2+y^3+y*z^3", Some(1), [9, 6, 4], "rational_double_point", "step 4"),
    fx(0, "x^2+y^3+z^5", Some(1), [15, 10, 6], "rational_double_point", "step 5"),
    fx(7, "x^2+y^3+z^5", Some(1), [15, 10, 6], "rational_double_point", "step 5"),
    fx(2, "x^2+y^3+x*y*z", Some(0), [3, 2, 1], "fedder", "step 6-1-1"),
    fx(7, "x^2+y*(y-z^2)*(y-3*z^2)", Some(0), [3, 2, 1], "simple_elliptic", "step 6-2-1"),
    fx(0, "x^2+y*(y-z^2)*(y-2*z^2)", Some(0), [3, 2, 1], "simple_elliptic", "step 6-2-1"),
    fx(7, "x^2+y^2*(y-z^2)", Some(0), [3, 2, 1], "fedder", "step 6-2-3"),
    fx(5, "x^2+y*(y-z^2)^2", Some(0), [3, 2, 1], "fedder", "step 6-2-3"),
    fx(0, "x^2+y^2*(y-z^2)", Some(0), [3, 2, 1], "lr_table_char0", "step 6-2-2"),
    fx(0, "x^2+y*(y-z^2)^2", Some(0), [3, 2, 1], "lr_table_char0", "step 6-2-2"),
    fx(0, "x^2+y^3", None, [21, 14, 6], "toric_witness", "step 7"),
    fx(2, "x^2+y^3", None, [21, 14, 6], "toric_witness", "step 7"),
    fx(3, "x^2+y^3", None, [21, 14, 6], "toric_witness", "step 7"),
    fx(0, "x^2+y^4", None, [10, 5, 4], "toric_witness", "quartic y^4"),
    fx(0, "x^2+y^5+y^2*z^3", None, [10, 5, 4], "toric_witness", "quartic tail >= 5"),
    fx(2, "x^2+y^5", None, [10, 5, 4], "toric_witness", "quartic tail >= 5"),
    fx(0, "x^2+y^3*z", None, [15, 8, 6], "toric_witness", "quartic y^3z"),
    fx(2, "x^2+y^3*z", None, [15, 8, 6], "toric_witness", "quartic y^3z"),
    fx(0, "x^2+y*z*(y+z)*(y+2*z)", Some(0), [2, 1, 1], "simple_elliptic", "quartic elliptic"),
    fx(3, "x^2+y^4+y^3*z+2*y*z^3", Some(0), [2, 1, 1], "simple_elliptic", "quartic elliptic"),
    fx(2, "x^2+x*y^2+y^3*z+z^4", Some(0), [2, 1, 1], "simple_elliptic", "quartic elliptic"),
    fx(2, "x^2+x*y*z+y^4", Some(0), [2, 1, 1], "fedder", "quartic a1 != 0"),
    fx(0, "x^2+y^2*z^2", Some(0), [2, 1, 1], "lr_table_char0", "quartic y^2z^2"),
    fx(5, "x^2+y^2*z^2", Some(0), [2, 1, 1], "fedder", "quartic y^2z^2"),
    fx(0, "x^2+y^2*z*(y+z)", Some(0), [2, 1, 1], "lr_table_char0", "quartic y^2z(y+z)"),
    fx(7, "x*y*z", Some(0), [1, 1, 1], "fedder", "cubic triangle"),
    fx(5, "x^3+y^3+z^3", Some(0), [1, 1, 1], "simple_elliptic", "cubic smooth"),
    fx(5, "x*y*(x+y)", None, [2, 2, 1], "toric_witness", "cubic concurrent lines"),
    fx(0, "x^4+y^5", None, [1, 1, 1], "toric_witness", "ord 4"),
];

pub fn field(p: u64) -> Field {
    if p == 0 {
        Field::rationals()
    } else {
        Field::prime(p).unwrap()
    }
}

pub fn poly(p: u64, s: &str) -> TriPoly {
    parse_poly(s, &field(p)).unwrap()
}

pub fn random_elem<R: Rng>(rng: &mut R, k: &Field) -> Elem {
    match k.characteristic() {
        0 => k.from_i64(rng.gen_range(-4..=4)),
        p => k.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_invertible<R: Rng>(rng: &mut R, k: &Field) -> [[Elem; 3]; 3] {
    loop {
        let m: [[Elem; 3]; 3] = core::array::from_fn(|_| core::array::from_fn(|_| random_elem(rng, k)));
        if !k.is_zero(&det3(k, &m)) {
            return m;
        }
    }
}

pub fn random_linear_change<R: Rng>(rng: &mut R, f: &TriPoly) -> TriPoly {
    Step::Linear(random_invertible(rng, f.field())).apply(f, None).unwrap()
}

pub fn random_nonzero<R: Rng>(rng: &mut R, k: &Field) -> Elem {
    loop {
        let c = random_elem(rng, k);
        if !k.is_zero(&c) {
            return c;
        }
    }
}

/// Sparse polynomial with up to `terms` monomials of degree in `lo..=hi`.
pub fn random_poly<R: Rng>(rng: &mut R, k: &Field, terms: usize, lo: u32, hi: u32) -> TriPoly {
    let mut f = TriPoly::zero(k);
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let a = rng.gen_range(0..=d);
        let b = rng.gen_range(0..=d - a);
        f.add_term(Monomial([a, b, d - a - b]), random_elem(rng, k));
    }
    f
}
