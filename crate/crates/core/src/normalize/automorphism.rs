//! Coordinate changes of k[[x,y,z]] as replayable step lists.

use alloc::vec::Vec;

use crate::algebra::{Elem, Embedding, Field, Monomial, TriPoly};
use crate::error::Result;

/// One elementary substitution. Steps act on polynomials by substitution,
/// and a list of steps acts left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `x_i -> sum_j m[i][j] x_j`; the matrix is invertible.
    Linear([[Elem; 3]; 3]),
    /// `x_var -> x_var + added`, where `added` is free of `x_var` and has no
    /// constant term.
    Shift { var: usize, added: TriPoly },
    /// `x_var -> unit * x_var`.
    Scale { var: usize, unit: Elem },
    /// `f -> c * f`; not a coordinate change, recorded for bookkeeping.
    UnitRescale(Elem),
}

impl Step {
    fn images(&self, field: &Field) -> Option<[TriPoly; 3]> {
        let var = |i| TriPoly::var(field, i);
        match self {
            Step::Linear(m) => Some(core::array::from_fn(|i| {
                let mut p = TriPoly::zero(field);
                for j in 0..3 {
                    p.add_term(Monomial::var(j), m[i][j].clone());
                }
                p
            })),
            Step::Shift { var: v, added } => {
                let mut im = [var(0), var(1), var(2)];
                im[*v] = im[*v].add(added);
                Some(im)
            }
            Step::Scale { var: v, unit } => {
                let mut im = [var(0), var(1), var(2)];
                im[*v] = TriPoly::term(field, unit.clone(), Monomial::var(*v));
                Some(im)
            }
            Step::UnitRescale(_) => None,
        }
    }

    /// Applies the step, keeping terms of total degree `<= jet` if given.
    pub fn apply(&self, f: &TriPoly, jet: Option<u32>) -> Result<TriPoly> {
        let out = match self {
            Step::UnitRescale(c) => f.scale(c),
            _ => f.substitute_truncated(&self.images(f.field()).unwrap(), jet)?,
        };
        Ok(match jet {
            Some(d) => out.truncate_degree(d),
            None => out,
        })
    }

    pub fn embed(&self, e: &Embedding) -> Step {
        match self {
            Step::Linear(m) => Step::Linear(core::array::from_fn(|i| core::array::from_fn(|j| e.apply(&m[i][j])))),
            Step::Shift { var, added } => Step::Shift { var: *var, added: added.embed(e) },
            Step::Scale { var, unit } => Step::Scale { var: *var, unit: e.apply(unit) },
            Step::UnitRescale(c) => Step::UnitRescale(e.apply(c)),
        }
    }
}

pub fn det3(field: &Field, m: &[[Elem; 3]; 3]) -> Elem {
    let mut acc = field.zero();
    for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([2, 1, 0], -1)] {
        let t = field.mul(&field.mul(&m[0][p[0]], &m[1][p[1]]), &m[2][p[2]]);
        acc = if sign > 0 { field.add(&acc, &t) } else { field.sub(&acc, &t) };
    }
    acc
}

/// Inverse of an invertible 3x3 matrix via the adjugate.
pub fn inverse3(field: &Field, m: &[[Elem; 3]; 3]) -> Option<[[Elem; 3]; 3]> {
    let d_inv = field.inv(&det3(field, m))?;
    let minor = |r: usize, c: usize| {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        field.sub(
            &field.mul(&m[rs[0]][cs[0]], &m[rs[1]][cs[1]]),
            &field.mul(&m[rs[0]][cs[1]], &m[rs[1]][cs[0]]),
        )
    };
    Some(core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            // adjugate entry (i, j) is the (j, i) cofactor
            let c = minor(j, i);
            let c = if (i + j) % 2 == 1 { field.neg(&c) } else { c };
            field.mul(&c, &d_inv)
        })
    }))
}

pub fn mat_mul3(field: &Field, a: &[[Elem; 3]; 3], b: &[[Elem; 3]; 3]) -> [[Elem; 3]; 3] {
    core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            (0..3).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&a[i][k], &b[k][j])))
        })
    })
}

pub fn identity3(field: &Field) -> [[Elem; 3]; 3] {
    core::array::from_fn(|i| core::array::from_fn(|j| if i == j { field.one() } else { field.zero() }))
}

/// An ordered list of [`Step`]s.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Automorphism {
    pub steps: Vec<Step>,
}

impl Automorphism {
    pub fn identity() -> Automorphism {
        Automorphism { steps: Vec::new() }
    }

    pub fn push(&mut self, s: Step) {
        self.steps.push(s);
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step on `f`.
    pub fn apply(&self, f: &TriPoly, jet: Option<u32>) -> Result<TriPoly> {
        let mut g = match jet {
            Some(d) => f.truncate_degree(d),
            None => f.clone(),
        };
        for s in &self.steps {
            g = s.apply(&g, jet)?;
        }
        Ok(g)
    }

    pub fn embed(&self, e: &Embedding) -> Automorphism {
        Automorphism { steps: self.steps.iter().map(|s| s.embed(e)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_inverse_composes_to_identity() {
        let f7 = Field::prime(7).unwrap();
        let m: [[Elem; 3]; 3] = core::array::from_fn(|i| {
            core::array::from_fn(|j| f7.from_i64([[1, 2, 0], [0, 1, 3], [4, 0, 1]][i][j]))
        });
        let inv = inverse3(&f7, &m).unwrap();
        assert_eq!(mat_mul3(&f7, &m, &inv), identity3(&f7));
        let x = TriPoly::var(&f7, 0);
        let g = x.pow(2).add(&TriPoly::var(&f7, 1).mul(&TriPoly::var(&f7, 2)));
        let there = Step::Linear(m).apply(&g, None).unwrap();
        let back = Step::Linear(inv).apply(&there, None).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn shift_example() {
        // (x^2 + y^4) under x -> x + y^2 in characteristic 2 is x^2
        let f2 = Field::prime(2).unwrap();
        let f = TriPoly::from_terms(&f2, &[(1, [2, 0, 0]), (1, [0, 4, 0])]);
        let s = Step::Shift { var: 0, added: TriPoly::from_terms(&f2, &[(1, [0, 2, 0])]) };
        assert_eq!(s.apply(&f, None).unwrap(), TriPoly::from_terms(&f2, &[(1, [2, 0, 0])]));
    }
}
