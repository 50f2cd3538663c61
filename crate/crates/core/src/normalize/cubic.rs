//! Projective type of the tangent cone of a triple point.

use alloc::vec;
use alloc::vec::Vec;

use super::automorphism::{inverse3, Step};
use super::session::Session;
use super::{Basis, Terminal};
use crate::algebra::{Elem, Field, TriPoly, UPoly, Weight};
use crate::error::Result;
use crate::groebner::{groebner_basis, MPoly, MonomialOrder, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CubicType {
    Smooth,
    Nodal,
    ConicTransverseLine,
    Triangle,
    Cuspidal,
    ConicTangentLine,
    ConcurrentLines,
    NonReduced,
}

impl CubicType {
    pub fn name(&self) -> &'static str {
        match self {
            CubicType::Smooth => "smooth",
            CubicType::Nodal => "nodal",
            CubicType::ConicTransverseLine => "conic+transverse line",
            CubicType::Triangle => "triangle",
            CubicType::Cuspidal => "cuspidal",
            CubicType::ConicTangentLine => "conic+tangent line",
            CubicType::ConcurrentLines => "concurrent lines",
            CubicType::NonReduced => "non-reduced",
        }
    }

    pub fn from_name(s: &str) -> Option<CubicType> {
        use CubicType::*;
        [Smooth, Nodal, ConicTransverseLine, Triangle, Cuspidal, ConicTangentLine, ConcurrentLines, NonReduced]
            .into_iter()
            .find(|t| t.name() == s)
    }

    pub fn is_lc(&self) -> bool {
        matches!(self, CubicType::Smooth | CubicType::Nodal | CubicType::ConicTransverseLine | CubicType::Triangle)
    }
}

fn cone(s: &Session) -> TriPoly {
    s.f.in_w(&Weight::STANDARD)
}

/// Substitution sending the linear forms in the rows of `m` to x, y, z.
fn map_forms(s: &mut Session, m: [[Elem; 3]; 3]) -> Result<()> {
    let inv = inverse3(&s.field, &m).expect("independent linear forms");
    s.linear(inv)
}

/// `l` together with two coordinate forms, as an invertible matrix with `l`
/// in row `row`.
fn complete_form(k: &Field, l: &[Elem; 3], row: usize) -> [[Elem; 3]; 3] {
    let pivot = (0..3).find(|&i| !k.is_zero(&l[i])).expect("nonzero form");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut m: [[Elem; 3]; 3] = core::array::from_fn(|_| [k.zero(), k.zero(), k.zero()]);
    let free: Vec<usize> = (0..3).filter(|&r| r != row).collect();
    m[row] = l.clone();
    for (r, &i) in free.iter().zip(others.iter()) {
        m[*r][i] = k.one();
    }
    m
}

/// Substitution matrix whose last column is `p`, so `[0:0:1]` goes to `p`.
fn point_matrix(k: &Field, p: &[Elem; 3]) -> [[Elem; 3]; 3] {
    let pivot = (0..3).find(|&i| !k.is_zero(&p[i])).expect("projective point");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut m: [[Elem; 3]; 3] = core::array::from_fn(|_| [k.zero(), k.zero(), k.zero()]);
    for i in 0..3 {
        m[i][2] = p[i].clone();
    }
    m[others[0]][0] = k.one();
    m[others[1]][1] = k.one();
    m
}

fn to_chart(k: &Field, g: &TriPoly) -> MPoly<Elem> {
    let raw = g.terms().iter().map(|(m, c)| (vec![m.0[0] as u16, m.0[1] as u16], c.clone())).collect();
    MPoly::from_terms(k, MonomialOrder::Lex, raw)
}

fn univariate(k: &Field, terms: impl Iterator<Item = (usize, Elem)>) -> UPoly {
    let mut cs: Vec<Elem> = Vec::new();
    for (e, c) in terms {
        if cs.len() <= e {
            cs.resize(e + 1, k.zero());
        }
        cs[e] = k.add(&cs[e], &c);
    }
    UPoly::new(k, cs)
}

fn jacobian(g: &TriPoly) -> [TriPoly; 4] {
    [g.clone(), g.derivative(0), g.derivative(1), g.derivative(2)]
}

/// Singular points of `{g = 0}` over the current field, which is enlarged
/// until it contains all of them.
fn singular_points(s: &mut Session) -> Result<Vec<[Elem; 3]>> {
    'restart: loop {
        let degree = s.field.degree();
        let k = s.field.clone();
        let g = cone(s);
        let eqs = jacobian(&g);
        let mut pts: Vec<[Elem; 3]> = Vec::new();
        // chart z = 1
        let chart: Vec<MPoly<Elem>> = eqs
            .iter()
            .map(|e| {
                let mut d = TriPoly::zero(&k);
                for (m, c) in e.terms() {
                    d.add_term(crate::algebra::Monomial([m.0[0], m.0[1], 0]), c.clone());
                }
                to_chart(&k, &d)
            })
            .filter(|p| !p.is_zero())
            .collect();
        let gb = groebner_basis(&k, MonomialOrder::Lex, &chart, DEFAULT_BUDGET)?;
        let is_unit = gb.iter().any(|p| p.terms.len() == 1 && p.lead().iter().all(|&e| e == 0));
        if !is_unit {
            let h = gb
                .iter()
                .find(|p| p.terms.iter().all(|(m, _)| m[0] == 0))
                .expect("finitely many singular points");
            let hy = univariate(&k, h.terms.iter().map(|(m, c)| (m[1] as usize, c.clone())));
            let ys = s.roots_all(&hy)?;
            if s.field.degree() != degree {
                continue 'restart;
            }
            for (y0, _) in ys {
                let mut common = UPoly::zero();
                for p in &gb {
                    let px = univariate(&k, p.terms.iter().map(|(m, c)| (m[0] as usize, k.mul(c, &k.pow(&y0, m[1] as u128)))));
                    common = common.gcd(&k, &px);
                }
                if common.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let xs = s.roots_all(&common)?;
                if s.field.degree() != degree {
                    continue 'restart;
                }
                for (x0, _) in xs {
                    pts.push([x0, y0.clone(), k.one()]);
                }
            }
        }
        // points [x:1:0]
        let mut common = UPoly::zero();
        for e in &eqs {
            let ux = univariate(&k, e.terms().iter().filter(|(m, _)| m.0[2] == 0).map(|(m, c)| (m.0[0] as usize, c.clone())));
            common = common.gcd(&k, &ux);
        }
        if common.is_zero() {
            unreachable!("a squarefree cubic does not vanish doubly on a line");
        }
        if common.degree().unwrap_or(0) > 0 {
            let xs = s.roots_all(&common)?;
            if s.field.degree() != degree {
                continue 'restart;
            }
            for (x0, _) in xs {
                pts.push([x0, k.one(), k.zero()]);
            }
        }
        let e0 = [k.one(), k.zero(), k.zero()];
        if eqs.iter().all(|e| k.is_zero(&e.eval(&e0))) {
            pts.push(e0);
        }
        return Ok(pts);
    }
}

/// Quadratic part `a x^2 + b xy + c y^2` of `g` at `[0:0:1]`.
fn tangent_quadric(g: &TriPoly) -> [Elem; 3] {
    [g.coeff_of([2, 0, 1]), g.coeff_of([1, 1, 1]), g.coeff_of([0, 2, 1])]
}

fn is_square(k: &Field, q: &[Elem; 3]) -> bool {
    if k.characteristic() == 2 {
        k.is_zero(&q[1])
    } else {
        let four_ac = k.mul(&k.from_i64(4), &k.mul(&q[0], &q[2]));
        k.mul(&q[1], &q[1]) == four_ac
    }
}

/// A linear form whose square is proportional to the degenerate quadric `q`.
fn tangent_line(k: &Field, q: &[Elem; 3]) -> [Elem; 3] {
    if k.characteristic() == 2 {
        [k.frobenius_root(&q[0]), k.frobenius_root(&q[2]), k.zero()]
    } else if !k.is_zero(&q[0]) {
        [q[0].clone(), k.div(&q[1], &k.from_i64(2)).unwrap(), k.zero()]
    } else {
        [k.zero(), k.one(), k.zero()]
    }
}

pub(crate) fn classify(s: &mut Session) -> Result<(CubicType, Terminal)> {
    let g = cone(s);
    let k = s.field.clone();
    if !g.is_squarefree() {
        let mut common = g.clone();
        for i in 0..3 {
            common = common.gcd(&g.derivative(i));
        }
        let l = common.linear_radical().expect("repeated factor of a cubic is linear");
        let form: [Elem; 3] = core::array::from_fn(|i| l.coeff_of(crate::algebra::Monomial::var(i).0));
        map_forms(s, complete_form(&k, &form, 0))?;
        s.label("cubic non-reduced");
        let t = Terminal { mld: None, weight: Weight([2, 1, 1]), basis: Basis::ToricWitness };
        return Ok((CubicType::NonReduced, t));
    }
    let pts = singular_points(s)?;
    let lc = |ty: CubicType, s: &mut Session| -> Result<(CubicType, Terminal)> {
        s.label(&alloc::format!("cubic {}", ty.name()));
        let basis = if ty == CubicType::Smooth { Basis::SimpleElliptic } else { Basis::FedderOrTable };
        Ok((ty, Terminal { mld: Some(0), weight: Weight::STANDARD, basis }))
    };
    if pts.is_empty() {
        return lc(CubicType::Smooth, s);
    }
    // rank each point: 3 triple point, 2 double point with a double tangent, 1 node
    let k = s.field.clone();
    let g = cone(s);
    let score = |p: &[Elem; 3]| -> u8 {
        let moved = Step::Linear(point_matrix(&k, p)).apply(&g, None).expect("linear substitution");
        let q = tangent_quadric(&moved);
        if q.iter().all(|c| k.is_zero(c)) {
            3
        } else if is_square(&k, &q) {
            2
        } else {
            1
        }
    };
    let scores: Vec<u8> = pts.iter().map(score).collect();
    let best = (0..pts.len()).max_by(|&a, &b| scores[a].cmp(&scores[b]).then(b.cmp(&a))).unwrap();
    s.linear(point_matrix(&k, &pts[best]))?;
    let neg = |ty: CubicType, w: [u64; 3], s: &mut Session| -> Result<(CubicType, Terminal)> {
        s.label(&alloc::format!("cubic {}", ty.name()));
        Ok((ty, Terminal { mld: None, weight: Weight(w), basis: Basis::ToricWitness }))
    };
    match scores[best] {
        3 => neg(CubicType::ConcurrentLines, [2, 2, 1], s),
        2 => {
            let q = tangent_quadric(&cone(s));
            let l = tangent_line(&k, &q);
            map_forms(s, complete_form(&k, &l, 1))?;
            if !k.is_zero(&cone(s).coeff_of([3, 0, 0])) {
                neg(CubicType::Cuspidal, [4, 6, 1], s)
            } else {
                s.swap(0, 1)?;
                neg(CubicType::ConicTangentLine, [3, 2, 1], s)
            }
        }
        _ => match pts.len() {
            1 => lc(CubicType::Nodal, s),
            2 => lc(CubicType::ConicTransverseLine, s),
            _ => lc(CubicType::Triangle, s),
        },
    }
}
