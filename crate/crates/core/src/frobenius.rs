//! Fedder's criterion: `f` defines an F-pure hypersurface at the origin iff
//! `f^(p-1)` is not in `(x^p, y^p, z^p)`. F-purity implies log canonicity,
//! never the converse.

use crate::algebra::{Monomial, TriPoly};
use crate::error::{Error, Result};

/// Largest characteristic for which `f^(p-1)` is expanded.
pub const FEDDER_MAX_P: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPurityCertificate {
    pub is_fpure: bool,
    pub p: u64,
    /// Lexicographically least monomial of `f^(p-1)` with all exponents
    /// below `p`; present iff `is_fpure`.
    pub witness_monomial: Option<Monomial>,
}

/// `f^e` modulo the monomial ideal `(x^p, y^p, z^p)`, computed by repeated
/// multiplication; dropping a monomial with an exponent `>= p` is exact
/// because exponents never decrease.
pub fn power_mod_frobenius_ideal(f: &TriPoly, e: u64, p: u64) -> TriPoly {
    let small = |m: &Monomial| m.0.iter().all(|&a| (a as u64) < p);
    let mut base = TriPoly::zero(f.field());
    for (m, c) in f.terms() {
        if small(m) {
            base.add_term(*m, c.clone());
        }
    }
    let field = f.field();
    let mut acc = TriPoly::one(field);
    for _ in 0..e {
        let mut next = TriPoly::zero(field);
        for (ma, a) in acc.terms() {
            for (mb, b) in base.terms() {
                let m = ma.mul(mb);
                if small(&m) {
                    next.add_term(m, field.mul(a, b));
                }
            }
        }
        acc = next;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn fedder_is_fpure(f: &TriPoly) -> Result<FPurityCertificate> {
    let p = f.field().characteristic();
    if p == 0 {
        return Err(Error::CharZero);
    }
    if !f.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    if p > FEDDER_MAX_P {
        return Err(Error::ComputationBudget { what: alloc::format!("Fedder expansion in characteristic {p}") });
    }
    let g = power_mod_frobenius_ideal(f, p - 1, p);
    let witness_monomial = g.terms().keys().next().copied();
    Ok(FPurityCertificate { is_fpure: witness_monomial.is_some(), p, witness_monomial })
}

/// F-pure implies log canonical; `false` only means "no certificate".
pub fn lc_from_fpure(cert: &FPurityCertificate) -> bool {
    cert.is_fpure
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn examples() {
        let f = TriPoly::from_terms(&fp(2), &[(1, [2, 0, 0]), (1, [0, 3, 0]), (1, [1, 1, 1])]);
        let c = fedder_is_fpure(&f).unwrap();
        assert_eq!(c.witness_monomial, Some(Monomial([1, 1, 1])));
        let f = TriPoly::from_terms(&fp(3), &[(1, [2, 0, 0]), (1, [0, 2, 2])]);
        let c = fedder_is_fpure(&f).unwrap();
        assert_eq!(c.witness_monomial, Some(Monomial([2, 2, 2])));
        let f = TriPoly::from_terms(&fp(2), &[(1, [2, 0, 0]), (1, [0, 3, 0])]);
        assert!(!fedder_is_fpure(&f).unwrap().is_fpure);
        assert!(!lc_from_fpure(&fedder_is_fpure(&f).unwrap()));
    }

    #[test]
    fn errors() {
        let q = Field::rationals();
        assert_eq!(fedder_is_fpure(&TriPoly::var(&q, 0)), Err(Error::CharZero));
        let unit = TriPoly::from_terms(&fp(3), &[(1, [0, 0, 0]), (1, [1, 0, 0])]);
        assert_eq!(fedder_is_fpure(&unit), Err(Error::NotInMaximalIdeal));
    }
}
