//! Coordinate normalization for the double-point and triple-point trees.
//!
//! Every operation records the substitutions it performs as an
//! [`Automorphism`], so the output can be replayed from the input. Roots
//! needed along the way enlarge a finite field silently; over Q an irrational
//! root aborts with `NeedsAlgebraicExtension`.

mod automorphism;
mod cubic;
mod doublepoint;
mod quadric;
mod quartic;
mod session;

use alloc::string::String;
use alloc::vec::Vec;

pub use automorphism::{det3, identity3, inverse3, mat_mul3, Automorphism, Step};
pub use cubic::CubicType;
pub(crate) use doublepoint::Next;
pub(crate) use quadric::QuadricKind;
pub(crate) use session::Session;

use crate::algebra::{Elem, Embedding, TriPoly, Weight};
use crate::error::{Error, Result};

/// Truncation degree for the double-point tree. Every weight the tree uses
/// gives monomials of degree 8 or more a weighted degree above its threshold.
pub const JET_DEGREE: u32 = 7;

/// How a terminal branch justifies its mld value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Upper bound `a(E_w)` plus monotonicity of mld under initial forms.
    Monotonicity,
    RationalDoublePoint,
    SimpleElliptic,
    /// F-purity of the initial form, checked at runtime.
    Fedder,
    /// The characteristic-zero table for non-normal slc surfaces.
    Table,
    /// Fedder first, the characteristic-zero table otherwise.
    FedderOrTable,
    /// The weight itself has negative log discrepancy.
    ToricWitness,
}

/// The end of a branch: the mld (`None` for minus infinity) and the weight
/// whose divisor computes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Terminal {
    pub mld: Option<i64>,
    pub weight: Weight,
    pub basis: Basis,
}

#[derive(Clone, Debug)]
pub struct NormalizationOutcome {
    pub poly: TriPoly,
    pub auto: Automorphism,
    pub branch_label: String,
    pub parameters: Vec<(String, Elem)>,
    /// From the input field into the field `poly` lives over.
    pub embedding: Embedding,
    /// Truncation degree used while replaying `auto`, if any.
    pub jet: Option<u32>,
}

impl NormalizationOutcome {
    fn from_session(s: Session) -> NormalizationOutcome {
        NormalizationOutcome {
            branch_label: s.trace.last().cloned().unwrap_or_default(),
            poly: s.f,
            auto: s.auto,
            parameters: s.params,
            embedding: s.embedding,
            jet: s.jet,
        }
    }

    /// Replays `auto` on `input` over the output field.
    pub fn replay(&self, input: &TriPoly) -> Result<TriPoly> {
        self.auto.apply(&input.embed(&self.embedding), self.jet)
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidInput(alloc::format!("precondition failed: {what}")))
    }
}

/// Normal form of a nonzero quadratic form.
pub fn normalize_quadric(q: &TriPoly) -> Result<NormalizationOutcome> {
    require(!q.is_zero() && q.is_weighted_homogeneous(&Weight::STANDARD) && q.ord() == Some(2), "nonzero quadratic form")?;
    let mut s = Session::new(q, None);
    quadric::normalize(&mut s)?;
    Ok(NormalizationOutcome::from_session(s))
}

fn double_point_session(f: &TriPoly) -> Result<Session> {
    require(f.in_w(&Weight::STANDARD) == TriPoly::from_terms(f.field(), &[(1, [2, 0, 0])]), "in_(1,1,1) f = x^2")?;
    Ok(Session::new(f, Some(JET_DEGREE)))
}

fn run_step(f: &TriPoly, step: fn(&mut Session) -> Result<Next>) -> Result<NormalizationOutcome> {
    let mut s = double_point_session(f)?;
    step(&mut s)?;
    Ok(NormalizationOutcome::from_session(s))
}

/// Normalizes `in_{(3,2,2)} f` for `f` with quadratic part `x^2`.
pub fn normalize_w2_cubic(f: &TriPoly) -> Result<NormalizationOutcome> {
    run_step(f, doublepoint::step2)
}

pub fn normalize_w3(f: &TriPoly) -> Result<NormalizationOutcome> {
    run_step(f, doublepoint::step3)
}

pub fn normalize_w4(f: &TriPoly) -> Result<NormalizationOutcome> {
    run_step(f, doublepoint::step4)
}

pub fn normalize_w5(f: &TriPoly) -> Result<NormalizationOutcome> {
    run_step(f, doublepoint::step5)
}

pub fn normalize_w6(f: &TriPoly) -> Result<NormalizationOutcome> {
    run_step(f, doublepoint::step6)
}

/// The `(2,1,1)` branch for `in_{(1,1,1)} f = in_{(3,2,2)} f = x^2`.
pub fn normalize_quartic_211(f: &TriPoly) -> Result<NormalizationOutcome> {
    let mut s = double_point_session(f)?;
    require(f.in_w(&doublepoint::W2) == f.in_w(&Weight::STANDARD), "in_(3,2,2) f = x^2")?;
    quartic::normalize(&mut s)?;
    Ok(NormalizationOutcome::from_session(s))
}

/// Projective type of the cubic curve `{g = 0}`.
pub fn classify_cubic_cone(g: &TriPoly) -> Result<(CubicType, NormalizationOutcome)> {
    require(!g.is_zero() && g.is_weighted_homogeneous(&Weight::STANDARD) && g.ord() == Some(3), "nonzero cubic form")?;
    let mut s = Session::new(g, None);
    let (ty, _) = cubic::classify(&mut s)?;
    Ok((ty, NormalizationOutcome::from_session(s)))
}

/// Outcome of the full double-point tree.
pub(crate) fn double_point(s: &mut Session) -> Result<Terminal> {
    s.stage = "step 1";
    if quadric::normalize(s)? == QuadricKind::Nondegenerate {
        return Ok(Terminal { mld: Some(1), weight: Weight::STANDARD, basis: Basis::Monotonicity });
    }
    match doublepoint::cascade(s)? {
        Next::Done(t) => Ok(t),
        Next::Quartic => {
            s.stage = "quartic (2,1,1)";
            quartic::normalize(s)
        }
        Next::Continue => unreachable!("the cascade always terminates"),
    }
}

pub(crate) fn triple_point(s: &mut Session) -> Result<(CubicType, Terminal)> {
    s.stage = "cubic cone";
    cubic::classify(s)
}

#[cfg(test)]
mod tests;
