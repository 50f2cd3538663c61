//! The top-level decision tree: dispatch on `ord_{(1,1,1)} f`, run the
//! normalization trees, and attach a certificate to every terminal verdict.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Elem, Embedding, TriPoly, Weight};
use crate::error::{Error, Result};
use crate::frobenius::{fedder_is_fpure, FPurityCertificate};
use crate::normalize::{self, Automorphism, Basis, CubicType, Session, Terminal, JET_DEGREE};
use crate::toricdiv::{discrepancy, witness_search, DiscrepancyReport};

/// Weights the double-point tree can end on.
pub const DOUBLE_POINT_WEIGHTS: [Weight; 10] = [
    Weight([1, 1, 1]),
    Weight([3, 2, 2]),
    Weight([2, 1, 1]),
    Weight([6, 4, 3]),
    Weight([9, 6, 4]),
    Weight([15, 10, 6]),
    Weight([3, 2, 1]),
    Weight([10, 5, 4]),
    Weight([15, 8, 6]),
    Weight([21, 14, 6]),
];

/// Default bound on weight entries for the auxiliary witness search.
pub const DEFAULT_MAX_WEIGHT: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MldValue {
    NegInfinity,
    Finite(u8),
}

impl MldValue {
    fn from_terminal(m: Option<i64>) -> MldValue {
        match m {
            None => MldValue::NegInfinity,
            Some(v) => MldValue::Finite(v as u8),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        matches!(self, MldValue::Finite(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlcStatus {
    True,
    False,
    /// The germ is not reduced.
    NotApplicable,
}

impl SlcStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SlcStatus::True => "true",
            SlcStatus::False => "false",
            SlcStatus::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Fedder,
    SimpleElliptic,
    RationalDoublePoint,
    ToricWitness,
    LrTableChar0,
    Monotonicity,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::Fedder => "fedder",
            CertificateKind::SimpleElliptic => "simple_elliptic",
            CertificateKind::RationalDoublePoint => "rational_double_point",
            CertificateKind::ToricWitness => "toric_witness",
            CertificateKind::LrTableChar0 => "lr_table_char0",
            CertificateKind::Monotonicity => "monotonicity",
        }
    }

    pub fn from_name(s: &str) -> Option<CertificateKind> {
        [
            CertificateKind::Fedder,
            CertificateKind::SimpleElliptic,
            CertificateKind::RationalDoublePoint,
            CertificateKind::ToricWitness,
            CertificateKind::LrTableChar0,
            CertificateKind::Monotonicity,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// One link of the justification for a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// The polynomial the certificate speaks about.
    pub target: TriPoly,
    pub note: String,
    /// False when the certificate is a flagged fallback rather than a check.
    pub certified: bool,
    pub fedder: Option<FPurityCertificate>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub input: TriPoly,
    pub mld: MldValue,
    /// Set by [`classify_slc`]; `None` from [`classify_mld`].
    pub slc: Option<SlcStatus>,
    pub witness: Option<DiscrepancyReport>,
    /// Found by the bounded search when the mld is minus infinity.
    pub searched_witness: Option<DiscrepancyReport>,
    pub automorphism: Automorphism,
    /// From the input field into the field of `transformed`.
    pub embedding: Embedding,
    pub jet_degree: Option<u32>,
    /// The automorphism applied to the input (truncated at `jet_degree`).
    pub transformed: TriPoly,
    pub initial_weight: Weight,
    pub initial_form: TriPoly,
    pub branch_trace: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub parameters: Vec<(String, Elem)>,
    pub cubic_type: Option<CubicType>,
    pub field_extension_used: usize,
    /// `(w, d)` pairs whose weighted parts the tree read.
    pub inspected: Vec<(Weight, u64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub max_weight: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_weight: DEFAULT_MAX_WEIGHT }
    }
}

pub fn classify_mld(f: &TriPoly) -> Result<Verdict> {
    classify_mld_with(f, &ClassifyOptions::default())
}

pub fn classify_mld_with(f: &TriPoly, opts: &ClassifyOptions) -> Result<Verdict> {
    let ord = f.ord().ok_or(Error::ZeroPolynomial)?;
    let mut v = match ord {
        0 | 1 => trivial(f, Some(3 - ord as i64), Basis::Monotonicity),
        2 => {
            let mut s = Session::new(f, Some(JET_DEGREE));
            let t = normalize::double_point(&mut s)?;
            from_session(f, s, t, None)?
        }
        3 => {
            let mut s = Session::new(f, None);
            let (ty, t) = normalize::triple_point(&mut s)?;
            from_session(f, s, t, Some(ty))?
        }
        _ => trivial(f, None, Basis::ToricWitness),
    };
    if v.mld == MldValue::NegInfinity {
        let target = witness_target(&v).clone();
        v.searched_witness = witness_search(&target, opts.max_weight, true);
    }
    Ok(v)
}

pub fn classify_slc(f: &TriPoly) -> Result<Verdict> {
    classify_slc_with(f, &ClassifyOptions::default())
}

pub fn classify_slc_with(f: &TriPoly, opts: &ClassifyOptions) -> Result<Verdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    let mut v = classify_mld_with(f, opts)?;
    // f = g^2 h with g in the maximal ideal forces in_w f = in_w(g)^2 in_w(h),
    // so a squarefree initial form at a positive weight settles reducedness
    // without touching the dense input
    let reduced = (v.initial_weight.is_positive() && v.initial_form.is_squarefree()) || locally_reduced(f);
    v.slc = Some(if !reduced {
        SlcStatus::NotApplicable
    } else if v.mld.is_nonnegative() {
        SlcStatus::True
    } else {
        SlcStatus::False
    });
    Ok(v)
}

/// Whether `k[[x,y,z]]/(f)` is reduced, for `f` in the maximal ideal.
///
/// A repeated irreducible factor divides every partial derivative, and an
/// irreducible factor dividing all its own partials would be a p-th power;
/// so the repeated factors through the origin are exactly the factors of
/// `gcd(f, f_x, f_y, f_z)` vanishing there. Reducedness passes to the
/// completion.
pub fn locally_reduced(f: &TriPoly) -> bool {
    let mut d = f.clone();
    for i in 0..3 {
        if d.total_degree() == Some(0) {
            return true;
        }
        d = d.gcd(&f.derivative(i));
    }
    !d.is_zero() && !d.field().is_zero(&d.constant_term())
}

fn trivial(f: &TriPoly, mld: Option<i64>, basis: Basis) -> Verdict {
    let k = f.field();
    let t = Terminal { mld, weight: Weight::STANDARD, basis };
    let ord = f.ord().unwrap();
    let initial = f.in_w(&Weight::STANDARD);
    let mut v = Verdict {
        input: f.clone(),
        mld: MldValue::from_terminal(mld),
        slc: None,
        witness: None,
        searched_witness: None,
        automorphism: Automorphism::identity(),
        embedding: Embedding::identity(k),
        jet_degree: None,
        transformed: f.clone(),
        initial_weight: Weight::STANDARD,
        initial_form: initial,
        branch_trace: vec![format!("ord {}", if ord >= 4 { String::from(">= 4") } else { ord.to_string() })],
        certificates: Vec::new(),
        parameters: Vec::new(),
        cubic_type: None,
        field_extension_used: 1,
        inspected: vec![(Weight::STANDARD, ord)],
    };
    attach(&mut v, &t);
    v
}

fn from_session(f: &TriPoly, s: Session, t: Terminal, cubic_type: Option<CubicType>) -> Result<Verdict> {
    let mut trace = s.trace;
    let ord = if cubic_type.is_some() { 3 } else { 2 };
    trace.insert(0, format!("ord {ord}"));
    let inspected = inspected_pairs(&trace, ord);
    // the cubic tree reads only the tangent cone
    let initial_weight = if cubic_type.is_some() { Weight::STANDARD } else { t.weight };
    let initial_form = s.f.in_w(&initial_weight);
    let mut v = Verdict {
        input: f.clone(),
        mld: MldValue::from_terminal(t.mld),
        slc: None,
        witness: None,
        searched_witness: None,
        automorphism: s.auto,
        embedding: s.embedding,
        jet_degree: s.jet,
        field_extension_used: s.field.degree(),
        transformed: s.f,
        initial_weight,
        initial_form,
        branch_trace: trace,
        certificates: Vec::new(),
        parameters: s.params,
        cubic_type,
        inspected,
    };
    attach(&mut v, &t);
    Ok(v)
}

/// The polynomial the witness is evaluated on. For triple points the
/// tangent cone decides the mld, and a witness for the cone need not be one
/// for `f` itself.
fn witness_target(v: &Verdict) -> &TriPoly {
    if v.cubic_type.is_some() && v.mld == MldValue::NegInfinity {
        &v.initial_form
    } else {
        &v.transformed
    }
}

fn attach(v: &mut Verdict, t: &Terminal) {
    let target = witness_target(v).clone();
    let mut w = discrepancy(&target, &t.weight).expect("nonzero polynomial");
    w.computes_mld = !(v.cubic_type.is_some() && v.mld == MldValue::NegInfinity);
    v.witness = Some(w);
    let in_w = v.transformed.in_w(&t.weight);
    let cert = |kind, target: &TriPoly, note: &str, certified| Certificate {
        kind,
        target: target.clone(),
        note: note.to_string(),
        certified,
        fedder: None,
    };
    let c = match t.basis {
        Basis::Monotonicity => cert(
            CertificateKind::Monotonicity,
            &in_w,
            "a(E_w) bounds the mld above and the initial form bounds it below",
            true,
        ),
        Basis::RationalDoublePoint => cert(
            CertificateKind::RationalDoublePoint,
            &in_w,
            "the initial form is a rational double point; inversion of adjunction gives mld 1",
            true,
        ),
        Basis::SimpleElliptic => cert(
            CertificateKind::SimpleElliptic,
            &in_w,
            "the initial form is a simple elliptic singularity, hence log canonical",
            true,
        ),
        Basis::ToricWitness => cert(
            CertificateKind::ToricWitness,
            &target,
            &format!("a(E_w) = {} < 0", w.a),
            w.a < 0,
        ),
        Basis::Table => table(&in_w, v.transformed.field().characteristic() == 0),
        Basis::Fedder | Basis::FedderOrTable => fedder(&in_w, t.basis == Basis::FedderOrTable),
    };
    v.certificates.push(c);
}

fn table(target: &TriPoly, char0: bool) -> Certificate {
    Certificate {
        kind: CertificateKind::LrTableChar0,
        target: target.clone(),
        note: if char0 {
            "listed in the characteristic-zero table of slc hypersurface singularities".to_string()
        } else {
            "no F-purity certificate; the characteristic-zero table is used as a flagged fallback".to_string()
        },
        certified: char0,
        fedder: None,
    }
}

fn fedder(target: &TriPoly, table_fallback: bool) -> Certificate {
    if target.field().characteristic() == 0 {
        return table(target, true);
    }
    match fedder_is_fpure(target) {
        Ok(c) if c.is_fpure => Certificate {
            kind: CertificateKind::Fedder,
            target: target.clone(),
            note: "F-pure, hence log canonical".to_string(),
            certified: true,
            fedder: Some(c),
        },
        Ok(c) if table_fallback => Certificate { fedder: Some(c), ..table(target, false) },
        Ok(c) => Certificate {
            kind: CertificateKind::Fedder,
            target: target.clone(),
            note: "the initial form is not F-pure; the verdict is uncertified".to_string(),
            certified: false,
            fedder: Some(c),
        },
        Err(e) => Certificate {
            kind: CertificateKind::Fedder,
            target: target.clone(),
            note: format!("Fedder check skipped: {e}"),
            certified: false,
            fedder: None,
        },
    }
}

/// Weighted parts read along a branch, reconstructed from its labels.
fn inspected_pairs(trace: &[String], ord: u64) -> Vec<(Weight, u64)> {
    let mut out = vec![(Weight::STANDARD, ord)];
    let mut push = |w: [u64; 3], d: u64| {
        if !out.contains(&(Weight(w), d)) {
            out.push((Weight(w), d));
        }
    };
    for label in trace.iter().skip(1) {
        let head = label.split(' ').next().unwrap_or("");
        match head {
            h if h.starts_with("2-") => push([3, 2, 2], 6),
            "3" => push([6, 4, 3], 12),
            "4" => push([9, 6, 4], 18),
            "5" => push([15, 10, 6], 30),
            h if h.starts_with("6") => push([3, 2, 1], 6),
            "7" => push([21, 14, 6], 42),
            "q1" | "q5" => {
                push([2, 1, 1], 4);
                push([10, 5, 4], 20);
            }
            "q4" => {
                push([2, 1, 1], 4);
                push([15, 8, 6], 30);
            }
            h if h.starts_with('q') => push([2, 1, 1], 4),
            _ => {}
        }
    }
    out
}

/// Bookkeeping of a witness against the double-point bounds
/// `k_E <= 40`, `b(E) <= 39`, `N <= 41` and `M <= 58`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub weight: Weight,
    pub k_e: i64,
    /// `b(E) <= k_E - dim A + 1` with `dim A = 3`.
    pub b_bound: i64,
    pub ord: u64,
    /// `ord_E(f) - 1`, the jet level at which the divisor is seen.
    pub jet_level: u64,
    pub double_point: bool,
    pub k_e_within_40: bool,
    pub b_within_39: bool,
    pub jet_level_within_41: bool,
    pub k_e_within_58: bool,
}

pub fn check_conjecture_bounds(v: &Verdict) -> Option<BoundReport> {
    let w = v.witness?;
    let k_e = w.divisor.k_e;
    let b_bound = k_e - 2;
    let jet_level = w.ord.saturating_sub(1);
    Some(BoundReport {
        weight: w.weight(),
        k_e,
        b_bound,
        ord: w.ord,
        jet_level,
        double_point: v.input.ord() == Some(2),
        k_e_within_40: k_e <= 40,
        b_within_39: b_bound <= 39,
        jet_level_within_41: jet_level <= 41,
        k_e_within_58: k_e <= 58,
    })
}

/// Replays a verdict from its own data and lists every inconsistency.
pub fn verify(v: &Verdict) -> Vec<String> {
    let mut bad = Vec::new();
    if v.embedding.source() != v.input.field() {
        bad.push("embedding does not start at the input field".to_string());
        return bad;
    }
    match v.automorphism.apply(&v.input.embed(&v.embedding), v.jet_degree) {
        Ok(t) if t == v.transformed => {}
        Ok(_) => bad.push("replaying the automorphism does not give the transformed polynomial".to_string()),
        Err(e) => bad.push(format!("replay failed: {e}")),
    }
    if v.transformed.in_w(&v.initial_weight) != v.initial_form {
        bad.push(format!("initial form at {} does not match", v.initial_weight));
    }
    if v.field_extension_used != v.transformed.field().degree() {
        bad.push("field_extension_used disagrees with the field of the transformed polynomial".to_string());
    }
    let target = witness_target(v);
    match v.witness {
        None => bad.push("no witness".to_string()),
        Some(w) => {
            match discrepancy(target, &w.weight()) {
                Ok(r) if r.ord == w.ord && r.a == w.a && r.divisor == w.divisor => {}
                _ => bad.push(format!("witness at {} does not recompute", w.weight())),
            }
            match v.mld {
                MldValue::NegInfinity => {
                    if w.a >= 0 || !w.weight().is_positive() {
                        bad.push("mld -inf without a negative witness centred at the origin".to_string());
                    }
                }
                MldValue::Finite(m) => {
                    if w.computes_mld && w.a != m as i64 {
                        bad.push(format!("witness gives a = {} but mld = {m}", w.a));
                    }
                }
            }
        }
    }
    if let Some(w) = v.searched_witness {
        match discrepancy(target, &w.weight()) {
            Ok(r) if r.a == w.a && r.a < 0 => {}
            _ => bad.push(format!("searched witness at {} does not recompute", w.weight())),
        }
    }
    for c in &v.certificates {
        if let Some(stored) = &c.fedder {
            match fedder_is_fpure(&c.target) {
                Ok(r) if &r == stored => {}
                _ => bad.push("Fedder certificate does not recompute".to_string()),
            }
        }
    }
    bad
}
