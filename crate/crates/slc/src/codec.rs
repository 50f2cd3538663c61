//! JSON shapes of the report and their conversions to and from core types.
//!
//! Field elements are written canonically: a reduced fraction string over
//! Q, otherwise the coefficient vector over F_p in ascending powers of the
//! generator `u`. Polynomials carry both their printed form and their terms,
//! so a report can be replayed without re-parsing extension elements.

use serde::{Deserialize, Serialize};
use slc_core::algebra::parse_poly;
use slc_core::classifier::{
    BoundReport, Certificate, CertificateKind, MldValue, SlcStatus, Verdict,
};
use slc_core::frobenius::FPurityCertificate;
use slc_core::jets::{ProfileCheck, SmProfile};
use slc_core::normalize::{Automorphism, CubicType, Step};
use slc_core::toricdiv::{DiscrepancyReport, ToricDivisor};
use slc_core::{Elem, Embedding, Field, Monomial, TriPoly, Weight};

/// Malformed or inconsistent report content.
#[derive(Debug, thiserror::Error)]
#[error("malformed report: {0}")]
pub struct DecodeError(pub String);

type Decoded<T> = Result<T, DecodeError>;

fn bad<T>(msg: impl Into<String>) -> Decoded<T> {
    Err(DecodeError(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub characteristic: u64,
    pub extension_degree: usize,
    /// Monic modulus, ascending coefficients; null for Q and prime fields.
    pub modulus: Option<Vec<u64>>,
}

impl FieldJson {
    pub fn encode(k: &Field) -> FieldJson {
        FieldJson {
            characteristic: k.characteristic(),
            extension_degree: k.degree(),
            modulus: (k.degree() > 1).then(|| k.modulus().to_vec()),
        }
    }

    pub fn decode(&self) -> Decoded<Field> {
        let k = match (&self.modulus, self.extension_degree) {
            (None, 1) => Field::with_characteristic(self.characteristic),
            (Some(m), n) if n > 1 && m.len() == n + 1 => Field::extension(self.characteristic, m),
            _ => return bad("field modulus does not match its degree"),
        };
        k.map_err(|e| DecodeError(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Rational(String),
    Finite(Vec<u64>),
}

pub fn encode_elem(k: &Field, a: &Elem) -> ElemJson {
    if k.is_rational() {
        ElemJson::Rational(k.format(a))
    } else {
        let mut v = k.coeffs(a);
        v.resize(k.degree(), 0);
        ElemJson::Finite(v)
    }
}

pub fn decode_elem(k: &Field, a: &ElemJson) -> Decoded<Elem> {
    match a {
        ElemJson::Rational(s) if k.is_rational() => {
            let c = parse_poly(s, k).map_err(|e| DecodeError(e.to_string()))?;
            if c.total_degree().unwrap_or(0) != 0 {
                return bad(format!("{s} is not a constant"));
            }
            let v = c.constant_term();
            if k.format(&v) != *s {
                return bad(format!("{s} is not in canonical form"));
            }
            Ok(v)
        }
        ElemJson::Finite(v) if !k.is_rational() && v.len() == k.degree() => {
            k.from_coeffs(v).map_err(|e| DecodeError(e.to_string()))
        }
        _ => bad("field element does not match the field"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: [u32; 3],
    pub coeff: ElemJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub text: String,
    pub terms: Vec<TermJson>,
}

pub fn encode_poly(f: &TriPoly) -> PolyJson {
    let k = f.field();
    PolyJson {
        text: f.format(),
        terms: f.terms().iter().map(|(m, c)| TermJson { exponents: m.0, coeff: encode_elem(k, c) }).collect(),
    }
}

pub fn decode_poly(k: &Field, p: &PolyJson) -> Decoded<TriPoly> {
    let mut f = TriPoly::zero(k);
    for t in &p.terms {
        let c = decode_elem(k, &t.coeff)?;
        if k.is_zero(&c) || !f.coeff_of(t.exponents).eq(&k.zero()) {
            return bad("polynomial terms must be distinct and nonzero");
        }
        f.add_term(Monomial(t.exponents), c);
    }
    if f.format() != p.text {
        return bad(format!("printed form {:?} does not match the terms", p.text));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub weight: [u64; 3],
    pub k_e: i64,
    pub ord: u64,
    pub a: i64,
    pub center_dim: usize,
    pub computes_mld: bool,
}

impl WitnessJson {
    pub fn encode(w: &DiscrepancyReport) -> WitnessJson {
        WitnessJson {
            weight: w.weight().0,
            k_e: w.divisor.k_e,
            ord: w.ord,
            a: w.a,
            center_dim: w.divisor.center_dim,
            computes_mld: w.computes_mld,
        }
    }

    pub fn decode(&self) -> Decoded<DiscrepancyReport> {
        let weight = Weight::new(self.weight).map_err(|e| DecodeError(e.to_string()))?;
        let divisor = ToricDivisor::new(weight);
        if divisor.k_e != self.k_e || divisor.center_dim != self.center_dim {
            return bad(format!("k_E or centre of {weight} is wrong"));
        }
        Ok(DiscrepancyReport { divisor, ord: self.ord, a: self.a, computes_mld: self.computes_mld })
    }
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn decode_var(v: &str) -> Decoded<usize> {
    VARS.iter().position(|&n| n == v).map_or_else(|| bad(format!("unknown variable {v}")), Ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepJson {
    /// Row `i` is the image of the `i`-th variable.
    Linear(Vec<Vec<ElemJson>>),
    Shift { var: String, added: PolyJson },
    Scale { var: String, unit: ElemJson },
    Rescale { unit: ElemJson },
}

pub fn encode_step(k: &Field, s: &Step) -> StepJson {
    match s {
        Step::Linear(m) => StepJson::Linear(m.iter().map(|row| row.iter().map(|c| encode_elem(k, c)).collect()).collect()),
        Step::Shift { var, added } => StepJson::Shift { var: VARS[*var].into(), added: encode_poly(added) },
        Step::Scale { var, unit } => StepJson::Scale { var: VARS[*var].into(), unit: encode_elem(k, unit) },
        Step::UnitRescale(c) => StepJson::Rescale { unit: encode_elem(k, c) },
    }
}

pub fn decode_step(k: &Field, s: &StepJson) -> Decoded<Step> {
    Ok(match s {
        StepJson::Linear(rows) => {
            if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
                return bad("linear step needs a 3x3 matrix");
            }
            let mut m: [[Elem; 3]; 3] = core::array::from_fn(|_| core::array::from_fn(|_| k.zero()));
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = decode_elem(k, &rows[i][j])?;
                }
            }
            if k.is_zero(&slc_core::normalize::det3(k, &m)) {
                return bad("linear step is not invertible");
            }
            Step::Linear(m)
        }
        StepJson::Shift { var, added } => {
            let var = decode_var(var)?;
            let added = decode_poly(k, added)?;
            if added.degree_in(var) > 0 || !k.is_zero(&added.constant_term()) {
                return bad("shift must be free of its variable and of constants");
            }
            Step::Shift { var, added }
        }
        StepJson::Scale { var, unit } => Step::Scale { var: decode_var(var)?, unit: nonzero(k, unit)? },
        StepJson::Rescale { unit } => Step::UnitRescale(nonzero(k, unit)?),
    })
}

fn nonzero(k: &Field, a: &ElemJson) -> Decoded<Elem> {
    let c = decode_elem(k, a)?;
    if k.is_zero(&c) {
        return bad("unit is zero");
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FedderJson {
    pub is_fpure: bool,
    pub p: u64,
    pub witness_monomial: Option<[u32; 3]>,
}

impl FedderJson {
    pub fn encode(c: &FPurityCertificate) -> FedderJson {
        FedderJson { is_fpure: c.is_fpure, p: c.p, witness_monomial: c.witness_monomial.map(|m| m.0) }
    }

    pub fn decode(&self) -> FPurityCertificate {
        FPurityCertificate { is_fpure: self.is_fpure, p: self.p, witness_monomial: self.witness_monomial.map(Monomial) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub target: PolyJson,
    pub note: String,
    pub certified: bool,
    pub fedder: Option<FedderJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MldJson {
    Finite(u8),
    /// Always `"-inf"`.
    Symbol(String),
}

impl MldJson {
    pub fn encode(m: MldValue) -> MldJson {
        match m {
            MldValue::Finite(v) => MldJson::Finite(v),
            MldValue::NegInfinity => MldJson::Symbol("-inf".into()),
        }
    }

    pub fn decode(&self) -> Decoded<MldValue> {
        match self {
            MldJson::Finite(v) if *v <= 3 => Ok(MldValue::Finite(*v)),
            MldJson::Symbol(s) if s == "-inf" => Ok(MldValue::NegInfinity),
            _ => bad("mld must be 0..3 or \"-inf\""),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamJson {
    pub name: String,
    pub value: ElemJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InspectedJson {
    pub weight: [u64; 3],
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub mld: MldJson,
    pub slc: Option<String>,
    pub witness: Option<WitnessJson>,
    pub searched_witness: Option<WitnessJson>,
    pub automorphism: Vec<StepJson>,
    pub jet_degree: Option<u32>,
    pub transformed: PolyJson,
    pub initial_weight: [u64; 3],
    pub initial_form: PolyJson,
    pub branch_trace: Vec<String>,
    pub certificates: Vec<CertificateJson>,
    pub parameters: Vec<ParamJson>,
    pub cubic_type: Option<String>,
    pub field_extension_used: usize,
    pub inspected: Vec<InspectedJson>,
}

impl VerdictJson {
    pub fn encode(v: &Verdict) -> VerdictJson {
        let k = v.transformed.field();
        VerdictJson {
            mld: MldJson::encode(v.mld),
            slc: v.slc.map(|s| s.name().to_string()),
            witness: v.witness.as_ref().map(WitnessJson::encode),
            searched_witness: v.searched_witness.as_ref().map(WitnessJson::encode),
            automorphism: v.automorphism.steps.iter().map(|s| encode_step(k, s)).collect(),
            jet_degree: v.jet_degree,
            transformed: encode_poly(&v.transformed),
            initial_weight: v.initial_weight.0,
            initial_form: encode_poly(&v.initial_form),
            branch_trace: v.branch_trace.clone(),
            certificates: v
                .certificates
                .iter()
                .map(|c| CertificateJson {
                    kind: c.kind.name().into(),
                    target: encode_poly(&c.target),
                    note: c.note.clone(),
                    certified: c.certified,
                    fedder: c.fedder.as_ref().map(FedderJson::encode),
                })
                .collect(),
            parameters: v.parameters.iter().map(|(n, c)| ParamJson { name: n.clone(), value: encode_elem(k, c) }).collect(),
            cubic_type: v.cubic_type.map(|t| t.name().to_string()),
            field_extension_used: v.field_extension_used,
            inspected: v.inspected.iter().map(|(w, d)| InspectedJson { weight: w.0, degree: *d }).collect(),
        }
    }

    /// Rebuilds the verdict for `input`; `field` is the field the verdict's
    /// polynomials live over.
    pub fn decode(&self, input: &TriPoly, field: &Field) -> Decoded<Verdict> {
        let k = field;
        if k.characteristic() != input.field().characteristic() {
            return bad("report field has the wrong characteristic");
        }
        let slc = match self.slc.as_deref() {
            None => None,
            Some("true") => Some(SlcStatus::True),
            Some("false") => Some(SlcStatus::False),
            Some("not_applicable") => Some(SlcStatus::NotApplicable),
            Some(s) => return bad(format!("unknown slc status {s}")),
        };
        let certificates = self
            .certificates
            .iter()
            .map(|c| {
                Ok(Certificate {
                    kind: CertificateKind::from_name(&c.kind).ok_or_else(|| DecodeError(format!("unknown certificate {}", c.kind)))?,
                    target: decode_poly(k, &c.target)?,
                    note: c.note.clone(),
                    certified: c.certified,
                    fedder: c.fedder.as_ref().map(FedderJson::decode),
                })
            })
            .collect::<Decoded<Vec<_>>>()?;
        let cubic_type = match &self.cubic_type {
            None => None,
            Some(s) => Some(CubicType::from_name(s).ok_or_else(|| DecodeError(format!("unknown cubic type {s}")))?),
        };
        let inspected = self
            .inspected
            .iter()
            .map(|i| Ok((Weight::new(i.weight).map_err(|e| DecodeError(e.to_string()))?, i.degree)))
            .collect::<Decoded<Vec<_>>>()?;
        Ok(Verdict {
            input: input.clone(),
            mld: self.mld.decode()?,
            slc,
            witness: self.witness.as_ref().map(WitnessJson::decode).transpose()?,
            searched_witness: self.searched_witness.as_ref().map(WitnessJson::decode).transpose()?,
            automorphism: Automorphism { steps: self.automorphism.iter().map(|s| decode_step(k, s)).collect::<Decoded<_>>()? },
            // the input field is Q or F_p, which has exactly one embedding
            embedding: Embedding::new(input.field().clone(), k.clone(), k.zero()),
            jet_degree: self.jet_degree,
            transformed: decode_poly(k, &self.transformed)?,
            initial_weight: Weight::new(self.initial_weight).map_err(|e| DecodeError(e.to_string()))?,
            initial_form: decode_poly(k, &self.initial_form)?,
            branch_trace: self.branch_trace.clone(),
            certificates,
            parameters: self
                .parameters
                .iter()
                .map(|p| Ok((p.name.clone(), decode_elem(k, &p.value)?)))
                .collect::<Decoded<_>>()?,
            cubic_type,
            field_extension_used: self.field_extension_used,
            inspected,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub weight: [u64; 3],
    pub k_e: i64,
    pub b_bound: i64,
    pub ord: u64,
    pub jet_level: u64,
    pub double_point: bool,
    pub k_e_within_40: bool,
    pub b_within_39: bool,
    pub jet_level_within_41: bool,
    pub k_e_within_58: bool,
}

impl BoundsJson {
    pub fn encode(b: &BoundReport) -> BoundsJson {
        BoundsJson {
            weight: b.weight.0,
            k_e: b.k_e,
            b_bound: b.b_bound,
            ord: b.ord,
            jet_level: b.jet_level,
            double_point: b.double_point,
            k_e_within_40: b.k_e_within_40,
            b_within_39: b.b_within_39,
            jet_level_within_41: b.jet_level_within_41,
            k_e_within_58: b.k_e_within_58,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsPayload {
    pub classification: VerdictJson,
    pub bounds: Option<BoundsJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpureJson {
    pub is_fpure: bool,
    pub p: u64,
    pub witness_monomial: Option<[u32; 3]>,
    /// F-pure implies log canonical; false only means no certificate.
    pub lc_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub m: usize,
    pub height: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub entries: Vec<LevelJson>,
    pub min: Option<LevelJson>,
    /// The classifier's mld, when it classifies the input.
    pub classifier_mld: Option<MldJson>,
    /// `matches`, `inconclusive` or `contradicts`; null without a classifier mld.
    pub check: Option<String>,
}

impl ProfileJson {
    pub fn encode(p: &SmProfile, mld: Option<MldValue>) -> ProfileJson {
        let min = p.min().and_then(|(m, _)| p.entries.iter().find(|e| e.m == m)).map(|e| LevelJson {
            m: e.m,
            height: e.height,
            value: e.value,
        });
        ProfileJson {
            entries: p.entries.iter().map(|e| LevelJson { m: e.m, height: e.height, value: e.value }).collect(),
            min,
            classifier_mld: mld.map(MldJson::encode),
            check: mld.map(|m| {
                match p.check(m) {
                    ProfileCheck::Matches => "matches",
                    ProfileCheck::Inconclusive => "inconclusive",
                    ProfileCheck::Contradicts => "contradicts",
                }
                .to_string()
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
}

/// Command-line options that affect the payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsJson {
    /// The `--char` argument.
    pub characteristic: u64,
    pub max_weight: u64,
    /// Jet level; only for `jet-profile`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

/// The envelope every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    /// The field the payload lives over; null when the field itself is invalid.
    pub field: Option<FieldJson>,
    pub command: String,
    pub options: OptionsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
    pub timing_ms: Option<u64>,
}
