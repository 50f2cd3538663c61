use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::automorphism::{Automorphism, Step};
use crate::algebra::{find_roots, nth_root, Elem, Embedding, Field, Monomial, RootSet, TriPoly, UPoly};
use crate::error::{Error, Result};

/// Working state of one normalization run.
///
/// Root extraction may enlarge the field; every stored element is then
/// re-embedded, so callers must re-read coefficients after any root call.
#[derive(Clone, Debug)]
pub(crate) struct Session {
    pub field: Field,
    pub jet: Option<u32>,
    pub f: TriPoly,
    pub auto: Automorphism,
    /// From the input field into `field`.
    pub embedding: Embedding,
    pub trace: Vec<String>,
    pub params: Vec<(String, Elem)>,
    /// Step currently running, for error reports.
    pub stage: &'static str,
}

impl Session {
    pub fn new(f: &TriPoly, jet: Option<u32>) -> Session {
        let field = f.field().clone();
        Session {
            embedding: Embedding::identity(&field),
            f: match jet {
                Some(d) => f.truncate_degree(d),
                None => f.clone(),
            },
            field,
            jet,
            auto: Automorphism::identity(),
            trace: Vec::new(),
            params: Vec::new(),
            stage: "",
        }
    }

    pub fn label(&mut self, s: &str) {
        self.trace.push(s.to_string());
    }

    pub fn param(&mut self, name: &str, v: Elem) {
        self.params.push((name.to_string(), v));
    }

    pub fn char2(&self) -> bool {
        self.field.characteristic() == 2
    }

    pub fn c(&self, e: [u32; 3]) -> Elem {
        self.f.coeff_of(e)
    }

    pub fn apply(&mut self, step: Step) -> Result<()> {
        let trivial = match &step {
            Step::Shift { added, .. } => added.is_zero(),
            Step::Scale { unit, .. } | Step::UnitRescale(unit) => self.field.is_one(unit),
            Step::Linear(m) => *m == super::automorphism::identity3(&self.field),
        };
        if trivial {
            return Ok(());
        }
        self.f = step.apply(&self.f, self.jet)?;
        self.auto.push(step);
        Ok(())
    }

    pub fn shift(&mut self, var: usize, added: TriPoly) -> Result<()> {
        self.apply(Step::Shift { var, added })
    }

    pub fn scale(&mut self, var: usize, unit: Elem) -> Result<()> {
        self.apply(Step::Scale { var, unit })
    }

    pub fn rescale(&mut self, c: Elem) -> Result<()> {
        self.apply(Step::UnitRescale(c))
    }

    pub fn linear(&mut self, m: [[Elem; 3]; 3]) -> Result<()> {
        self.apply(Step::Linear(m))
    }

    /// Swaps two variables.
    pub fn swap(&mut self, i: usize, j: usize) -> Result<()> {
        let k = &self.field;
        let mut m = super::automorphism::identity3(k);
        m[i][i] = k.zero();
        m[j][j] = k.zero();
        m[i][j] = k.one();
        m[j][i] = k.one();
        self.linear(m)
    }

    /// `c * mono` as a polynomial over the current field.
    pub fn mono(&self, c: &Elem, e: [u32; 3]) -> TriPoly {
        TriPoly::term(&self.field, c.clone(), Monomial(e))
    }

    fn enlarge(&mut self, e: &Embedding) {
        if e.source() == e.target() {
            return;
        }
        self.f = self.f.embed(e);
        self.auto = self.auto.embed(e);
        for (_, v) in self.params.iter_mut() {
            *v = e.apply(v);
        }
        self.embedding = self.embedding.then(e);
        self.field = e.target().clone();
    }

    fn absorb(&mut self, rs: &RootSet) {
        let e = rs.embedding.clone();
        self.enlarge(&e);
    }

    fn missing(&self, g: &UPoly) -> Error {
        Error::NeedsAlgebraicExtension {
            poly: g.format(&self.field),
            branch: self.stage.to_string(),
        }
    }

    /// All roots of `g` with multiplicity; over Q fails unless every root is rational.
    pub fn roots_all(&mut self, g: &UPoly) -> Result<Vec<(Elem, usize)>> {
        let rs = find_roots(g, &self.field, self.field.is_finite())?;
        if !rs.complete {
            return Err(self.missing(g));
        }
        self.absorb(&rs);
        Ok(rs.roots)
    }

    /// Some root of `g`, preferring one in the current field.
    pub fn some_root(&mut self, g: &UPoly) -> Result<Elem> {
        let here = find_roots(g, &self.field, false)?;
        if let Some(r) = here.first() {
            return Ok(r.clone());
        }
        if !self.field.is_finite() {
            return Err(self.missing(g));
        }
        let rs = find_roots(g, &self.field, true)?;
        self.absorb(&rs);
        Ok(rs.first().expect("splitting field contains a root").clone())
    }

    pub fn root_n(&mut self, a: &Elem, n: usize) -> Result<Elem> {
        match nth_root(a, n, &self.field, self.field.is_finite()) {
            Ok((r, rs)) => {
                self.absorb(&rs);
                Ok(r)
            }
            Err(Error::NeedsAlgebraicExtension { poly, .. }) => Err(Error::NeedsAlgebraicExtension {
                poly,
                branch: self.stage.to_string(),
            }),
            Err(e) => Err(e),
        }
    }

    pub fn sqrt(&mut self, a: &Elem) -> Result<Elem> {
        self.root_n(a, 2)
    }

    /// Square root when it already exists in the field (or is forced to
    /// exist by extension); `None` only over Q for irrational roots.
    pub fn sqrt_if_available(&mut self, a: &Elem) -> Result<Option<Elem>> {
        match self.sqrt(a) {
            Ok(r) => Ok(Some(r)),
            Err(Error::NeedsAlgebraicExtension { .. }) if self.field.is_rational() => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn upoly(&self, cs: &[Elem]) -> UPoly {
        UPoly::new(&self.field, cs.to_vec())
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        self.field.inv(a).expect("nonzero element")
    }
}
