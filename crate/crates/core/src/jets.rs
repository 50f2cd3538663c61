//! Jet-scheme oracle: the truncated arc equations `f^(j)`, heights of the
//! contact ideals, and the resulting upper bounds on the mld.
//!
//! Variables are `x_i^(j)` for `i` in `0..3` and `j` in `0..=m`, numbered
//! `3 j + i`. The oracle works over prime fields and Q only.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Elem, Field, TriPoly};
use crate::classifier::MldValue;
use crate::error::{Error, Result};
use crate::groebner::{self, Coeffs, Exps, MPoly, MonomialOrder, Zp};

pub use crate::groebner::DEFAULT_BUDGET;

/// Index of `x_i^(j)`.
pub fn jet_var(i: usize, j: usize) -> usize {
    3 * j + i
}

/// Generators `x^(0), y^(0), z^(0), f^(0), ..., f^(m)` in `3 (m + 1)` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct JetSystem {
    pub field: Field,
    pub m: usize,
    pub nvars: usize,
    /// `f^(j)` for `j` in `0..=m`.
    pub f_jets: Vec<MPoly<Elem>>,
}

impl JetSystem {
    pub fn generators(&self) -> Vec<MPoly<Elem>> {
        let k = &self.field;
        let mut gens: Vec<MPoly<Elem>> =
            (0..3).map(|i| MPoly { terms: vec![(groebner::var_exps(self.nvars, i, 1), k.one())] }).collect();
        gens.extend(self.f_jets.iter().cloned());
        gens
    }
}

type Series = Vec<BTreeMap<Exps, Elem>>;

fn series_mul(k: &Field, a: &Series, b: &Series, m: usize) -> Series {
    let mut out: Series = vec![BTreeMap::new(); m + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(m + 1 - i) {
            for (ea, ca) in ai {
                for (eb, cb) in bj {
                    let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let slot = out[i + j].entry(e).or_insert_with(|| k.zero());
                    *slot = k.add(slot, &k.mul(ca, cb));
                }
            }
        }
    }
    for level in out.iter_mut() {
        level.retain(|_, c| !k.is_zero(c));
    }
    out
}

fn check_field(k: &Field) -> Result<()> {
    if k.degree() != 1 {
        return Err(Error::InvalidInput("the jet oracle works over prime fields and Q only".into()));
    }
    Ok(())
}

/// `f^(j)` is the coefficient of `t^j` in `f(sum x^(j) t^j, ...)`.
pub fn build_jets(f: &TriPoly, m: usize) -> Result<JetSystem> {
    let k = f.field().clone();
    check_field(&k)?;
    let nvars = 3 * (m + 1);
    let one: Series = {
        let mut s: Series = vec![BTreeMap::new(); m + 1];
        s[0].insert(vec![0; nvars], k.one());
        s
    };
    let arcs: Vec<Series> = (0..3)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    let mut level = BTreeMap::new();
                    level.insert(groebner::var_exps(nvars, jet_var(i, j), 1), k.one());
                    level
                })
                .collect()
        })
        .collect();
    // powers[i][e] = (arc_i)^e
    let mut powers: Vec<Vec<Series>> = vec![vec![one.clone()]; 3];
    let mut total: Series = vec![BTreeMap::new(); m + 1];
    for (mono, c) in f.terms() {
        let mut term = one.clone();
        for i in 0..3 {
            let e = mono.0[i] as usize;
            while powers[i].len() <= e {
                let next = series_mul(&k, powers[i].last().unwrap(), &arcs[i], m);
                powers[i].push(next);
            }
            term = series_mul(&k, &term, &powers[i][e], m);
        }
        for (j, level) in term.into_iter().enumerate() {
            for (e, d) in level {
                let slot = total[j].entry(e).or_insert_with(|| k.zero());
                *slot = k.add(slot, &k.mul(c, &d));
            }
        }
    }
    let f_jets = total
        .into_iter()
        .map(|level| MPoly::from_terms(&k, MonomialOrder::GrevLex, level.into_iter().collect()))
        .collect();
    Ok(JetSystem { field: k, m, nvars, f_jets })
}

/// Krull height of the ideal generated by `gens` in `nvars` variables.
///
/// Generators that are a single variable are eliminated first by setting the
/// variable to zero everywhere; the rest goes through a grevlex Groebner
/// basis. The unit ideal gets height `nvars + 1`.
pub fn height_of<C: Coeffs>(k: &C, nvars: usize, gens: &[MPoly<C::E>], budget: usize) -> Result<usize> {
    let mut gens: Vec<MPoly<C::E>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut killed = vec![false; nvars];
    loop {
        let single = gens.iter().find_map(|g| {
            if g.terms.len() == 1 && g.terms[0].0.iter().map(|&e| e as u32).sum::<u32>() == 1 {
                g.terms[0].0.iter().position(|&e| e == 1)
            } else {
                None
            }
        });
        let Some(v) = single else { break };
        killed[v] = true;
        gens = gens
            .into_iter()
            .map(|g| MPoly { terms: g.terms.into_iter().filter(|(e, _)| e[v] == 0).collect() })
            .filter(|g| !g.is_zero())
            .collect();
    }
    let eliminated = killed.iter().filter(|&&b| b).count();
    if gens.is_empty() {
        return Ok(eliminated);
    }
    let live: Vec<usize> = (0..nvars).filter(|&v| !killed[v]).collect();
    let compressed: Vec<MPoly<C::E>> = gens
        .iter()
        .map(|g| {
            let raw = g.terms.iter().map(|(e, c)| (live.iter().map(|&v| e[v]).collect(), c.clone())).collect();
            MPoly::from_terms(k, MonomialOrder::GrevLex, raw)
        })
        .collect();
    if live.len() > 64 {
        return Err(Error::ComputationBudget { what: alloc::format!("{} jet variables", live.len()) });
    }
    Ok(eliminated + groebner::height(k, live.len(), &compressed, budget)?)
}

/// Height of the full jet system, with a word-sized fast path over F_p.
pub fn ideal_height(sys: &JetSystem, budget: usize) -> Result<usize> {
    let gens = sys.generators();
    let k = &sys.field;
    if k.is_rational() {
        return height_of(k, sys.nvars, &gens, budget);
    }
    let zp = Zp(k.characteristic());
    let small: Vec<MPoly<u64>> = gens
        .iter()
        .map(|g| MPoly {
            terms: g.terms.iter().map(|(e, c)| (e.clone(), k.coeffs(c).first().copied().unwrap_or(0))).collect(),
        })
        .collect();
    height_of(&zp, sys.nvars, &small, budget)
}

/// `s_m(0; X) = 2 (m + 1) - dim = height - (m + 1)` for `X = V(f)` in A^3.
pub fn s_m(f: &TriPoly, m: usize, budget: usize) -> Result<i64> {
    let h = ideal_height(&build_jets(f, m)?, budget)?;
    Ok(h as i64 - (m as i64 + 1))
}

/// One level of the contact formula: `height(x^(0), f^(0..m-1)) - m`,
/// which is `s_(m-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetLevel {
    pub m: usize,
    pub height: usize,
    pub value: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileCheck {
    /// The minimum equals the expected mld and no level lies below it.
    Matches,
    /// Every level is at least the mld but the minimum was not reached.
    Inconclusive,
    /// Some level lies below a nonnegative mld.
    Contradicts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmProfile {
    pub entries: Vec<JetLevel>,
}

impl SmProfile {
    /// Smallest value and the first level attaining it.
    pub fn min(&self) -> Option<(usize, i64)> {
        self.entries.iter().min_by_key(|e| (e.value, e.m)).map(|e| (e.m, e.value))
    }

    pub fn check(&self, mld: MldValue) -> ProfileCheck {
        let Some((_, min)) = self.min() else { return ProfileCheck::Inconclusive };
        match mld {
            MldValue::Finite(v) if min < v as i64 => ProfileCheck::Contradicts,
            MldValue::Finite(v) if min == v as i64 => ProfileCheck::Matches,
            MldValue::Finite(_) => ProfileCheck::Inconclusive,
            // the infimum over all m is only approached
            MldValue::NegInfinity if min < 0 => ProfileCheck::Matches,
            MldValue::NegInfinity => ProfileCheck::Inconclusive,
        }
    }
}

/// The contact formula at levels `1..=m_max`.
pub fn mld_profile(f: &TriPoly, m_max: usize, budget: usize) -> Result<SmProfile> {
    if m_max == 0 {
        return Err(Error::InvalidInput("m_max must be at least 1".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    let mut entries = Vec::new();
    for m in 1..=m_max {
        let height = ideal_height(&build_jets(f, m - 1)?, budget)?;
        entries.push(JetLevel { m, height, value: height as i64 - m as i64 });
    }
    Ok(SmProfile { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, k: &Field) -> TriPoly {
        parse_poly(s, k).unwrap()
    }

    fn coeff(sys: &JetSystem, j: usize, vars: &[(usize, usize, u16)]) -> Elem {
        let mut e = vec![0u16; sys.nvars];
        for &(i, l, d) in vars {
            e[jet_var(i, l)] += d;
        }
        sys.f_jets[j].terms.iter().find(|(m, _)| *m == e).map(|(_, c)| c.clone()).unwrap_or_else(|| sys.field.zero())
    }

    #[test]
    fn build_examples() {
        let q = Field::rationals();
        let sys = build_jets(&p("x*y", &q), 1).unwrap();
        assert_eq!(sys.f_jets[0].terms.len(), 1);
        assert_eq!(coeff(&sys, 0, &[(0, 0, 1), (1, 0, 1)]), q.one());
        assert_eq!(sys.f_jets[1].terms.len(), 2);
        assert_eq!(coeff(&sys, 1, &[(0, 0, 1), (1, 1, 1)]), q.one());
        assert_eq!(coeff(&sys, 1, &[(0, 1, 1), (1, 0, 1)]), q.one());

        let sys = build_jets(&p("x", &q), 2).unwrap();
        for j in 0..=2 {
            assert_eq!(sys.f_jets[j].terms, vec![(groebner::var_exps(9, jet_var(0, j), 1), q.one())]);
        }

        let f7 = Field::prime(7).unwrap();
        let sys = build_jets(&p("x^2+y^3+z^5", &f7), 2).unwrap();
        assert_eq!(coeff(&sys, 2, &[(0, 1, 2)]), f7.one());
        assert_eq!(coeff(&sys, 2, &[(0, 0, 1), (0, 2, 1)]), f7.from_i64(2));
    }

    #[test]
    fn series_consistency() {
        let f11 = Field::prime(11).unwrap();
        let f = p("x^2*y+3*y^3*z+z^4+5*x*y*z+2*x", &f11);
        let m = 3;
        let sys = build_jets(&f, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let vals: Vec<Elem> = (0..sys.nvars).map(|_| f11.from_i64(rng.gen_range(0..11))).collect();
            // f on the arc as a truncated power series in t
            let mul = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
                let mut out = vec![f11.zero(); m + 1];
                for i in 0..=m {
                    for j in 0..=m - i {
                        out[i + j] = f11.add(&out[i + j], &f11.mul(&a[i], &b[j]));
                    }
                }
                out
            };
            let mut series = vec![f11.zero(); m + 1];
            for (mono, c) in f.terms() {
                let mut t = vec![f11.zero(); m + 1];
                t[0] = c.clone();
                for i in 0..3 {
                    let arc: Vec<Elem> = (0..=m).map(|j| vals[jet_var(i, j)].clone()).collect();
                    for _ in 0..mono.0[i] {
                        t = mul(&t, &arc);
                    }
                }
                series = series.iter().zip(&t).map(|(a, b)| f11.add(a, b)).collect();
            }
            for j in 0..=m {
                let mut expected = f11.zero();
                for (e, c) in &sys.f_jets[j].terms {
                    let mut t = c.clone();
                    for (v, &d) in e.iter().enumerate() {
                        t = f11.mul(&t, &f11.pow(&vals[v], d as u128));
                    }
                    expected = f11.add(&expected, &t);
                }
                assert_eq!(series[j], expected, "level {j}");
            }
        }
    }

    #[test]
    fn height_examples() {
        let q = Field::rationals();
        let xy = p("x*y", &q);
        let hs: Vec<usize> = (0..3).map(|m| ideal_height(&build_jets(&xy, m).unwrap(), DEFAULT_BUDGET).unwrap()).collect();
        assert_eq!(hs, vec![3, 3, 4]);
        for m in 0..4 {
            assert_eq!(ideal_height(&build_jets(&p("x", &q), m).unwrap(), DEFAULT_BUDGET).unwrap(), m + 3);
        }
        assert_eq!(ideal_height(&build_jets(&p("x^2+y^2", &q), 0).unwrap(), DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn s_m_follows_the_definition() {
        let q = Field::rationals();
        let xy = p("x*y", &q);
        let s: Vec<i64> = (0..3).map(|m| s_m(&xy, m, DEFAULT_BUDGET).unwrap()).collect();
        assert_eq!(s, vec![2, 1, 1]);
        for m in 0..3 {
            assert_eq!(s_m(&p("x", &q), m, DEFAULT_BUDGET).unwrap(), 2);
        }
        let f7 = Field::prime(7).unwrap();
        let f = p("x^2+y^3+z^5", &f7);
        assert_eq!(s_m(&f, 0, DEFAULT_BUDGET).unwrap(), 2);
        assert_eq!(s_m(&f, 1, DEFAULT_BUDGET).unwrap(), 1);
    }

    #[test]
    fn profile_examples() {
        let q = Field::rationals();
        let prof = mld_profile(&p("x*y", &q), 3, DEFAULT_BUDGET).unwrap();
        let vals: Vec<(usize, i64)> = prof.entries.iter().map(|e| (e.m, e.value)).collect();
        assert_eq!(vals, vec![(1, 2), (2, 1), (3, 1)]);
        assert_eq!(prof.min(), Some((2, 1)));
        assert_eq!(prof.check(MldValue::Finite(1)), ProfileCheck::Matches);
        assert_eq!(prof.check(MldValue::Finite(2)), ProfileCheck::Contradicts);

        let f7 = Field::prime(7).unwrap();
        let prof = mld_profile(&p("x^2+y^3+z^5", &f7), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(prof.entries.iter().map(|e| e.value).collect::<Vec<_>>(), vec![2, 1]);
        assert!(matches!(mld_profile(&p("1+x", &q), 2, DEFAULT_BUDGET), Err(Error::NotInMaximalIdeal)));
    }

    #[test]
    fn heights_grow_with_the_level() {
        let f3 = Field::prime(3).unwrap();
        for s in ["x^2+y^2*z", "x*y*z", "x^2+y^3", "x^3+y^3+z^3"] {
            let f = p(s, &f3);
            let hs: Vec<usize> = (0..4).map(|m| ideal_height(&build_jets(&f, m).unwrap(), DEFAULT_BUDGET).unwrap()).collect();
            assert!(hs.windows(2).all(|w| w[0] <= w[1]), "{s}: {hs:?}");
        }
    }

    #[test]
    fn extension_fields_are_rejected() {
        let k = Field::canonical(2, 2).unwrap();
        assert!(build_jets(&TriPoly::var(&k, 0), 1).is_err());
    }
}
