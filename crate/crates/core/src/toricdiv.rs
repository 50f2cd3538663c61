//! Toric divisors over the origin of A^3 and their log discrepancies.
//!
//! The divisor `E_w` is the exceptional divisor of the weighted blow-up with
//! weights `w`; its valuation is `ord_w`, and `k_E = w1 + w2 + w3 - 1`.

use crate::algebra::{TriPoly, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    pub weight: Weight,
    pub k_e: i64,
    /// Number of zero weights; zero means the center is the origin.
    pub center_dim: usize,
}

impl ToricDivisor {
    pub fn new(weight: Weight) -> ToricDivisor {
        ToricDivisor {
            weight,
            k_e: weight.sum() as i64 - 1,
            center_dim: weight.0.iter().filter(|&&c| c == 0).count(),
        }
    }
}

/// `a(E_w; A^3, (f)) = k_E - ord_w f + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub divisor: ToricDivisor,
    pub ord: u64,
    pub a: i64,
    /// Whether the divisor computes the mld of the classified polynomial.
    pub computes_mld: bool,
}

impl DiscrepancyReport {
    pub fn weight(&self) -> Weight {
        self.divisor.weight
    }
}

pub fn discrepancy(f: &TriPoly, w: &Weight) -> Result<DiscrepancyReport> {
    let ord = f.ord_w(w).ok_or(Error::ZeroPolynomial)?;
    let divisor = ToricDivisor::new(*w);
    Ok(DiscrepancyReport { divisor, ord, a: divisor.k_e + 1 - ord as i64, computes_mld: true })
}

/// First weight in lexicographic order with entries in `0..=max_entry`
/// (or `1..=max_entry` when the center must be the origin) whose divisor
/// has negative log discrepancy.
pub fn witness_search(f: &TriPoly, max_entry: u64, require_origin_center: bool) -> Option<DiscrepancyReport> {
    if f.is_zero() {
        return None;
    }
    let lo = if require_origin_center { 1 } else { 0 };
    for a in lo..=max_entry {
        for b in lo..=max_entry {
            for c in lo..=max_entry {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let w = Weight([a, b, c]);
                let rep = discrepancy(f, &w).expect("nonzero polynomial");
                if rep.a < 0 {
                    return Some(rep);
                }
            }
        }
    }
    None
}
