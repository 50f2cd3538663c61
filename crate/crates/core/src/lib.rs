//! Exact classification of minimal log discrepancies of hypersurface
//! singularities in three variables, with checkable certificates.
//!
//! The entry points are [`classifier::classify_mld`] and
//! [`classifier::classify_slc`]. Everything else is the supporting algebra:
//! exact fields with on-demand extensions ([`algebra`]), toric divisors
//! ([`toricdiv`]), Fedder's F-purity test ([`frobenius`]), the coordinate
//! normalisation engine ([`normalize`]) and an independent jet-scheme oracle
//! ([`jets`]).

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod classifier;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod jets;
pub mod normalize;
pub mod toricdiv;

pub use algebra::{Elem, Embedding, Field, Monomial, TriPoly, UPoly, Weight};
pub use error::{Error, Result};
