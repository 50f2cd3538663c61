//! Exact fields, univariate and trivariate polynomials, and the input parser.

mod field;
pub(crate) mod fp;
mod parse;
mod tripoly;
mod upoly;

pub use field::{Elem, Embedding, Field};
pub use parse::parse_poly;
pub use tripoly::{Monomial, TriPoly, Weight};
pub use upoly::{extend_to, find_all_roots, find_roots, nth_root, splitting_degree, RootSet, UPoly};
