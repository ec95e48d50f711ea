//! Noncommutative polynomials in normal form over a fixed family of
//! presentations.

mod map;
mod poly;
mod presentation;
mod probe;
mod rewrite;
pub mod standard;

pub use map::{embed, monomial_inverse, split_mono, tensor_elems, AlgebraMap};
pub use poly::{Mono, NCPoly};
pub use presentation::{Generator, OrderedRule, Pres, Presentation, Rhs, Swap, Word};
pub use probe::{basis_monomials, confluence_probe, random_word, random_word_deg, word_string, Discrepancy, ProbeReport};
pub use rewrite::Strategy;
