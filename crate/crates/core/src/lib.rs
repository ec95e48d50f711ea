#![no_std]
//! Exact symbolic engine for the quantum group O(SL_q(2)): rational
//! functions in `q`, normal forms in the algebra and its localizations,
//! Hopf structure, comodules, trivialization charts, the Haar state and
//! coherent states.

extern crate alloc;

pub mod bundle;
pub mod charts;
pub mod check;
pub mod coherent;
pub mod comod;
pub mod errata;
pub mod error;
pub mod haar;
pub mod hopf;
pub mod linalg;
pub mod ncalg;
pub mod parse;
pub mod scalars;

pub use check::{Check, Status};
pub use error::{Error, Result};
pub use scalars::{QRational, QScalar};
