//! Exact scalars: rational functions in `q` and the q-special functions.

mod intpoly;
mod qfunc;
mod qscalar;
mod upoly;

pub use intpoly::IntPoly;
pub use qfunc::{
    base_number, gauss_binomial, jackson_q_integral_01, q_beta, q_factorial, q_gamma, q_number,
    q_pochhammer,
};
pub use qscalar::{QRational, QScalar};
pub use upoly::QPoly;
