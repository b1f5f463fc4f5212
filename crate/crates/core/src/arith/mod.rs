//! Exact arithmetic: rationals, parameter polynomials, polynomials and
//! rational functions in x.

pub mod gcd;
pub mod linalg;
pub mod modp;
pub mod param_poly;
pub mod rat;
pub mod xpoly;
pub mod xrat;

pub use param_poly::ParamPoly;
pub use rat::Rat;
pub use xpoly::XPoly;
pub use xrat::XRat;
