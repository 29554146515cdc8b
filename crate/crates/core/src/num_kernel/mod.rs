//! Classical special functions and semi-infinite adaptive quadrature.
//!
//! Everything here is a pure function of its arguments. These routines are
//! the oracle substrate the degenerate functions are checked against.

mod gamma;
mod incomplete_beta;
mod quadrature;

pub use gamma::{beta_classical, gamma_classical, ln_beta, ln_gamma};
pub use incomplete_beta::reg_incomplete_beta;
pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_semi_infinite_with, QuadratureResult,
    SemiInfiniteHints, ToleranceConfig,
};
