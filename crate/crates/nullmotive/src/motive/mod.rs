//! Exact arithmetic in the localized motive ring and its half-power extension.

mod half;
mod laurent;
mod polymap;
mod qfun;
mod rational;

pub use half::{HalfPoly, HalfRat};
pub use laurent::{poly, LaurentPoly};
pub use qfun::{
    gauss_binomial, gauss_binomial_dim, gauss_multinomial, gl_motive, group_motive,
    group_motive_inverse, multinomial_coefficient, pochhammer, pochhammer_dim,
    pochhammer_dim_factors,
};
pub use rational::{den_poly, unit_factorization, DenFactors, MotiveRat};
