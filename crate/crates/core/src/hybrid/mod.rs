//! The hybrid Euler–Hadamard factorisation `L = P_X Z_X`.

mod bump;
mod coeffs;
mod euler;
mod zeros;

pub use bump::{BumpProfile, BumpShape};
pub use coeffs::{CoeffKind, CoefficientSystem, SmoothSeries};
pub use euler::{euler_product_eval, p_star_eval, p_x_eval, p_x_log};
pub use zeros::{
    explicit_formula_sides, u_term, z_x_from_zeros, z_x_from_zeros_of, z_x_quotient,
    ExplicitFormulaSides, ZeroSum, BRANCH_EPS,
};

pub use crate::special::e1;

#[cfg(test)]
mod tests;
