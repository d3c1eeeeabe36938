//! Dirichlet L-functions over `F_q[T]` and the hybrid Euler–Hadamard product.
//!
//! The crate is `no_std` (with `alloc`) and is organised bottom-up:
//!
//! * [`polyring`] – finite fields, polynomials over them, irreducibility,
//!   factorisation and the multiplicative arithmetic functions.
//! * [`chargroup`] – the unit group of `F_q[T]/R`, its Dirichlet characters,
//!   primitivity, parity and the orthogonality relations.
//! * [`lfunc`] – L-functions of non-trivial characters as polynomials in
//!   `u = q^{-s}`, their zeros and the short-sum identity for `|L(1/2)|^2`.
//! * [`hybrid`] – the partial Euler product `P_X`, the partial Hadamard
//!   product `Z_X`, the smoothing machinery (`E_1`, `U(z)`, Mellin transform)
//!   and the coefficient systems `alpha_k`, `alpha_{-1}`, `beta`.
//! * [`moments`] – moment averages over primitive characters, predicted main
//!   terms and the exact combinatorial identities behind the fourth moment.
//! * [`rmt`] – Haar-random unitary matrices and the CUE side of the model.
//!
//! IO, parallel scans and the command-line front end live in the `ffhybrid`
//! crate.

#![no_std]

extern crate alloc;

pub mod chargroup;
mod error;
pub mod hybrid;
pub mod lfunc;
mod math;
pub mod moments;
pub mod numeric;
pub mod polyring;
pub mod special;
pub mod rmt;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
/// `e^gamma`.
pub const EXP_EULER_GAMMA: f64 = 1.781_072_417_990_197_985_24;
