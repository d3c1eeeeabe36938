//! Moments over primitive characters, their predicted main terms, and the
//! exact counting identities used for the fourth moment.

mod combinatorics;
mod constants;
mod empirical;
mod predict;

pub use combinatorics::{
    compose_triple, count_coprime_splittings, count_coprime_splittings_brute, cross_coprime,
    decompose_triple_product, gamma_identity_check, gamma_weight, monic_divisors, primorial,
    PrimorialRecord, SplittingSides, TripleDecomposition,
};
pub use constants::{
    a_k, default_cutoff, f_k, local_euler_polynomial, local_moment_sum, mertens_product,
    ratio_to_f64, ArithmeticFactor, MertensProduct,
};
pub use empirical::{
    character_values, character_values_of, empirical_moment, moment_average, moment_report,
    pairwise_sum, prediction_for, primitive_values, splitting_ratio, CharacterValues, MomentKind,
    MomentReport,
};
pub use predict::{
    coprime_harmonic_sum, divisor_correction, predicted_moment, HarmonicSum, PredictedMoment,
    Prediction,
};
