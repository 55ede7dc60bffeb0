//! Exact linear algebra over the rationals, centred on skew-symmetric
//! matrices and their Pfaffians. Determinants and the index sign conventions
//! live here too.

mod index;
mod matrix;
mod pfaffian;

pub use index::{sequence_sign, sign_of_set, IndexSet, Permutation};
pub use matrix::{determinant, Matrix, SkewMatrix};
pub use pfaffian::{
    complementary_pairing, conjugate_by_permutation, pfaffian, pfaffian_sum_expansion,
    pfaffian_sum_expansion_capped, spf_vector, spf_vector_capped, sub_pfaffian, tilde,
    SubPfaffians, EXPONENTIAL_CAP,
};
