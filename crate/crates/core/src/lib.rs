//! Z_{2^s}-additive simplex, Hadamard and MacDonald codes, their binary
//! images under Carlet's generalized Gray map, and the kernel and rank of
//! those images.
//!
//! ```
//! use z2s_codes::{invariant_report, Budget, FamilySpec};
//!
//! let report = invariant_report(&FamilySpec::simplex_alpha(2, 2), &Budget::default()).unwrap();
//! assert_eq!((report.ker, report.rank), (Some(2), Some(5)));
//! ```

pub mod binary;
pub mod bits;
pub mod code;
pub mod constructions;
pub mod error;
pub mod gray;
pub mod invariants;
pub mod ring;
pub mod table1;
pub mod text;
pub mod verify;

pub use binary::{
    is_hadamard, is_linear, kernel_binary, kernel_dimension, min_hamming_distance, rank_binary,
    weight_distribution, BinaryCode,
};
pub use bits::{hamming_distance, hamming_weight, BitVector, Gf2Basis};
pub use code::{normal_form, AdditiveCode, Budget, CodeType, GeneratorMatrix};
pub use constructions::{
    beta_deletion_indices, hadamard_gen, macdonald_alpha, macdonald_beta, rotate_all_one_row,
    simplex_alpha, simplex_beta, strip_all_one_row, Family, FamilySpec,
};
pub use error::{Error, Result};
pub use gray::{gray_matrix, phi, phi_inverse, phi_inverse_vector, phi_vector, GrayMatrix};
pub use invariants::{
    code_report, gray_image, hadamard_kernel_expected, invariant_report, kernel_additive,
    AdditiveKernel, InvariantReport,
};
pub use ring::{RingScalar, RingVector, MAX_S};
