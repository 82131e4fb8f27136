//! Exact, desk-scale computations on forbidden patterns in d-dimensional
//! 0-1 matrices: containment, extremal/saturation/semisaturation numbers,
//! pattern transforms, witness constructions, and structural classifiers.
//!
//! All values are computed exactly by guarded exhaustive search; nothing in
//! this crate approximates. Every public function is a pure function over
//! immutable inputs and is safe to call from multiple threads.

pub mod classify;
pub mod containment;
pub mod constructions;
pub mod error;
pub mod search;
pub mod tensor;
pub mod transforms;

pub use classify::{
    ex_o1_decide, minnonlin_count_bound, minnonlin_filters, ssat_bounded_single, ssat_exponent,
    ssat_property_i, ssat_property_ii, FaceWitness, FailedProperty, MinnonlinReport, O1Verdict,
    PropertyIOutcome, PropertyIIOutcome, SectionViolation, SsatClassification,
};
pub use constructions::{
    family_bdr, family_pkr, identity_equivalents, inflate_empty_layers, j_family, line_witness,
    single_one_saturated, ssat_exponent_pattern, ssat_witness, Family, JFamily,
};
pub use containment::{contains, contains_any, contains_using, Embedding};
pub use error::{Error, Result};
pub use num_bigint::BigUint;
pub use search::{
    ex_exact, ex_exact_with, is_saturated, is_semisaturated, sat_exact, sat_exact_with,
    saturate_greedy, ssat_exact, ssat_exact_with, SearchConfig, SearchOutcome,
};
pub use tensor::{is_k_orthogonal, Coord, FaceSpec, SectionSpec, Side, Tensor01};
pub use transforms::{insert_empty_layer, insert_one_layers, lift_entry, lower_entry, replicate_dim};
