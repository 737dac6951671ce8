//! Differential error-correcting index codes over prime fields, and the
//! matroid certificates equivalent to them.
//!
//! An index-coding instance is a quadruple (m, n, χ, f): one sender with n
//! messages, m receivers, receiver i holding the messages in χ_i and
//! demanding message f(i). A scalar linear code is an n×N matrix L; it
//! corrects δ_i symbol errors at receiver i when every admissible
//! interference vector z (zero on χ_i, nonzero on f(i)) satisfies
//! wt(zL) ≥ 2δ_i + 1.
//!
//! The crate provides three mutually independent verification routes —
//! the weight criterion, the per-error-pattern rank criterion, and the
//! matroidal conditions on a certificate built from L — plus brute-force
//! decoding, Monte Carlo error injection, and minimal-length search with
//! canonical-form pruning.
//!
//! Verification grids (receivers, error patterns, search candidates, Monte
//! Carlo trials) run data-parallel by default via the `parallel` feature;
//! disabling it yields a dependency-free sequential build with identical
//! results.

pub mod bridge;
pub mod decode;
pub mod error;
mod exec;
pub mod field;
pub mod formats;
pub mod matrix;
pub mod matroid;
pub mod problem;
pub mod search;
pub mod verify;

#[cfg(test)]
pub(crate) mod testdata;

pub use bridge::{
    certificate_to_code, check_condition_a, check_condition_b, check_condition_c, check_matroidal,
    check_matroidal_any_basis, code_to_certificate, equivalence_harness, BridgeReport,
    BridgeWitness, Certificate, GroundMap,
};
pub use decode::{decode, simulate, simulate_seq, DecodeOutcome, SimulationReport};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use formats::{CertificateFile, InstanceFile};
pub use matrix::{in_column_span, same_row_space, vec_mat_mul, FieldMatrix, FieldVector};
pub use matroid::{LabelSet, VectorMatroid};
pub use problem::{ErrorPattern, ErrorProfile, IndexCode, Problem};
pub use search::{
    refute_length, search, LengthOutcome, LengthStatus, SearchMode, SearchResult, SearchSpec,
    DEFAULT_CEILING,
};
pub use verify::{
    verify_rank, verify_rank_seq, verify_weight, verify_weight_seq, ReceiverVerdict,
    VerifierReport, Witness,
};
