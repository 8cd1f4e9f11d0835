//! Phase-exact Pauli arithmetic, check vectors and GF(2) group toolkit.
//!
//! Qubit `n` is the most significant position everywhere: in strings, in
//! check vectors `(x_n..x_1 | z_n..z_1)` and in printed forms such as `-i*XZY`.

mod clifford;
mod group;
mod lexmin;
mod lim;
mod string;

pub use clifford::{clifford_to_z_form, CliffordCircuit, CliffordGate};
pub use group::{zassenhaus_intersect, GeneratorSet};
pub use lexmin::{
    arg_lex_min, arg_lex_min_with, coset_meet_with, find_opposite, intersect_isomorphism_sets,
    intersect_stabilizer_groups, intersect_stabilizer_groups_z_form, intersection_of, lex_min,
    lex_min_from_reduced,
    opposite_of, SharedStrings, LexMin, PairBasis,
};
pub use lim::{approx_eq, eighth_root, polar, scalar_cmp, CheckVector, PauliLim, Scalar};
pub use string::{PauliOp, PauliString, MAX_QUBITS};

/// Tolerance for ordering comparisons of real quantities.
pub const EPS_ORD: f64 = 1e-9;
/// Tolerance for equality of scalars.
pub const EPS_EQ: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PauliError {
    #[error("length mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("not a stabilizer subgroup: {0}")]
    NotStabilizerGroup(String),
    #[error("generators are not independent")]
    DependentGenerators,
    #[error("expected only I/Z strings")]
    NotDiagonal,
    #[error("generator scalar must be +1 or -1, got {0}")]
    InvalidScalar(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("qubit {qubit} out of range for {n} qubits")]
    IndexOutOfRange { qubit: u32, n: u32 },
    #[error("{0} qubits exceeds the supported width")]
    TooManyQubits(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
