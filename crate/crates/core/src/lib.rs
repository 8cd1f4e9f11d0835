//! Quantum circuit simulation on reduced Pauli-LIMDDs.
//!
//! A LIMDD is a decision diagram whose edges carry a scalar times a Pauli
//! string, so nodes that differ by a local Pauli map are merged. The crate
//! provides the Pauli group toolkit, the canonical diagram store, gate
//! application and measurement, structured state constructors, a circuit
//! format with a dense reference simulator, and an annealing search for
//! stabilizer-rank decompositions of Dicke states.

pub mod pauli;
pub mod dd;
pub mod sim;
pub mod dense;
pub mod states;
pub mod circuit;
pub mod stabrank;
