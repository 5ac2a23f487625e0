//! Quantum accounting for classical irreversible logic.
//!
//! Classical bits are carried by orthogonal maximally entangled two-qubit
//! states, one Bell pair per bit, and irreversible gates become
//! trace-non-preserving quantum operations on the encoded pairs. Every gate
//! then owns three nonlocal numbers measured across the A:B cut of the
//! pairs: how much entanglement it can create, how much it can destroy, and
//! how many ebits a concrete distributed implementation consumes. Dividing a
//! circuit's creation capacity by a gate's implementation cost yields a
//! lower bound on how many of those gates any realization of the circuit
//! needs.
//!
//! The crate is organized bottom-up:
//!
//! - [`qsim`]: dense state vectors, density matrices, partial traces and
//!   Hermitian spectra for small registers;
//! - [`encoding`]: the Bell-pair encoding and a Walsh–Hadamard fast path
//!   that evaluates reductions across the cut without leaving the
//!   2^n-dimensional logical subspace;
//! - [`measures`]: entropies, entanglement of pure states, the
//!   S(Tr_B ρ) − S(ρ) gain bound, and the closed-form family expression for
//!   two-bit universal gates;
//! - [`gates`]: truth tables, their unitary dilations, and the catalog of
//!   built-in nonlocal profiles;
//! - [`capacity`]: derivative-free search for entangling and disentangling
//!   capacity lower bounds, plus entanglement-cost accounting;
//! - [`circuit`]: the netlist text format, classical evaluation, channel
//!   composition and gate-count bound reports.

pub mod capacity;
pub mod circuit;
pub mod encoding;
pub mod error;
pub mod gates;
pub mod measures;
mod optim;
pub mod qsim;

pub use encoding::{
    encode_bit, encode_logical, fast_walsh_hadamard, reduced_diagonal_fast, BellBasis, Encoded,
    LogicalState,
};
pub use error::{Error, Result};
pub use gates::{
    apply_gate, builtin_profile, catalog_table, dilation_from_truth_table, DilationModel,
    NonlocalProfile, TruthTable,
};
pub use measures::{
    binary_entropy, gain_lower_bound, logical_gain_lower_bound, logical_pure_entanglement,
    pure_entanglement, ree_nand_family, ree_nand_family_printed, shannon_entropy,
    von_neumann_entropy, Ebits, ExtensionParams,
};
pub use qsim::{CMat, DensityMatrix, Partition, QubitLabel, Side, StateVector};

/// The complex scalar used throughout.
pub use num_complex::Complex64;
