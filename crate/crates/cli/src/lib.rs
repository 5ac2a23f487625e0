//! Command-line front end for the gatebound toolkit: gate profiles with
//! capacity estimates, circuit gate-count bounds, the parity and
//! population-count reproduction reports, and the oracle-equivalence
//! selftest.

pub mod fixtures;
pub mod oracles;
pub mod report;
pub mod selftest;

pub use oracles::{binomial_entropy_bits, fig2_table, oracle_majority_gain, Fig2Row};
pub use report::{
    run_circuit, run_fig2, run_gate, run_parity, run_selftest, Report, RunOptions,
};
