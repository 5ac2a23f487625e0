//! Oracle-equivalence suites: the compact logical representation against
//! the full Hilbert-space simulation, quantum channels against classical
//! evaluation, and parser round-trips.

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gatebound_core::circuit::{
    evaluate_classical, parse_netlist, pretty_print, simulate_channel, ExtensionChoice,
    GateInstance, Netlist,
};
use gatebound_core::encoding::{
    encode_logical, random_mixed_logical, random_pure_logical, reduced_diagonal_fast, Encoded,
    LogicalState,
};
use gatebound_core::gates::catalog_table;

use crate::fixtures::all_fixtures;

/// Outcome of one suite: worst deviation seen across all cases.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub passed: bool,
}

/// Compare the Walsh fast path against the full-space partial trace for
/// random pure and mixed logical states of up to four pairs.
pub fn fast_path_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfa57_7a7e);
    let mut max_error = 0.0f64;
    for i in 0..cases {
        let n = 1 + (i % 4);
        let ls = if i % 2 == 0 {
            random_pure_logical(n, &mut rng)
        } else {
            random_mixed_logical(n, &mut rng)
        };
        let fast = reduced_diagonal_fast(&ls);
        let full = match encode_logical(&ls).expect("within caps") {
            Encoded::Vector(v) => v.to_density().expect("within caps"),
            Encoded::Matrix(m) => m,
        };
        let a_side: Vec<usize> = (0..n).map(|p| 2 * p).collect();
        let reduced = full.partial_trace(&a_side).expect("valid keep set");
        for (z, &f) in fast.iter().enumerate() {
            max_error = max_error.max((reduced.entry(z, z).re - f).abs());
        }
        for r in 0..(1usize << n) {
            for c in 0..(1usize << n) {
                if r != c {
                    max_error = max_error.max(reduced.entry(r, c).norm());
                }
            }
        }
        let sum: f64 = fast.iter().sum();
        max_error = max_error.max((sum - 1.0).abs());
    }
    SuiteResult {
        name: "fast_path_vs_full_trace".into(),
        cases,
        max_error,
        passed: max_error <= 1e-10,
    }
}

/// Draw a random valid netlist: catalog gates over live wires, linear
/// consumption, every remaining wire declared as an output.
pub fn random_netlist<R: Rng>(rng: &mut R, max_inputs: usize, max_gates: usize) -> Netlist {
    const POOL: &[&str] = &[
        "NOT", "RESET", "XOR", "AND", "OR", "NAND", "NOR", "CNOT", "TOFFOLI", "FANOUT",
    ];
    let n_in = rng.gen_range(1..=max_inputs);
    let inputs: Vec<String> = (0..n_in).map(|i| format!("x{i}")).collect();
    let mut live: Vec<String> = inputs.clone();
    let mut gates: Vec<GateInstance> = Vec::new();
    let mut fresh = 0usize;
    let n_gates = rng.gen_range(0..=max_gates);
    for _ in 0..n_gates {
        let feasible: Vec<&str> = POOL
            .iter()
            .copied()
            .filter(|name| {
                let t = catalog_table(name).expect("pool name");
                // catalog gates use at most one ancilla pair, so the live
                // register plus one must stay within the cap
                t.n_in <= live.len() && live.len() < 10
            })
            .collect();
        if feasible.is_empty() {
            break;
        }
        let name = *feasible.choose(rng).expect("nonempty");
        let t = catalog_table(name).expect("pool name");
        live.shuffle(rng);
        let consumed: Vec<String> = live.drain(..t.n_in).collect();
        let outs: Vec<String> = (0..t.m_out)
            .map(|_| {
                fresh += 1;
                format!("w{fresh}")
            })
            .collect();
        live.extend(outs.iter().cloned());
        gates.push(GateInstance {
            outputs: outs,
            gate: name.to_string(),
            inputs: consumed,
        });
    }
    live.sort();
    Netlist {
        inputs,
        gates,
        outputs: live,
        tables: Vec::new(),
    }
}

/// Classical-quantum consistency on random netlists: the composed channel
/// on an encoded basis string must land exactly on the encoded classical
/// output.
pub fn netlist_consistency_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0e71_1457);
    let mut max_error = 0.0f64;
    let mut evaluated = 0usize;
    for _ in 0..cases {
        let nl = random_netlist(&mut rng, 5, 5);
        // the generator must agree with the parser about validity
        let reparsed = parse_netlist(&pretty_print(&nl)).expect("generated netlist parses");
        assert_eq!(reparsed, nl);
        let n = nl.inputs.len();
        for x in 0..(1usize << n) {
            let bits = format!("{x:0width$b}", width = n);
            let classical = evaluate_classical(&nl, &bits).expect("valid inputs");
            let expect = usize::from_str_radix(&classical, 2).expect("binary output");
            let out = simulate_channel(&nl, &LogicalState::basis(n, x), ExtensionChoice::Canonical)
                .expect("within caps");
            max_error = max_error.max((out.basis_weight(expect) - 1.0).abs());
            evaluated += 1;
        }
    }
    SuiteResult {
        name: "classical_quantum_consistency".into(),
        cases: evaluated,
        max_error,
        passed: max_error <= 1e-10,
    }
}

/// Parse -> pretty-print -> parse must be the identity on all fixtures.
pub fn parser_roundtrip_suite() -> SuiteResult {
    let mut cases = 0usize;
    let mut passed = true;
    for (name, text) in all_fixtures() {
        let nl = parse_netlist(&text).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
        let printed = pretty_print(&nl);
        let reparsed = parse_netlist(&printed).unwrap_or_else(|e| panic!("fixture {name}: {e}"));
        passed &= reparsed == nl && printed == pretty_print(&reparsed);
        cases += 1;
    }
    SuiteResult {
        name: "parser_roundtrip".into(),
        cases,
        max_error: if passed { 0.0 } else { 1.0 },
        passed,
    }
}

/// All suites, in a fixed order.
pub fn run_all(seed: u64, states: usize, netlists: usize) -> Vec<SuiteResult> {
    vec![
        fast_path_suite(seed, states),
        netlist_consistency_suite(seed, netlists),
        parser_roundtrip_suite(),
    ]
}
