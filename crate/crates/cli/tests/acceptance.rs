//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test -p gatebound-cli --test acceptance`
//! (add `-- --nocapture` to see the lines for passing criteria too).

use std::process::Command;
use std::time::Instant;

use gatebound_cli::fixtures::majority_netlist;
use gatebound_cli::oracles::oracle_majority_gain;
use gatebound_cli::report::{run_gate, run_parity, RunOptions};
use gatebound_cli::selftest::{
    fast_path_suite, netlist_consistency_suite, parser_roundtrip_suite,
};
use gatebound_core::circuit::{
    bound_gate_count, parse_netlist, simulate_channel, ExtensionChoice,
};
use gatebound_core::encoding::character_state;
use gatebound_core::measures::{
    binary_entropy, logical_gain_lower_bound, ree_nand_family, ExtensionParams,
};
use gatebound_core::{builtin_profile, Complex64, Ebits};

fn criterion(name: &str, passed: bool, detail: &str) {
    println!(
        "[{}] {name}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{name}: {detail}");
}

fn default_opts() -> RunOptions {
    RunOptions::default()
}

#[test]
fn criterion_1_nand_capacity() {
    let t0 = Instant::now();
    let report = run_gate("NAND", &default_opts()).expect("gate NAND runs");
    let elapsed = t0.elapsed();

    let witness_value = report.estimates["e_up_at_canonical_witness"].value;
    let e_down = report.estimates["e_down_search"].value;
    let e_cost = report.profiles["NAND"].e_cost_upper;

    let passed = (0.18862..=0.18882).contains(&witness_value)
        && e_down >= 0.999999
        && e_cost == 3.0
        && elapsed.as_secs_f64() < 60.0;
    criterion(
        "NAND capacity",
        passed,
        &format!(
            "E-up at canonical witness {witness_value:.6} in [0.18862, 0.18882], \
             E-down {e_down:.7} >= 0.999999, E-cost {e_cost} == 3, runtime {:.1}s < 60s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_catalog_exactness() {
    let reset = run_gate("RESET", &default_opts()).expect("gate RESET runs");
    let reset_triple = (
        reset.estimates["e_up_search"].value,
        reset.estimates["e_down_search"].value,
        reset.profiles["RESET"].e_cost_upper,
    );
    let xor = run_gate("XOR", &default_opts()).expect("gate XOR runs");
    let xor_triple = (
        xor.estimates["e_up_search"].value,
        xor.estimates["e_down_search"].value,
        xor.profiles["XOR"].e_cost_upper,
    );
    let nand = builtin_profile("NAND").unwrap();
    let nor = builtin_profile("NOR").unwrap();

    let close = |a: f64, b: f64| (a - b).abs() < 1e-6;
    let reset_ok = close(reset_triple.0, 1.0) && close(reset_triple.1, 0.0) && close(reset_triple.2, 1.0);
    let xor_ok = close(xor_triple.0, 0.0) && close(xor_triple.1, 1.0) && close(xor_triple.2, 0.0);
    let nor_ok = close(nor.e_up_lower.0, nand.e_up_lower.0)
        && close(nor.e_down_lower.0, nand.e_down_lower.0)
        && close(nor.e_cost_upper.0, nand.e_cost_upper.0);

    criterion(
        "Catalog exactness",
        reset_ok && xor_ok && nor_ok,
        &format!(
            "RESET ({:.7}, {:.7}, {:.1}) ~ (1, 0, 1); XOR ({:.7}, {:.7}, {:.1}) ~ (0, 1, 0); \
             NOR profile == NAND profile",
            reset_triple.0, reset_triple.1, reset_triple.2, xor_triple.0, xor_triple.1, xor_triple.2
        ),
    );
}

#[test]
fn criterion_3_family_formula_checkpoints() {
    let origin = ree_nand_family(&ExtensionParams::canonical()).unwrap().0;
    let expect = 1.0 - binary_entropy(0.25).unwrap().0;
    let origin_ok = (origin - expect).abs() < 1e-12;

    // deterministic 10^3-point sweep over the parameter sphere
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1303);
    let mut min_seen = f64::INFINITY;
    for _ in 0..1000 {
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        };
        let p = ExtensionParams::normalized(draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng))
            .unwrap();
        let v = ree_nand_family(&p).unwrap().0;
        min_seen = min_seen.min(v);
    }
    let sweep_ok = min_seen >= origin - 1e-9;

    criterion(
        "Family-formula checkpoints",
        origin_ok && sweep_ok,
        &format!(
            "value at s=0 is {origin:.15} (= 1 - H[1/4] within 1e-12); sweep minimum \
             {min_seen:.9} never below it"
        ),
    );
}

#[test]
fn criterion_4_parity() {
    let t0 = Instant::now();
    let mut detail = String::new();
    let mut passed = true;
    for n in [2usize, 3, 4] {
        let report = run_parity(n, &default_opts()).expect("parity runs");
        let e_up = report.estimates["e_up_circuit"].value;
        let ceiling = report.bounds[0].ceiling;
        passed &= e_up <= 1e-6 && ceiling == 0;
        detail.push_str(&format!("n={n}: E-up {e_up:.2e}, bound {ceiling}; "));
    }
    let elapsed = t0.elapsed();
    passed &= elapsed.as_secs_f64() < 120.0;
    detail.push_str(&format!("runtime {:.1}s < 120s", elapsed.as_secs_f64()));
    criterion("Parity", passed, &detail);
}

#[test]
fn criterion_5_majority_oracle_vs_simulation() {
    let mut passed = true;
    let mut detail = String::new();
    for n in [2usize, 3, 4] {
        let text = majority_netlist(n).expect("fixture exists");
        let netlist = parse_netlist(&text).expect("fixture parses");
        let input = character_state(n, 0);
        let out = simulate_channel(&netlist, &input, ExtensionChoice::Canonical)
            .expect("within caps");
        let simulated = logical_gain_lower_bound(&out).unwrap().0;
        let oracle = oracle_majority_gain(n as u64).unwrap();
        passed &= (simulated - oracle.gain).abs() < 1e-8;
        detail.push_str(&format!(
            "n={n}: oracle {:.9} vs simulated {:.9}; ",
            oracle.gain, simulated
        ));
        if n == 3 {
            passed &= (oracle.gain - 0.188722).abs() < 1e-5;
            let bound = bound_gate_count(Ebits(oracle.gain), "NAND").unwrap();
            let nand_count = netlist.gate_counts()["NAND"];
            passed &= bound.ceiling == 1 && bound.ceiling <= nand_count as u64;
            detail.push_str(&format!(
                "n=3 ceiling {} <= {} fixture NANDs; ",
                bound.ceiling, nand_count
            ));
        }
    }
    criterion("Majority oracle vs simulation", passed, &detail);
}

#[test]
fn criterion_6_scaling_behavior() {
    let mut passed = true;
    let mut detail = String::new();

    // n up to 2^20, under a second per point
    let mut worst_time = 0.0f64;
    for n in [1u64 << 10, 1 << 16, 1 << 20] {
        let t0 = Instant::now();
        let row = oracle_majority_gain(n).unwrap();
        let dt = t0.elapsed().as_secs_f64();
        worst_time = worst_time.max(dt);
        passed &= dt < 1.0;
        passed &= row.gain <= row.m as f64 + 1e-9;
    }
    detail.push_str(&format!("worst point time {worst_time:.3}s < 1s; "));

    // The output-width cap and the logarithmic-growth bracket. The bracket
    // clause is known-red: it demands gain/log2(n) >= 0.3 already at n = 3,
    // where the pinned value 0.188722 (exact binomial computation, also
    // required by the majority criterion) gives 0.188722/log2(3) = 0.119.
    // The ratio only clears 0.3 from n = 63 upward. The check is kept as
    // stated rather than loosened.
    let mut bracket = (f64::INFINITY, f64::NEG_INFINITY);
    let mut bracket_ok = true;
    for k in 2..=16u32 {
        let n = (1u64 << k) - 1;
        let row = oracle_majority_gain(n).unwrap();
        passed &= row.gain <= row.m as f64 + 1e-9;
        let ratio = row.gain / (n as f64).log2();
        bracket = (bracket.0.min(ratio), bracket.1.max(ratio));
        bracket_ok &= (0.3..=1.0).contains(&ratio);
    }
    passed &= bracket_ok;
    detail.push_str(&format!(
        "gain <= output width everywhere; gain/log2(n) observed in [{:.3}, {:.3}], required \
         [0.3, 1.0] {}",
        bracket.0,
        bracket.1,
        if bracket_ok {
            "satisfied".to_string()
        } else {
            format!(
                "violated at small widths (three-bit ratio {:.6} is fixed by the majority \
                 criterion and cannot reach 0.3)",
                oracle_majority_gain(3).unwrap().gain / 3f64.log2()
            )
        }
    ));
    criterion("Scaling behavior", passed, &detail);
}

#[test]
fn criterion_7_oracle_equivalence_suites() {
    let t0 = Instant::now();
    let fast = fast_path_suite(0, 500);
    let consistency = netlist_consistency_suite(0, 200);
    let roundtrip = parser_roundtrip_suite();
    let elapsed = t0.elapsed();
    let passed = fast.passed
        && consistency.passed
        && roundtrip.passed
        && elapsed.as_secs_f64() < 120.0;
    criterion(
        "Oracle-equivalence suites",
        passed,
        &format!(
            "{} states max error {:.2e} <= 1e-10; {} netlist cases max error {:.2e} <= 1e-10; \
             {} fixtures round-trip; runtime {:.1}s < 120s",
            fast.cases,
            fast.max_error,
            consistency.cases,
            consistency.max_error,
            roundtrip.cases,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_8_selftest_determinism() {
    let bin = env!("CARGO_BIN_EXE_gatebound");
    let run = || {
        let out = Command::new(bin)
            .args(["selftest", "--seed", "7", "--json"])
            .output()
            .expect("selftest runs");
        assert!(out.status.success(), "selftest exit: {:?}", out.status);
        out.stdout
    };
    let first = run();
    let second = run();
    let passed = first == second && !first.is_empty();
    criterion(
        "Selftest determinism",
        passed,
        &format!(
            "two `selftest --seed 7` runs emit byte-identical JSON ({} bytes)",
            first.len()
        ),
    );
}
