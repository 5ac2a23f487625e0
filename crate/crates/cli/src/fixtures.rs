//! Netlist fixtures: parity cascades and the population-count circuits used
//! by the reproduction reports and the test suites.

/// Cascade of XOR gates computing whether the number of zeros in the input
/// is even or odd. Odd widths get an extra constant-one input wire named
/// `one`, which callers must feed with 1.
pub fn parity_netlist(n: usize) -> String {
    assert!(n >= 2, "parity needs at least two bits");
    let mut inputs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let odd = n % 2 == 1;
    if odd {
        inputs.push("one".to_string());
    }
    let mut out = String::new();
    out.push_str("# zero-parity of the input bits via an XOR cascade\n");
    out.push_str(&format!("inputs {}\n", inputs.join(" ")));
    let mut prev = inputs[0].clone();
    for (i, next) in inputs[1..].iter().enumerate() {
        let wire = format!("p{}", i + 1);
        out.push_str(&format!("{wire} = XOR {prev} {next}\n"));
        prev = wire;
    }
    out.push_str(&format!("outputs {prev}\n"));
    out
}

/// Two-bit population count (half adder): carry and sum.
pub fn half_adder_netlist() -> String {
    "# two-bit population count (half adder)\n\
     inputs a b\n\
     a1 a2 = FANOUT a\n\
     b1 b2 = FANOUT b\n\
     nab = NAND a1 b1\n\
     c = NOT nab\n\
     s = XOR a2 b2\n\
     outputs c s\n"
        .to_string()
}

/// Three-bit population count (full adder) built from two NAND gates, three
/// XOR gates and two NOT gates, plus explicit FANOUT copies.
pub fn full_adder_netlist() -> String {
    "# three-bit population count (full adder)\n\
     inputs a b cin\n\
     a1 a2 = FANOUT a\n\
     b1 b2 = FANOUT b\n\
     c1 c2 = FANOUT cin\n\
     t = XOR a1 b1\n\
     t1 t2 = FANOUT t\n\
     s = XOR t1 c1\n\
     nab = NAND a2 b2\n\
     u = NOT nab\n\
     nct = NAND c2 t2\n\
     v = NOT nct\n\
     carry = XOR u v\n\
     outputs carry s\n"
        .to_string()
}

/// Four-bit population count: a full adder on the first three bits followed
/// by two half-adder stages folding in the fourth.
pub fn four_bit_count_netlist() -> String {
    "# four-bit population count\n\
     inputs a b c d\n\
     a1 a2 = FANOUT a\n\
     b1 b2 = FANOUT b\n\
     c1 c2 = FANOUT c\n\
     t = XOR a1 b1\n\
     t1 t2 = FANOUT t\n\
     s1 = XOR t1 c1\n\
     nab = NAND a2 b2\n\
     u = NOT nab\n\
     nct = NAND c2 t2\n\
     v = NOT nct\n\
     w = XOR u v\n\
     s1a s1b = FANOUT s1\n\
     d1 d2 = FANOUT d\n\
     nsd = NAND s1a d1\n\
     k = NOT nsd\n\
     o0 = XOR s1b d2\n\
     wa wb = FANOUT w\n\
     ka kb = FANOUT k\n\
     nwk = NAND wa ka\n\
     o2 = NOT nwk\n\
     o1 = XOR wb kb\n\
     outputs o2 o1 o0\n"
        .to_string()
}

/// Population-count netlist for 2..=4 input bits: output wires carry the
/// number of ones in binary, most significant first.
pub fn majority_netlist(n: usize) -> Option<String> {
    match n {
        2 => Some(half_adder_netlist()),
        3 => Some(full_adder_netlist()),
        4 => Some(four_bit_count_netlist()),
        _ => None,
    }
}

/// A user-table fixture exercising the `table` block of the format.
pub fn majority_vote_table_netlist() -> String {
    "inputs a b c\n\
     table MAJ3 3 1\n\
     000 -> 0\n\
     001 -> 0\n\
     010 -> 0\n\
     011 -> 1\n\
     100 -> 0\n\
     101 -> 1\n\
     110 -> 1\n\
     111 -> 1\n\
     w = MAJ3 a b c\n\
     outputs w\n"
        .to_string()
}

/// All named fixtures, for round-trip and consistency suites.
pub fn all_fixtures() -> Vec<(&'static str, String)> {
    vec![
        ("parity2", parity_netlist(2)),
        ("parity3", parity_netlist(3)),
        ("parity4", parity_netlist(4)),
        ("count2", half_adder_netlist()),
        ("count3", full_adder_netlist()),
        ("count4", four_bit_count_netlist()),
        ("maj3_table", majority_vote_table_netlist()),
    ]
}
