//! Netlist text format, parser, classical evaluator, channel composition
//! and the gate-count bound.
//!
//! The format is line-oriented. `#` starts a comment. The first significant
//! line is `inputs <name>+`, the last is `outputs <name>+`. Body lines are
//! either gate instances `<out>+ = <GATE> <in>+` or a table definition
//! `table <NAME> <n_in> <m_out>` followed by one `<inbits> -> <outbits>`
//! line per input string. Wire names match `[A-Za-z_][A-Za-z0-9_]*`; gate
//! and table names are upper-case and case-sensitive.
//!
//! Wires are single-assignment and linear: a wire may be consumed by at
//! most one gate, because the quantum lift cannot copy encoded bits
//! implicitly. Explicit copies use the FANOUT pseudo-gate (x -> xx). Gate
//! instances must appear after the wires they read.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::capacity::Channel;
use crate::encoding::LogicalState;
use crate::error::{Error, Result};
use crate::gates::{
    apply_gate, apply_gate_with_extension, builtin_profile, catalog_table,
    dilation_from_truth_table, DilationModel, TruthTable, MAX_LIVE_PAIRS,
};
use crate::measures::{Ebits, ExtensionParams};

/// Parse-time failure categories, each with a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    Syntax,
    UnknownGate,
    ArityMismatch,
    WireRedefinition,
    UseBeforeDefinition,
    Cycle,
    UndeclaredOutput,
    WireReuse,
}

/// A positioned parse or validation failure.
#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("{code:?} at line {line}, column {column}: {message}")]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            line,
            column,
            message: message.into(),
        }
    }
}

/// One gate instance: output wires, gate or table name, input wires.
#[derive(Clone, Debug, PartialEq)]
pub struct GateInstance {
    pub outputs: Vec<String>,
    pub gate: String,
    pub inputs: Vec<String>,
}

/// A validated combinational circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub gates: Vec<GateInstance>,
    pub outputs: Vec<String>,
    pub tables: Vec<TruthTable>,
}

impl Netlist {
    pub fn table_for(&self, gate: &str) -> Option<TruthTable> {
        self.tables
            .iter()
            .find(|t| t.name == gate)
            .cloned()
            .or_else(|| catalog_table(gate))
    }

    /// Instance count per gate name.
    pub fn gate_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.gate.clone()).or_insert(0) += 1;
        }
        counts
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_gate_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

/// Tokens of one line with 1-based starting columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

struct RawGate {
    line: usize,
    gate: String,
    outs: Vec<(usize, String)>,
    ins: Vec<(usize, String)>,
}

fn parse_bits(s: &str) -> Option<(usize, usize)> {
    let mut v = 0usize;
    for c in s.chars() {
        v = (v << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
    }
    Some((v, s.len()))
}

/// Parse and validate a netlist.
pub fn parse_netlist(text: &str) -> std::result::Result<Netlist, Diagnostic> {
    let syntax = |line, col, msg: String| Diagnostic::new(DiagnosticCode::Syntax, line, col, msg);

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    // header
    let (inputs, header_line) = match lines.next() {
        Some((ln, toks)) if toks[0].1 == "inputs" => {
            if toks.len() < 2 {
                return Err(syntax(ln, toks[0].0, "inputs line needs at least one name".into()));
            }
            let mut names = Vec::new();
            for &(col, name) in &toks[1..] {
                if !is_name(name) {
                    return Err(syntax(ln, col, format!("invalid wire name {name:?}")));
                }
                names.push(name.to_string());
            }
            (names, ln)
        }
        Some((ln, toks)) => {
            return Err(syntax(
                ln,
                toks[0].0,
                "first line must declare the circuit inputs".into(),
            ))
        }
        None => return Err(syntax(1, 1, "empty netlist".into())),
    };
    let _ = header_line;

    // body
    let mut tables: Vec<TruthTable> = Vec::new();
    let mut raw_gates: Vec<RawGate> = Vec::new();
    let mut outputs: Option<(usize, Vec<(usize, String)>)> = None;

    while let Some((ln, toks)) = lines.next() {
        if outputs.is_some() {
            return Err(syntax(
                ln,
                toks[0].0,
                "content after the outputs line".into(),
            ));
        }
        match toks[0].1 {
            "outputs" => {
                if toks.len() < 2 {
                    return Err(syntax(ln, toks[0].0, "outputs line needs at least one name".into()));
                }
                let names = toks[1..]
                    .iter()
                    .map(|&(c, n)| (c, n.to_string()))
                    .collect::<Vec<_>>();
                for (col, name) in &names {
                    if !is_name(name) {
                        return Err(syntax(ln, *col, format!("invalid wire name {name:?}")));
                    }
                }
                outputs = Some((ln, names));
            }
            "table" => {
                if toks.len() != 4 {
                    return Err(syntax(
                        ln,
                        toks[0].0,
                        "table header is `table <NAME> <n_in> <m_out>`".into(),
                    ));
                }
                let (name_col, name) = (toks[1].0, toks[1].1.to_string());
                if !is_gate_name(&name) {
                    return Err(syntax(
                        ln,
                        name_col,
                        format!("table name {name:?} must be upper-case"),
                    ));
                }
                if catalog_table(&name).is_some() || tables.iter().any(|t| t.name == name) {
                    return Err(syntax(ln, name_col, format!("table {name} already defined")));
                }
                let n_in: usize = toks[2]
                    .1
                    .parse()
                    .map_err(|_| syntax(ln, toks[2].0, "invalid input arity".into()))?;
                let m_out: usize = toks[3]
                    .1
                    .parse()
                    .map_err(|_| syntax(ln, toks[3].0, "invalid output arity".into()))?;
                if n_in == 0 || m_out == 0 || n_in > 10 {
                    return Err(syntax(ln, toks[2].0, "table arities must be in 1..=10".into()));
                }
                let rows = 1usize << n_in;
                let mut map: Vec<Option<u32>> = vec![None; rows];
                for _ in 0..rows {
                    let (rln, rtoks) = lines.next().ok_or_else(|| {
                        syntax(ln, toks[0].0, format!("table {name} is missing mapping lines"))
                    })?;
                    if rtoks.len() != 3 || rtoks[1].1 != "->" {
                        return Err(syntax(
                            rln,
                            rtoks[0].0,
                            "mapping line is `<inbits> -> <outbits>`".into(),
                        ));
                    }
                    let (x, in_len) = parse_bits(rtoks[0].1)
                        .ok_or_else(|| syntax(rln, rtoks[0].0, "input bits must be binary".into()))?;
                    let (y, out_len) = parse_bits(rtoks[2].1)
                        .ok_or_else(|| syntax(rln, rtoks[2].0, "output bits must be binary".into()))?;
                    if in_len != n_in || out_len != m_out {
                        return Err(Diagnostic::new(
                            DiagnosticCode::ArityMismatch,
                            rln,
                            rtoks[0].0,
                            format!("mapping widths must be {n_in} -> {m_out}"),
                        ));
                    }
                    if map[x].is_some() {
                        return Err(syntax(
                            rln,
                            rtoks[0].0,
                            format!("duplicate mapping for input {:0width$b}", x, width = n_in),
                        ));
                    }
                    map[x] = Some(y as u32);
                }
                let map: Vec<u32> = map.into_iter().map(|v| v.expect("row count checked")).collect();
                let table = TruthTable::new(name.clone(), n_in, m_out, map).map_err(|e| {
                    syntax(ln, name_col, format!("invalid table {name}: {e}"))
                })?;
                tables.push(table);
            }
            _ => {
                // gate line: <out>+ = <GATE> <in>+
                let eq_pos = toks.iter().position(|&(_, t)| t == "=").ok_or_else(|| {
                    syntax(ln, toks[0].0, "expected `<out>+ = <GATE> <in>+`".into())
                })?;
                if eq_pos == 0 || eq_pos + 1 >= toks.len() {
                    return Err(syntax(ln, toks[0].0, "malformed gate line".into()));
                }
                let outs: Vec<(usize, String)> = toks[..eq_pos]
                    .iter()
                    .map(|&(c, n)| (c, n.to_string()))
                    .collect();
                for (col, name) in &outs {
                    if !is_name(name) {
                        return Err(syntax(ln, *col, format!("invalid wire name {name:?}")));
                    }
                }
                let (gate_col, gate) = (toks[eq_pos + 1].0, toks[eq_pos + 1].1.to_string());
                if !is_gate_name(&gate) {
                    return Err(syntax(
                        ln,
                        gate_col,
                        format!("gate name {gate:?} must be upper-case"),
                    ));
                }
                let ins: Vec<(usize, String)> = toks[eq_pos + 2..]
                    .iter()
                    .map(|&(c, n)| (c, n.to_string()))
                    .collect();
                for (col, name) in &ins {
                    if !is_name(name) {
                        return Err(syntax(ln, *col, format!("invalid wire name {name:?}")));
                    }
                }
                if ins.is_empty() {
                    return Err(syntax(ln, gate_col, "gate needs at least one input".into()));
                }
                // gate must be known here (tables are defined before use)
                let table = tables
                    .iter()
                    .find(|t| t.name == gate)
                    .cloned()
                    .or_else(|| catalog_table(&gate))
                    .ok_or_else(|| {
                        Diagnostic::new(
                            DiagnosticCode::UnknownGate,
                            ln,
                            gate_col,
                            format!("unknown gate {gate}"),
                        )
                    })?;
                if ins.len() != table.n_in || outs.len() != table.m_out {
                    return Err(Diagnostic::new(
                        DiagnosticCode::ArityMismatch,
                        ln,
                        gate_col,
                        format!(
                            "{gate} takes {} input(s) and {} output(s), got {} and {}",
                            table.n_in,
                            table.m_out,
                            ins.len(),
                            outs.len()
                        ),
                    ));
                }
                raw_gates.push(RawGate {
                    line: ln,
                    gate,
                    outs,
                    ins,
                });
            }
        }
    }

    let (outputs_line, output_names) = outputs.ok_or_else(|| {
        syntax(
            text.lines().count().max(1),
            1,
            "netlist must end with an outputs line".into(),
        )
    })?;

    // wire definitions, in text order
    let mut defined_at: HashMap<String, usize> = HashMap::new(); // name -> defining gate index (usize::MAX for inputs)
    for name in &inputs {
        if defined_at.insert(name.clone(), usize::MAX).is_some() {
            return Err(Diagnostic::new(
                DiagnosticCode::WireRedefinition,
                header_line,
                1,
                format!("input {name} declared twice"),
            ));
        }
    }
    for (gi, g) in raw_gates.iter().enumerate() {
        for (col, name) in &g.outs {
            if defined_at.insert(name.clone(), gi).is_some() {
                return Err(Diagnostic::new(
                    DiagnosticCode::WireRedefinition,
                    g.line,
                    *col,
                    format!("wire {name} is already defined"),
                ));
            }
        }
    }

    // cycle detection on the producer relation, then textual order
    let produced_by = |name: &str| -> Option<usize> {
        defined_at.get(name).copied().filter(|&gi| gi != usize::MAX)
    };
    let in_cycle = |start: usize| -> bool {
        // depth-first walk along consumer -> producer edges
        let mut stack = vec![start];
        let mut seen = vec![false; raw_gates.len()];
        let mut first = true;
        while let Some(gi) = stack.pop() {
            if !first {
                if gi == start {
                    return true;
                }
                if seen[gi] {
                    continue;
                }
                seen[gi] = true;
            }
            first = false;
            for (_, name) in &raw_gates[gi].ins {
                if let Some(p) = produced_by(name) {
                    if p == start {
                        return true;
                    }
                    if !seen[p] {
                        stack.push(p);
                    }
                }
            }
        }
        false
    };

    for (gi, g) in raw_gates.iter().enumerate() {
        for (col, name) in &g.ins {
            match defined_at.get(name) {
                None => {
                    return Err(Diagnostic::new(
                        DiagnosticCode::UseBeforeDefinition,
                        g.line,
                        *col,
                        format!("wire {name} is never defined"),
                    ))
                }
                Some(&def) if def != usize::MAX && def >= gi => {
                    if in_cycle(gi) {
                        return Err(Diagnostic::new(
                            DiagnosticCode::Cycle,
                            g.line,
                            *col,
                            format!("wire {name} participates in a cycle"),
                        ));
                    }
                    return Err(Diagnostic::new(
                        DiagnosticCode::UseBeforeDefinition,
                        g.line,
                        *col,
                        format!("wire {name} is used before its definition"),
                    ));
                }
                _ => {}
            }
        }
    }

    // linear consumption
    let mut consumed_at: HashMap<&str, usize> = HashMap::new();
    for g in &raw_gates {
        for (col, name) in &g.ins {
            if consumed_at.insert(name.as_str(), g.line).is_some() {
                return Err(Diagnostic::new(
                    DiagnosticCode::WireReuse,
                    g.line,
                    *col,
                    format!("wire {name} is consumed twice; copy it with FANOUT"),
                ));
            }
        }
    }

    // outputs: defined, still live, and distinct
    let mut seen_outputs: HashMap<&str, ()> = HashMap::new();
    for (col, name) in &output_names {
        if !defined_at.contains_key(name) {
            return Err(Diagnostic::new(
                DiagnosticCode::UndeclaredOutput,
                outputs_line,
                *col,
                format!("output {name} is never defined"),
            ));
        }
        if consumed_at.contains_key(name.as_str()) {
            return Err(Diagnostic::new(
                DiagnosticCode::WireReuse,
                outputs_line,
                *col,
                format!("output {name} was consumed by a gate; copy it with FANOUT"),
            ));
        }
        if seen_outputs.insert(name.as_str(), ()).is_some() {
            return Err(Diagnostic::new(
                DiagnosticCode::WireReuse,
                outputs_line,
                *col,
                format!("output {name} listed twice"),
            ));
        }
    }

    Ok(Netlist {
        inputs,
        gates: raw_gates
            .into_iter()
            .map(|g| GateInstance {
                outputs: g.outs.into_iter().map(|(_, n)| n).collect(),
                gate: g.gate,
                inputs: g.ins.into_iter().map(|(_, n)| n).collect(),
            })
            .collect(),
        outputs: output_names.into_iter().map(|(_, n)| n).collect(),
        tables,
    })
}

/// Canonical text form; parsing it back yields an identical netlist.
pub fn pretty_print(nl: &Netlist) -> String {
    let mut out = String::new();
    writeln!(out, "inputs {}", nl.inputs.join(" ")).unwrap();
    for t in &nl.tables {
        writeln!(out, "table {} {} {}", t.name, t.n_in, t.m_out).unwrap();
        for x in 0..1usize << t.n_in {
            writeln!(
                out,
                "{:0in_w$b} -> {:0out_w$b}",
                x,
                t.eval(x),
                in_w = t.n_in,
                out_w = t.m_out
            )
            .unwrap();
        }
    }
    for g in &nl.gates {
        writeln!(out, "{} = {} {}", g.outputs.join(" "), g.gate, g.inputs.join(" ")).unwrap();
    }
    writeln!(out, "outputs {}", nl.outputs.join(" ")).unwrap();
    out
}

/// Evaluate the circuit on a classical bit string.
pub fn evaluate_classical(nl: &Netlist, bits: &str) -> Result<String> {
    if bits.len() != nl.inputs.len() {
        return Err(Error::InputLengthMismatch {
            expected: nl.inputs.len(),
            got: bits.len(),
        });
    }
    let mut values: HashMap<&str, u8> = HashMap::new();
    for (name, c) in nl.inputs.iter().zip(bits.chars()) {
        let v = match c {
            '0' => 0,
            '1' => 1,
            _ => return Err(Error::InvalidBitString),
        };
        values.insert(name, v);
    }
    for g in &nl.gates {
        let table = nl
            .table_for(&g.gate)
            .ok_or_else(|| Error::UnknownGate(g.gate.clone()))?;
        let mut x = 0usize;
        for name in &g.inputs {
            x = (x << 1) | values[name.as_str()] as usize;
        }
        let y = table.eval(x);
        for (j, name) in g.outputs.iter().enumerate() {
            values.insert(name, ((y >> (table.m_out - 1 - j)) & 1) as u8);
        }
    }
    Ok(nl
        .outputs
        .iter()
        .map(|name| if values[name.as_str()] == 1 { '1' } else { '0' })
        .collect())
}

fn permute_pairs(ls: &LogicalState, perm: &[usize]) -> LogicalState {
    // perm[j] = current position of the pair that should sit at j
    let n = perm.len();
    let remap = |idx: usize| -> usize {
        let mut out = 0usize;
        for (j, &p) in perm.iter().enumerate() {
            out |= ((idx >> (n - 1 - p)) & 1) << (n - 1 - j);
        }
        out
    };
    match ls {
        LogicalState::Pure(a) => {
            let mut out = vec![num_complex::Complex64::new(0.0, 0.0); a.len()];
            for (i, &z) in a.iter().enumerate() {
                out[remap(i)] = z;
            }
            LogicalState::Pure(out)
        }
        LogicalState::Mixed(r) => {
            let mut out = crate::qsim::CMat::zeros(r.dim);
            for i in 0..r.dim {
                for j in 0..r.dim {
                    out.set(remap(i), remap(j), r.get(i, j));
                }
            }
            LogicalState::Mixed(out)
        }
    }
}

fn run_channel(
    nl: &Netlist,
    models: &[DilationModel],
    input: &LogicalState,
    ext: Option<&ExtensionParams>,
) -> Result<LogicalState> {
    if input.n_pairs() != nl.inputs.len() {
        return Err(Error::InputLengthMismatch {
            expected: nl.inputs.len(),
            got: input.n_pairs(),
        });
    }
    let mut state = input.clone();
    let mut order: Vec<Option<String>> = nl.inputs.iter().cloned().map(Some).collect();
    for (g, model) in nl.gates.iter().zip(models) {
        let positions: Vec<usize> = g
            .inputs
            .iter()
            .map(|name| {
                order
                    .iter()
                    .position(|slot| slot.as_deref() == Some(name))
                    .expect("validated netlist wire")
            })
            .collect();
        let n = order.len();
        if n + model.ancilla_pairs() > MAX_LIVE_PAIRS {
            return Err(Error::CapacityExceeded {
                what: "live logical pairs",
                dim: n + model.ancilla_pairs(),
                cap: MAX_LIVE_PAIRS,
            });
        }
        let use_ext = ext.filter(|_| model.has_extension_family());
        state = match use_ext {
            Some(e) => apply_gate_with_extension(&state, model, &positions, e)?,
            None => apply_gate(&state, model, &positions)?,
        };
        // bookkeeping mirrors apply_gate: ancillas appended, outputs land on
        // the first m_out targets, discarded targets vanish
        let mut targets = positions.clone();
        targets.extend(n..n + model.ancilla_pairs());
        order.extend(std::iter::repeat_n(None, model.ancilla_pairs()));
        for (j, name) in g.outputs.iter().enumerate() {
            order[targets[j]] = Some(name.clone());
        }
        let mut dead: Vec<usize> = model.discarded().iter().map(|&d| targets[d]).collect();
        dead.sort_unstable_by(|a, b| b.cmp(a));
        for d in dead {
            order.remove(d);
        }
    }
    // trace out live wires that are not declared outputs
    let stale: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, slot)| {
            slot.as_deref()
                .is_none_or(|name| !nl.outputs.iter().any(|o| o == name))
        })
        .map(|(i, _)| i)
        .collect();
    if !stale.is_empty() {
        state = state.trace_out_pairs(&stale)?;
        let mut kept = Vec::new();
        for (i, slot) in order.into_iter().enumerate() {
            if !stale.contains(&i) {
                kept.push(slot);
            }
        }
        order = kept;
    }
    // rearrange to the declared output order
    let perm: Vec<usize> = nl
        .outputs
        .iter()
        .map(|name| {
            order
                .iter()
                .position(|slot| slot.as_deref() == Some(name))
                .expect("validated output wire")
        })
        .collect();
    Ok(permute_pairs(&state, &perm))
}

/// Which dilation the quantum lift uses for gates that carry the extension
/// family.
#[derive(Clone, Copy, Debug, Default)]
pub enum ExtensionChoice<'a> {
    #[default]
    Canonical,
    /// One shared family member applied to every family-carrying gate.
    Shared(&'a ExtensionParams),
}

/// Compose the circuit as a channel on the logical representation:
/// sequential gate application in text order with eager tracing of
/// discarded pairs, ending on the declared output wires in order.
pub fn simulate_channel(
    nl: &Netlist,
    input: &LogicalState,
    choice: ExtensionChoice<'_>,
) -> Result<LogicalState> {
    let models = build_models(nl)?;
    let ext = match choice {
        ExtensionChoice::Canonical => None,
        ExtensionChoice::Shared(e) => Some(e),
    };
    run_channel(nl, &models, input, ext)
}

fn build_models(nl: &Netlist) -> Result<Vec<DilationModel>> {
    nl.gates
        .iter()
        .map(|g| {
            let table = nl
                .table_for(&g.gate)
                .ok_or_else(|| Error::UnknownGate(g.gate.clone()))?;
            dilation_from_truth_table(&table, None)
        })
        .collect()
}

/// A parsed netlist with its dilation models prebuilt, usable by the
/// capacity search.
pub struct CircuitChannel<'a> {
    netlist: &'a Netlist,
    models: Vec<DilationModel>,
    has_family: bool,
}

impl<'a> CircuitChannel<'a> {
    pub fn new(netlist: &'a Netlist) -> Result<Self> {
        let models = build_models(netlist)?;
        let has_family = models.iter().any(|m| m.has_extension_family());
        Ok(CircuitChannel {
            netlist,
            models,
            has_family,
        })
    }

    pub fn netlist(&self) -> &Netlist {
        self.netlist
    }
}

impl Channel for CircuitChannel<'_> {
    fn input_pairs(&self) -> usize {
        self.netlist.inputs.len()
    }

    fn output_pairs(&self) -> usize {
        self.netlist.outputs.len()
    }

    fn has_extension_family(&self) -> bool {
        self.has_family
    }

    fn apply(&self, input: &LogicalState, ext: Option<&ExtensionParams>) -> Result<LogicalState> {
        run_channel(self.netlist, &self.models, input, ext)
    }
}

/// Gate-count bound for one counted gate type.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub counted_gate: String,
    pub gate_cost: Ebits,
    pub ratio: f64,
    pub ceiling: u64,
}

/// Snap tolerance so that optimizer noise around an exact integer ratio
/// (including zero) does not inflate the ceiling.
const CEILING_SNAP: f64 = 1e-9;

/// Lower bound on the number of `counted_gate` instances needed for any
/// circuit whose lifted transformation can create `e_up` ebits: the ratio of
/// the circuit capacity to the per-gate cost. Counted gates with zero cost
/// admit no bound.
pub fn bound_gate_count(e_up: Ebits, counted_gate: &str) -> Result<BoundEntry> {
    let profile = builtin_profile(counted_gate)?;
    let cost = profile.e_cost_upper.0;
    if cost <= 0.0 {
        return Err(Error::ZeroCostBound(counted_gate.to_string()));
    }
    let ratio = e_up.0 / cost;
    let ceiling = (ratio - CEILING_SNAP).ceil().max(0.0) as u64;
    Ok(BoundEntry {
        counted_gate: counted_gate.to_string(),
        gate_cost: Ebits(cost),
        ratio,
        ceiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::character_state;
    use crate::measures::logical_gain_lower_bound;

    const SINGLE_NAND: &str = "inputs a b\nw = NAND a b\noutputs w\n";

    #[test]
    fn parses_a_single_gate_netlist() {
        let nl = parse_netlist(SINGLE_NAND).unwrap();
        assert_eq!(nl.inputs, vec!["a", "b"]);
        assert_eq!(nl.gates.len(), 1);
        assert_eq!(nl.gates[0].gate, "NAND");
        assert_eq!(nl.outputs, vec!["w"]);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let err = parse_netlist("inputs a\nw = NAND a\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::ArityMismatch);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn unknown_gate_is_reported() {
        let err = parse_netlist("inputs a b\nw = NANDY a b\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::UnknownGate);
    }

    #[test]
    fn wire_redefinition_is_reported() {
        let err =
            parse_netlist("inputs a b c\nw = NAND a b\nw = NOT c\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::WireRedefinition);
        assert_eq!(err.line, 3);
    }

    #[test]
    fn use_before_definition_is_reported() {
        let err =
            parse_netlist("inputs a b\nw = NAND a x\nx = NOT b\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::UseBeforeDefinition);
        let err = parse_netlist("inputs a b\nw = NAND a zz\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::UseBeforeDefinition);
    }

    #[test]
    fn cycles_are_reported() {
        let err = parse_netlist("inputs a\nx = XOR a y\ny = NOT x\noutputs y\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::Cycle);
    }

    #[test]
    fn undeclared_output_is_reported() {
        let err = parse_netlist("inputs a b\nw = NAND a b\noutputs q\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::UndeclaredOutput);
    }

    #[test]
    fn implicit_fanout_is_rejected() {
        let err = parse_netlist("inputs a b\nw = NAND a a\noutputs w\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::WireReuse);
        let err = parse_netlist("inputs a\nw = NOT a\nv = NOT a\noutputs w v\n").unwrap_err();
        assert_eq!(err.code, DiagnosticCode::WireReuse);
    }

    #[test]
    fn user_tables_parse_and_evaluate() {
        let text = "inputs a b c\ntable MAJ3 3 1\n000 -> 0\n001 -> 0\n010 -> 0\n011 -> 1\n\
                    100 -> 0\n101 -> 1\n110 -> 1\n111 -> 1\nw = MAJ3 a b c\noutputs w\n";
        let nl = parse_netlist(text).unwrap();
        assert_eq!(nl.tables.len(), 1);
        assert_eq!(evaluate_classical(&nl, "011").unwrap(), "1");
        assert_eq!(evaluate_classical(&nl, "100").unwrap(), "0");
    }

    #[test]
    fn pretty_print_round_trips() {
        let text = "inputs a b c  # three wires\n\n# a comment line\nw = NAND a b\nv = XOR w c\noutputs v\n";
        let nl = parse_netlist(text).unwrap();
        let printed = pretty_print(&nl);
        let reparsed = parse_netlist(&printed).unwrap();
        assert_eq!(nl, reparsed);
        // and printing is a fixed point
        assert_eq!(printed, pretty_print(&reparsed));
    }

    #[test]
    fn classical_evaluation_of_a_cascade() {
        let text = "inputs a b c d\nt1 = XOR a b\nt2 = XOR t1 c\nt3 = XOR t2 d\noutputs t3\n";
        let nl = parse_netlist(text).unwrap();
        assert_eq!(evaluate_classical(&nl, "0101").unwrap(), "0");
        assert_eq!(evaluate_classical(&nl, "0111").unwrap(), "1");
        // exhaustive check against direct parity
        for x in 0..16usize {
            let bits: String = format!("{x:04b}");
            let expect = (x.count_ones() % 2).to_string();
            assert_eq!(evaluate_classical(&nl, &bits).unwrap(), expect);
        }
    }

    #[test]
    fn identity_wire_through_is_unchanged() {
        let nl = parse_netlist("inputs a b\noutputs a b\n").unwrap();
        let input = character_state(2, 0b01);
        let out = simulate_channel(&nl, &input, ExtensionChoice::Canonical).unwrap();
        assert_eq!(&out, &input);
    }

    #[test]
    fn parity_netlist_on_uniform_input_has_zero_gain() {
        let nl = parse_netlist("inputs a b\nw = XOR a b\noutputs w\n").unwrap();
        let input = character_state(2, 0);
        let out = simulate_channel(&nl, &input, ExtensionChoice::Canonical).unwrap();
        let gain = logical_gain_lower_bound(&out).unwrap().0;
        assert!(gain.abs() < 1e-10);
    }

    #[test]
    fn single_nand_on_uniform_input_matches_the_quarter_mixture() {
        let nl = parse_netlist(SINGLE_NAND).unwrap();
        let input = character_state(2, 0);
        let out = simulate_channel(&nl, &input, ExtensionChoice::Canonical).unwrap();
        let rec = out.density_record();
        assert!((rec.get(0, 0).re - 0.25).abs() < 1e-12);
        assert!((rec.get(1, 1).re - 0.75).abs() < 1e-12);
        // worst-case member: same diagonal, still no cross terms at s = 0
        let ext = ExtensionParams::canonical();
        let out = simulate_channel(&nl, &input, ExtensionChoice::Shared(&ext)).unwrap();
        let rec = out.density_record();
        assert!((rec.get(0, 0).re - 0.25).abs() < 1e-12);
        assert!(rec.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn channel_agrees_with_classical_evaluation_on_basis_inputs() {
        let text = "inputs a b c\nt = XOR a b\nw = NAND t c\noutputs w\n";
        let nl = parse_netlist(text).unwrap();
        for x in 0..8usize {
            let bits = format!("{x:03b}");
            let expect = evaluate_classical(&nl, &bits).unwrap();
            let out = simulate_channel(&nl, &LogicalState::basis(3, x), ExtensionChoice::Canonical)
                .unwrap();
            let expect_idx = usize::from_str_radix(&expect, 2).unwrap();
            assert!((out.basis_weight(expect_idx) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn gate_count_bound_entries() {
        let b = bound_gate_count(Ebits(0.0), "NAND").unwrap();
        assert_eq!(b.ceiling, 0);
        let b = bound_gate_count(Ebits(0.188_721_875_540_867), "NAND").unwrap();
        assert!((b.ratio - 0.062_907_291_846_955).abs() < 1e-9);
        assert_eq!(b.ceiling, 1);
        assert!(matches!(
            bound_gate_count(Ebits(1.0), "XOR"),
            Err(Error::ZeroCostBound(_))
        ));
        // exact integer ratios stay put
        let b = bound_gate_count(Ebits(6.0), "NAND").unwrap();
        assert_eq!(b.ceiling, 2);
        // tiny numerical residue does not round up
        let b = bound_gate_count(Ebits(3e-13), "NAND").unwrap();
        assert_eq!(b.ceiling, 0);
    }
}
