//! Classical truth tables and their lifts to quantum operations.
//!
//! An irreversible gate on encoded bits is realized as a unitary dilation:
//! ancilla pairs in the logical-zero state are appended, a permutation-like
//! unitary acts on the logical basis, and the garbage pairs are traced out.
//! The canonical dilation writes the function value on the leading pairs and
//! a reversible completion of the input on the discarded pairs; two-bit
//! universal gates additionally carry a one-row extension family, the only
//! freedom the dilation leaves.

use std::collections::HashSet;

use num_complex::Complex64 as C64;

use crate::encoding::LogicalState;
use crate::error::{Error, Result};
use crate::measures::{binary_entropy, Ebits, ExtensionParams};
use crate::qsim::CMat;

/// Cap on simultaneously live logical pairs during gate application.
pub const MAX_LIVE_PAIRS: usize = 10;

/// A total function from n-bit strings to m-bit strings.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthTable {
    pub name: String,
    pub n_in: usize,
    pub m_out: usize,
    map: Vec<u32>,
}

impl TruthTable {
    pub fn new(name: impl Into<String>, n_in: usize, m_out: usize, map: Vec<u32>) -> Result<Self> {
        let name = name.into();
        if n_in == 0 || m_out == 0 || map.len() != 1 << n_in {
            return Err(Error::ArityMismatch {
                expected: 1 << n_in,
                got: map.len(),
            });
        }
        if map.iter().any(|&v| v as usize >= 1 << m_out) {
            return Err(Error::ArityMismatch {
                expected: m_out,
                got: 0,
            });
        }
        Ok(TruthTable {
            name,
            n_in,
            m_out,
            map,
        })
    }

    pub fn eval(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    /// Same arity and mapping, name ignored.
    pub fn same_function(&self, other: &TruthTable) -> bool {
        self.n_in == other.n_in && self.m_out == other.m_out && self.map == other.map
    }

    pub fn not() -> Self {
        TruthTable::new("NOT", 1, 1, vec![1, 0]).unwrap()
    }

    pub fn reset() -> Self {
        TruthTable::new("RESET", 1, 1, vec![0, 0]).unwrap()
    }

    pub fn identity() -> Self {
        TruthTable::new("IDENT", 1, 1, vec![0, 1]).unwrap()
    }

    pub fn xor() -> Self {
        TruthTable::new("XOR", 2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    pub fn and() -> Self {
        TruthTable::new("AND", 2, 1, vec![0, 0, 0, 1]).unwrap()
    }

    pub fn or() -> Self {
        TruthTable::new("OR", 2, 1, vec![0, 1, 1, 1]).unwrap()
    }

    pub fn nand() -> Self {
        TruthTable::new("NAND", 2, 1, vec![1, 1, 1, 0]).unwrap()
    }

    pub fn nor() -> Self {
        TruthTable::new("NOR", 2, 1, vec![1, 0, 0, 0]).unwrap()
    }

    pub fn cnot() -> Self {
        TruthTable::new("CNOT", 2, 2, vec![0b00, 0b01, 0b11, 0b10]).unwrap()
    }

    pub fn toffoli() -> Self {
        TruthTable::new("TOFFOLI", 3, 3, vec![0, 1, 2, 3, 4, 5, 7, 6]).unwrap()
    }

    /// Explicit copy pseudo-gate x -> xx.
    pub fn fanout() -> Self {
        TruthTable::new("FANOUT", 1, 2, vec![0b00, 0b11]).unwrap()
    }
}

/// Names the netlist parser accepts as built-in gates.
pub const CATALOG: &[&str] = &[
    "NOT", "RESET", "XOR", "AND", "OR", "NAND", "NOR", "CNOT", "TOFFOLI", "FANOUT",
];

pub fn catalog_table(name: &str) -> Option<TruthTable> {
    match name {
        "NOT" => Some(TruthTable::not()),
        "RESET" => Some(TruthTable::reset()),
        "XOR" => Some(TruthTable::xor()),
        "AND" => Some(TruthTable::and()),
        "OR" => Some(TruthTable::or()),
        "NAND" => Some(TruthTable::nand()),
        "NOR" => Some(TruthTable::nor()),
        "CNOT" => Some(TruthTable::cnot()),
        "TOFFOLI" => Some(TruthTable::toffoli()),
        "FANOUT" => Some(TruthTable::fanout()),
        _ => None,
    }
}

/// A truth table lifted to a unitary on the logical basis of input plus
/// ancilla pairs, with the garbage pairs marked for discarding.
#[derive(Clone, Debug)]
pub struct DilationModel {
    table: TruthTable,
    ancilla_pairs: usize,
    kept: Vec<usize>,
    discarded: Vec<usize>,
    unitary: CMat,
    extension: Option<ExtensionParams>,
    family_row: Option<usize>,
}

impl DilationModel {
    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn n_in(&self) -> usize {
        self.table.n_in
    }

    pub fn m_out(&self) -> usize {
        self.table.m_out
    }

    pub fn ancilla_pairs(&self) -> usize {
        self.ancilla_pairs
    }

    pub fn total_pairs(&self) -> usize {
        self.table.n_in + self.ancilla_pairs
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn discarded(&self) -> &[usize] {
        &self.discarded
    }

    pub fn unitary(&self) -> &CMat {
        &self.unitary
    }

    pub fn extension(&self) -> Option<&ExtensionParams> {
        self.extension.as_ref()
    }

    /// Whether this table carries the one-row extension family: a two-to-one
    /// table with an output value reached by exactly one input.
    pub fn has_extension_family(&self) -> bool {
        self.family_row.is_some()
    }

    /// The input row the family varies.
    pub fn family_row(&self) -> Option<usize> {
        self.family_row
    }

    /// The same table rebuilt with different extension amplitudes.
    pub fn with_extension(&self, ext: ExtensionParams) -> Result<DilationModel> {
        dilation_from_truth_table(&self.table, Some(ext))
    }

    /// Matrix for applying a family member to ancilla-zero inputs: the
    /// canonical unitary with the varied column overwritten. The
    /// orthonormal completion is skipped because those columns are never
    /// read, so the result is not validated as a full unitary.
    pub(crate) fn extension_matrix(&self, ext: &ExtensionParams) -> Result<CMat> {
        let row = self
            .family_row
            .ok_or_else(|| Error::ExtensionUnsupported(self.table.name.clone()))?;
        let g = self.total_pairs() - self.m_out();
        let mut u = self.unitary.clone();
        let col = row << self.ancilla_pairs;
        for r in 0..u.dim {
            u.set(r, col, C64::new(0.0, 0.0));
        }
        let base = self.table.eval(row) << g;
        for (gg, &amp) in ext.garbage_amplitudes().iter().enumerate() {
            u.set(base | gg, col, amp);
        }
        Ok(u)
    }
}

/// Apply a family member on ancilla-zero inputs without rebuilding the
/// orthonormal completion. Semantically identical to building the full
/// extension unitary and calling [`apply_gate`].
pub fn apply_gate_with_extension(
    ls: &LogicalState,
    model: &DilationModel,
    wires: &[usize],
    ext: &ExtensionParams,
) -> Result<LogicalState> {
    if wires.len() != model.n_in() {
        return Err(Error::ArityMismatch {
            expected: model.n_in(),
            got: wires.len(),
        });
    }
    let n = ls.n_pairs();
    for (i, &w) in wires.iter().enumerate() {
        if w >= n {
            return Err(Error::IndexOutOfRange {
                index: w,
                n_qubits: n,
            });
        }
        if wires[..i].contains(&w) {
            return Err(Error::DuplicateTarget);
        }
    }
    let live = n + model.ancilla_pairs();
    if live > MAX_LIVE_PAIRS {
        return Err(Error::CapacityExceeded {
            what: "live logical pairs",
            dim: live,
            cap: MAX_LIVE_PAIRS,
        });
    }
    let matrix = model.extension_matrix(ext)?;
    let extended = ls.append_zero_pairs(model.ancilla_pairs());
    let mut targets = wires.to_vec();
    targets.extend(n..live);
    let transformed = extended.apply_logical_unitary(&matrix, &targets);
    let discard_abs: Vec<usize> = model.discarded.iter().map(|&d| targets[d]).collect();
    transformed.trace_out_pairs(&discard_abs)
}

fn garbage_bits(x: usize, n_in: usize, g: usize) -> usize {
    if g <= n_in {
        x >> (n_in - g)
    } else {
        x << (g - n_in)
    }
}

/// Smallest ancilla count making (f(x), garbage(x)) injective. The garbage
/// is the input string truncated (or zero-padded) to the discarded width, so
/// the search is bounded by m_out, where the full input fits.
fn choose_ancillas(tt: &TruthTable) -> usize {
    let lower = tt.m_out.saturating_sub(tt.n_in);
    for anc in lower..=tt.m_out {
        let g = tt.n_in + anc - tt.m_out;
        let mut seen = HashSet::new();
        if (0..1usize << tt.n_in).all(|x| seen.insert((tt.eval(x), garbage_bits(x, tt.n_in, g)))) {
            return anc;
        }
    }
    tt.m_out
}

fn detect_family_row(tt: &TruthTable, anc: usize) -> Option<usize> {
    if tt.n_in != 2 || tt.m_out != 1 || anc != 1 {
        return None;
    }
    for v in 0..2usize {
        let preimages: Vec<usize> = (0..4).filter(|&x| tt.eval(x) == v).collect();
        if preimages.len() == 1 {
            return Some(preimages[0]);
        }
    }
    None
}

/// Lift a truth table to its canonical dilation. With `extension` supplied
/// (only meaningful for tables carrying the family), the varied row's
/// garbage amplitudes replace the canonical input-embedding row.
pub fn dilation_from_truth_table(
    tt: &TruthTable,
    extension: Option<ExtensionParams>,
) -> Result<DilationModel> {
    let anc = choose_ancillas(tt);
    let total = tt.n_in + anc;
    if total > MAX_LIVE_PAIRS {
        return Err(Error::CapacityExceeded {
            what: "live logical pairs",
            dim: total,
            cap: MAX_LIVE_PAIRS,
        });
    }
    let g = total - tt.m_out;
    let dim = 1usize << total;
    let family_row = detect_family_row(tt, anc);
    if extension.is_some() && family_row.is_none() {
        return Err(Error::ExtensionUnsupported(tt.name.clone()));
    }

    // Defined columns: inputs with ancillas at logical zero.
    let mut columns: Vec<Option<Vec<C64>>> = vec![None; dim];
    for x in 0..1usize << tt.n_in {
        let in_idx = x << anc;
        let mut col = vec![C64::new(0.0, 0.0); dim];
        if let (Some(ext), Some(row)) = (extension.as_ref(), family_row) {
            if x == row {
                let base = tt.eval(x) << g;
                for (gg, &amp) in ext.garbage_amplitudes().iter().enumerate() {
                    col[base | gg] = amp;
                }
                columns[in_idx] = Some(col);
                continue;
            }
        }
        let out_idx = (tt.eval(x) << g) | garbage_bits(x, tt.n_in, g);
        col[out_idx] = C64::new(1.0, 0.0);
        columns[in_idx] = Some(col);
    }

    if extension.is_none() {
        // Permutation completion: free inputs ascending take the unused
        // basis outputs ascending.
        let used: HashSet<usize> = columns
            .iter()
            .flatten()
            .map(|col| col.iter().position(|z| z.norm_sqr() > 0.5).unwrap())
            .collect();
        let mut unused = (0..dim).filter(|i| !used.contains(i));
        for slot in columns.iter_mut() {
            if slot.is_none() {
                let out = unused.next().expect("permutation completion");
                let mut col = vec![C64::new(0.0, 0.0); dim];
                col[out] = C64::new(1.0, 0.0);
                *slot = Some(col);
            }
        }
    } else {
        // Orthonormal completion by Gram-Schmidt over the standard basis.
        let mut collected: Vec<Vec<C64>> = columns.iter().flatten().cloned().collect();
        let mut fresh: Vec<Vec<C64>> = Vec::new();
        for k in 0..dim {
            if collected.len() == dim {
                break;
            }
            let mut r = vec![C64::new(0.0, 0.0); dim];
            r[k] = C64::new(1.0, 0.0);
            for _pass in 0..2 {
                for b in &collected {
                    let proj: C64 = b.iter().zip(r.iter()).map(|(u, v)| u.conj() * v).sum();
                    for (ri, bi) in r.iter_mut().zip(b.iter()) {
                        *ri -= proj * bi;
                    }
                }
            }
            let norm: f64 = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for z in &mut r {
                    *z /= norm;
                }
                collected.push(r.clone());
                fresh.push(r);
            }
        }
        let mut fresh_iter = fresh.into_iter();
        for slot in columns.iter_mut() {
            if slot.is_none() {
                *slot = Some(fresh_iter.next().expect("orthonormal completion"));
            }
        }
    }

    let mut unitary = CMat::zeros(dim);
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.as_ref().unwrap().iter().enumerate() {
            unitary.set(r, c, v);
        }
    }
    debug_assert!(unitary.unitarity_deviation() < 1e-10);

    Ok(DilationModel {
        table: tt.clone(),
        ancilla_pairs: anc,
        kept: (0..tt.m_out).collect(),
        discarded: (tt.m_out..total).collect(),
        unitary,
        extension,
        family_row,
    })
}

/// Apply a lifted gate on the given wire positions of a logical state:
/// ancilla pairs are appended at the end, the dilation unitary acts on the
/// wires followed by the ancillas, and the discarded pairs are traced out.
/// After the call the kept outputs sit at the positions of the first
/// `m_out` targets; the caller tracks the compaction of traced positions.
pub fn apply_gate(ls: &LogicalState, model: &DilationModel, wires: &[usize]) -> Result<LogicalState> {
    if wires.len() != model.n_in() {
        return Err(Error::ArityMismatch {
            expected: model.n_in(),
            got: wires.len(),
        });
    }
    let n = ls.n_pairs();
    for (i, &w) in wires.iter().enumerate() {
        if w >= n {
            return Err(Error::IndexOutOfRange {
                index: w,
                n_qubits: n,
            });
        }
        if wires[..i].contains(&w) {
            return Err(Error::DuplicateTarget);
        }
    }
    let live = n + model.ancilla_pairs();
    if live > MAX_LIVE_PAIRS {
        return Err(Error::CapacityExceeded {
            what: "live logical pairs",
            dim: live,
            cap: MAX_LIVE_PAIRS,
        });
    }
    let extended = ls.append_zero_pairs(model.ancilla_pairs());
    let mut targets = wires.to_vec();
    targets.extend(n..live);
    let transformed = extended.apply_logical_unitary(&model.unitary, &targets);
    let discard_abs: Vec<usize> = model.discarded.iter().map(|&d| targets[d]).collect();
    transformed.trace_out_pairs(&discard_abs)
}

/// The three nonlocal numbers attached to a gate: a lower bound on what it
/// can create, a lower bound on what it can destroy, and the cost of a
/// concrete distributed implementation.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlocalProfile {
    pub e_up_lower: Ebits,
    pub e_down_lower: Ebits,
    pub e_cost_upper: Ebits,
    pub notes: String,
}

impl NonlocalProfile {
    pub fn new(e_up_lower: f64, e_down_lower: f64, e_cost_upper: f64, notes: &str) -> Self {
        assert!(
            e_up_lower <= e_cost_upper + 1e-9,
            "creation bound cannot exceed implementation cost"
        );
        NonlocalProfile {
            e_up_lower: Ebits(e_up_lower),
            e_down_lower: Ebits(e_down_lower),
            e_cost_upper: Ebits(e_cost_upper),
            notes: notes.to_string(),
        }
    }
}

/// Entanglement-cost accounting of the catalog implementations: number of
/// nonlocal Toffoli gates (2 ebits each) and fresh ancilla Bell pairs
/// (1 ebit each).
pub fn cost_decomposition(name: &str) -> Option<(u32, u32)> {
    match name {
        "NOT" | "IDENT" | "XOR" | "CNOT" => Some((0, 0)),
        "RESET" | "FANOUT" => Some((0, 1)),
        "AND" | "OR" | "NAND" | "NOR" => Some((1, 1)),
        "TOFFOLI" => Some((1, 0)),
        _ => None,
    }
}

/// E-up lower bound shared by the two-bit universal gates: 1 − H[1/4],
/// attained by the uniform unentangled test state under the worst-case
/// extension.
pub fn universal_gate_capacity_bound() -> f64 {
    1.0 - binary_entropy(0.25).expect("1/4 in domain").0
}

/// Catalog of nonlocal profiles for the built-in gates.
pub fn builtin_profile(name: &str) -> Result<NonlocalProfile> {
    let u = universal_gate_capacity_bound();
    let p = match name {
        "RESET" => NonlocalProfile::new(
            1.0,
            0.0,
            1.0,
            "creates a full ebit from the uniform unentangled input; implemented by a fresh \
             ancilla pair plus discard; every output is maximally entangled so nothing is \
             destroyed",
        ),
        "NOT" => NonlocalProfile::new(
            0.0,
            0.0,
            0.0,
            "one-sided local phase flip; deterministic surjective equal-arity gates move no \
             entanglement",
        ),
        "XOR" => NonlocalProfile::new(
            0.0,
            1.0,
            0.0,
            "pairwise local controlled-nots followed by discarding one input pair, which \
             dissipates that pair's ebit",
        ),
        "NAND" => NonlocalProfile::new(
            u,
            1.0,
            3.0,
            "lower bound 1 - H[1/4] from the uniform two-bit test state under the worst-case \
             extension; cost: one nonlocal Toffoli (2 ebits) with a standard input plus one \
             ancilla Bell pair",
        ),
        "NOR" => NonlocalProfile::new(
            u,
            1.0,
            3.0,
            "same profile as NAND; the table is a local relabeling of it",
        ),
        "AND" => NonlocalProfile::new(
            u,
            1.0,
            3.0,
            "same profile as NAND up to a local output flip",
        ),
        "OR" => NonlocalProfile::new(
            u,
            1.0,
            3.0,
            "same profile as NOR up to a local output flip",
        ),
        "CNOT" => NonlocalProfile::new(
            0.0,
            0.0,
            0.0,
            "pairwise local controlled-nots; reversible, nothing discarded",
        ),
        "TOFFOLI" => NonlocalProfile::new(
            0.0,
            0.0,
            2.0,
            "cost of the nonlocal three-pair construction; reversible equal-arity, trivial \
             capacity bounds",
        ),
        "FANOUT" => NonlocalProfile::new(
            1.0,
            0.0,
            1.0,
            "copies onto a fresh ancilla Bell pair; the consumed ancilla ebit is creatable and \
             nothing is discarded",
        ),
        other => return Err(Error::UnknownGate(other.to_string())),
    };
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::character_state;
    use crate::measures::{logical_gain_lower_bound, logical_pure_entanglement};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm_target(u: &CMat, col: usize) -> usize {
        (0..u.dim)
            .find(|&r| (u.get(r, col).re - 1.0).abs() < 1e-12)
            .expect("permutation column")
    }

    #[test]
    fn nand_dilation_reproduces_the_toffoli_trace_out_rows() {
        let m = dilation_from_truth_table(&TruthTable::nand(), None).unwrap();
        assert_eq!(m.ancilla_pairs(), 1);
        assert_eq!(m.kept(), &[0]);
        assert_eq!(m.discarded(), &[1, 2]);
        // rows (x1 x2, 0) -> (NAND, x1, x2)
        assert_eq!(perm_target(m.unitary(), 0b000), 0b100);
        assert_eq!(perm_target(m.unitary(), 0b010), 0b101);
        assert_eq!(perm_target(m.unitary(), 0b100), 0b110);
        assert_eq!(perm_target(m.unitary(), 0b110), 0b011);
    }

    #[test]
    fn reset_dilation_is_a_swap_with_the_ancilla() {
        let m = dilation_from_truth_table(&TruthTable::reset(), None).unwrap();
        assert_eq!(m.ancilla_pairs(), 1);
        for x in 0..2usize {
            for a in 0..2usize {
                assert_eq!(perm_target(m.unitary(), (x << 1) | a), (a << 1) | x);
            }
        }
    }

    #[test]
    fn identity_dilation_is_trivial() {
        let m = dilation_from_truth_table(&TruthTable::identity(), None).unwrap();
        assert_eq!(m.ancilla_pairs(), 0);
        assert!(m.discarded().is_empty());
        assert_eq!(m.unitary(), &CMat::identity(2));
    }

    #[test]
    fn xor_dilation_needs_no_ancilla() {
        let m = dilation_from_truth_table(&TruthTable::xor(), None).unwrap();
        assert_eq!(m.ancilla_pairs(), 0);
        assert_eq!(m.discarded(), &[1]);
        // (x1, x2) -> (x1 xor x2, x1)
        assert_eq!(perm_target(m.unitary(), 0b00), 0b00);
        assert_eq!(perm_target(m.unitary(), 0b01), 0b10);
        assert_eq!(perm_target(m.unitary(), 0b10), 0b11);
        assert_eq!(perm_target(m.unitary(), 0b11), 0b01);
    }

    #[test]
    fn every_catalog_gate_is_classically_faithful() {
        for name in CATALOG {
            let tt = catalog_table(name).unwrap();
            let model = dilation_from_truth_table(&tt, None).unwrap();
            let wires: Vec<usize> = (0..tt.n_in).collect();
            for x in 0..1usize << tt.n_in {
                let input = LogicalState::basis(tt.n_in, x);
                let out = apply_gate(&input, &model, &wires).unwrap();
                let weight = out.basis_weight(tt.eval(x));
                assert!(
                    (weight - 1.0).abs() < 1e-12,
                    "{name} on input {x}: weight {weight}"
                );
            }
        }
    }

    #[test]
    fn composite_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = dilation_from_truth_table(&TruthTable::nand(), None).unwrap();
        for _ in 0..10 {
            let input = crate::encoding::random_pure_logical(2, &mut rng);
            let out = apply_gate(&input, &model, &[0, 1]).unwrap();
            let tr = out.density_record().trace().re;
            assert!((tr - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn nand_on_uniform_test_state_gives_quarter_mixture() {
        let model = dilation_from_truth_table(&TruthTable::nand(), None).unwrap();
        let input = character_state(2, 0);
        let out = apply_gate(&input, &model, &[0, 1]).unwrap();
        let rec = out.density_record();
        assert!((rec.get(0, 0).re - 0.25).abs() < 1e-12);
        assert!((rec.get(1, 1).re - 0.75).abs() < 1e-12);
        assert!(rec.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn nand_with_unit_a_extension_gives_quarter_cross_terms() {
        let ext = ExtensionParams::new(
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        )
        .unwrap();
        let model = dilation_from_truth_table(&TruthTable::nand(), Some(ext)).unwrap();
        let out = apply_gate(&character_state(2, 0), &model, &[0, 1]).unwrap();
        let rec = out.density_record();
        assert!((rec.get(0, 0).re - 0.25).abs() < 1e-12);
        assert!((rec.get(1, 1).re - 0.75).abs() < 1e-12);
        assert!((rec.get(0, 1).re - 0.25).abs() < 1e-12);
        assert!((rec.get(1, 0).re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn extension_members_agree_on_classical_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        use rand::Rng;
        for _ in 0..10 {
            let ext = ExtensionParams::normalized(
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            )
            .unwrap();
            let model = dilation_from_truth_table(&TruthTable::nand(), Some(ext)).unwrap();
            assert!(model.unitary().unitarity_deviation() < 1e-10);
            for x in 0..4usize {
                let out = apply_gate(&LogicalState::basis(2, x), &model, &[0, 1]).unwrap();
                let weight = out.basis_weight(TruthTable::nand().eval(x));
                assert!((weight - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fast_extension_path_matches_full_rebuild() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        use rand::Rng;
        let canonical = dilation_from_truth_table(&TruthTable::nand(), None).unwrap();
        for _ in 0..10 {
            let ext = ExtensionParams::normalized(
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            )
            .unwrap();
            let input = crate::encoding::random_pure_logical(2, &mut rng);
            let full_model = canonical.with_extension(ext).unwrap();
            let full = apply_gate(&input, &full_model, &[0, 1]).unwrap();
            let fast = apply_gate_with_extension(&input, &canonical, &[0, 1], &ext).unwrap();
            let a = full.density_record();
            let b = fast.density_record();
            for i in 0..a.dim {
                for j in 0..a.dim {
                    assert!((a.get(i, j) - b.get(i, j)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn extension_is_rejected_for_incompatible_tables() {
        let err = dilation_from_truth_table(
            &TruthTable::xor(),
            Some(ExtensionParams::canonical()),
        );
        assert!(matches!(err, Err(Error::ExtensionUnsupported(_))));
    }

    #[test]
    fn surjective_equal_arity_gates_move_no_entanglement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tt in [TruthTable::not(), TruthTable::identity()] {
            let model = dilation_from_truth_table(&tt, None).unwrap();
            for _ in 0..25 {
                let input = crate::encoding::random_pure_logical(1, &mut rng);
                let before = logical_pure_entanglement(&input).unwrap().0;
                let out = apply_gate(&input, &model, &[0]).unwrap();
                assert!(out.is_pure());
                let after = logical_pure_entanglement(&out).unwrap().0;
                assert!((before - after).abs() < 1e-10, "{}", tt.name);
            }
        }
    }

    #[test]
    fn nand_gain_under_worst_extension_matches_the_closed_form() {
        let model =
            dilation_from_truth_table(&TruthTable::nand(), Some(ExtensionParams::canonical()))
                .unwrap();
        let out = apply_gate(&character_state(2, 0), &model, &[0, 1]).unwrap();
        let gain = logical_gain_lower_bound(&out).unwrap().0;
        assert!((gain - universal_gate_capacity_bound()).abs() < 1e-12);
    }

    #[test]
    fn builtin_profiles_match_the_catalog() {
        let nand = builtin_profile("NAND").unwrap();
        assert!((nand.e_up_lower.0 - 0.188_721_875_540_867).abs() < 1e-12);
        assert_eq!(nand.e_cost_upper.0, 3.0);
        assert_eq!(nand.e_down_lower.0, 1.0);
        let nor = builtin_profile("NOR").unwrap();
        assert_eq!(nor.e_up_lower, nand.e_up_lower);
        assert_eq!(nor.e_down_lower, nand.e_down_lower);
        assert_eq!(nor.e_cost_upper, nand.e_cost_upper);
        let xor = builtin_profile("XOR").unwrap();
        assert_eq!(xor.e_cost_upper.0, 0.0);
        assert_eq!(xor.e_down_lower.0, 1.0);
        let reset = builtin_profile("RESET").unwrap();
        assert_eq!(reset.e_down_lower.0, 0.0);
        assert_eq!(reset.e_up_lower.0, 1.0);
        let cnot = builtin_profile("CNOT").unwrap();
        assert_eq!(cnot.e_cost_upper.0, 0.0);
        let toffoli = builtin_profile("TOFFOLI").unwrap();
        assert_eq!(toffoli.e_cost_upper.0, 2.0);
        assert!(builtin_profile("XYZZY").is_err());
    }

    #[test]
    fn fanout_grows_entanglement_by_its_ancilla() {
        let model = dilation_from_truth_table(&TruthTable::fanout(), None).unwrap();
        assert!(model.discarded().is_empty());
        let input = character_state(1, 0);
        let out = apply_gate(&input, &model, &[0]).unwrap();
        assert!(out.is_pure());
        let e = logical_pure_entanglement(&out).unwrap().0;
        assert!((e - 1.0).abs() < 1e-10);
    }
}
