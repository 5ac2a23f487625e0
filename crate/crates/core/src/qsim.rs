//! Dense complex linear algebra for small multi-qubit systems.
//!
//! State vectors and density matrices are stored densely over the full
//! 2^n-dimensional Hilbert space. Qubits are ordered pair-major with the A
//! side before the B side of each pair, and qubit 0 is the most significant
//! bit of a basis index. All operations are pure functions; values are
//! immutable after construction.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hard cap on state-vector dimension (20 qubits).
pub const VECTOR_DIM_CAP: usize = 1 << 20;
/// Hard cap on density-matrix dimension (12 qubits).
pub const DENSITY_DIM_CAP: usize = 1 << 12;

/// Tolerance below which an eigenvalue is treated as numerical zero.
pub const EIGENVALUE_FLOOR: f64 = 1e-10;

/// Which side of the bipartition a qubit belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn as_char(self) -> char {
        match self {
            Side::A => 'A',
            Side::B => 'B',
        }
    }
}

/// A qubit identity: which encoded pair it belongs to and on which side of
/// the cut it sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitLabel {
    pub pair: usize,
    pub side: Side,
}

impl QubitLabel {
    pub fn new(pair: usize, side: Side) -> Self {
        QubitLabel { pair, side }
    }
}

/// Labels for `n_pairs` Bell pairs in pair-major order, A before B.
pub fn pair_labels(n_pairs: usize) -> Vec<QubitLabel> {
    (0..n_pairs)
        .flat_map(|p| [QubitLabel::new(p, Side::A), QubitLabel::new(p, Side::B)])
        .collect()
}

/// Bipartition of qubit indices. Every index appears on exactly one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub a_qubits: Vec<usize>,
    pub b_qubits: Vec<usize>,
}

impl Partition {
    pub fn new(a_qubits: Vec<usize>, b_qubits: Vec<usize>, n_qubits: usize) -> Result<Self> {
        let mut seen = vec![false; n_qubits];
        for &q in a_qubits.iter().chain(b_qubits.iter()) {
            if q >= n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    n_qubits,
                });
            }
            if seen[q] {
                return Err(Error::DuplicateTarget);
            }
            seen[q] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::DuplicateTarget);
        }
        Ok(Partition { a_qubits, b_qubits })
    }

    /// The A:B cut of a pair-major labelled register: A sides of all pairs
    /// versus B sides.
    pub fn bell_cut(labels: &[QubitLabel]) -> Self {
        let a = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.side == Side::A)
            .map(|(i, _)| i)
            .collect();
        let b = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.side == Side::B)
            .map(|(i, _)| i)
            .collect();
        Partition {
            a_qubits: a,
            b_qubits: b,
        }
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub dim: usize,
    pub data: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            data.extend_from_slice(r);
        }
        CMat { dim, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn conj(&self) -> CMat {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&mut self, s: f64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    /// Max entrywise deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }

    /// Max entrywise deviation from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// Bit position (from the least significant end) of site `site` in an
/// `n_sites` register where site 0 is the most significant bit.
#[inline]
fn bit_shift(site: usize, n_sites: usize) -> usize {
    n_sites - 1 - site
}

/// Apply a 2^k x 2^k matrix on the given target sites of a dense vector over
/// `n_sites` two-level systems. `targets[0]` is the most significant bit of
/// the matrix index.
pub fn apply_matrix_vec(u: &CMat, targets: &[usize], amps: &mut [C64], n_sites: usize) {
    let k = targets.len();
    let sub = 1usize << k;
    assert_eq!(u.dim, sub, "matrix dimension does not match target count");
    let dim = amps.len();
    debug_assert_eq!(dim, 1usize << n_sites);

    let mut target_mask = 0usize;
    let mut offsets = vec![0usize; sub];
    for (j, &t) in targets.iter().enumerate() {
        let s = bit_shift(t, n_sites);
        target_mask |= 1 << s;
        let cfg_bit = 1usize << (k - 1 - j);
        for (cfg, off) in offsets.iter_mut().enumerate() {
            if cfg & cfg_bit != 0 {
                *off |= 1 << s;
            }
        }
    }

    let mut gathered = vec![C64::new(0.0, 0.0); sub];
    for base in 0..dim {
        if base & target_mask != 0 {
            continue;
        }
        for (cfg, g) in gathered.iter_mut().enumerate() {
            *g = amps[base | offsets[cfg]];
        }
        for (r, &off) in offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            let row = &u.data[r * sub..(r + 1) * sub];
            for (c, &g) in gathered.iter().enumerate() {
                acc += row[c] * g;
            }
            amps[base | off] = acc;
        }
    }
}

/// Bit patterns of every configuration of the given sites, in configuration
/// order with `sites[0]` as the most significant configuration bit.
fn config_patterns(sites: &[usize], n_sites: usize) -> Vec<usize> {
    let m = sites.len();
    let mut pats = vec![0usize; 1 << m];
    for (j, &s) in sites.iter().enumerate() {
        let shift = bit_shift(s, n_sites);
        let cfg_bit = 1usize << (m - 1 - j);
        for (cfg, p) in pats.iter_mut().enumerate() {
            if cfg & cfg_bit != 0 {
                *p |= 1 << shift;
            }
        }
    }
    pats
}

/// Reduced density matrix of a pure state over the kept sites.
pub fn partial_trace_vec(amps: &[C64], n_sites: usize, keep: &[usize]) -> CMat {
    let traced: Vec<usize> = (0..n_sites).filter(|s| !keep.contains(s)).collect();
    let kp = config_patterns(keep, n_sites);
    let tp = config_patterns(&traced, n_sites);
    let kd = kp.len();
    let mut rho = CMat::zeros(kd);
    for (i, &pi) in kp.iter().enumerate() {
        for (j, &pj) in kp.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &pt in &tp {
                acc += amps[pi | pt] * amps[pj | pt].conj();
            }
            rho.set(i, j, acc);
        }
    }
    rho
}

/// Reduced density matrix of a density matrix over the kept sites.
pub fn partial_trace_mat(rho: &CMat, n_sites: usize, keep: &[usize]) -> CMat {
    let traced: Vec<usize> = (0..n_sites).filter(|s| !keep.contains(s)).collect();
    let kp = config_patterns(keep, n_sites);
    let tp = config_patterns(&traced, n_sites);
    let kd = kp.len();
    let mut out = CMat::zeros(kd);
    for (i, &pi) in kp.iter().enumerate() {
        for (j, &pj) in kp.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &pt in &tp {
                acc += rho.get(pi | pt, pj | pt);
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Real eigenvalues of a Hermitian matrix, descending. Eigenvalues in
/// `[-EIGENVALUE_FLOOR, 0)` are floored to zero; anything more negative is a
/// genuine positivity violation and an error.
pub fn hermitian_eigenvalues(mat: &CMat) -> Result<Vec<f64>> {
    let dev = mat.hermiticity_deviation();
    if dev > 1e-8 {
        return Err(Error::NotHermitian(dev));
    }
    let d = mat.dim;
    // Symmetrize to scrub roundoff before the eigensolver.
    let na = DMatrix::from_fn(d, d, |r, c| {
        let z = (mat.get(r, c) + mat.get(c, r).conj()) * 0.5;
        Complex::new(z.re, z.im)
    });
    let eig = na.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for v in &mut vals {
        if *v < 0.0 {
            if *v < -EIGENVALUE_FLOOR {
                return Err(Error::NotPositive(*v));
            }
            *v = 0.0;
        }
    }
    Ok(vals)
}

/// A pure state over labelled qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    labels: Vec<QubitLabel>,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(labels: Vec<QubitLabel>, amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if dim > VECTOR_DIM_CAP {
            return Err(Error::CapacityExceeded {
                what: "state vector",
                dim,
                cap: VECTOR_DIM_CAP,
            });
        }
        if dim != 1usize << labels.len() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        Ok(StateVector { labels, amps })
    }

    /// Computational basis state |bits⟩ with qubit 0 as the most significant
    /// bit.
    pub fn basis(labels: Vec<QubitLabel>, index: usize) -> Result<Self> {
        let dim = 1usize << labels.len();
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        StateVector::new(labels, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(Error::NotNormalized(1.0));
        }
        for z in &mut self.amps {
            *z /= n;
        }
        Ok(self)
    }

    /// Kronecker product; labels concatenated left-then-right.
    pub fn tensor(&self, right: &StateVector) -> Result<StateVector> {
        for l in &self.labels {
            if right.labels.contains(l) {
                return Err(Error::LabelCollision {
                    pair: l.pair,
                    side: l.side.as_char(),
                });
            }
        }
        let dim = self.dim() * right.dim();
        if dim > VECTOR_DIM_CAP {
            return Err(Error::CapacityExceeded {
                what: "state vector",
                dim,
                cap: VECTOR_DIM_CAP,
            });
        }
        let mut amps = Vec::with_capacity(dim);
        for a in &self.amps {
            for b in &right.amps {
                amps.push(a * b);
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&right.labels);
        StateVector::new(labels, amps)
    }

    /// Apply a unitary on the given target qubits.
    pub fn apply_unitary(&self, u: &CMat, targets: &[usize]) -> Result<StateVector> {
        validate_targets(u, targets, self.n_qubits())?;
        let mut amps = self.amps.clone();
        apply_matrix_vec(u, targets, &mut amps, self.n_qubits());
        Ok(StateVector {
            labels: self.labels.clone(),
            amps,
        })
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dim = self.dim();
        if dim > DENSITY_DIM_CAP {
            return Err(Error::CapacityExceeded {
                what: "density matrix",
                dim,
                cap: DENSITY_DIM_CAP,
            });
        }
        let mut mat = CMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                mat.set(i, j, self.amps[i] * self.amps[j].conj());
            }
        }
        DensityMatrix::new(self.labels.clone(), mat)
    }

    /// Reduced density matrix over the kept qubits (ascending index order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = validate_keep(keep, self.n_qubits())?;
        let rho = partial_trace_vec(&self.amps, self.n_qubits(), &keep);
        DensityMatrix::new(pick_labels(&self.labels, &keep), rho)
    }
}

/// A mixed state over labelled qubits. Hermitian by construction; the trace
/// may be below one for trace-non-preserving intermediates until
/// `normalized` is called.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<QubitLabel>,
    mat: CMat,
}

impl DensityMatrix {
    pub fn new(labels: Vec<QubitLabel>, mat: CMat) -> Result<Self> {
        if mat.dim > DENSITY_DIM_CAP {
            return Err(Error::CapacityExceeded {
                what: "density matrix",
                dim: mat.dim,
                cap: DENSITY_DIM_CAP,
            });
        }
        if mat.dim != 1usize << labels.len() {
            return Err(Error::NotPowerOfTwo(mat.dim));
        }
        let dev = mat.hermiticity_deviation();
        if dev > 1e-8 {
            return Err(Error::NotHermitian(dev));
        }
        Ok(DensityMatrix { labels, mat })
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.mat.dim
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.mat.get(r, c)
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn normalized(mut self) -> Result<Self> {
        let t = self.trace();
        if t < 1e-12 {
            return Err(Error::NotNormalized(1.0));
        }
        self.mat.scale(1.0 / t);
        Ok(self)
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = validate_keep(keep, self.n_qubits())?;
        let out = partial_trace_mat(&self.mat, self.n_qubits(), &keep);
        DensityMatrix::new(pick_labels(&self.labels, &keep), out)
    }

    pub fn apply_unitary(&self, u: &CMat, targets: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits();
        validate_targets(u, targets, n)?;
        let mut data = self.mat.data.clone();
        // The matrix viewed as a vector over (row bits, column bits): the
        // unitary acts on the row sites, its conjugate on the column sites.
        apply_matrix_vec(u, targets, &mut data, 2 * n);
        let uc = u.conj();
        let col_targets: Vec<usize> = targets.iter().map(|t| t + n).collect();
        apply_matrix_vec(&uc, &col_targets, &mut data, 2 * n);
        Ok(DensityMatrix {
            labels: self.labels.clone(),
            mat: CMat {
                dim: self.mat.dim,
                data,
            },
        })
    }

    /// Hermitian spectrum, descending, with the numerical-noise floor
    /// applied.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.mat)
    }
}

fn validate_targets(u: &CMat, targets: &[usize], n_qubits: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: t,
                n_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget);
        }
    }
    if u.dim != 1usize << targets.len() {
        return Err(Error::ArityMismatch {
            expected: u.dim.trailing_zeros() as usize,
            got: targets.len(),
        });
    }
    let dev = u.unitarity_deviation();
    if dev > 1e-10 {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

fn validate_keep(keep: &[usize], n_qubits: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::DuplicateTarget);
    }
    if let Some(&worst) = sorted.last() {
        if worst >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: worst,
                n_qubits,
            });
        }
    }
    Ok(sorted)
}

fn pick_labels(labels: &[QubitLabel], keep: &[usize]) -> Vec<QubitLabel> {
    keep.iter().map(|&k| labels[k]).collect()
}
