//! Entanglement quantities in base-2 units (ebits).
//!
//! Everything here is an entropy of some spectrum: the binary entropy, the
//! von Neumann entropy, the entropy of entanglement of pure states across
//! the A:B cut, and the computable gain bound S(Tr_B ρ) − S(ρ) used to
//! lower-bound the entanglement of mixed outputs. The closed-form family
//! expression for the two-bit universal gates lives here as well.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::encoding::{reduced_diagonal_fast, LogicalState};
use crate::error::{Error, Result};
use crate::qsim::{hermitian_eigenvalues, DensityMatrix, Partition, StateVector};

/// An amount of bipartite entanglement in base-2 units.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Ebits(pub f64);

impl Ebits {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Ebits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} ebits", self.0)
    }
}

/// −p log₂ p − (1−p) log₂(1−p), with 0·log 0 = 0. Arguments outside [0, 1]
/// by more than 1e-12 are domain errors; closer excursions are clamped.
pub fn binary_entropy(p: f64) -> Result<Ebits> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::EntropyDomain(p));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(Ebits(plogp(p) + plogp(1.0 - p)))
}

#[inline]
fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of a probability vector; non-positive entries contribute
/// nothing.
pub fn shannon_entropy(probs: &[f64]) -> Ebits {
    Ebits(probs.iter().copied().map(plogp).sum())
}

/// −Σ λ log₂ λ over the spectrum of a density matrix.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<Ebits> {
    let spec = rho.spectrum()?;
    Ok(shannon_entropy(&spec))
}

/// Von Neumann entropy of a logical state. Zero for pure representations;
/// otherwise the entropy of the density record, whose spectrum equals the
/// encoded state's spectrum because the encoding is an isometry.
pub fn logical_entropy(ls: &LogicalState) -> Result<Ebits> {
    match ls {
        LogicalState::Pure(_) => Ok(Ebits(0.0)),
        LogicalState::Mixed(r) if r.dim == 2 => {
            // closed form for one pair, the hot case in capacity search
            let tr = (r.get(0, 0) + r.get(1, 1)).re;
            let half_gap = 0.5 * (r.get(0, 0) - r.get(1, 1)).re;
            let radius = (half_gap * half_gap + r.get(0, 1).norm_sqr()).sqrt();
            let hi = 0.5 * tr + radius;
            let lo = 0.5 * tr - radius;
            if lo < -crate::qsim::EIGENVALUE_FLOOR {
                return Err(Error::NotPositive(lo));
            }
            Ok(shannon_entropy(&[hi.max(0.0), lo.max(0.0)]))
        }
        LogicalState::Mixed(r) => {
            let spec = hermitian_eigenvalues(r)?;
            Ok(shannon_entropy(&spec))
        }
    }
}

/// Entropy of entanglement of a pure state across the given cut: the
/// entropy of the reduced state on the A side.
pub fn pure_entanglement(state: &StateVector, cut: &Partition) -> Result<Ebits> {
    let dev = (state.norm() - 1.0).abs();
    if dev > 1e-9 {
        return Err(Error::NotNormalized(dev));
    }
    let rho_a = state.partial_trace(&cut.a_qubits)?;
    von_neumann_entropy(&rho_a)
}

/// Entropy of entanglement of a pure logical state across the A:B cut,
/// evaluated on the Walsh-transform diagonal without leaving the logical
/// subspace.
pub fn logical_pure_entanglement(ls: &LogicalState) -> Result<Ebits> {
    if !ls.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(shannon_entropy(&reduced_diagonal_fast(ls)))
}

/// S(Tr_B ρ) − S(ρ) across the A:B cut of the labels. A computable lower
/// bound on the entanglement of ρ; may be negative and is reported as-is.
pub fn gain_lower_bound(rho: &DensityMatrix) -> Result<Ebits> {
    let cut = Partition::bell_cut(rho.labels());
    let reduced = rho.partial_trace(&cut.a_qubits)?;
    let s_a = von_neumann_entropy(&reduced)?;
    let s = von_neumann_entropy(rho)?;
    Ok(Ebits(s_a.0 - s.0))
}

/// The same gain bound evaluated in the logical representation.
pub fn logical_gain_lower_bound(ls: &LogicalState) -> Result<Ebits> {
    let s_a = shannon_entropy(&reduced_diagonal_fast(ls));
    let s = logical_entropy(ls)?;
    Ok(Ebits(s_a.0 - s.0))
}

/// The free amplitudes of the single-row unitary extension family of a
/// two-bit universal gate: the garbage state attached to the unique
/// odd-one-out output row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl ExtensionParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let p = ExtensionParams { a, b, c, d };
        let dev = (p.norm_sqr() - 1.0).abs();
        if dev > 1e-10 {
            return Err(Error::ExtensionNotNormalized(dev));
        }
        Ok(p)
    }

    /// Rescale arbitrary amplitudes onto the unit sphere.
    pub fn normalized(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
        if n < 1e-12 {
            return Err(Error::ExtensionNotNormalized(1.0));
        }
        Ok(ExtensionParams {
            a: a / n,
            b: b / n,
            c: c / n,
            d: d / n,
        })
    }

    /// The canonical member: garbage equal to the input string, |d| = 1.
    pub fn canonical() -> Self {
        ExtensionParams {
            a: C64::new(0.0, 0.0),
            b: C64::new(0.0, 0.0),
            c: C64::new(0.0, 0.0),
            d: C64::new(1.0, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn garbage_amplitudes(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// s = a + b + c, the only combination the output state depends on.
    pub fn s(&self) -> C64 {
        self.a + self.b + self.c
    }
}

/// Relative entropy of entanglement of the family's output state on the
/// uniform two-bit test input, as a function of s = a + b + c:
///
///   H[1/2 + Re(s)/4] − H[1/2 + √(1 + |s|²)/4].
///
/// The output is maximally correlated across the cut, for which the
/// relative entropy of entanglement coincides with S(Tr_B ρ) − S(ρ); the
/// minimum over the parameter sphere sits at s = 0 and equals
/// 1 − H[1/4].
pub fn ree_nand_family(params: &ExtensionParams) -> Result<Ebits> {
    let s = params.s();
    let first = binary_entropy(0.5 + 0.25 * s.re)?;
    let second = binary_entropy(0.5 + 0.25 * (1.0 + s.norm_sqr()).sqrt())?;
    Ok(Ebits(first.0 - second.0))
}

/// Variant with the first entropy argument read as 1/2 + (Re s)²/4, kept
/// for reference. For |Re s| > √2 the argument leaves [0, 1] and a domain
/// error is reported rather than clamped.
pub fn ree_nand_family_printed(params: &ExtensionParams) -> Result<Ebits> {
    let s = params.s();
    let first = binary_entropy(0.5 + 0.25 * s.re * s.re)?;
    let second = binary_entropy(0.5 + 0.25 * (1.0 + s.norm_sqr()).sqrt())?;
    Ok(Ebits(first.0 - second.0))
}
