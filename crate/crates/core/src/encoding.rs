//! Bell-pair encoding of classical bits and the logical-subspace fast path.
//!
//! A classical bit is carried by one of two orthogonal maximally entangled
//! two-qubit states, (|00⟩ + |11⟩)/√2 for 0 and (|00⟩ − |11⟩)/√2 for 1, and a
//! string of n bits by the product of n such pairs. States that stay inside
//! the 2^n-dimensional span of these products are represented compactly by a
//! [`LogicalState`]; the reduced state across the A:B cut is then computable
//! with a Walsh–Hadamard transform instead of materializing the 4^n space.
//!
//! Logical index convention: a bit string read left to right maps to an
//! integer with the first bit as the most significant bit.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qsim::{
    pair_labels, CMat, DensityMatrix, StateVector, DENSITY_DIM_CAP, VECTOR_DIM_CAP,
};

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The two fixed carrier states of the encoding.
pub struct BellBasis;

impl BellBasis {
    /// Amplitudes of the logical-zero carrier (|00⟩ + |11⟩)/√2 over
    /// |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn zero_state() -> [C64; 4] {
        [
            C64::new(SQRT_HALF, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(SQRT_HALF, 0.0),
        ]
    }

    /// Amplitudes of the logical-one carrier (|00⟩ − |11⟩)/√2.
    pub fn one_state() -> [C64; 4] {
        [
            C64::new(SQRT_HALF, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-SQRT_HALF, 0.0),
        ]
    }
}

/// Encode one classical bit as a Bell pair (pair index 0, A then B).
pub fn encode_bit(b: u8) -> StateVector {
    let amps = if b == 0 {
        BellBasis::zero_state()
    } else {
        BellBasis::one_state()
    };
    StateVector::new(pair_labels(1), amps.to_vec()).expect("two-qubit state")
}

/// A state of n encoded bits expressed in the logical basis: either 2^n
/// amplitudes (pure) or a 2^n x 2^n density record (mixed).
#[derive(Clone, Debug, PartialEq)]
pub enum LogicalState {
    Pure(Vec<C64>),
    Mixed(CMat),
}

impl LogicalState {
    /// A pure logical state; the amplitudes must already be normalized.
    pub fn pure(amps: Vec<C64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amps.len()));
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized((norm_sq - 1.0).abs()));
        }
        Ok(LogicalState::Pure(amps))
    }

    /// A pure logical state, rescaled to unit norm.
    pub fn pure_normalized(mut amps: Vec<C64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amps.len()));
        }
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::NotNormalized(1.0));
        }
        for z in &mut amps {
            *z /= norm;
        }
        Ok(LogicalState::Pure(amps))
    }

    /// A mixed logical state with unit trace.
    pub fn mixed(rho: CMat) -> Result<Self> {
        if !rho.dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(rho.dim));
        }
        let dev = rho.hermiticity_deviation();
        if dev > 1e-8 {
            return Err(Error::NotHermitian(dev));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-10 {
            return Err(Error::NotNormalized((tr.re - 1.0).abs()));
        }
        Ok(LogicalState::Mixed(rho))
    }

    /// The encoded basis string with integer index `x`.
    pub fn basis(n_pairs: usize, x: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_pairs];
        amps[x] = C64::new(1.0, 0.0);
        LogicalState::Pure(amps)
    }

    pub fn n_pairs(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn dim(&self) -> usize {
        match self {
            LogicalState::Pure(a) => a.len(),
            LogicalState::Mixed(r) => r.dim,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, LogicalState::Pure(_))
    }

    /// The density record, forming the outer product for pure states.
    pub fn density_record(&self) -> CMat {
        match self {
            LogicalState::Pure(a) => {
                let d = a.len();
                let mut m = CMat::zeros(d);
                for i in 0..d {
                    for j in 0..d {
                        m.set(i, j, a[i] * a[j].conj());
                    }
                }
                m
            }
            LogicalState::Mixed(r) => r.clone(),
        }
    }

    /// Tr(ρ²); equals one exactly for the pure representation.
    pub fn purity(&self) -> f64 {
        match self {
            LogicalState::Pure(_) => 1.0,
            LogicalState::Mixed(r) => {
                let d = r.dim;
                let mut acc = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        acc += (r.get(i, j) * r.get(j, i)).re;
                    }
                }
                acc
            }
        }
    }

    /// Probability weight of the encoded basis string `x`.
    pub fn basis_weight(&self, x: usize) -> f64 {
        match self {
            LogicalState::Pure(a) => a[x].norm_sqr(),
            LogicalState::Mixed(r) => r.get(x, x).re,
        }
    }

    /// Append `count` pairs in the logical-zero state at the end.
    pub fn append_zero_pairs(&self, count: usize) -> Self {
        if count == 0 {
            return self.clone();
        }
        let shift = count;
        match self {
            LogicalState::Pure(a) => {
                let mut out = vec![C64::new(0.0, 0.0); a.len() << shift];
                for (x, &z) in a.iter().enumerate() {
                    out[x << shift] = z;
                }
                LogicalState::Pure(out)
            }
            LogicalState::Mixed(r) => {
                let mut out = CMat::zeros(r.dim << shift);
                for x in 0..r.dim {
                    for y in 0..r.dim {
                        out.set(x << shift, y << shift, r.get(x, y));
                    }
                }
                LogicalState::Mixed(out)
            }
        }
    }

    /// Apply a unitary on the given logical pair positions.
    pub fn apply_logical_unitary(&self, u: &CMat, targets: &[usize]) -> Self {
        let n = self.n_pairs();
        match self {
            LogicalState::Pure(a) => {
                let mut amps = a.clone();
                crate::qsim::apply_matrix_vec(u, targets, &mut amps, n);
                LogicalState::Pure(amps)
            }
            LogicalState::Mixed(r) => {
                let mut data = r.data.clone();
                crate::qsim::apply_matrix_vec(u, targets, &mut data, 2 * n);
                let uc = u.conj();
                let cols: Vec<usize> = targets.iter().map(|t| t + n).collect();
                crate::qsim::apply_matrix_vec(&uc, &cols, &mut data, 2 * n);
                LogicalState::Mixed(CMat { dim: r.dim, data })
            }
        }
    }

    /// Trace out the given pair positions. Tracing whole pairs keeps the
    /// state inside the logical subspace, so this is a partial trace of the
    /// logical record. A pure state with a single nonzero amplitude stays
    /// pure.
    pub fn trace_out_pairs(&self, discard: &[usize]) -> Result<Self> {
        if discard.is_empty() {
            return Ok(self.clone());
        }
        let n = self.n_pairs();
        let keep: Vec<usize> = (0..n).filter(|p| !discard.contains(p)).collect();
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        if let LogicalState::Pure(a) = self {
            let nonzero: Vec<usize> = a
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm_sqr() > 1e-24)
                .map(|(i, _)| i)
                .collect();
            if nonzero.len() == 1 {
                let idx = nonzero[0];
                let mut out_idx = 0usize;
                for &k in &keep {
                    out_idx = (out_idx << 1) | ((idx >> (n - 1 - k)) & 1);
                }
                let mut amps = vec![C64::new(0.0, 0.0); 1 << keep.len()];
                amps[out_idx] = a[idx] / a[idx].norm();
                return Ok(LogicalState::Pure(amps));
            }
            return Ok(LogicalState::Mixed(crate::qsim::partial_trace_vec(
                a, n, &keep,
            )));
        }
        match self {
            LogicalState::Mixed(r) => Ok(LogicalState::Mixed(
                crate::qsim::partial_trace_mat(r, n, &keep),
            )),
            LogicalState::Pure(_) => unreachable!(),
        }
    }
}

/// Unnormalized Walsh–Hadamard butterfly transform in place. Applying it
/// twice multiplies the input by 2^n.
pub fn fast_walsh_hadamard(v: &mut [C64]) -> Result<()> {
    let n = v.len();
    if !n.is_power_of_two() || n == 0 {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut dist = 1;
    while dist < n {
        let mut r = 0;
        while r < n {
            for i in r..r + dist {
                let a = v[i];
                let b = v[i + dist];
                v[i] = a + b;
                v[i + dist] = a - b;
            }
            r += 2 * dist;
        }
        dist <<= 1;
    }
    Ok(())
}

/// Diagonal of the reduction of an encoded state onto the A side of every
/// pair. The reduction is diagonal in the A computational basis; the entries
/// are d_z = 2^{-n} Σ_{x,y} r_{x,y} (-1)^{z·(x⊕y)}, which for pure states is
/// the squared Walsh–Hadamard transform of the amplitudes scaled to sum one.
pub fn reduced_diagonal_fast(ls: &LogicalState) -> Vec<f64> {
    let n = ls.n_pairs();
    let dim = 1usize << n;
    let scale = 1.0 / dim as f64;
    match ls {
        LogicalState::Pure(a) => {
            let mut w = a.clone();
            fast_walsh_hadamard(&mut w).expect("power-of-two length");
            w.iter().map(|z| z.norm_sqr() * scale).collect()
        }
        LogicalState::Mixed(r) => {
            // diag(W r W) / 2^n via row then column transforms
            let mut m = r.clone();
            for row in 0..dim {
                fast_walsh_hadamard(&mut m.data[row * dim..(row + 1) * dim])
                    .expect("power-of-two length");
            }
            let mut col = vec![C64::new(0.0, 0.0); dim];
            let mut out = vec![0.0f64; dim];
            for z in 0..dim {
                for (row, c) in col.iter_mut().enumerate() {
                    *c = m.data[row * dim + z];
                }
                fast_walsh_hadamard(&mut col).expect("power-of-two length");
                out[z] = (col[z].re * scale).max(0.0);
            }
            out
        }
    }
}

/// What an encoded [`LogicalState`] materializes to in the full Hilbert
/// space.
#[derive(Clone, Debug)]
pub enum Encoded {
    Vector(StateVector),
    Matrix(DensityMatrix),
}

/// Bit pattern of the full-space basis state where both qubits of pair i
/// carry bit u_i.
fn spread_pattern(u: usize, n_pairs: usize) -> usize {
    let mut out = 0usize;
    for i in 0..n_pairs {
        if (u >> (n_pairs - 1 - i)) & 1 == 1 {
            out |= 0b11 << (2 * (n_pairs - 1 - i));
        }
    }
    out
}

/// Materialize a logical state in the full 4^n-dimensional space. The map is
/// an isometry: inner products, spectra and entanglement across the A:B cut
/// are preserved.
pub fn encode_logical(ls: &LogicalState) -> Result<Encoded> {
    let n = ls.n_pairs();
    let dim = 1usize << n;
    let full = 1usize << (2 * n);
    let scale = (dim as f64).recip().sqrt(); // 2^{-n/2}
    match ls {
        LogicalState::Pure(a) => {
            if full > VECTOR_DIM_CAP {
                return Err(Error::CapacityExceeded {
                    what: "state vector",
                    dim: full,
                    cap: VECTOR_DIM_CAP,
                });
            }
            // |x| encodes to 2^{-n/2} Σ_u (-1)^{x·u} |u u ... u⟩ pairwise
            let mut w = a.clone();
            fast_walsh_hadamard(&mut w)?;
            let mut amps = vec![C64::new(0.0, 0.0); full];
            for (u, &coef) in w.iter().enumerate() {
                amps[spread_pattern(u, n)] = coef * scale;
            }
            StateVector::new(pair_labels(n), amps).map(Encoded::Vector)
        }
        LogicalState::Mixed(r) => {
            if full > DENSITY_DIM_CAP {
                return Err(Error::CapacityExceeded {
                    what: "density matrix",
                    dim: full,
                    cap: DENSITY_DIM_CAP,
                });
            }
            // ρ_full[spread(u), spread(v)] = (W r W)_{u,v} / 2^n
            let mut m = r.clone();
            for row in 0..dim {
                fast_walsh_hadamard(&mut m.data[row * dim..(row + 1) * dim])?;
            }
            let mut col = vec![C64::new(0.0, 0.0); dim];
            let mut b = CMat::zeros(dim);
            for c in 0..dim {
                for (row, slot) in col.iter_mut().enumerate() {
                    *slot = m.data[row * dim + c];
                }
                fast_walsh_hadamard(&mut col)?;
                for (row, &v) in col.iter().enumerate() {
                    b.set(row, c, v);
                }
            }
            let mut out = CMat::zeros(full);
            let inv = (dim as f64).recip();
            for u in 0..dim {
                for v in 0..dim {
                    out.set(spread_pattern(u, n), spread_pattern(v, n), b.get(u, v) * inv);
                }
            }
            DensityMatrix::new(pair_labels(n), out).map(Encoded::Matrix)
        }
    }
}

/// The unentangled test states of the encoding: uniform-magnitude amplitude
/// patterns (-1)^{z·x}/√(2^n). Their encodings are computational product
/// states carrying zero ebits across the cut.
pub fn character_state(n_pairs: usize, z: usize) -> LogicalState {
    let dim = 1usize << n_pairs;
    let scale = (dim as f64).recip().sqrt();
    let amps = (0..dim)
        .map(|x| {
            let sign = if (x & z).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            C64::new(sign * scale, 0.0)
        })
        .collect();
    LogicalState::Pure(amps)
}

/// Random pure logical state, Gaussian amplitudes normalized.
pub fn random_pure_logical<R: Rng>(n_pairs: usize, rng: &mut R) -> LogicalState {
    let dim = 1usize << n_pairs;
    let amps: Vec<C64> = (0..dim)
        .map(|_| {
            C64::new(
                rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng),
                rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng),
            )
        })
        .collect();
    LogicalState::pure_normalized(amps).expect("nonzero Gaussian vector")
}

/// Random mixed logical state from the trace-normalized Wishart ensemble.
pub fn random_mixed_logical<R: Rng>(n_pairs: usize, rng: &mut R) -> LogicalState {
    let dim = 1usize << n_pairs;
    let mut g = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(
                i,
                j,
                C64::new(
                    rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng),
                    rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng),
                ),
            );
        }
    }
    let mut rho = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..dim {
                acc += g.get(i, k) * g.get(j, k).conj();
            }
            rho.set(i, j, acc);
        }
    }
    let tr = rho.trace().re;
    rho.scale(1.0 / tr);
    LogicalState::Mixed(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn encode_bit_matches_the_carriers() {
        let zero = encode_bit(0);
        let expect = [SQRT_HALF, 0.0, 0.0, SQRT_HALF];
        for (a, e) in zero.amps().iter().zip(expect) {
            assert!((a - c(e)).norm() < 1e-15);
        }
        let one = encode_bit(1);
        let expect = [SQRT_HALF, 0.0, 0.0, -SQRT_HALF];
        for (a, e) in one.amps().iter().zip(expect) {
            assert!((a - c(e)).norm() < 1e-15);
        }
        // orthogonality
        assert!(zero.inner(&one).norm() < 1e-15);
    }

    #[test]
    fn basis_string_encodes_to_bell_product() {
        // 001010 -> product of carriers, checked against explicit tensor
        let bits = [0u8, 0, 1, 0, 1, 0];
        let x = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let ls = LogicalState::basis(6, x);
        let enc = match encode_logical(&ls).unwrap() {
            Encoded::Vector(v) => v,
            _ => panic!("pure encoding expected"),
        };
        let mut product: Option<StateVector> = None;
        for (i, &b) in bits.iter().enumerate() {
            let pair = StateVector::new(
                crate::qsim::pair_labels(6)[2 * i..2 * i + 2].to_vec(),
                if b == 0 {
                    BellBasis::zero_state().to_vec()
                } else {
                    BellBasis::one_state().to_vec()
                },
            )
            .unwrap();
            product = Some(match product {
                None => pair,
                Some(p) => p.tensor(&pair).unwrap(),
            });
        }
        let product = product.unwrap();
        for (a, b) in enc.amps().iter().zip(product.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn uniform_superposition_encodes_to_product() {
        // (|0> + |1>)/√2 logical = |00> computational
        let ls = LogicalState::pure(vec![c(SQRT_HALF), c(SQRT_HALF)]).unwrap();
        let enc = match encode_logical(&ls).unwrap() {
            Encoded::Vector(v) => v,
            _ => panic!(),
        };
        assert!((enc.amps()[0] - c(1.0)).norm() < 1e-12);
        for z in &enc.amps()[1..] {
            assert!(z.norm() < 1e-12);
        }
    }

    #[test]
    fn isometry_preserves_inner_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4usize {
            for _ in 0..10 {
                let u = random_pure_logical(n, &mut rng);
                let v = random_pure_logical(n, &mut rng);
                let (ua, va) = match (&u, &v) {
                    (LogicalState::Pure(a), LogicalState::Pure(b)) => (a.clone(), b.clone()),
                    _ => unreachable!(),
                };
                let logical: C64 = ua.iter().zip(&va).map(|(a, b)| a.conj() * b).sum();
                let eu = match encode_logical(&u).unwrap() {
                    Encoded::Vector(s) => s,
                    _ => unreachable!(),
                };
                let ev = match encode_logical(&v).unwrap() {
                    Encoded::Vector(s) => s,
                    _ => unreachable!(),
                };
                assert!((eu.inner(&ev) - logical).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn walsh_hadamard_small_cases() {
        let mut v = vec![c(1.0), c(0.0)];
        fast_walsh_hadamard(&mut v).unwrap();
        assert!((v[0] - c(1.0)).norm() < 1e-15 && (v[1] - c(1.0)).norm() < 1e-15);
        let mut v = vec![c(1.0), c(1.0)];
        fast_walsh_hadamard(&mut v).unwrap();
        assert!((v[0] - c(2.0)).norm() < 1e-15 && (v[1] - c(0.0)).norm() < 1e-15);
    }

    #[test]
    fn walsh_hadamard_rejects_bad_length() {
        let mut v = vec![c(1.0); 3];
        assert!(fast_walsh_hadamard(&mut v).is_err());
    }

    #[test]
    fn walsh_hadamard_is_involutive_up_to_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5usize {
            let dim = 1usize << n;
            let orig: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let mut v = orig.clone();
            fast_walsh_hadamard(&mut v).unwrap();
            fast_walsh_hadamard(&mut v).unwrap();
            for (a, b) in v.iter().zip(&orig) {
                assert!((a - b * dim as f64).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn reduced_diagonal_of_basis_bit() {
        let d = reduced_diagonal_fast(&LogicalState::basis(1, 0));
        assert!((d[0] - 0.5).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reduced_diagonal_of_uniform_superposition() {
        let ls = LogicalState::pure(vec![c(SQRT_HALF), c(SQRT_HALF)]).unwrap();
        let d = reduced_diagonal_fast(&ls);
        assert!((d[0] - 1.0).abs() < 1e-12 && d[1].abs() < 1e-12);
    }

    #[test]
    fn fast_path_matches_full_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 1..=4usize {
            for mixed in [false, true] {
                let ls = if mixed {
                    random_mixed_logical(n, &mut rng)
                } else {
                    random_pure_logical(n, &mut rng)
                };
                let fast = reduced_diagonal_fast(&ls);
                let full = match encode_logical(&ls).unwrap() {
                    Encoded::Vector(v) => v.to_density().unwrap(),
                    Encoded::Matrix(m) => m,
                };
                let a_side: Vec<usize> = (0..n).map(|p| 2 * p).collect();
                let reduced = full.partial_trace(&a_side).unwrap();
                for (z, &f) in fast.iter().enumerate() {
                    assert!(
                        (reduced.entry(z, z).re - f).abs() < 1e-10,
                        "n={n} mixed={mixed} z={z}"
                    );
                }
                // off-diagonal of the reduction vanishes
                for i in 0..(1 << n) {
                    for j in 0..(1 << n) {
                        if i != j {
                            assert!(reduced.entry(i, j).norm() < 1e-10);
                        }
                    }
                }
                let sum: f64 = fast.iter().sum();
                assert!((sum - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mixed_spectrum_survives_encoding() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 1..=3usize {
            let ls = random_mixed_logical(n, &mut rng);
            let rec = ls.density_record();
            let logical_spec = crate::qsim::hermitian_eigenvalues(&rec).unwrap();
            let full = match encode_logical(&ls).unwrap() {
                Encoded::Matrix(m) => m,
                _ => unreachable!(),
            };
            let full_spec = full.spectrum().unwrap();
            for (i, v) in logical_spec.iter().enumerate() {
                assert!((v - full_spec[i]).abs() < 1e-10);
            }
            for v in &full_spec[logical_spec.len()..] {
                assert!(v.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn character_states_are_unentangled() {
        for n in 1..=4usize {
            for z in 0..(1usize << n) {
                let d = reduced_diagonal_fast(&character_state(n, z));
                let mut found_one = false;
                for (i, &p) in d.iter().enumerate() {
                    if i == z {
                        assert!((p - 1.0).abs() < 1e-12);
                        found_one = true;
                    } else {
                        assert!(p.abs() < 1e-12);
                    }
                }
                assert!(found_one);
            }
        }
    }

    #[test]
    fn trace_out_keeps_basis_states_pure() {
        let ls = LogicalState::basis(3, 0b101);
        let out = ls.trace_out_pairs(&[1]).unwrap();
        assert!(out.is_pure());
        assert!((out.basis_weight(0b11) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_out_matches_density_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let ls = random_pure_logical(3, &mut rng);
        let direct = ls.trace_out_pairs(&[0, 2]).unwrap();
        let via_mixed = LogicalState::Mixed(ls.density_record())
            .trace_out_pairs(&[0, 2])
            .unwrap();
        let a = direct.density_record();
        let b = via_mixed.density_record();
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert!((a.get(i, j) - b.get(i, j)).norm() < 1e-12);
            }
        }
    }
}
