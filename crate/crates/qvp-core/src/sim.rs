//! Exact dense statevector simulation.
//!
//! A state over `n` qubits is the full array of `2^n` complex amplitudes.
//! Basis-index convention: qubit 0 is the most significant bit, so index
//! `b` encodes qubit values as `b = Σ_i q_i · 2^(n-1-i)`. Gates are applied
//! in place with stride arithmetic; no full `2^n × 2^n` matrix is ever built
//! outside of test oracles.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{Error, Result};

/// Hard cap on the register width: 2^24 complex doubles is ~256 MB.
pub const MAX_QUBITS: usize = 24;

/// Tolerance for unitarity and norm checks.
pub const UNITARY_TOL: f64 = 1e-10;

/// A 2×2 complex gate matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix(pub [[Complex64; 2]; 2]);

impl GateMatrix {
    pub fn identity() -> Self {
        GateMatrix([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        GateMatrix([
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ])
    }

    pub fn pauli_x() -> Self {
        GateMatrix([
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
    }

    /// Phase gate `diag(1, e^{iλ})`; `phase(π)` is Pauli-Z.
    pub fn phase(lambda: f64) -> Self {
        GateMatrix([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, lambda)],
        ])
    }

    pub fn pauli_z() -> Self {
        GateMatrix([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
        ])
    }

    /// Max elementwise deviation of `M†M` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.0;
        let mut defect: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                // (M†M)[r][c] = Σ_k conj(m[k][r]) m[k][c]
                let mut v = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    v += m[k][r].conj() * m[k][c];
                }
                let target = if r == c { 1.0 } else { 0.0 };
                defect = defect.max((v - Complex64::new(target, 0.0)).norm());
            }
        }
        defect
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

/// The generic single-qubit gate
/// `[[cos(θ/2), −e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(λ+φ)} cos(θ/2)]]`.
///
/// `u3_matrix(π, 0, π)` is Pauli-X, `u3_matrix(π/2, 0, π)` is Hadamard.
pub fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Result<GateMatrix> {
    if !(theta.is_finite() && phi.is_finite() && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "u3 angles must be finite, got ({theta}, {phi}, {lambda})"
        )));
    }
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    Ok(GateMatrix([
        [
            Complex64::new(c, 0.0),
            -Complex64::from_polar(s, lambda),
        ],
        [
            Complex64::from_polar(s, phi),
            Complex64::from_polar(c, lambda + phi),
        ],
    ]))
}

/// A gate instance bound to qubit indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    Single { matrix: GateMatrix, qubit: usize },
    Cnot { control: usize, target: usize },
    Cz { a: usize, b: usize },
}

impl GateOp {
    fn check(&self, n_qubits: usize) -> Result<()> {
        let oob = |q: usize| {
            Err(Error::InvalidArgument(format!(
                "qubit index {q} out of range for {n_qubits} qubits"
            )))
        };
        match *self {
            GateOp::Single { matrix, qubit } => {
                if qubit >= n_qubits {
                    return oob(qubit);
                }
                if !matrix.is_unitary(UNITARY_TOL) {
                    return Err(Error::InvalidArgument(
                        "gate matrix is not unitary".into(),
                    ));
                }
            }
            GateOp::Cnot { control, target } => {
                if control >= n_qubits {
                    return oob(control);
                }
                if target >= n_qubits {
                    return oob(target);
                }
                if control == target {
                    return Err(Error::InvalidArgument(
                        "cnot control and target must be distinct".into(),
                    ));
                }
            }
            GateOp::Cz { a, b } => {
                if a >= n_qubits {
                    return oob(a);
                }
                if b >= n_qubits {
                    return oob(b);
                }
                if a == b {
                    return Err(Error::InvalidArgument(
                        "cz qubits must be distinct".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// An ordered list of gate operations over a fixed register width.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        Ok(Circuit {
            n_qubits,
            ops: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Append an op after validating its indices and unitarity.
    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.check(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn single(&mut self, matrix: GateMatrix, qubit: usize) -> Result<()> {
        self.push(GateOp::Single { matrix, qubit })
    }

    pub fn u3(&mut self, qubit: usize, theta: f64, phi: f64, lambda: f64) -> Result<()> {
        self.single(u3_matrix(theta, phi, lambda)?, qubit)
    }

    pub fn h(&mut self, qubit: usize) -> Result<()> {
        self.single(GateMatrix::hadamard(), qubit)
    }

    pub fn x(&mut self, qubit: usize) -> Result<()> {
        self.single(GateMatrix::pauli_x(), qubit)
    }

    pub fn z(&mut self, qubit: usize) -> Result<()> {
        self.single(GateMatrix::pauli_z(), qubit)
    }

    pub fn phase(&mut self, qubit: usize, lambda: f64) -> Result<()> {
        self.single(GateMatrix::phase(lambda), qubit)
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.push(GateOp::Cnot { control, target })
    }

    pub fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.push(GateOp::Cz { a, b })
    }

    /// Concatenate another circuit of the same width.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate a {}-qubit circuit onto a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.ops.extend_from_slice(&other.ops);
        Ok(())
    }

    /// Apply all ops in order; identical to folding [`StateVector::apply`].
    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "circuit width {} does not match state width {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        for op in &self.ops {
            state.apply(op)?;
        }
        Ok(())
    }
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Config(format!(
            "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
        )));
    }
    Ok(())
}

/// A normalized pure state over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state `|0…0⟩`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Wrap an explicit amplitude array; it must have length `2^n_qubits`,
    /// finite entries, and unit norm within `1e-10`.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1usize << n_qubits,
                n_qubits,
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > UNITARY_TOL {
            return Err(Error::InvalidArgument(format!(
                "amplitudes are not normalized: Σ|a|² = {norm_sqr}"
            )));
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit of `qubit` inside basis index `index` (qubit 0 is the MSB).
    fn bit_mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Apply one gate in place over the amplitude array.
    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        op.check(self.n_qubits)?;
        match *op {
            GateOp::Single { matrix, qubit } => self.apply_single(&matrix, qubit),
            GateOp::Cnot { control, target } => {
                let cm = self.bit_mask(control);
                let tm = self.bit_mask(target);
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
            GateOp::Cz { a, b } => {
                let am = self.bit_mask(a);
                let bm = self.bit_mask(b);
                for i in 0..self.amps.len() {
                    if i & am != 0 && i & bm != 0 {
                        self.amps[i] = -self.amps[i];
                    }
                }
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, m: &GateMatrix, qubit: usize) {
        let stride = self.bit_mask(qubit);
        let g = &m.0;
        let mut base = 0;
        while base < self.amps.len() {
            for off in 0..stride {
                let i0 = base + off;
                let i1 = i0 + stride;
                let a0 = self.amps[i0];
                let a1 = self.amps[i1];
                self.amps[i0] = g[0][0] * a0 + g[0][1] * a1;
                self.amps[i1] = g[1][0] * a0 + g[1][1] * a1;
            }
            base += stride * 2;
        }
    }

    /// Probability that a projective measurement finds `qubit` in `|1⟩`:
    /// the sum of `|amp|²` over basis indices whose bit for `qubit` is set.
    pub fn prob_qubit_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "qubit index {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        let mask = self.bit_mask(qubit);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Draw `shots` i.i.d. basis-state samples from `|amps|²` with a seeded
    /// generator and return per-index counts. Counts sum to `shots`.
    pub fn sample_counts(&self, shots: u64, seed: u64) -> Result<BTreeMap<usize, u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_counts_with_rng(shots, &mut rng)
    }

    /// Same as [`sample_counts`](Self::sample_counts) but drawing from a
    /// caller-owned generator, for callers that manage one RNG stream.
    pub fn sample_counts_with_rng(
        &self,
        shots: u64,
        rng: &mut impl Rng,
    ) -> Result<BTreeMap<usize, u64>> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be >= 1".into()));
        }
        // Cumulative distribution over basis indices.
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * acc;
            let mut idx = cdf.partition_point(|&c| c <= u);
            if idx >= self.amps.len() {
                idx = self.amps.len() - 1;
            }
            *counts.entry(idx).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!(
            (a - b).norm() <= tol,
            "amplitudes differ: {a} vs {b} (tol {tol})"
        );
    }

    #[test]
    fn new_state_is_all_zeros_basis() {
        let s = StateVector::new(1).unwrap();
        assert_eq!(s.amplitudes().len(), 2);
        assert_close(s.amplitudes()[0], Complex64::new(1.0, 0.0), 0.0);
        assert_close(s.amplitudes()[1], Complex64::new(0.0, 0.0), 0.0);

        let s = StateVector::new(2).unwrap();
        assert_eq!(s.amplitudes().len(), 4);
        assert_close(s.amplitudes()[0], Complex64::new(1.0, 0.0), 0.0);
        for &a in &s.amplitudes()[1..] {
            assert_close(a, Complex64::new(0.0, 0.0), 0.0);
        }
    }

    #[test]
    fn new_state_rejects_bad_counts() {
        assert!(matches!(StateVector::new(0), Err(Error::Config(_))));
        assert!(matches!(
            StateVector::new(MAX_QUBITS + 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn u3_special_values() {
        let id = u3_matrix(0.0, 0.0, 0.0).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_close(id.0[r][c], GateMatrix::identity().0[r][c], 1e-15);
            }
        }
        let x = u3_matrix(std::f64::consts::PI, 0.0, std::f64::consts::PI).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_close(x.0[r][c], GateMatrix::pauli_x().0[r][c], 1e-12);
            }
        }
        let h = u3_matrix(std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::PI).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_close(h.0[r][c], GateMatrix::hadamard().0[r][c], 1e-12);
            }
        }
    }

    #[test]
    fn u3_rejects_non_finite_angles() {
        assert!(matches!(
            u3_matrix(f64::NAN, 0.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            u3_matrix(0.0, f64::INFINITY, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn u3_is_unitary_over_random_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let t: f64 = rng.gen_range(-10.0..10.0);
            let p: f64 = rng.gen_range(-10.0..10.0);
            let l: f64 = rng.gen_range(-10.0..10.0);
            let m = u3_matrix(t, p, l).unwrap();
            assert!(m.is_unitary(1e-10), "defect {}", m.unitarity_defect());
        }
    }

    #[test]
    fn hadamard_on_zero_gives_uniform() {
        let mut s = StateVector::new(1).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::hadamard(),
            qubit: 0,
        })
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(s.amplitudes()[0], Complex64::new(h, 0.0), 1e-15);
        assert_close(s.amplitudes()[1], Complex64::new(h, 0.0), 1e-15);
    }

    #[test]
    fn cnot_truth_table() {
        // |10⟩ → |11⟩ (qubit 0 is the MSB, so index 2 is |10⟩).
        let mut s = StateVector::new(2).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::pauli_x(),
            qubit: 0,
        })
        .unwrap();
        s.apply(&GateOp::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        assert_close(s.amplitudes()[3], Complex64::new(1.0, 0.0), 1e-15);
    }

    #[test]
    fn cz_flips_phase_of_one_one() {
        let mut s = StateVector::new(2).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::pauli_x(),
            qubit: 0,
        })
        .unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::pauli_x(),
            qubit: 1,
        })
        .unwrap();
        s.apply(&GateOp::Cz { a: 0, b: 1 }).unwrap();
        assert_close(s.amplitudes()[3], Complex64::new(-1.0, 0.0), 1e-15);
        for i in 0..3 {
            assert_close(s.amplitudes()[i], Complex64::new(0.0, 0.0), 1e-15);
        }
    }

    #[test]
    fn apply_rejects_out_of_range_and_duplicate_indices() {
        let mut s = StateVector::new(2).unwrap();
        assert!(s
            .apply(&GateOp::Single {
                matrix: GateMatrix::hadamard(),
                qubit: 2
            })
            .is_err());
        assert!(s.apply(&GateOp::Cnot { control: 1, target: 1 }).is_err());
        assert!(s.apply(&GateOp::Cz { a: 0, b: 0 }).is_err());
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(2).unwrap();
        let mut s = StateVector::new(2).unwrap();
        c.run(&mut s).unwrap();
        assert_close(s.amplitudes()[0], Complex64::new(1.0, 0.0), 0.0);
    }

    #[test]
    fn bell_state_construction() {
        let mut c = Circuit::new(2).unwrap();
        c.h(0).unwrap();
        c.cnot(0, 1).unwrap();
        let mut s = StateVector::new(2).unwrap();
        c.run(&mut s).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(s.amplitudes()[0], Complex64::new(h, 0.0), 1e-15);
        assert_close(s.amplitudes()[3], Complex64::new(h, 0.0), 1e-15);
        assert_close(s.amplitudes()[1], Complex64::new(0.0, 0.0), 1e-15);
        assert_close(s.amplitudes()[2], Complex64::new(0.0, 0.0), 1e-15);
    }

    #[test]
    fn double_hadamard_is_identity() {
        let mut c = Circuit::new(1).unwrap();
        c.h(0).unwrap();
        c.h(0).unwrap();
        let mut s = StateVector::new(1).unwrap();
        c.run(&mut s).unwrap();
        assert_close(s.amplitudes()[0], Complex64::new(1.0, 0.0), 1e-12);
        assert_close(s.amplitudes()[1], Complex64::new(0.0, 0.0), 1e-12);
    }

    #[test]
    fn run_rejects_width_mismatch() {
        let c = Circuit::new(2).unwrap();
        let mut s = StateVector::new(3).unwrap();
        assert!(matches!(c.run(&mut s), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn circuit_push_rejects_non_unitary_matrix() {
        let mut c = Circuit::new(1).unwrap();
        let bad = GateMatrix([
            [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ]);
        assert!(c.single(bad, 0).is_err());
    }

    #[test]
    fn prob_qubit_one_examples() {
        // Uniform 2-qubit state.
        let mut s = StateVector::new(2).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::hadamard(),
            qubit: 0,
        })
        .unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::hadamard(),
            qubit: 1,
        })
        .unwrap();
        assert!((s.prob_qubit_one(0).unwrap() - 0.5).abs() < 1e-12);

        // |10⟩: qubit 0 (MSB) is 1.
        let mut s = StateVector::new(2).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::pauli_x(),
            qubit: 0,
        })
        .unwrap();
        assert!((s.prob_qubit_one(0).unwrap() - 1.0).abs() < 1e-12);

        // Bell state marginal.
        let mut c = Circuit::new(2).unwrap();
        c.h(0).unwrap();
        c.cnot(0, 1).unwrap();
        let mut s = StateVector::new(2).unwrap();
        c.run(&mut s).unwrap();
        assert!((s.prob_qubit_one(1).unwrap() - 0.5).abs() < 1e-12);

        assert!(s.prob_qubit_one(2).is_err());
    }

    #[test]
    fn prob_complement_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let mut c = Circuit::new(n).unwrap();
            for _ in 0..8 {
                let q = rng.gen_range(0..n);
                c.u3(
                    q,
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                )
                .unwrap();
                if n > 1 {
                    let a = rng.gen_range(0..n);
                    let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
                    c.cnot(a, b).unwrap();
                }
            }
            let mut s = StateVector::new(n).unwrap();
            c.run(&mut s).unwrap();
            for q in 0..n {
                let p1 = s.prob_qubit_one(q).unwrap();
                assert!((0.0..=1.0 + 1e-12).contains(&p1));
                let mask = 1 << (n - 1 - q);
                let p0_direct: f64 = s
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i & mask == 0)
                    .map(|(_, a)| a.norm_sqr())
                    .sum();
                assert!((p1 + p0_direct - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sample_counts_deterministic_distribution() {
        // |01⟩ puts all mass on index 1.
        let mut s = StateVector::new(2).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::pauli_x(),
            qubit: 1,
        })
        .unwrap();
        let counts = s.sample_counts(100, 123).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts[&1], 100);
    }

    #[test]
    fn sample_counts_binomial_bound() {
        // Uniform 1-qubit state, 10^4 shots: index-0 count within 5000 ± 3σ, σ = 50.
        let mut s = StateVector::new(1).unwrap();
        s.apply(&GateOp::Single {
            matrix: GateMatrix::hadamard(),
            qubit: 0,
        })
        .unwrap();
        let counts = s.sample_counts(10_000, 7).unwrap();
        let zeros = *counts.get(&0).unwrap_or(&0) as f64;
        assert!((zeros - 5000.0).abs() <= 150.0, "count {zeros}");
        let total: u64 = counts.values().sum();
        assert_eq!(total, 10_000);
    }

    #[test]
    fn sample_counts_rejects_zero_shots() {
        let s = StateVector::new(1).unwrap();
        assert!(matches!(
            s.sample_counts(0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sampling_same_seed_is_bit_identical() {
        let mut c = Circuit::new(2).unwrap();
        c.h(0).unwrap();
        c.u3(1, 1.1, 0.3, -0.7).unwrap();
        let mut s = StateVector::new(2).unwrap();
        c.run(&mut s).unwrap();
        assert_eq!(
            s.sample_counts(500, 42).unwrap(),
            s.sample_counts(500, 42).unwrap()
        );
    }
}
