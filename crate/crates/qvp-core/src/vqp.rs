//! The variational quantum perceptron: amplitude encoding, the layered
//! ansatz, forward probability evaluation, and the analytic shifted-gate
//! gradient, with an optional fixed amplification suffix.
//!
//! The model's output is `π(x;θ) = P(readout = 1)` after running the ansatz
//! on the amplitude-encoded input. Gradients are exact: each generic gate
//! satisfies
//!
//! - `∂_θ U = ½ U(θ+π, φ, λ)`
//! - `∂_φ U = (i/2) (U(θ,φ,λ) − U(θ, φ+π, λ))`
//! - `∂_λ U = (i/2) (U(θ,φ,λ) − U(θ, φ, λ+π))`
//!
//! so every partial derivative of `π` reduces to the real or imaginary part
//! of one overlap `⟨ψ_shifted|σ_z|ψ⟩` between the unshifted run and a run
//! with the single affected gate's angle shifted by π. One gradient call
//! costs `1 + n_params` circuit evaluations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grover::GroverBlock;
use crate::sim::{u3_matrix, Circuit, StateVector};

/// Ansatz structure: layer count, readout qubit, and per-layer CNOT
/// entangler pairs. The trainable angles live in [`AnsatzParams`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub n_layers: usize,
    /// Qubit whose probability of reading 1 is the class-1 probability.
    pub readout: usize,
    /// Per-layer `(control, target)` CNOT pairs, applied after the layer's
    /// single-qubit gates.
    pub entangler: Vec<Vec<(usize, usize)>>,
}

impl AnsatzSpec {
    /// The default layered ansatz: one generic gate per qubit per layer,
    /// then a CNOT chain `0→1, 1→2, …` in every layer.
    pub fn chain(n_qubits: usize, n_layers: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n_qubits.saturating_sub(1))
            .map(|i| (i, i + 1))
            .collect();
        AnsatzSpec {
            n_qubits,
            n_layers,
            readout: 0,
            entangler: vec![pairs; n_layers],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_layers == 0 {
            return Err(Error::InvalidArgument("ansatz needs at least one layer".into()));
        }
        if self.readout >= self.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "readout qubit {} out of range for {} qubits",
                self.readout, self.n_qubits
            )));
        }
        if self.entangler.len() != self.n_layers {
            return Err(Error::InvalidArgument(format!(
                "entangler has {} layers, ansatz has {}",
                self.entangler.len(),
                self.n_layers
            )));
        }
        for pairs in &self.entangler {
            for &(c, t) in pairs {
                if c >= self.n_qubits || t >= self.n_qubits || c == t {
                    return Err(Error::InvalidArgument(format!(
                        "bad entangler pair ({c}, {t}) for {} qubits",
                        self.n_qubits
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of trainable scalars: 3 per qubit per layer.
    pub fn num_params(&self) -> usize {
        3 * self.n_layers * self.n_qubits
    }
}

/// The three angles of one generic single-qubit gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateAngles {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

/// Which scalar of a gate a gradient entry refers to. Flattened parameter
/// order is (layer, qubit, [θ, φ, λ]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    Theta,
    Phi,
    Lambda,
}

pub const ANGLE_KINDS: [AngleKind; 3] = [AngleKind::Theta, AngleKind::Phi, AngleKind::Lambda];

/// Trainable angles, one [`GateAngles`] per (layer, qubit).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnsatzParams {
    n_layers: usize,
    n_qubits: usize,
    angles: Vec<GateAngles>,
}

impl AnsatzParams {
    pub fn zeros(spec: &AnsatzSpec) -> Self {
        AnsatzParams {
            n_layers: spec.n_layers,
            n_qubits: spec.n_qubits,
            angles: vec![
                GateAngles {
                    theta: 0.0,
                    phi: 0.0,
                    lambda: 0.0
                };
                spec.n_layers * spec.n_qubits
            ],
        }
    }

    /// All angles drawn uniformly from `[0, 2π)` in (layer, qubit, θφλ)
    /// order, so a fixed seed fixes the whole initialization.
    pub fn random(spec: &AnsatzSpec, rng: &mut impl Rng) -> Self {
        let mut params = Self::zeros(spec);
        for g in &mut params.angles {
            g.theta = rng.gen_range(0.0..2.0 * PI);
            g.phi = rng.gen_range(0.0..2.0 * PI);
            g.lambda = rng.gen_range(0.0..2.0 * PI);
        }
        params
    }

    pub fn from_flat(spec: &AnsatzSpec, flat: &[f64]) -> Result<Self> {
        if flat.len() != spec.num_params() {
            return Err(Error::InvalidArgument(format!(
                "expected {} parameters, got {}",
                spec.num_params(),
                flat.len()
            )));
        }
        if flat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        let mut params = Self::zeros(spec);
        for (g, chunk) in params.angles.iter_mut().zip(flat.chunks_exact(3)) {
            *g = GateAngles {
                theta: chunk[0],
                phi: chunk[1],
                lambda: chunk[2],
            };
        }
        Ok(params)
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.angles
            .iter()
            .flat_map(|g| [g.theta, g.phi, g.lambda])
            .collect()
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, layer: usize, qubit: usize) -> GateAngles {
        self.angles[layer * self.n_qubits + qubit]
    }

    fn shift(&mut self, layer: usize, qubit: usize, kind: AngleKind, delta: f64) {
        let g = &mut self.angles[layer * self.n_qubits + qubit];
        match kind {
            AngleKind::Theta => g.theta += delta,
            AngleKind::Phi => g.phi += delta,
            AngleKind::Lambda => g.lambda += delta,
        }
    }

    /// Take one in-place gradient-descent step, in flat parameter order.
    pub fn descend(&mut self, gradient: &[f64], learning_rate: f64) -> Result<()> {
        if gradient.len() != 3 * self.angles.len() {
            return Err(Error::InvalidArgument(format!(
                "gradient has {} entries, expected {}",
                gradient.len(),
                3 * self.angles.len()
            )));
        }
        for (g, step) in self.angles.iter_mut().zip(gradient.chunks_exact(3)) {
            g.theta -= learning_rate * step[0];
            g.phi -= learning_rate * step[1];
            g.lambda -= learning_rate * step[2];
        }
        Ok(())
    }

    fn check_shape(&self, spec: &AnsatzSpec) -> Result<()> {
        if self.n_layers != spec.n_layers || self.n_qubits != spec.n_qubits {
            return Err(Error::InvalidArgument(format!(
                "parameter shape [{}][{}] does not match ansatz [{}][{}]",
                self.n_layers, self.n_qubits, spec.n_layers, spec.n_qubits
            )));
        }
        if self
            .angles
            .iter()
            .any(|g| !(g.theta.is_finite() && g.phi.is_finite() && g.lambda.is_finite()))
        {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        Ok(())
    }
}

/// Map a feature vector onto statevector amplitudes: `amps[i] = x[i]/‖x‖`,
/// zero-padded up to `2^n_qubits`.
pub fn amplitude_encode(x: &[f64], n_qubits: usize) -> Result<StateVector> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .filter(|_| n_qubits >= 1 && n_qubits <= crate::sim::MAX_QUBITS)
        .ok_or_else(|| Error::Config(format!("bad qubit count {n_qubits}")))?;
    if x.is_empty() || x.len() > dim {
        return Err(Error::InvalidArgument(format!(
            "feature vector of length {} does not fit in {} amplitudes",
            x.len(),
            dim
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Encoding("non-finite feature value".into()));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm <= 0.0 {
        return Err(Error::Encoding("cannot encode a zero-norm vector".into()));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for (a, v) in amps.iter_mut().zip(x) {
        *a = Complex64::new(v / norm, 0.0);
    }
    StateVector::from_amplitudes(n_qubits, amps)
}

/// Assemble the ansatz circuit: per layer, one generic gate on every qubit
/// with that layer's angles, then the layer's CNOT entanglers.
pub fn build_ansatz(spec: &AnsatzSpec, params: &AnsatzParams) -> Result<Circuit> {
    spec.validate()?;
    params.check_shape(spec)?;
    let mut circuit = Circuit::new(spec.n_qubits)?;
    for layer in 0..spec.n_layers {
        for qubit in 0..spec.n_qubits {
            let g = params.get(layer, qubit);
            circuit.u3(qubit, g.theta, g.phi, g.lambda)?;
        }
        for &(c, t) in &spec.entangler[layer] {
            circuit.cnot(c, t)?;
        }
    }
    Ok(circuit)
}

fn full_circuit(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    grover: Option<&GroverBlock>,
) -> Result<Circuit> {
    let mut circuit = build_ansatz(spec, params)?;
    if let Some(block) = grover {
        circuit.extend(&block.circuit)?;
    }
    Ok(circuit)
}

fn run_on(circuit: &Circuit, encoded: &StateVector) -> Result<StateVector> {
    let mut state = encoded.clone();
    circuit.run(&mut state)?;
    Ok(state)
}

/// The model output `π(x;θ)`: probability that the readout qubit measures 1
/// after the ansatz (and the optional amplification suffix).
pub fn forward(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
) -> Result<f64> {
    let encoded = amplitude_encode(x, spec.n_qubits)?;
    let state = run_on(&full_circuit(spec, params, grover)?, &encoded)?;
    state.prob_qubit_one(spec.readout)
}

/// Shot-based estimate of [`forward`]: sample basis states and count how
/// often the readout bit comes up 1. Demonstration only; gradients always
/// use the exact probability.
pub fn forward_sampled(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    forward_sampled_with_rng(spec, params, x, grover, shots, &mut rng)
}

pub fn forward_sampled_with_rng(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
    shots: u64,
    rng: &mut impl Rng,
) -> Result<f64> {
    let encoded = amplitude_encode(x, spec.n_qubits)?;
    let state = run_on(&full_circuit(spec, params, grover)?, &encoded)?;
    let counts = state.sample_counts_with_rng(shots, rng)?;
    let mask = 1usize << (spec.n_qubits - 1 - spec.readout);
    let ones: u64 = counts
        .iter()
        .filter(|(idx, _)| *idx & mask != 0)
        .map(|(_, c)| c)
        .sum();
    Ok(ones as f64 / shots as f64)
}

/// `⟨a|σ_z|b⟩` with σ_z acting on `readout`: +1 for basis states whose
/// readout bit is 0, −1 otherwise.
fn sigma_z_overlap(a: &StateVector, b: &StateVector, readout: usize) -> Complex64 {
    let mask = 1usize << (a.n_qubits() - 1 - readout);
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .enumerate()
        .map(|(i, (x, y))| {
            let sign = if i & mask == 0 { 1.0 } else { -1.0 };
            sign * x.conj() * y
        })
        .sum()
}

/// Analytic gradient of [`forward`] with respect to every trainable scalar,
/// in (layer, qubit, [θ, φ, λ]) order.
pub fn gradient(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
) -> Result<Vec<f64>> {
    gradient_with_evals(spec, params, x, grover).map(|(g, _)| g)
}

/// [`gradient`] plus the number of circuit evaluations used, so tests can
/// pin the cost at `1 + n_params`.
pub fn gradient_with_evals(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
) -> Result<(Vec<f64>, usize)> {
    spec.validate()?;
    params.check_shape(spec)?;
    let encoded = amplitude_encode(x, spec.n_qubits)?;
    let base = run_on(&full_circuit(spec, params, grover)?, &encoded)?;
    let mut evals = 1;

    let mut grads = Vec::with_capacity(spec.num_params());
    for layer in 0..spec.n_layers {
        for qubit in 0..spec.n_qubits {
            for kind in ANGLE_KINDS {
                let mut shifted = params.clone();
                shifted.shift(layer, qubit, kind, PI);
                let psi = run_on(&full_circuit(spec, &shifted, grover)?, &encoded)?;
                evals += 1;
                let overlap = sigma_z_overlap(&psi, &base, spec.readout);
                // ∂π = −Re⟨∂ψ|σ_z|ψ⟩ with ∂ψ = ½ψ_s for θ and
                // ∂ψ = (i/2)(ψ − ψ_s) for φ/λ; the ⟨ψ|σ_z|ψ⟩ term is real
                // and drops out of the imaginary part.
                grads.push(match kind {
                    AngleKind::Theta => -0.5 * overlap.re,
                    AngleKind::Phi | AngleKind::Lambda => 0.5 * overlap.im,
                });
            }
        }
    }
    Ok((grads, evals))
}

/// Threshold the forward probability into a class label: 1 iff
/// `π(x;θ) ≥ threshold` (ties go to class 1).
pub fn predict(
    spec: &AnsatzSpec,
    params: &AnsatzParams,
    x: &[f64],
    grover: Option<&GroverBlock>,
    threshold: f64,
) -> Result<u8> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold must lie in (0,1), got {threshold}"
        )));
    }
    Ok(if forward(spec, params, x, grover)? >= threshold {
        1
    } else {
        0
    })
}

use rand_chacha::rand_core::SeedableRng;
