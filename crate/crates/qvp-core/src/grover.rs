//! Oracle and diffusion circuit builders, the standalone Grover search
//! driver, and the fixed amplification block appended to the variational
//! circuit.
//!
//! Everything here compiles down to the simulator's gate set: single-qubit
//! matrices, CNOT, and CZ. Multi-controlled phases are decomposed
//! recursively into controlled-phase conjugations, so no ancilla qubits are
//! needed. Global phase is treated as unobservable throughout.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sim::{Circuit, StateVector};

/// A phase oracle: flips the sign of the amplitude of every marked basis
/// index and leaves all others unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    pub n_qubits: usize,
    pub marked: BTreeSet<usize>,
}

impl OracleSpec {
    pub fn new(n_qubits: usize, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        let spec = OracleSpec {
            n_qubits,
            marked: marked.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        // Width limits are enforced by the circuit constructor.
        Circuit::new(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        if self.marked.is_empty() {
            return Err(Error::InvalidArgument("marked set must be non-empty".into()));
        }
        if self.marked.len() >= dim {
            return Err(Error::InvalidArgument(format!(
                "marked set must leave at least one unmarked state ({} of {dim} marked)",
                self.marked.len()
            )));
        }
        if let Some(&bad) = self.marked.iter().find(|&&x| x >= dim) {
            return Err(Error::InvalidArgument(format!(
                "marked index {bad} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    pub fn n_states(&self) -> usize {
        1 << self.n_qubits
    }
}

/// A parameter-free circuit suffix amplifying the readout-qubit=1 subspace,
/// fixed for a whole training run.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverBlock {
    pub circuit: Circuit,
    pub iterations: usize,
}

/// Controlled phase `diag(1,1,1,e^{iα})` on qubits `(a, b)`, decomposed into
/// single-qubit phases and CNOTs.
fn push_cp(circuit: &mut Circuit, a: usize, b: usize, alpha: f64) -> Result<()> {
    circuit.phase(a, alpha / 2.0)?;
    circuit.phase(b, alpha / 2.0)?;
    circuit.cnot(a, b)?;
    circuit.phase(b, -alpha / 2.0)?;
    circuit.cnot(a, b)
}

/// Multi-controlled phase: applies `e^{iα}` to the all-ones configuration of
/// `qubits`. Recursive square-root-of-phase construction; gate count grows
/// exponentially in the qubit count, which is fine at desk scale.
fn push_mcp(circuit: &mut Circuit, qubits: &[usize], alpha: f64) -> Result<()> {
    match qubits {
        [] => Err(Error::InvalidArgument(
            "multi-controlled phase needs at least one qubit".into(),
        )),
        [q] => circuit.phase(*q, alpha),
        [a, b] => push_cp(circuit, *a, *b, alpha),
        [rest @ .., last_ctl, target] => {
            push_cp(circuit, *last_ctl, *target, alpha / 2.0)?;
            push_mcx(circuit, rest, *last_ctl)?;
            push_cp(circuit, *last_ctl, *target, -alpha / 2.0)?;
            push_mcx(circuit, rest, *last_ctl)?;
            let mut sub: Vec<usize> = rest.to_vec();
            sub.push(*target);
            push_mcp(circuit, &sub, alpha / 2.0)
        }
    }
}

/// Multi-controlled X on `target`, via Hadamard conjugation of a
/// multi-controlled phase flip.
fn push_mcx(circuit: &mut Circuit, controls: &[usize], target: usize) -> Result<()> {
    match controls {
        [] => circuit.x(target),
        [c] => circuit.cnot(*c, target),
        _ => {
            circuit.h(target)?;
            let mut qs: Vec<usize> = controls.to_vec();
            qs.push(target);
            push_mcp(circuit, &qs, PI)?;
            circuit.h(target)
        }
    }
}

/// Phase flip of the all-ones configuration of `qubits`: Z at width 1,
/// plain CZ at width 2, recursive decomposition above.
fn push_mcz(circuit: &mut Circuit, qubits: &[usize]) -> Result<()> {
    match qubits {
        [q] => circuit.z(*q),
        [a, b] => circuit.cz(*a, *b),
        _ => push_mcp(circuit, qubits, PI),
    }
}

/// Build the oracle circuit for `spec`: running it on basis state `|x⟩`
/// yields `(−1)^{f(x)}|x⟩` with `f(x)=1` iff `x` is marked. One X-conjugated
/// phase-flip block per marked index.
pub fn oracle_circuit(spec: &OracleSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n_qubits;
    let all: Vec<usize> = (0..n).collect();
    let mut circuit = Circuit::new(n)?;
    for &x in &spec.marked {
        // Map |x⟩ onto |1…1⟩, flip its phase, and map back.
        let zero_bits: Vec<usize> = (0..n).filter(|&q| x >> (n - 1 - q) & 1 == 0).collect();
        for &q in &zero_bits {
            circuit.x(q)?;
        }
        push_mcz(&mut circuit, &all)?;
        for &q in &zero_bits {
            circuit.x(q)?;
        }
    }
    Ok(circuit)
}

/// Build the inversion-about-the-mean operator `2|s⟩⟨s| − I` (up to global
/// phase), where `|s⟩` is the uniform superposition: `H⊗ⁿ, X⊗ⁿ,
/// multi-controlled-Z, X⊗ⁿ, H⊗ⁿ`.
pub fn diffusion_circuit(n_qubits: usize) -> Result<Circuit> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(format!(
            "diffusion needs at least 2 qubits, got {n_qubits}"
        )));
    }
    let mut circuit = Circuit::new(n_qubits)?;
    let all: Vec<usize> = (0..n_qubits).collect();
    for &q in &all {
        circuit.h(q)?;
    }
    for &q in &all {
        circuit.x(q)?;
    }
    push_mcz(&mut circuit, &all)?;
    for &q in &all {
        circuit.x(q)?;
    }
    for &q in &all {
        circuit.h(q)?;
    }
    Ok(circuit)
}

/// `floor((π/4)·√(n_states/n_marked))`, the iteration count that maximizes
/// the success probability.
pub fn optimal_iterations(n_states: u64, n_marked: u64) -> Result<u64> {
    if n_marked == 0 || n_marked >= n_states {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n_marked < n_states, got {n_marked} of {n_states}"
        )));
    }
    Ok((PI / 4.0 * (n_states as f64 / n_marked as f64).sqrt()).floor() as u64)
}

/// Success probability predicted by the rotation analysis:
/// `sin²((2k+1)·asin(√(M/N)))` after `k` iterations.
pub fn closed_form_success(n_states: u64, n_marked: u64, iterations: u64) -> f64 {
    let theta = (n_marked as f64 / n_states as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Run the search: uniform superposition, then `iterations` repetitions of
/// oracle followed by diffusion. Returns the final state and the summed
/// probability over the marked indices.
pub fn grover_search(spec: &OracleSpec, iterations: usize) -> Result<(StateVector, f64)> {
    let oracle = oracle_circuit(spec)?;
    let n = spec.n_qubits;
    let mut state = StateVector::new(n)?;
    let mut prep = Circuit::new(n)?;
    for q in 0..n {
        prep.h(q)?;
    }
    prep.run(&mut state)?;
    if iterations > 0 {
        let diffusion = diffusion_circuit(n)?;
        for _ in 0..iterations {
            oracle.run(&mut state)?;
            diffusion.run(&mut state)?;
        }
    }
    let success: f64 = spec
        .marked
        .iter()
        .map(|&x| state.amplitudes()[x].norm_sqr())
        .sum();
    Ok((state, success))
}

/// The fixed amplification block appended to the variational circuit:
/// `iterations` repetitions of [Z on the readout qubit, diffusion]. The
/// oracle marks the whole readout-qubit=1 subspace, so the block carries no
/// trainable parameters and stays label-independent.
pub fn qvpg_block(n_qubits: usize, readout: usize, iterations: usize) -> Result<GroverBlock> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(format!(
            "amplification block needs at least 2 qubits, got {n_qubits}"
        )));
    }
    if readout >= n_qubits {
        return Err(Error::InvalidArgument(format!(
            "readout qubit {readout} out of range for {n_qubits} qubits"
        )));
    }
    if iterations == 0 {
        return Err(Error::InvalidArgument(
            "amplification block needs at least one iteration".into(),
        ));
    }
    let diffusion = diffusion_circuit(n_qubits)?;
    let mut circuit = Circuit::new(n_qubits)?;
    for _ in 0..iterations {
        circuit.phase(readout, PI)?;
        circuit.extend(&diffusion)?;
    }
    Ok(GroverBlock { circuit, iterations })
}
