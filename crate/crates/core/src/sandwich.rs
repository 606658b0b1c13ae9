//! Building the multilayer check-sandwiched circuit.
//!
//! Compute qubits keep their indices `0..n`; layer `k` (1-based, innermost
//! first) gets ancilla `n + k - 1`. The gate order is
//!
//! 1. `H` on every ancilla,
//! 2. controlled `c1` for layers `m, m-1, …, 1` (layer 1 next to `U`),
//! 3. `U`,
//! 4. controlled `c2` for layers `1, 2, …, m`,
//! 5. `H` on every ancilla,
//!
//! followed by postselection of all ancillas on `|0⟩`.

use std::fmt;
use std::ops::Range;

use crate::channel::KrausChannel;
use crate::checks::CheckSet;
use crate::circuit::{Circuit, Gate};
use crate::density::{apply_noisy_gate, DensityMatrix, NoiseSpec, PostselectedResult, SIM_CAP};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Which gates of a sandwiched circuit carry depolarizing noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseScope {
    /// Every gate, checks and ancilla Hadamards included.
    #[default]
    AllGates,
    /// Only the gates of `U`; checks are ideal.
    ComputeOnly,
}

/// `c` controlled on `ancilla`: one controlled-X/Y/Z per non-identity
/// letter, plus a `Z` on the ancilla when the phase is `-1`.
pub fn controlled_pauli_gates(ancilla: usize, c: &PauliString) -> Result<Vec<Gate>> {
    if !c.is_hermitian() {
        return Err(Error::NonHermitianCheck(c.phase()));
    }
    if ancilla < c.num_qubits() {
        return Err(Error::InvalidGate(format!("ancilla {ancilla} overlaps the check's qubits")));
    }
    let mut gates: Vec<Gate> = c.support().filter_map(|q| Gate::controlled(c.letter(q), ancilla, q)).collect();
    if c.phase() == 2 {
        // controlled-(-P) = Z_ancilla · controlled-P
        gates.push(Gate::Z(ancilla));
    }
    Ok(gates)
}

/// The instrumented circuit plus its postselection specification.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichedCircuit {
    compute_n: usize,
    ancilla_m: usize,
    gates: Vec<Gate>,
    compute_span: Range<usize>,
}

/// Wraps `u` in every layer of `checks`.
pub fn build(u: &Circuit, checks: &CheckSet) -> Result<SandwichedCircuit> {
    let n = u.num_qubits();
    if checks.is_empty() {
        return Err(Error::Empty("check set"));
    }
    if checks.num_qubits() != n {
        return Err(Error::SizeMismatch { left: checks.num_qubits(), right: n });
    }
    let m = checks.len();
    let layers = checks.layers();
    let mut gates: Vec<Gate> = (0..m).map(|k| Gate::H(n + k)).collect();
    for (k, layer) in layers.iter().enumerate().rev() {
        gates.extend(controlled_pauli_gates(n + k, &layer.c1)?);
    }
    let start = gates.len();
    gates.extend_from_slice(u.gates());
    let compute_span = start..gates.len();
    for (k, layer) in layers.iter().enumerate() {
        gates.extend(controlled_pauli_gates(n + k, &layer.c2)?);
    }
    gates.extend((0..m).map(|k| Gate::H(n + k)));
    Ok(SandwichedCircuit { compute_n: n, ancilla_m: m, gates, compute_span })
}

impl SandwichedCircuit {
    pub fn compute_qubits(&self) -> usize {
        self.compute_n
    }

    pub fn ancillas(&self) -> usize {
        self.ancilla_m
    }

    pub fn total_qubits(&self) -> usize {
        self.compute_n + self.ancilla_m
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Position of `U` inside [`gates`](Self::gates).
    pub fn compute_span(&self) -> Range<usize> {
        self.compute_span.clone()
    }

    /// Ancilla indices to postselect on `|0⟩`.
    pub fn postselect_qubits(&self) -> Vec<usize> {
        (self.compute_n..self.total_qubits()).collect()
    }

    /// Two-qubit gates that belong to checks rather than to `U`.
    pub fn check_two_qubit_gates(&self) -> usize {
        self.gates.iter().enumerate().filter(|(i, g)| g.is_two_qubit() && !self.compute_span.contains(i)).count()
    }

    pub fn circuit(&self) -> Circuit {
        Circuit::from_gates(self.total_qubits(), self.gates.clone()).expect("gates validated at build")
    }

    /// Circuit text followed by the postselection trailer.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    fn is_noisy(&self, index: usize, scope: NoiseScope) -> bool {
        match scope {
            NoiseScope::AllGates => true,
            NoiseScope::ComputeOnly => self.compute_span.contains(&index),
        }
    }

    /// Full-register state after the circuit, ancillas starting in `|0⟩`.
    ///
    /// `error_after_u`, when given, is applied to the compute qubits right
    /// after the last gate of `U`.
    pub fn simulate(
        &self,
        rho0: &DensityMatrix,
        noise: &NoiseSpec,
        scope: NoiseScope,
        error_after_u: Option<&KrausChannel>,
    ) -> Result<DensityMatrix> {
        if rho0.num_qubits() != self.compute_n {
            return Err(Error::SizeMismatch { left: rho0.num_qubits(), right: self.compute_n });
        }
        if self.total_qubits() > SIM_CAP {
            return Err(Error::QubitCap { what: "sandwiched circuit", n: self.total_qubits(), cap: SIM_CAP });
        }
        if let Some(ch) = error_after_u {
            if ch.num_qubits() != self.compute_n {
                return Err(Error::SizeMismatch { left: ch.num_qubits(), right: self.compute_n });
            }
        }
        let mut rho = rho0.with_zero_ancillas(self.ancilla_m)?;
        let any_noise = !noise.is_noiseless();
        for (i, g) in self.gates.iter().enumerate() {
            if i == self.compute_span.end {
                if let Some(ch) = error_after_u {
                    rho = ch.apply_to_low_qubits(&rho)?;
                }
            }
            apply_noisy_gate(&mut rho, g, noise, any_noise && self.is_noisy(i, scope))?;
        }
        Ok(rho)
    }

    /// Simulates and postselects the ancillas on all zeros.
    pub fn run(
        &self,
        rho0: &DensityMatrix,
        noise: &NoiseSpec,
        scope: NoiseScope,
        error_after_u: Option<&KrausChannel>,
    ) -> Result<PostselectedResult> {
        self.simulate(rho0, noise, scope, error_after_u)?.postselect_zeros(&self.postselect_qubits())
    }
}

impl fmt::Display for SandwichedCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.circuit())?;
        let list: Vec<String> = self.postselect_qubits().iter().map(usize::to_string).collect();
        writeln!(f, "# postselect ancillas {} on 0", list.join(" "))
    }
}
