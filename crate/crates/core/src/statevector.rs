//! Minimal statevector engine for the one circuit family the solver needs:
//! a Hadamard layer on `|0…0⟩` followed by a diagonal phase gate.
//!
//! Circuits are never materialized; `U·H|0⟩` is just `phases · 2^{-n/2}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Laplacian;
use crate::pauli::{self, Estimate, PauliSum};

const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `H^{⊗n}|0⟩`: all amplitudes `2^{-n/2}`.
    pub fn uniform(qubits: u32) -> Self {
        let dim = 1usize << qubits;
        let amp = 1.0 / libm::sqrt(dim as f64);
        Self {
            qubits,
            amps: vec![Complex64::new(amp, 0.0); dim],
        }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(qubits: u32, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amps.len()));
        }
        let norm: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            qubits: amps.len().trailing_zeros(),
            amps,
        })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Complex64::norm_sqr).collect()
    }

    /// `amp_k ← phase_k · amp_k`.
    pub fn apply_diagonal(&mut self, phases: &PhaseVector) -> Result<()> {
        if phases.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: phases.len(),
            });
        }
        for (a, p) in self.amps.iter_mut().zip(phases.as_slice()) {
            *a *= p;
        }
        Ok(())
    }

    /// Hadamard on `qubit` (bit `qubit` of the basis index).
    pub fn apply_hadamard(&mut self, qubit: u32) {
        let mask = 1usize << qubit;
        for i in 0..self.dim() {
            if i & mask == 0 {
                let (a, b) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | mask] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    /// `S† = diag(1, -i)` on `qubit`.
    pub fn apply_sdg(&mut self, qubit: u32) {
        let mask = 1usize << qubit;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask != 0 {
                *a = Complex64::new(a.im, -a.re);
            }
        }
    }
}

/// Diagonal of a diagonal unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    phases: Vec<Complex64>,
}

impl PhaseVector {
    pub fn new(phases: Vec<Complex64>) -> Result<Self> {
        for (index, p) in phases.iter().enumerate() {
            let modulus = p.norm();
            if (modulus - 1.0).abs() > UNIT_TOL {
                return Err(Error::NonUnitPhase { index, modulus });
            }
        }
        Ok(Self { phases })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            phases: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// Entries `e^{iπθ_k}`.
    pub fn from_turns(thetas: &[f64]) -> Self {
        Self {
            phases: thetas.iter().map(|&t| Complex64::from_polar(1.0, PI * t)).collect(),
        }
    }

    /// Binary phases `±1`.
    pub fn from_signs(signs: &[i8]) -> Self {
        Self {
            phases: signs
                .iter()
                .map(|&s| Complex64::new(f64::from(s.signum()), 0.0))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.phases
    }

    /// Multiplies every entry by `e^{iα}`.
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        let g = Complex64::from_polar(1.0, alpha);
        Self {
            phases: self.phases.iter().map(|p| p * g).collect(),
        }
    }
}

/// How `⟨ψ|L|ψ⟩` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum EvalMode {
    /// Matrix quadratic form; the noiseless reference.
    Dense,
    /// Sum of exact Pauli-string expectations.
    PauliExact,
    /// Finite-shot estimate of every Pauli string.
    PauliSampled { shots: u32, seed: u64 },
}

impl EvalMode {
    pub fn name(&self) -> &'static str {
        match self {
            EvalMode::Dense => "dense",
            EvalMode::PauliExact => "pauli-exact",
            EvalMode::PauliSampled { .. } => "pauli-sampled",
        }
    }

    pub fn uses_paulis(&self) -> bool {
        !matches!(self, EvalMode::Dense)
    }
}

/// `ψ = U·H|0⟩`.
pub fn prepare(phases: &PhaseVector) -> Result<StateVector> {
    if !phases.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(phases.len()));
    }
    let mut state = StateVector::uniform(phases.len().trailing_zeros());
    state.apply_diagonal(phases)?;
    Ok(state)
}

/// `N_cuts = 2^{n-2}·⟨0|H U† L U H|0⟩`.
pub fn n_cuts(laplacian: &Laplacian, phases: &PhaseVector, mode: EvalMode) -> Result<f64> {
    let paulis = if mode.uses_paulis() {
        Some(pauli::decompose(laplacian))
    } else {
        None
    };
    n_cuts_with(laplacian, paulis.as_ref(), phases, mode).map(|e| e.value)
}

/// As [`n_cuts`], reusing a precomputed decomposition and reporting the
/// standard error of the sampled path (zero for the exact ones).
pub fn n_cuts_with(
    laplacian: &Laplacian,
    paulis: Option<&PauliSum>,
    phases: &PhaseVector,
    mode: EvalMode,
) -> Result<Estimate> {
    if phases.len() != laplacian.dim() {
        return Err(Error::DimensionMismatch {
            expected: laplacian.dim(),
            found: phases.len(),
        });
    }
    let state = prepare(phases)?;
    let scale = libm::ldexp(1.0, state.qubits() as i32 - 2);
    let need_paulis = || paulis.ok_or_else(|| Error::InvalidArgument("Pauli evaluation needs a decomposition".into()));
    let raw = match mode {
        EvalMode::Dense => Estimate::exact(laplacian.matrix().hermitian_form(state.amplitudes())),
        EvalMode::PauliExact => Estimate::exact(pauli::expectation_exact(need_paulis()?, &state)?),
        EvalMode::PauliSampled { shots, seed } => pauli::expectation_sampled(need_paulis()?, &state, shots, seed)?,
    };
    Ok(Estimate {
        value: raw.value * scale,
        std_error: raw.std_error * scale,
    })
}

/// Closed-form gate budget of the diagonal ansatz on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GateCount {
    pub cnot: u64,
    pub single: u64,
    pub total: u64,
}

/// `2^n - 2` CNOTs and `2^n - 2n + 5` single-qubit gates.
pub fn gate_count_estimate(qubits: u32) -> Result<GateCount> {
    if qubits == 0 || qubits > 62 {
        return Err(Error::InvalidArgument(alloc::format!(
            "gate count needs 1 <= n <= 62, got {qubits}"
        )));
    }
    let pow = 1u64 << qubits;
    let cnot = pow - 2;
    let single = pow + 5 - 2 * u64::from(qubits);
    Ok(GateCount {
        cnot,
        single,
        total: cnot + single,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn uniform_states() {
        assert_eq!(StateVector::uniform(0).amplitudes(), &[c(1.0, 0.0)]);
        let s1 = StateVector::uniform(1);
        assert!(s1.amplitudes().iter().all(|a| (a.re - FRAC_1_SQRT_2).abs() < 1e-15));
        let s5 = StateVector::uniform(5);
        assert_eq!(s5.dim(), 32);
        assert!(s5
            .amplitudes()
            .iter()
            .all(|a| (a.re - 1.0 / 32f64.sqrt()).abs() < 1e-15 && a.im == 0.0));
    }

    #[test]
    fn diagonal_application() {
        let mut s = StateVector::uniform(1);
        s.apply_diagonal(&PhaseVector::identity(2)).unwrap();
        assert_eq!(s, StateVector::uniform(1));
        s.apply_diagonal(&PhaseVector::from_signs(&[1, -1])).unwrap();
        assert!((s.amplitudes()[1].re + FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(s.apply_diagonal(&PhaseVector::identity(4)).is_err());

        let thetas: Vec<f64> = (0..64).map(|k| (k as f64 * 0.377).sin()).collect();
        let mut s6 = StateVector::uniform(6);
        s6.apply_diagonal(&PhaseVector::from_turns(&thetas)).unwrap();
        assert!((s6.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_vector_rejects_non_unit_entries() {
        assert!(matches!(
            PhaseVector::new(vec![c(1.0, 0.0), c(0.5, 0.0)]),
            Err(Error::NonUnitPhase { index: 1, .. })
        ));
        assert!(PhaseVector::new(vec![c(0.6, 0.8)]).is_ok());
    }

    #[test]
    fn hadamard_and_sdg() {
        let mut s = StateVector::basis(1, 0);
        s.apply_hadamard(0);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        s.apply_hadamard(0);
        assert!((s.amplitudes()[0].re - 1.0).abs() < 1e-15);
        let mut t = StateVector::basis(1, 1);
        t.apply_sdg(0);
        assert_eq!(t.amplitudes()[1], c(0.0, -1.0));
    }

    #[test]
    fn n_cuts_examples() {
        let k2 = Graph::unweighted(2, [(0, 1)]).unwrap().laplacian().unwrap();
        let c4 = Graph::cycle(4).unwrap().laplacian().unwrap();
        for mode in [EvalMode::Dense, EvalMode::PauliExact] {
            assert!(n_cuts(&c4, &PhaseVector::identity(4), mode).unwrap().abs() < 1e-12);
            let v = n_cuts(&k2, &PhaseVector::from_signs(&[1, -1]), mode).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
            let v = n_cuts(&c4, &PhaseVector::from_signs(&[1, -1, 1, -1]), mode).unwrap();
            assert!((v - 4.0).abs() < 1e-12);
        }
        assert!(n_cuts(&c4, &PhaseVector::identity(2), EvalMode::Dense).is_err());
    }

    #[test]
    fn gate_counts() {
        assert_eq!(
            gate_count_estimate(5).unwrap(),
            GateCount {
                cnot: 30,
                single: 27,
                total: 57
            }
        );
        assert_eq!(
            gate_count_estimate(1).unwrap(),
            GateCount {
                cnot: 0,
                single: 5,
                total: 5
            }
        );
        assert!(gate_count_estimate(0).is_err());
    }
}
