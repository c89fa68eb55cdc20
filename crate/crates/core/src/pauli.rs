//! Pauli-basis decomposition of real symmetric matrices and expectation
//! estimation, exact or from simulated measurement shots.
//!
//! A string is stored as an X-mask and a Z-mask over basis-index bits
//! (`Y = iXZ` sets both). The leftmost character acts on the most significant
//! bit, so `"XZ"` is `X ⊗ Z`. On basis states
//! `P|k⟩ = i^{#Y} (-1)^{popcount(k & z)} |k ⊕ x⟩`, which makes every string a
//! signed permutation and lets traces and expectations run without building
//! the `2^n × 2^n` matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Laplacian;
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::rng;
use crate::statevector::StateVector;

/// Coefficients at or below this magnitude are dropped.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Longest supported string.
pub const MAX_QUBITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    qubits: u32,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(qubits: u32) -> Self {
        Self { qubits, x: 0, z: 0 }
    }

    pub fn from_masks(qubits: u32, x: u64, z: u64) -> Result<Self> {
        let limit = if qubits >= 64 { u64::MAX } else { (1u64 << qubits) - 1 };
        if qubits > MAX_QUBITS || x & !limit != 0 || z & !limit != 0 {
            return Err(Error::InvalidPauli(alloc::format!(
                "masks {x:#x}/{z:#x} do not fit {qubits} qubits"
            )));
        }
        Ok(Self { qubits, x, z })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Qubits acted on non-trivially.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    /// Factor at character position `pos` (0 = leftmost).
    pub fn at(&self, pos: u32) -> Pauli {
        let bit = self.qubits - 1 - pos;
        Pauli::from_bits((self.x >> bit) & 1 == 1, (self.z >> bit) & 1 == 1)
    }

    /// `i^{#Y}` as `(re, im)` with entries in {-1, 0, 1}.
    fn y_phase(&self) -> Complex64 {
        match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Matrix element `⟨k ⊕ x| P |k⟩`.
    fn column_entry(&self, k: usize) -> Complex64 {
        let phase = self.y_phase();
        if (k as u64 & self.z).count_ones() % 2 == 1 {
            -phase
        } else {
            phase
        }
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> f64 {
        let amps = state.amplitudes();
        let x = self.x as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &a) in amps.iter().enumerate() {
            if (k as u64 & self.z).count_ones() % 2 == 1 {
                acc -= amps[k ^ x].conj() * a;
            } else {
                acc += amps[k ^ x].conj() * a;
            }
        }
        (acc * self.y_phase()).re
    }

    /// Base-4 digits I<X<Y<Z read left to right.
    fn sort_key(&self) -> u64 {
        (0..self.qubits).fold(0u64, |key, pos| {
            let digit = match self.at(pos) {
                Pauli::I => 0,
                Pauli::X => 1,
                Pauli::Y => 2,
                Pauli::Z => 3,
            };
            (key << 2) | digit
        })
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.qubits
            .cmp(&other.qubits)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        for pos in 0..self.qubits {
            f.write_char(self.at(pos).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let qubits = s.chars().count() as u32;
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::InvalidPauli(alloc::format!(
                "length must be 1..={MAX_QUBITS}, got {qubits}"
            )));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (pos, ch) in s.chars().enumerate() {
            let bit = 1u64 << (qubits - 1 - pos as u32);
            match ch {
                'I' => {}
                'X' => x |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                'Z' => z |= bit,
                other => {
                    return Err(Error::InvalidPauli(alloc::format!(
                        "unexpected character {other:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(Self { qubits, x, z })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub string: PauliString,
}

/// Real-weighted sum of distinct Pauli strings, kept sorted by string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    qubits: u32,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Zero coefficients are dropped; mixed lengths and repeated strings are
    /// rejected.
    pub fn new(qubits: u32, mut terms: Vec<PauliTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.string.qubits() != qubits) {
            return Err(Error::InvalidPauli(alloc::format!(
                "{} has {} qubits, expected {qubits}",
                t.string,
                t.string.qubits()
            )));
        }
        if let Some(t) = terms.iter().find(|t| !t.coeff.is_finite()) {
            return Err(Error::InvalidPauli(alloc::format!(
                "coefficient of {} is not finite",
                t.string
            )));
        }
        terms.retain(|t| t.coeff != 0.0);
        terms.sort_by_key(|t| t.string);
        if let Some(w) = terms.windows(2).find(|w| w[0].string == w[1].string) {
            return Err(Error::InvalidPauli(alloc::format!("duplicate string {}", w[0].string)));
        }
        Ok(Self { qubits, terms })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, string: &PauliString) -> f64 {
        self.terms
            .binary_search_by(|t| t.string.cmp(string))
            .map(|i| self.terms[i].coeff)
            .unwrap_or(0.0)
    }

    /// Parses the one-term-per-line `<coeff> <string>` text form. Blank lines
    /// and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut qubits = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::InvalidPauli(alloc::format!("line {}: {what}: {line:?}", lineno + 1));
            let mut fields = line.split_whitespace();
            let (Some(c), Some(s), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(bad("expected `<coeff> <string>`"));
            };
            let coeff: f64 = c.parse().map_err(|_| bad("bad coefficient"))?;
            let string: PauliString = s.parse()?;
            if *qubits.get_or_insert(string.qubits()) != string.qubits() {
                return Err(bad("string length differs from earlier lines"));
            }
            terms.push(PauliTerm { coeff, string });
        }
        let qubits = qubits.ok_or_else(|| Error::InvalidPauli("no terms".into()))?;
        Self::new(qubits, terms)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{:?} {}", t.coeff, t.string)?;
        }
        Ok(())
    }
}

/// `Tr(P M) / 2^n` for every string with a non-negligible coefficient.
pub fn decompose(laplacian: &Laplacian) -> PauliSum {
    decompose_real(laplacian.matrix())
}

/// As [`decompose`] for any real symmetric matrix of power-of-two size.
pub fn decompose_symmetric(matrix: &RealMatrix) -> Result<PauliSum> {
    let dim = matrix.dim();
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    if dim.trailing_zeros() > MAX_QUBITS {
        return Err(Error::InvalidArgument("matrix too large to decompose".into()));
    }
    if !matrix.is_symmetric(DROP_TOLERANCE) {
        return Err(Error::NotSymmetric);
    }
    Ok(decompose_real(matrix))
}

/// For a fixed X-mask, `Σ_k (-1)^{popcount(k & z)} M[k][k ⊕ x]` over all
/// Z-masks is one Walsh-Hadamard transform of the shifted diagonal
/// `k ↦ M[k][k ⊕ x]`. Strings with an odd number of Y factors have purely
/// imaginary trace against a real matrix, which vanishes by symmetry, so they
/// are skipped.
fn decompose_real(matrix: &RealMatrix) -> PauliSum {
    let dim = matrix.dim();
    let qubits = dim.trailing_zeros();
    let norm = 1.0 / dim as f64;
    let mut buf = vec![0.0; dim];
    let mut terms = Vec::new();
    for x in 0..dim {
        for (k, slot) in buf.iter_mut().enumerate() {
            *slot = matrix[(k, k ^ x)];
        }
        if buf.iter().all(|&v| v == 0.0) {
            continue;
        }
        walsh_hadamard(&mut buf);
        for (z, &h) in buf.iter().enumerate() {
            let y = (x & z).count_ones();
            if y % 2 == 1 {
                continue;
            }
            let sign = if y % 4 == 2 { -1.0 } else { 1.0 };
            let coeff = sign * h * norm;
            if coeff.abs() > DROP_TOLERANCE {
                terms.push(PauliTerm {
                    coeff,
                    string: PauliString {
                        qubits,
                        x: x as u64,
                        z: z as u64,
                    },
                });
            }
        }
    }
    PauliSum::new(qubits, terms).expect("strings are distinct by construction")
}

fn walsh_hadamard(buf: &mut [f64]) {
    let mut half = 1;
    while half < buf.len() {
        for block in buf.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*a, *b);
                *a = u + v;
                *b = u - v;
            }
        }
        half *= 2;
    }
}

/// `Σ c_i P_i` as a dense matrix.
pub fn reconstruct(sum: &PauliSum) -> ComplexMatrix {
    let dim = 1usize << sum.qubits();
    let mut out = ComplexMatrix::zeros(dim);
    for t in sum.terms() {
        let x = t.string.x as usize;
        for k in 0..dim {
            out.add_to(k ^ x, k, t.string.column_entry(k) * t.coeff);
        }
    }
    out
}

fn check_dims(sum: &PauliSum, state: &StateVector) -> Result<()> {
    if sum.qubits() != state.qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1 << sum.qubits(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// `Σ c_i ⟨ψ|P_i|ψ⟩`.
pub fn expectation_exact(sum: &PauliSum, state: &StateVector) -> Result<f64> {
    check_dims(sum, state)?;
    Ok(sum.terms().iter().map(|t| t.coeff * t.string.expectation(state)).sum())
}

/// A value with its estimated standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, std_error: 0.0 }
    }
}

/// Finite-shot estimate of `Σ c_i ⟨ψ|P_i|ψ⟩`.
///
/// Each string is measured independently: X factors get a Hadamard, Y
/// factors `S†` then Hadamard, after which `shots` basis outcomes are drawn
/// from the rotated state and the ±1 parity over the string's support is
/// averaged. String `i` draws from RNG stream `(seed, i)`. The standard error
/// combines the per-string binomial errors.
pub fn expectation_sampled(sum: &PauliSum, state: &StateVector, shots: u32, seed: u64) -> Result<Estimate> {
    check_dims(sum, state)?;
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut value = 0.0;
    let mut variance = 0.0;
    let mut cdf = vec![0.0; state.dim()];
    for (index, t) in sum.terms().iter().enumerate() {
        if t.string.is_identity() {
            value += t.coeff;
            continue;
        }
        let mut rotated = state.clone();
        for q in 0..sum.qubits() {
            let bit = 1u64 << q;
            if t.string.x & bit != 0 {
                if t.string.z & bit != 0 {
                    rotated.apply_sdg(q);
                }
                rotated.apply_hadamard(q);
            }
        }
        let mut running = 0.0;
        for (slot, a) in cdf.iter_mut().zip(rotated.amplitudes()) {
            running += a.norm_sqr();
            *slot = running;
        }
        let total = running;
        let support = t.string.support();
        let mut rng = rng::stream(seed, index as u64);
        let mut parity_sum: i64 = 0;
        for _ in 0..shots {
            let u = rng.gen::<f64>() * total;
            let outcome = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            if (outcome as u64 & support).count_ones() % 2 == 1 {
                parity_sum -= 1;
            } else {
                parity_sum += 1;
            }
        }
        let shots_f = f64::from(shots);
        let mean = parity_sum as f64 / shots_f;
        value += t.coeff * mean;
        if shots > 1 {
            let per_shot = (1.0 - mean * mean) * shots_f / (shots_f - 1.0);
            variance += t.coeff * t.coeff * per_shot / shots_f;
        }
    }
    Ok(Estimate {
        value,
        std_error: libm::sqrt(variance),
    })
}

/// Standard error of [`expectation_sampled`] computed from the exact
/// string expectations rather than from the samples.
pub fn sampling_std_error(sum: &PauliSum, state: &StateVector, shots: u32) -> Result<f64> {
    check_dims(sum, state)?;
    let variance: f64 = sum
        .terms()
        .iter()
        .filter(|t| !t.string.is_identity())
        .map(|t| {
            let e = t.string.expectation(state);
            t.coeff * t.coeff * (1.0 - e * e).max(0.0)
        })
        .sum();
    Ok(libm::sqrt(variance / f64::from(shots)))
}
