//! Multi-oscillatory relaxation of binary variables.
//!
//! `R_f(x, q, m) = exp(-exp(2^{m-q} sin(2^q x + x0(q, m))))` sits near 0 where
//! `sin(2^q x + x0) > 0` and near 1 where it is negative, so over
//! `x ∈ [0, 2π)` it traces bit `q` of a binary counter with run length
//! `π / 2^q`. The offset `x0(q, m) = arcsin(ln(ln 2) / 2^{m-q})` centers every
//! curve at `R_f(0, q, m) = 1/2`.
//!
//! A block of `block_size` diagonal phases is driven by one variable, entry
//! `q` of the block following `R_f(x, q, m)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::PartitionVector;
use crate::statevector::PhaseVector;

/// Beyond this exponent `exp(-exp(t))` is 0 (or 1 for `-t`) to machine
/// precision, and `exp(t)` would soon overflow.
const EXP_GUARD: f64 = 700.0;

/// `ln(-ln 0.5) = ln(ln 2)`.
fn center() -> f64 {
    libm::log(core::f64::consts::LN_2)
}

/// `ln(ln 2) / 2^{m-q}`, computed without overflow for any exponent.
fn offset_sine(q: u32, m: u32) -> f64 {
    libm::ldexp(center(), -(m as i32 - q as i32))
}

/// Centering offset `x0(q, m)`.
pub fn x0(q: u32, m: u32) -> Result<f64> {
    let s = offset_sine(q, m);
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::OffsetDomain { q, m });
    }
    Ok(libm::asin(s))
}

/// `R_f(x, q, m)`, always in `[0, 1]`.
///
/// The exponent is expanded as
/// `2^{m-q} sin(y) cos(x0) + ln(ln 2) cos(y)` with `y = 2^q x`, using
/// `2^{m-q} sin(x0) = ln(ln 2)`. The leading term is scaled with `ldexp`
/// (saturating to ±inf), so huge `2^{m-q}` never meets a vanishing sine in a
/// `inf · 0` product. Outside the offset's domain (`m + 1 < q`) the offset
/// saturates at `-π/2`.
pub fn r_f(x: f64, q: u32, m: u32) -> f64 {
    let s0 = offset_sine(q, m).max(-1.0);
    let cos_x0 = libm::sqrt(1.0 - s0 * s0);
    let y = libm::ldexp(x, q as i32);
    let (sin_y, cos_y) = libm::sincos(y);
    let lead = if sin_y == 0.0 {
        0.0
    } else {
        libm::ldexp(sin_y * cos_x0, m as i32 - q as i32)
    };
    let t = lead + center() * cos_y;
    if t > EXP_GUARD {
        0.0
    } else if t < -EXP_GUARD {
        1.0
    } else {
        libm::exp(-libm::exp(t))
    }
}

/// Validated `(q, m)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelaxParams {
    pub q: u32,
    pub m: u32,
}

impl RelaxParams {
    /// One variable standing in for all `|V| - 1` binaries: `m ≥ |V|`,
    /// `q ≤ |V| - 2`.
    pub fn full(q: u32, m: u32, num_vertices: usize) -> Result<Self> {
        if num_vertices < 2 {
            return Err(Error::InvalidRelaxation(format!(
                "full reduction needs at least 2 vertices, got {num_vertices}"
            )));
        }
        if (m as usize) < num_vertices {
            return Err(Error::InvalidRelaxation(format!(
                "steepness m={m} must be at least |V|={num_vertices}"
            )));
        }
        if q as usize > num_vertices - 2 {
            return Err(Error::InvalidRelaxation(format!(
                "index q={q} exceeds |V|-2={}",
                num_vertices - 2
            )));
        }
        Ok(Self { q, m })
    }

    /// Entry `q` of a block: `m ≥ block_size + 2`, `q < block_size`.
    pub fn block(q: u32, m: u32, block_size: usize) -> Result<Self> {
        if (m as usize) < block_size + 2 {
            return Err(Error::InvalidRelaxation(format!(
                "steepness m={m} must be at least block size + 2 = {}",
                block_size + 2
            )));
        }
        if q as usize >= block_size {
            return Err(Error::InvalidRelaxation(format!(
                "index q={q} outside block of size {block_size}"
            )));
        }
        Ok(Self { q, m })
    }

    pub fn offset(&self) -> f64 {
        x0(self.q, self.m).expect("validated parameters keep the offset in domain")
    }

    pub fn value(&self, x: f64) -> f64 {
        r_f(x, self.q, self.m)
    }
}

/// How `r` continuous variables drive the `2^n` diagonal phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnsatzLayout {
    qubits: u32,
    vars: usize,
    block_size: usize,
    steepness: u32,
}

impl AnsatzLayout {
    /// `vars` must divide `2^qubits`; the steepness defaults to the smallest
    /// admissible value, `block_size + 2`.
    pub fn new(qubits: u32, vars: usize) -> Result<Self> {
        if qubits > 30 {
            return Err(Error::InvalidLayout(format!("{qubits} qubits is too many")));
        }
        let dim = 1usize << qubits;
        if vars == 0 || vars > dim || !dim.is_multiple_of(vars) {
            return Err(Error::InvalidLayout(format!(
                "variable count {vars} must divide 2^{qubits} = {dim}"
            )));
        }
        let block_size = dim / vars;
        Ok(Self {
            qubits,
            vars,
            block_size,
            steepness: (block_size + 2) as u32,
        })
    }

    pub fn with_steepness(mut self, steepness: u32) -> Result<Self> {
        if (steepness as usize) < self.block_size + 2 {
            return Err(Error::InvalidLayout(format!(
                "steepness {steepness} below block size + 2 = {}",
                self.block_size + 2
            )));
        }
        self.steepness = steepness;
        Ok(self)
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn steepness(&self) -> u32 {
        self.steepness
    }

    fn check(&self, xs: &[f64]) -> Result<()> {
        if xs.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                found: xs.len(),
            });
        }
        Ok(())
    }

    /// Relaxed bit values for every diagonal entry except the pinned last one.
    pub fn relaxed_bits(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.check(xs)?;
        let free = self.dim() - 1;
        Ok((0..free)
            .map(|k| {
                let x = xs[k / self.block_size];
                r_f(x, (k % self.block_size) as u32, self.steepness)
            })
            .collect())
    }
}

/// `U = diag(e^{iπ R_f(x_{⌊k/b⌋}, k mod b, m)}, …, 1)`.
pub fn encode_phases(xs: &[f64], layout: &AnsatzLayout) -> Result<PhaseVector> {
    let mut phases: Vec<Complex64> = layout
        .relaxed_bits(xs)?
        .into_iter()
        .map(|r| Complex64::from_polar(1.0, PI * r))
        .collect();
    phases.push(Complex64::new(1.0, 0.0));
    PhaseVector::new(phases)
}

/// Rounds every relaxed bit: `-1` when `R_f > 1/2`, otherwise `+1`. The
/// pinned last entry is `+1`.
pub fn decode_partition(xs: &[f64], layout: &AnsatzLayout) -> Result<PartitionVector> {
    let mut signs: Vec<i8> = layout
        .relaxed_bits(xs)?
        .into_iter()
        .map(|r| if r > 0.5 { -1 } else { 1 })
        .collect();
    signs.push(1);
    PartitionVector::new(signs)
}
