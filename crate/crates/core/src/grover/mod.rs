//! Encoding circuit, searching module, and the two drivers built on them:
//! fixed-iteration amplification and threshold-descent minimum search.

mod minsearch;
mod report;
mod run;

pub use minsearch::{MinSearch, MinSearchOutcome};
pub use report::{benchmark_complexity_report, complexity_report, render_csv, ComplexityRow};
pub use run::{prepare_state, run_fixed, RunReport};

use crate::error::{Error, Result};
use crate::hcg::{build_hcg, HcgLayout};
use crate::statevec::{Circuit, Control, Gate, MAX_QUBITS};
use crate::tsp::{EncodingParams, Graph};
use crate::weight::{build_sign_oracle, build_value_encode};

/// Width from which simulation needs an explicit opt-in.
pub const LARGE_QUBITS: usize = 24;

/// Qubit limits enforced before any state is allocated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    /// Permit runs of [`LARGE_QUBITS`] qubits or more.
    pub allow_large: bool,
    /// Absolute ceiling; never above [`MAX_QUBITS`].
    pub max_qubits: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity { allow_large: false, max_qubits: MAX_QUBITS }
    }
}

impl Capacity {
    pub fn allow_large(mut self, allow: bool) -> Self {
        self.allow_large = allow;
        self
    }

    /// Lowers the ceiling; requests above the current one are ignored.
    pub fn lower_ceiling(mut self, max_qubits: usize) -> Self {
        self.max_qubits = self.max_qubits.min(max_qubits);
        self
    }

    pub fn check(&self, qubits: usize) -> Result<()> {
        if qubits > self.max_qubits {
            return Err(Error::capacity(format!("{qubits} qubits exceeds the ceiling of {}", self.max_qubits)));
        }
        if qubits >= LARGE_QUBITS && !self.allow_large {
            return Err(Error::capacity(format!(
                "{qubits} qubits needs the large-run opt-in (threshold {LARGE_QUBITS})"
            )));
        }
        Ok(())
    }
}

/// Knobs for fixed runs and minimum search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Searching-module applications in fixed mode.
    pub iterations: usize,
    pub shots: u64,
    pub seed: u64,
    /// Growth factor of the iteration bound; must lie in (1, 4/3).
    pub lambda: f64,
    /// Minimum search stops once executed modules exceed this times √((N−1)!).
    pub cutoff_factor: f64,
    pub capacity: Capacity,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            iterations: 0,
            shots: 1000,
            seed: 0,
            lambda: 6.0 / 5.0,
            cutoff_factor: 22.5,
            capacity: Capacity::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda < 4.0 / 3.0) {
            return Err(Error::validation(format!("lambda {} must lie strictly between 1 and 4/3", self.lambda)));
        }
        if !(self.cutoff_factor > 0.0 && self.cutoff_factor.is_finite()) {
            return Err(Error::validation(format!("cutoff factor {} must be positive", self.cutoff_factor)));
        }
        if self.shots == 0 {
            return Err(Error::validation("shots must be at least 1"));
        }
        Ok(())
    }
}

/// HCg; H^{⊗M}; U_{w−C_T}; QFT†.
pub fn build_encoding(graph: &Graph, params: &EncodingParams) -> Result<Circuit> {
    let layout = HcgLayout::borrowed(params)?;
    build_hcg(&layout)?.then(&build_value_encode(graph, params)?)
}

/// Reflection I − 2|0⟩⟨0| on the index registers: X^{⊗mN}; MCZ; X^{⊗mN}.
pub fn build_zero_reflection(params: &EncodingParams) -> Result<Circuit> {
    let nq = params.total_qubits();
    let index: Vec<usize> = (0..params.index_qubits()).collect();
    let (&target, rest) = index.split_last().expect("at least one index qubit");
    let mut c = Circuit::new(nq);
    c.extend(index.iter().map(|&q| Gate::x(q)))?;
    c.push(Gate::mcz(rest.iter().map(|&q| Control::pos(q)).collect(), target))?;
    c.extend(index.iter().map(|&q| Gate::x(q)))?;
    Ok(c)
}

/// One Grover iteration over the cycle superposition: sign oracle, value
/// uncompute, HCg-conjugated reflection about |0⟩, value recompute.
pub fn build_searching_module(graph: &Graph, params: &EncodingParams) -> Result<Circuit> {
    let layout = HcgLayout::borrowed(params)?;
    let hcg = build_hcg(&layout)?;
    let encode = build_value_encode(graph, params)?;
    let mut c = build_sign_oracle(params)?;
    c.append(&encode.inverse())?;
    c.append(&hcg.inverse())?;
    c.append(&build_zero_reflection(params)?)?;
    c.append(&hcg)?;
    c.append(&encode)?;
    Ok(c)
}
