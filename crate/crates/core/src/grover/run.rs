use std::collections::BTreeMap;

use super::{build_encoding, build_searching_module, SearchConfig};
use crate::error::Result;
use crate::statevec::{total_gates, GateCounts, StateVector};
use crate::tsp::{is_hamiltonian_cycle, optimal_tours, EncodingParams, Graph, Tour};

/// Outcome of a fixed-iteration run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// Shot counts keyed by the decoded successor array.
    pub histogram: BTreeMap<Vec<usize>, u64>,
    /// Fraction of shots that decoded to an optimal tour.
    pub optimal_fraction: f64,
    /// Shots whose index registers were not a Hamiltonian cycle.
    pub invalid_shots: u64,
    /// Gates executed: encoding plus `iterations_used` searching modules.
    pub gate_counts: GateCounts,
    pub iterations_used: usize,
    pub optimal_weight: i64,
}

impl RunReport {
    pub fn shots(&self) -> u64 {
        self.histogram.values().sum()
    }
}

/// Encoding followed by `iterations` searching modules, applied to |0⟩.
pub fn prepare_state(graph: &Graph, params: &EncodingParams, iterations: usize) -> Result<StateVector> {
    let mut state = StateVector::new(params.total_qubits())?;
    state.apply_circuit(&build_encoding(graph, params)?)?;
    if iterations > 0 {
        let module = build_searching_module(graph, params)?;
        for _ in 0..iterations {
            state.apply_circuit(&module)?;
        }
    }
    Ok(state)
}

/// Runs the encoding plus `config.iterations` modules and samples only the
/// index registers.
pub fn run_fixed(graph: &Graph, params: &EncodingParams, config: &SearchConfig) -> Result<RunReport> {
    config.validate()?;
    config.capacity.check(params.total_qubits())?;
    let encoding = build_encoding(graph, params)?;
    let module = build_searching_module(graph, params)?;

    let mut state = StateVector::new(params.total_qubits())?;
    state.apply_circuit(&encoding)?;
    for _ in 0..config.iterations {
        state.apply_circuit(&module)?;
    }

    let raw = state.sample(config.shots, config.seed)?;
    let (optimal_weight, optima) = optimal_tours(graph)?;
    let mut histogram = BTreeMap::new();
    let mut invalid_shots = 0;
    let mut optimal_shots = 0;
    for (&basis, &count) in &raw {
        let (regs, _) = params.decode_basis(basis & params.index_mask());
        if !is_hamiltonian_cycle(&regs) {
            log::warn!("measured non-cycle register contents {regs:?} ({count} shots)");
            invalid_shots += count;
        } else if optima.iter().any(|t: &Tour| t.successor() == regs.as_slice()) {
            optimal_shots += count;
        }
        *histogram.entry(regs).or_insert(0) += count;
    }

    let mut gate_counts = encoding.gate_count();
    for (tag, n) in module.gate_count() {
        *gate_counts.entry(tag).or_default() += n * config.iterations;
    }
    log::debug!(
        "fixed run: {} qubits, {} gates, {} modules",
        params.total_qubits(),
        total_gates(&gate_counts),
        config.iterations
    );
    Ok(RunReport {
        histogram,
        optimal_fraction: optimal_shots as f64 / config.shots as f64,
        invalid_shots,
        gate_counts,
        iterations_used: config.iterations,
        optimal_weight,
    })
}
