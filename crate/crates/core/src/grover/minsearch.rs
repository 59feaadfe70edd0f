use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_encoding, build_searching_module, SearchConfig};
use crate::error::{Error, Result};
use crate::statevec::{sample_weighted, Circuit, StateVector};
use crate::tsp::{factorial, is_hamiltonian_cycle, random_tour, EncodingParams, Graph, Tour, TourResult};

/// Result of one threshold-descent run.
#[derive(Debug, Clone, PartialEq)]
pub struct MinSearchOutcome {
    pub best: TourResult,
    /// Thresholds in the order they were accepted, starting with the initial one.
    pub thresholds: Vec<i64>,
    pub modules_executed: u64,
    pub rounds: usize,
    /// Measurements whose index registers were not a Hamiltonian cycle.
    pub invalid_measurements: usize,
}

/// Index-register distributions after j modules, for one threshold.
struct ThresholdRun {
    encoding: Circuit,
    module: Circuit,
    /// Latest state and how many modules it has seen.
    state: Option<(StateVector, usize)>,
    distributions: Vec<Vec<(usize, f64)>>,
}

/// Quantum minimum finding over tour weights.
///
/// Every round prepares the encoded state for the current threshold, applies
/// j searching modules with j uniform below the growing bound l, and measures
/// once. A strictly cheaper tour becomes the new threshold. Runs stop once the
/// executed module count passes `cutoff_factor·√((N−1)!)`.
///
/// The measurement distribution after j modules depends only on
/// (threshold, j), so it is computed once per pair and reused by later rounds
/// and later runs on the same instance.
pub struct MinSearch<'g> {
    graph: &'g Graph,
    value_bits: usize,
    config: SearchConfig,
    index_mask: usize,
    cache: HashMap<i64, ThresholdRun>,
    live: Option<i64>,
}

impl<'g> MinSearch<'g> {
    pub fn new(graph: &'g Graph, value_bits: usize, config: SearchConfig) -> Result<Self> {
        config.validate()?;
        let layout = EncodingParams::unchecked(graph.n(), value_bits, 0)?;
        config.capacity.check(layout.total_qubits())?;
        Ok(MinSearch { graph, value_bits, config, index_mask: layout.index_mask(), cache: HashMap::new(), live: None })
    }

    /// √((N−1)!), the ceiling on the iteration bound l.
    pub fn max_bound(&self) -> f64 {
        (factorial(self.graph.n() - 1) as f64).sqrt()
    }

    /// Module budget after which a run stops starting new rounds.
    pub fn budget(&self) -> f64 {
        self.config.cutoff_factor * self.max_bound()
    }

    pub fn run(&mut self, seed: u64) -> Result<MinSearchOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = random_tour(self.graph.n(), &mut rng)?;
        let mut best = TourResult::new(self.graph, first);
        let mut thresholds = vec![best.weight];
        let max_bound = self.max_bound();
        let budget = self.budget();
        let mut bound = 1.0f64;
        let mut executed = 0u64;
        let mut rounds = 0;
        let mut invalid = 0;

        loop {
            // non-negative integers strictly below the bound
            let choices = bound.ceil() as usize;
            let j = rng.gen_range(0..choices);
            executed += j as u64;
            rounds += 1;

            let dist = self.distribution(best.weight, j)?;
            let hist = sample_weighted(dist.iter().copied(), 1, &mut rng)?;
            let (&basis, _) = hist.iter().next().expect("one shot");
            let regs = self.decode(basis);
            if is_hamiltonian_cycle(&regs) {
                let candidate = TourResult::new(self.graph, Tour::new(regs)?);
                if candidate.weight < best.weight {
                    best = candidate;
                    thresholds.push(best.weight);
                }
            } else {
                log::warn!("minimum search measured non-cycle register contents {regs:?}");
                invalid += 1;
            }

            bound = (self.config.lambda * bound).min(max_bound);
            if executed as f64 > budget {
                break;
            }
        }
        Ok(MinSearchOutcome { best, thresholds, modules_executed: executed, rounds, invalid_measurements: invalid })
    }

    fn decode(&self, basis: usize) -> Vec<usize> {
        let params = EncodingParams::unchecked(self.graph.n(), self.value_bits, 0).expect("validated in new");
        params.decode_basis(basis & self.index_mask).0
    }

    fn distribution(&mut self, threshold: i64, modules: usize) -> Result<&[(usize, f64)]> {
        if !self.cache.contains_key(&threshold) {
            let params = EncodingParams::new(self.graph, self.value_bits, threshold)?;
            let run = ThresholdRun {
                encoding: build_encoding(self.graph, &params)?,
                module: build_searching_module(self.graph, &params)?,
                state: None,
                distributions: Vec::new(),
            };
            self.cache.insert(threshold, run);
        }
        if self.cache[&threshold].distributions.len() <= modules {
            // Only one full state is kept alive at a time.
            if self.live != Some(threshold) {
                if let Some(prev) = self.live.and_then(|t| self.cache.get_mut(&t)) {
                    prev.state = None;
                }
                self.live = Some(threshold);
            }
            let nq = EncodingParams::unchecked(self.graph.n(), self.value_bits, threshold)?.total_qubits();
            let mask = self.index_mask;
            let run = self.cache.get_mut(&threshold).expect("inserted above");
            while run.distributions.len() <= modules {
                let target = run.distributions.len();
                let (state, applied) = match run.state.take() {
                    Some((s, a)) if a < target => (s, a),
                    _ => {
                        let mut s = StateVector::new(nq)?;
                        s.apply_circuit(&run.encoding)?;
                        (s, 0)
                    }
                };
                let mut state = state;
                for _ in applied..target {
                    state.apply_circuit(&run.module)?;
                }
                let dist: Vec<(usize, f64)> = state.marginal(mask, 0.0).into_iter().collect();
                if dist.is_empty() {
                    return Err(Error::validation("empty measurement distribution"));
                }
                run.distributions.push(dist);
                run.state = Some((state, target));
            }
        }
        Ok(&self.cache[&threshold].distributions[modules])
    }
}
