use std::fmt::Write as _;

use super::{build_encoding, build_searching_module};
use crate::error::{Error, Result};
use crate::hcg::{build_hcg, HcgLayout};
use crate::tsp::fixtures::{benchmark_graph, default_value_bits};
use crate::tsp::{count_below, factorial, optimal_tours, EncodingParams, Graph};

/// Resource figures for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityRow {
    pub n: usize,
    pub m: usize,
    pub value_bits: usize,
    pub qubits: usize,
    pub hcg_gates: usize,
    pub encoding_gates: usize,
    pub searching_gates: usize,
    /// Controlled U_G blocks in U_{w−C_T}, constant block included.
    pub weight_blocks: usize,
    pub threshold: i64,
    pub marked: usize,
    pub total_cycles: u64,
}

impl ComplexityRow {
    pub fn marked_ratio(&self) -> f64 {
        self.marked as f64 / self.total_cycles as f64
    }
}

/// One row per `(graph, value_bits, threshold)`. Circuits are built, not simulated.
pub fn complexity_report(cases: &[(Graph, usize, i64)]) -> Result<Vec<ComplexityRow>> {
    cases
        .iter()
        .map(|(graph, value_bits, threshold)| {
            let params = EncodingParams::new(graph, *value_bits, *threshold)?;
            let layout = HcgLayout::borrowed(&params)?;
            let n = params.n();
            Ok(ComplexityRow {
                n,
                m: params.m(),
                value_bits: params.value_bits(),
                qubits: params.total_qubits(),
                hcg_gates: build_hcg(&layout)?.len(),
                encoding_gates: build_encoding(graph, &params)?.len(),
                searching_gates: build_searching_module(graph, &params)?.len(),
                weight_blocks: n * n + 1,
                threshold: *threshold,
                marked: count_below(graph, *threshold)?,
                total_cycles: factorial(n - 1),
            })
        })
        .collect()
}

/// Report over the bundled instances for each N in `n_range` (4..=8), with
/// the threshold one above the optimum.
pub fn benchmark_complexity_report(n_range: std::ops::RangeInclusive<usize>) -> Result<Vec<ComplexityRow>> {
    if *n_range.start() < 4 || *n_range.end() > 8 {
        return Err(Error::validation(format!("report covers N in 4..=8, got {n_range:?}")));
    }
    let mut cases = Vec::new();
    for n in n_range {
        let graph = (1..=7).map(benchmark_graph).find(|g| g.n() == n).expect("one instance per N");
        let (best, _) = optimal_tours(&graph)?;
        cases.push((graph, default_value_bits(n), best + 1));
    }
    complexity_report(&cases)
}

pub fn render_csv(rows: &[ComplexityRow]) -> String {
    let mut out = String::from(
        "n,m,value_bits,qubits,hcg_gates,encoding_gates,searching_gates,weight_blocks,threshold,marked,total_cycles,marked_ratio\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{:.6}",
            r.n,
            r.m,
            r.value_bits,
            r.qubits,
            r.hcg_gates,
            r.encoding_gates,
            r.searching_gates,
            r.weight_blocks,
            r.threshold,
            r.marked,
            r.total_cycles,
            r.marked_ratio()
        );
    }
    out
}
