//! The seven benchmark instances (4 to 8 nodes) bundled under `fixtures/`.

use super::graph::Graph;

const SOURCES: [&str; 7] = [
    include_str!("../../fixtures/x1.txt"),
    include_str!("../../fixtures/x2.txt"),
    include_str!("../../fixtures/x3.txt"),
    include_str!("../../fixtures/x4.txt"),
    include_str!("../../fixtures/x5.txt"),
    include_str!("../../fixtures/x6.txt"),
    include_str!("../../fixtures/x7.txt"),
];

/// Benchmark instance `k` in `1..=7`.
///
/// # Panics
/// If `k` is outside `1..=7`.
pub fn benchmark_graph(k: usize) -> Graph {
    assert!((1..=7).contains(&k), "benchmark instances are numbered 1..=7");
    Graph::parse(SOURCES[k - 1]).expect("bundled fixture parses")
}

/// Value-register width used for an instance of `n` nodes: 5 up to 7 nodes, 6 for 8.
pub fn default_value_bits(n: usize) -> usize {
    if n >= 8 {
        6
    } else {
        5
    }
}

/// Raw text of instance `k`.
pub fn benchmark_source(k: usize) -> &'static str {
    SOURCES[k - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::tour::optimal_tours;

    #[test]
    fn optimum_counts() {
        let expected = [(4, 2), (7, 4), (7, 4), (6, 2), (7, 2), (7, 4), (8, 6)];
        for (k, &(w, count)) in (1..=7).zip(expected.iter()) {
            let (best, tours) = optimal_tours(&benchmark_graph(k)).unwrap();
            assert_eq!((best, tours.len()), (w, count), "instance {k}");
        }
    }
}
