use std::collections::BTreeSet;

use qtsp_core::grover::{
    benchmark_complexity_report, build_encoding, build_searching_module, prepare_state, run_fixed, Capacity, MinSearch,
    SearchConfig,
};
use qtsp_core::statevec::StateVector;
use qtsp_core::tsp::fixtures::benchmark_graph;
use qtsp_core::tsp::{count_below, enumerate_hcs, tour_weight_range, EncodingParams, Graph};

/// Basis indices |σ⟩|(w_σ − C_T) mod 2^M⟩ over all cycles, plus the marked subset.
fn encoded_support(graph: &Graph, params: &EncodingParams) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut all = BTreeSet::new();
    let mut marked = BTreeSet::new();
    for t in enumerate_hcs(graph.n()).unwrap() {
        let d = t.weight(graph) - params.threshold();
        let idx = params.encode_with_value(t.successor(), d);
        all.insert(idx);
        if d < 0 {
            marked.insert(idx);
        }
    }
    (all, marked)
}

fn grover_law(t: usize, total: usize, j: usize) -> f64 {
    let theta = (t as f64 / total as f64).sqrt().asin();
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}

#[test]
fn angle_law_and_subspace_x1() {
    let g = benchmark_graph(1);
    let (lo, hi) = tour_weight_range(&g).unwrap();
    for threshold in [lo, lo + 1, hi, hi + 1] {
        let params = EncodingParams::new(&g, 5, threshold).unwrap();
        let (support, marked) = encoded_support(&g, &params);
        let t = count_below(&g, threshold).unwrap();
        let module = build_searching_module(&g, &params).unwrap();
        let mut s = StateVector::new(params.total_qubits()).unwrap();
        s.apply_circuit(&build_encoding(&g, &params).unwrap()).unwrap();
        for j in 0..=15 {
            let outside = s.probability_where(|i| !support.contains(&i));
            assert!(outside < 1e-7, "C_T={threshold} j={j} leak {outside}");
            let p = s.probability_where(|i| marked.contains(&i));
            assert!((p - grover_law(t, 6, j)).abs() < 1e-6, "C_T={threshold} j={j}: {p} vs {}", grover_law(t, 6, j));
            s.apply_circuit(&module).unwrap();
        }
    }
}

#[test]
fn angle_law_five_nodes() {
    let g = benchmark_graph(3);
    let (lo, hi) = tour_weight_range(&g).unwrap();
    for threshold in [lo, lo + 1, lo + 2, hi + 1] {
        let params = EncodingParams::new(&g, 5, threshold).unwrap();
        let (support, marked) = encoded_support(&g, &params);
        let t = count_below(&g, threshold).unwrap();
        let module = build_searching_module(&g, &params).unwrap();
        let mut s = prepare_state(&g, &params, 0).unwrap();
        for j in 0..=4 {
            let outside = s.probability_where(|i| !support.contains(&i));
            assert!(outside < 1e-7, "C_T={threshold} j={j} leak {outside}");
            let p = s.probability_where(|i| marked.contains(&i));
            assert!((p - grover_law(t, 24, j)).abs() < 1e-6, "C_T={threshold} j={j}: {p}");
            s.apply_circuit(&module).unwrap();
        }
    }
}

#[test]
fn unamplified_run_samples_uniform_cycles() {
    let g = benchmark_graph(1);
    let params = EncodingParams::new(&g, 5, 5).unwrap();
    let config = SearchConfig { iterations: 0, shots: 6000, seed: 3, ..SearchConfig::default() };
    let report = run_fixed(&g, &params, &config).unwrap();
    assert_eq!(report.shots(), 6000);
    assert_eq!(report.invalid_shots, 0);
    assert_eq!(report.histogram.len(), 6);
    assert_eq!(report.optimal_weight, 4);
    // 2 of 6 cycles are optimal; σ ≈ 0.006
    assert!((report.optimal_fraction - 1.0 / 3.0).abs() < 0.03, "{}", report.optimal_fraction);
}

#[test]
fn fixed_runs_are_reproducible() {
    let g = benchmark_graph(2);
    let params = EncodingParams::new(&g, 5, 8).unwrap();
    let config = SearchConfig { iterations: 2, shots: 500, seed: 42, ..SearchConfig::default() };
    let a = run_fixed(&g, &params, &config).unwrap();
    let b = run_fixed(&g, &params, &config).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.iterations_used, 2);
    let module = build_searching_module(&g, &params).unwrap().len();
    let encoding = build_encoding(&g, &params).unwrap().len();
    let total: usize = a.gate_counts.values().sum();
    assert_eq!(total, encoding + 2 * module);
}

#[test]
fn capacity_is_enforced_before_allocation() {
    let g = benchmark_graph(6);
    let params = EncodingParams::new(&g, 5, 8).unwrap();
    let err = run_fixed(&g, &params, &SearchConfig::default()).unwrap_err();
    assert!(matches!(err, qtsp_core::Error::Capacity(_)), "{err}");
    let cap = Capacity::default().allow_large(true).lower_ceiling(20);
    assert!(cap.check(21).is_err());
    assert!(cap.check(20).is_ok());
    assert!(Capacity::default().lower_ceiling(64).check(33).is_err());
    assert!(MinSearch::new(&g, 5, SearchConfig::default()).is_err());
}

#[test]
fn min_search_descends_within_budget() {
    let g = benchmark_graph(1);
    let mut search = MinSearch::new(&g, 5, SearchConfig::default()).unwrap();
    let budget = search.budget();
    let bound = search.max_bound();
    let mut hits = 0;
    for seed in 0..40 {
        let out = search.run(seed).unwrap();
        assert!(out.thresholds.windows(2).all(|w| w[1] < w[0]), "{:?}", out.thresholds);
        assert_eq!(*out.thresholds.last().unwrap(), out.best.weight);
        assert!(out.modules_executed as f64 <= budget.ceil() + bound);
        assert_eq!(out.invalid_measurements, 0);
        hits += usize::from(out.best.weight == 4);
    }
    assert!(hits >= 20, "{hits}/40");
}

#[test]
fn min_search_on_equal_weights_keeps_initial_tour() {
    let g = Graph::uniform(4, 3).unwrap();
    let mut search = MinSearch::new(&g, 5, SearchConfig::default()).unwrap();
    let out = search.run(9).unwrap();
    assert_eq!(out.thresholds, vec![12]);
    assert_eq!(out.best.weight, 12);
}

#[test]
fn min_search_rejects_bad_schedule() {
    let g = benchmark_graph(1);
    for lambda in [1.0, 4.0 / 3.0, 2.0] {
        let config = SearchConfig { lambda, ..SearchConfig::default() };
        assert!(MinSearch::new(&g, 5, config).is_err());
    }
}

#[test]
fn complexity_report_matches_layout() {
    let rows = benchmark_complexity_report(4..=8).unwrap();
    let qubits: Vec<usize> = rows.iter().map(|r| r.qubits).collect();
    assert_eq!(qubits, vec![13, 20, 23, 26, 30]);
    for r in &rows {
        assert_eq!(r.weight_blocks, r.n * r.n + 1);
        assert!(r.marked > 0 && (r.marked as u64) < r.total_cycles);
        assert!(r.encoding_gates > r.hcg_gates);
        assert!(r.searching_gates > 2 * r.hcg_gates);
    }
    assert!(rows[4].hcg_gates as f64 / rows[0].hcg_gates as f64 <= 8.0);
}
