use std::fmt;

use rand::Rng;

use super::graph::Graph;
use crate::error::{Error, Result};

/// Largest node count accepted for exhaustive enumeration.
pub const MAX_ENUMERATION_NODES: usize = 10;

/// A Hamiltonian cycle stored as a successor array: `successor[i]` is the node
/// visited right after node `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour {
    successor: Vec<usize>,
}

impl Tour {
    pub fn new(successor: Vec<usize>) -> Result<Self> {
        if !is_hamiltonian_cycle(&successor) {
            return Err(Error::validation(format!("{successor:?} is not a single cycle over all nodes")));
        }
        Ok(Tour { successor })
    }

    pub fn n(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    /// Node order starting from node 0.
    pub fn route(&self) -> Vec<usize> {
        let mut route = Vec::with_capacity(self.n());
        let mut v = 0;
        for _ in 0..self.n() {
            route.push(v);
            v = self.successor[v];
        }
        route
    }

    pub fn weight(&self, graph: &Graph) -> i64 {
        self.successor.iter().enumerate().map(|(i, &j)| i64::from(graph.weight(i, j))).sum()
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.successor.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourResult {
    pub tour: Tour,
    pub weight: i64,
}

impl TourResult {
    pub fn new(graph: &Graph, tour: Tour) -> Self {
        let weight = tour.weight(graph);
        TourResult { tour, weight }
    }
}

/// True iff `values` is a permutation of 0..N consisting of one N-cycle.
pub fn is_hamiltonian_cycle(values: &[usize]) -> bool {
    let n = values.len();
    if n < 2 || values.iter().any(|&v| v >= n) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut v = 0;
    for _ in 0..n {
        if seen[v] {
            return false;
        }
        seen[v] = true;
        v = values[v];
    }
    v == 0
}

pub fn tour_weight(graph: &Graph, tour: &Tour) -> i64 {
    tour.weight(graph)
}

fn check_enumerable(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::validation(format!("cycles need at least 2 nodes, got {n}")));
    }
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::capacity(format!(
            "exhaustive enumeration is limited to {MAX_ENUMERATION_NODES} nodes, got {n}"
        )));
    }
    Ok(())
}

/// Every cycle through nodes `lowest..n`, as successor arrays of length `n`
/// whose entries below `lowest` are 0.
///
/// Grows cycles one node at a time: starting from (n−2)→(n−1)→(n−2), node `v`
/// is spliced into edge u→x as u→v→x, for each x > v in ascending order.
pub fn enumerate_partial_cycles(n: usize, lowest: usize) -> Result<Vec<Vec<usize>>> {
    check_enumerable(n)?;
    if lowest > n - 2 {
        return Err(Error::validation(format!("lowest node {lowest} leaves fewer than 2 nodes of {n}")));
    }
    let mut seed = vec![0; n];
    seed[n - 2] = n - 1;
    seed[n - 1] = n - 2;
    let mut cycles = vec![seed];
    for v in (lowest..n - 2).rev() {
        let mut grown = Vec::with_capacity(cycles.len() * (n - 1 - v));
        for cycle in &cycles {
            for x in v + 1..n {
                grown.push(splice(cycle, v, x));
            }
        }
        cycles = grown;
    }
    Ok(cycles)
}

/// Inserts node `v` in front of node `x`: the predecessor of `x` now points at `v`.
fn splice(cycle: &[usize], v: usize, x: usize) -> Vec<usize> {
    let mut next = cycle.to_vec();
    let pred = (v + 1..cycle.len()).find(|&i| cycle[i] == x).expect("x lies on the cycle");
    next[pred] = v;
    next[v] = x;
    next
}

/// All (n−1)! Hamiltonian cycles on n nodes.
pub fn enumerate_hcs(n: usize) -> Result<Vec<Tour>> {
    Ok(enumerate_partial_cycles(n, 0)?.into_iter().map(|successor| Tour { successor }).collect())
}

/// Uniformly random Hamiltonian cycle, drawn by the same splicing recursion.
pub fn random_tour<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tour> {
    if n < 2 {
        return Err(Error::validation(format!("cycles need at least 2 nodes, got {n}")));
    }
    let mut succ = vec![0; n];
    succ[n - 2] = n - 1;
    succ[n - 1] = n - 2;
    for v in (0..n - 2).rev() {
        let x = rng.gen_range(v + 1..n);
        succ = splice(&succ, v, x);
    }
    Ok(Tour { successor: succ })
}

/// Minimum tour weight and every tour attaining it.
pub fn optimal_tours(graph: &Graph) -> Result<(i64, Vec<Tour>)> {
    let tours = enumerate_hcs(graph.n())?;
    let best = tours.iter().map(|t| t.weight(graph)).min().expect("at least one tour");
    let optima = tours.into_iter().filter(|t| t.weight(graph) == best).collect();
    Ok((best, optima))
}

/// Smallest and largest tour weight.
pub fn tour_weight_range(graph: &Graph) -> Result<(i64, i64)> {
    let tours = enumerate_hcs(graph.n())?;
    let weights = tours.iter().map(|t| t.weight(graph));
    let lo = weights.clone().min().expect("at least one tour");
    let hi = weights.max().expect("at least one tour");
    Ok((lo, hi))
}

/// Number of tours with weight strictly below `threshold`.
pub fn count_below(graph: &Graph, threshold: i64) -> Result<usize> {
    Ok(enumerate_hcs(graph.n())?.iter().filter(|t| t.weight(graph) < threshold).count())
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::fixtures::benchmark_graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn digits(s: &str) -> Vec<usize> {
        s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    }

    #[test]
    fn cycle_predicate() {
        assert!(is_hamiltonian_cycle(&[2, 0, 3, 1]));
        assert!(!is_hamiltonian_cycle(&[1, 0, 3, 2]));
        assert!(!is_hamiltonian_cycle(&[0, 1, 2, 3]));
        assert!(!is_hamiltonian_cycle(&[1, 2, 3, 4]));
        assert!(!is_hamiltonian_cycle(&[1, 1, 3, 0]));
        assert!(!is_hamiltonian_cycle(&[]));
    }

    #[test]
    fn route_of_example_tour() {
        let t = Tour::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(t.route(), vec![0, 2, 3, 1]);
    }

    #[test]
    fn three_node_cycles_on_upper_vertices() {
        // cycles on {2,3,4} inside a 5-node frame: |342⟩ and |423⟩
        let cycles = enumerate_partial_cycles(5, 2).unwrap();
        let tails: Vec<Vec<usize>> = cycles.iter().map(|c| c[2..].to_vec()).collect();
        assert_eq!(tails, vec![digits("342"), digits("423")]);
    }

    #[test]
    fn four_node_cycles_from_first_three_cycle() {
        // from |342⟩ on {2,3,4}, adding node 1 yields |2341⟩, |3142⟩, |4312⟩
        let cycles = enumerate_partial_cycles(5, 1).unwrap();
        let tails: Vec<Vec<usize>> = cycles.iter().map(|c| c[1..].to_vec()).collect();
        assert_eq!(&tails[..3], &[digits("2341"), digits("3142"), digits("4312")]);
        assert_eq!(tails.len(), 6);
    }

    #[test]
    fn five_node_cycles_from_2341() {
        let cycles = enumerate_partial_cycles(5, 0).unwrap();
        let expected = ["12340", "20341", "32041", "42301"].map(digits);
        assert_eq!(&cycles[..4], &expected);
    }

    #[test]
    fn counts_are_factorial() {
        assert_eq!(enumerate_hcs(2).unwrap().len(), 1);
        for n in 3..=8 {
            let tours = enumerate_hcs(n).unwrap();
            assert_eq!(tours.len() as u64, factorial(n - 1));
            let unique: BTreeSet<_> = tours.iter().collect();
            assert_eq!(unique.len(), tours.len());
            assert!(tours.iter().all(|t| is_hamiltonian_cycle(t.successor())));
        }
    }

    #[test]
    fn enumeration_is_complete_against_all_arrays() {
        // brute force over all n^n arrays
        for n in 2..=5usize {
            let listed: BTreeSet<Vec<usize>> = enumerate_hcs(n).unwrap().into_iter().map(|t| t.successor).collect();
            let total = n.pow(n as u32);
            let mut found = BTreeSet::new();
            for code in 0..total {
                let arr: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
                if is_hamiltonian_cycle(&arr) {
                    found.insert(arr);
                }
            }
            assert_eq!(listed, found, "n = {n}");
        }
    }

    #[test]
    fn sampled_six_node_arrays() {
        let listed: BTreeSet<Vec<usize>> = enumerate_hcs(6).unwrap().into_iter().map(|t| t.successor).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut hits = 0;
        for _ in 0..20_000 {
            let arr: Vec<usize> = (0..6).map(|_| rng.gen_range(0..6)).collect();
            let hc = is_hamiltonian_cycle(&arr);
            assert_eq!(hc, listed.contains(&arr));
            hits += hc as usize;
        }
        assert!(hits > 0);
    }

    #[test]
    fn enumeration_limits() {
        assert!(matches!(enumerate_hcs(1), Err(Error::Validation(_))));
        assert!(matches!(enumerate_hcs(11), Err(Error::Capacity(_))));
    }

    #[test]
    fn weights_and_optima() {
        let x1 = benchmark_graph(1);
        let t = Tour::new(vec![1, 3, 0, 2]).unwrap();
        assert_eq!(tour_weight(&x1, &t), 4);
        let (w, opt) = optimal_tours(&x1).unwrap();
        assert_eq!((w, opt.len()), (4, 2));
        let (w, opt) = optimal_tours(&benchmark_graph(2)).unwrap();
        assert_eq!((w, opt.len()), (7, 4));
        assert_eq!(tour_weight_range(&x1).unwrap(), (4, 7));
        assert_eq!(count_below(&x1, 5).unwrap(), 2);
    }

    #[test]
    fn random_tour_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..24_000 {
            let t = random_tour(5, &mut rng).unwrap();
            *counts.entry(t.successor().to_vec()).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 24);
        // 1000 expected per tour, σ ≈ 31
        assert!(counts.values().all(|&c| (840..1160).contains(&c)));
    }
}
