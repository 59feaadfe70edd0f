//! TSP instances, the index/value register encoding, and the classical
//! brute-force oracle used to check every quantum result.

mod encoding;
pub mod fixtures;
mod graph;
mod tour;

pub use encoding::{index_bits, EncodingParams};
pub use graph::Graph;
pub use tour::{
    count_below, enumerate_hcs, enumerate_partial_cycles, factorial, is_hamiltonian_cycle, optimal_tours, random_tour,
    tour_weight, tour_weight_range, Tour, TourResult, MAX_ENUMERATION_NODES,
};
