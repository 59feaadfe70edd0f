//! Exact statevector simulation of a Grover-based travelling-salesman search.
//!
//! The pipeline prepares the uniform superposition over all Hamiltonian cycles
//! with a polynomial-size circuit ([`hcg`]), writes `w_σ − C_T` into a value
//! register with phase arithmetic ([`weight`]), and amplifies tours cheaper
//! than the threshold ([`grover`]).

pub mod error;
pub mod grover;
pub mod hcg;
pub mod statevec;
pub mod tsp;
pub mod weight;

pub use error::{Error, Result};
