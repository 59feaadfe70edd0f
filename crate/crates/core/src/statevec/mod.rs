//! Dense statevector simulation over a small primitive gate set.
//!
//! Bit layout: qubit `q` is bit `q` of the basis-state index (qubit 0 is the
//! least significant). Multi-controlled gates act natively on the amplitudes;
//! every control carries its own polarity.

mod circuit;
mod gate;
mod qft;
mod state;

pub use circuit::{total_gates, Circuit, GateCounts};
pub use gate::{controls_for_value, wrap_angle, zero_controls, Control, Gate, GateKind, GateTag, Polarity};
pub use qft::{build_inverse_qft, build_qft};
pub use state::{sample_weighted, Histogram, StateVector, MAX_QUBITS, NORM_TOLERANCE};
