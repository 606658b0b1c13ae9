//! Pauli check sandwiching: finding check pairs for a circuit, building the
//! sandwiched circuit, and measuring how much postselection recovers under
//! depolarizing noise.

pub mod channel;
pub mod checks;
pub mod circuit;
pub mod density;
pub mod error;
pub mod experiment;
pub mod fmt;
mod kernels;
pub mod pauli;
pub mod sandwich;

pub use checks::{find_checks, CheckLayer, CheckPolicy, CheckSearch, CheckSet};
pub use circuit::{Circuit, Gate};
pub use density::{fidelity, simulate, DensityMatrix, NoiseSpec};
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString};
pub use sandwich::{build, NoiseScope, SandwichedCircuit};
