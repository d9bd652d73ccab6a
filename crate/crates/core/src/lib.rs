//! Simulation of oblivious transfer, non-local boxes, singlet correlations
//! and one-qubit channels, with the reductions between them.
//!
//! Every protocol in [`reductions`] is assembled from the metered black-box
//! resources in [`primitives`], so each run returns a [`Transcript`] that can
//! be checked against the protocol's resource budget. [`qubit`] holds the
//! exact single-qubit model that the classical simulations are judged
//! against, and [`analysis`] has the CHSH game plus the Monte-Carlo harness.

pub mod analysis;
pub mod bit;
pub mod error;
pub mod primitives;
pub mod qubit;
pub mod reductions;
pub mod rng;
pub mod tolerance;

pub use analysis::chsh::{
    chsh_classical_optimum, chsh_nlbox, chsh_nlbox_with, chsh_quantum_exact, chsh_quantum_score,
    ChshSettings, DeterministicStrategy,
};
pub use analysis::estimate::{
    run_trials, run_trials_with_workers, sweep_alignment, wilson_interval, EstimateResult,
    Experiment, SweepRow,
};
pub use bit::Bit;
pub use error::{Error, Result};
pub use primitives::{
    ideal_ot, nl_box, send_classical_bit, send_qubit, Direction, NLBoxOutcome, Payload, Transcript,
};
pub use qubit::{BlochVector, QubitState, Vec3};
pub use reductions::{
    nlbox_from_ot, ot_from_nlbox, ot_via_one_classical_bit, ot_via_quantum, sg, teleport_via_nlbox,
    teleport_via_ot, QuantumEncoding, SharedSphereRandomness, TeleportVariant, TeleportationResult,
};
pub use rng::RandomSource;

/// cos²(π/8) = (2 + √2) / 4, the quantum success probability for both the
/// CHSH game and one-qubit oblivious transfer.
pub const QUANTUM_SUCCESS: f64 = 0.853_553_390_593_273_8;

/// Best success probability of any classical strategy, for both the CHSH game
/// and oblivious transfer over one classical bit.
pub const CLASSICAL_SUCCESS: f64 = 0.75;
