//! Randomness certification in the semi-device-independent
//! prepare-and-measure scenario.
//!
//! Four qubit preparations indexed by two input bits are measured in one of
//! two bases; the dimension witness T built from the conditional
//! probabilities separates classical (T ≤ 2) from qubit (T ≤ 2√2)
//! strategies. This crate evaluates the witness under detector inefficiency
//! and preparation white noise, maximizes witness values and adversarial
//! guessing probabilities over all qubit strategies with a multi-start
//! derivative-free optimizer, and provides the closed-form guessing bound
//! f(T) together with the min-entropy it certifies.

pub mod analytic;
pub mod error;
pub mod exec;
pub mod format;
pub mod guessing;
pub mod optimizer;
pub mod qubit;
pub mod witness;

pub use analytic::{
    cos_bound_from_witness, min_entropy_bound, pguess_bound_from_angle,
    pguess_bound_from_witness, witness_bound_from_angle, Angle,
};
pub use error::{Error, Result};
pub use format::{parse_scenario, scenario_to_json};
pub use guessing::{min_entropy, pguess, GuessingMethod};
pub use optimizer::{
    decode, encode, local_search, maximize_pguess, maximize_witness, OptConfig, OptResult,
    ParameterVector, SearchOutcome, PARAM_COUNT,
};
pub use qubit::{
    born_probability, random_scenario, sample_scenario, BlochVector, PovmEffect, QubitState,
    Scenario,
};
pub use witness::{
    apply_white_noise, noise_threshold, witness_with_efficiency, EfficiencyPair, NoiseLevel,
    ProbabilityTable, CLASSICAL_BOUND, QUANTUM_BOUND,
};
