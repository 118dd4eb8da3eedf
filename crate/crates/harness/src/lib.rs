//! Experiment harness for TTPTW solvers: instance synthesis, reference
//! tours, campaigns, validation and a brute-force oracle.

pub mod bruteforce;
pub mod campaign;
pub mod solution;
pub mod synth;
pub mod tsp;
pub mod validate;
