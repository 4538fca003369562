//! Quantum convolutional stabilizer codes.
//!
//! Everything is built on polynomials over GF(2) in a delay variable D:
//! Pauli generator streams are pairs of polynomial vectors, code structure
//! falls out of Gaussian elimination over GF(2)[D], encoders are derived
//! symbolically and checked with a stabilizer-tableau simulator, and
//! syndrome decoding runs a Viterbi pass over the overlap-qubit state space.

pub mod channel;
pub mod circuit;
pub mod cli;
pub mod code;
pub mod decoder;
pub mod gf2poly;
pub mod pauli;
pub mod structure;
