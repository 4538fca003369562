//! Memoryless Pauli channels: sampling, likelihood scoring, and ideal
//! syndrome extraction against a stream code.

use std::fmt;

use crate::code::CodeSpec;
use crate::pauli::{Pauli, PauliString, SymplecticVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name of the random generator used by [`sample_error`], recorded in
/// simulation outputs so runs can be reproduced.
pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelError {
    ProbabilityOutOfRange { value: f64 },
    NotNormalized { sum: f64 },
    SupportOverflow { needed: usize, available: usize },
    Syntax { line: usize, msg: String },
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::ProbabilityOutOfRange { value } => {
                write!(f, "probability {} outside [0, 1]", value)
            }
            ChannelError::NotNormalized { sum } => {
                write!(f, "channel probabilities sum to {}, expected 1", sum)
            }
            ChannelError::SupportOverflow { needed, available } => {
                write!(
                    f,
                    "error acts on {} qubits but only {} exist",
                    needed, available
                )
            }
            ChannelError::Syntax { line, msg } => write!(f, "line {}: {}", line, msg),
        }
    }
}

impl std::error::Error for ChannelError {}

/// Per-qubit Pauli error probabilities of a memoryless channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    p_i: f64,
    p_x: f64,
    p_y: f64,
    p_z: f64,
}

impl ChannelModel {
    pub fn new(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<ChannelModel, ChannelError> {
        for p in [p_i, p_x, p_y, p_z] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(ChannelError::ProbabilityOutOfRange { value: p });
            }
        }
        let sum = p_i + p_x + p_y + p_z;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(ChannelError::NotNormalized { sum });
        }
        Ok(ChannelModel { p_i, p_x, p_y, p_z })
    }

    pub fn probability(&self, letter: Pauli) -> f64 {
        match letter {
            Pauli::I => self.p_i,
            Pauli::X => self.p_x,
            Pauli::Y => self.p_y,
            Pauli::Z => self.p_z,
        }
    }

    /// Natural log of a letter's probability; -inf for impossible letters.
    pub fn log_probability(&self, letter: Pauli) -> f64 {
        let p = self.probability(letter);
        if p == 0.0 {
            f64::NEG_INFINITY
        } else {
            p.ln()
        }
    }

    /// Log-likelihood of any error with the given letter counts, indexed
    /// I, X, Y, Z. Letters sharing the same probability are pooled before
    /// multiplying, so two count vectors of equal real likelihood produce
    /// bit-identical floats; decoders rely on that for stable tie-breaks.
    pub fn log_likelihood_of_counts(&self, counts: [u64; 4]) -> f64 {
        let probs = [self.p_i, self.p_x, self.p_y, self.p_z];
        let mut pooled = [0u64; 4];
        for (i, &p) in probs.iter().enumerate() {
            let owner = probs.iter().position(|&earlier| earlier == p).unwrap_or(i);
            pooled[owner] += counts[i];
        }
        let mut total = 0.0;
        for (i, &count) in pooled.iter().enumerate() {
            if count == 0 {
                continue;
            }
            if probs[i] == 0.0 {
                return f64::NEG_INFINITY;
            }
            total += count as f64 * probs[i].ln();
        }
        total
    }
}

/// Channel flipping each qubit with total probability p, split evenly over
/// X, Y and Z.
pub fn depolarizing(p: f64) -> Result<ChannelModel, ChannelError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(ChannelError::ProbabilityOutOfRange { value: p });
    }
    ChannelModel::new(1.0 - p, p / 3.0, p / 3.0, p / 3.0)
}

/// Draw an i.i.d. error on n_qubits qubits. The same seed always yields the
/// same string.
pub fn sample_error(ch: &ChannelModel, n_qubits: usize, seed: u64) -> PauliString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_error_with(ch, n_qubits, &mut rng)
}

/// Like [`sample_error`] but advancing a caller-owned generator, for runs
/// that draw many errors in sequence.
pub fn sample_error_with(ch: &ChannelModel, n_qubits: usize, rng: &mut impl Rng) -> PauliString {
    let letters: Vec<Pauli> = (0..n_qubits)
        .map(|_| {
            let mut u: f64 = rng.gen();
            for letter in [Pauli::I, Pauli::X, Pauli::Y] {
                let p = ch.probability(letter);
                if u < p {
                    return letter;
                }
                u -= p;
            }
            Pauli::Z
        })
        .collect();
    PauliString::new(letters, 0)
}

/// Sum of per-qubit letter log-probabilities over all n_qubits qubits.
/// Returns -inf when the error uses a letter the channel never produces.
pub fn log_likelihood(
    ch: &ChannelModel,
    e: &PauliString,
    n_qubits: usize,
) -> Result<f64, ChannelError> {
    if e.support_end() > n_qubits {
        return Err(ChannelError::SupportOverflow {
            needed: e.support_end(),
            available: n_qubits,
        });
    }
    let mut counts = [0u64; 4];
    counts[0] = (n_qubits - e.ops().len()) as u64;
    for &letter in e.ops() {
        counts[match letter {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }] += 1;
    }
    Ok(ch.log_likelihood_of_counts(counts))
}

/// Measured syndrome of every generator shift against a fixed error: entry
/// (j, i) is true when the error anticommutes with generator i delayed by j
/// blocks (a -1 measurement outcome).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeStream {
    blocks: usize,
    per_block: usize,
    anti: Vec<bool>,
}

impl SyndromeStream {
    pub fn new(blocks: usize, per_block: usize, anti: Vec<bool>) -> SyndromeStream {
        assert_eq!(
            anti.len(),
            blocks * per_block,
            "syndrome grid must be complete"
        );
        SyndromeStream {
            blocks,
            per_block,
            anti,
        }
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn per_block(&self) -> usize {
        self.per_block
    }

    /// True when generator i delayed by j blocks anticommutes with the
    /// measured error.
    pub fn anticommutes(&self, j: usize, i: usize) -> bool {
        self.anti[j * self.per_block + i]
    }

    /// The measurement outcome, +1 or -1.
    pub fn sign(&self, j: usize, i: usize) -> i8 {
        if self.anticommutes(j, i) {
            -1
        } else {
            1
        }
    }

    pub fn all_trivial(&self) -> bool {
        self.anti.iter().all(|&a| !a)
    }

    /// One line per block of `+` and `-` characters, one per generator.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for j in 0..self.blocks {
            for i in 0..self.per_block {
                out.push(if self.anticommutes(j, i) { '-' } else { '+' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SyndromeStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parse the one-line-per-block `+-++` format produced by
/// [`SyndromeStream::to_text`]. Blank lines and `#` comments are skipped.
pub fn parse_syndromes(text: &str, per_block: usize) -> Result<SyndromeStream, ChannelError> {
    let mut anti = Vec::new();
    let mut blocks = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.chars().count() != per_block {
            return Err(ChannelError::Syntax {
                line,
                msg: format!(
                    "expected {} outcomes per block, got {}",
                    per_block,
                    body.len()
                ),
            });
        }
        for c in body.chars() {
            match c {
                '+' => anti.push(false),
                '-' => anti.push(true),
                other => {
                    return Err(ChannelError::Syntax {
                        line,
                        msg: format!("unexpected character {:?}", other),
                    })
                }
            }
        }
        blocks += 1;
    }
    Ok(SyndromeStream::new(blocks, per_block, anti))
}

/// Commutation of the error with every generator shift 0 <= j < q. The
/// error must fit in the q-block window of n*q + m qubits.
pub fn extract_syndromes(
    c: &CodeSpec,
    e: &PauliString,
    q: usize,
) -> Result<SyndromeStream, ChannelError> {
    let n_qubits = c.n() * q + c.m();
    if e.support_end() > n_qubits {
        return Err(ChannelError::SupportOverflow {
            needed: e.support_end(),
            available: n_qubits,
        });
    }
    let mut error_vec = SymplecticVec::zero(n_qubits);
    for (pos, &letter) in e.ops().iter().enumerate() {
        error_vec.set_letter(e.offset() + pos, letter);
    }
    let mut anti = Vec::with_capacity(q * c.gen_count());
    for j in 0..q {
        for gen in c.gens() {
            let row = gen
                .expand(j, n_qubits)
                .expect("generator shifts below q fit in the window");
            anti.push(row.symplectic_dot(&error_vec));
        }
    }
    Ok(SyndromeStream::new(q, c.gen_count(), anti))
}
