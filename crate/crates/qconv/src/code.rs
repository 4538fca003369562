//! Definition, validation, parsing, and finite-window expansion of
//! stream stabilizer codes.
//!
//! A code is given by n (qubits per block), k (logical qubits per block),
//! m (overlap width in qubits) and n-k generators, each a Pauli word on
//! n+m qubits. The full stabilizer group is generated by all block shifts
//! of these words.

use std::fmt;

use crate::pauli::{gf2_rank, PauliError, PauliPoly, PauliString, SymplecticVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    UnsupportedOverlap {
        m: usize,
        n: usize,
    },
    BadLogicalCount {
        k: usize,
        n: usize,
    },
    GeneratorCount {
        expected: usize,
        got: usize,
    },
    SignCount {
        expected: usize,
        got: usize,
    },
    GeneratorWidth {
        index: usize,
        max_qubits: usize,
        got: usize,
    },
    Syntax {
        line: usize,
        msg: String,
    },
    Invalid(ValidationReport),
    Pauli(PauliError),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::UnsupportedOverlap { m, n } => {
                write!(
                    f,
                    "overlap m={} exceeds block width n={} (unsupported)",
                    m, n
                )
            }
            CodeError::BadLogicalCount { k, n } => {
                write!(f, "logical count k={} exceeds block width n={}", k, n)
            }
            CodeError::GeneratorCount { expected, got } => {
                write!(f, "expected {} generators, got {}", expected, got)
            }
            CodeError::SignCount { expected, got } => {
                write!(f, "expected {} signs, got {}", expected, got)
            }
            CodeError::GeneratorWidth {
                index,
                max_qubits,
                got,
            } => {
                write!(
                    f,
                    "generator {} acts on {} qubits but only {} are allowed",
                    index + 1,
                    got,
                    max_qubits
                )
            }
            CodeError::Syntax { line, msg } => write!(f, "line {}: {}", line, msg),
            CodeError::Invalid(report) => {
                write!(
                    f,
                    "code validation failed: {}",
                    report.problems().join("; ")
                )
            }
            CodeError::Pauli(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CodeError {}

impl From<PauliError> for CodeError {
    fn from(e: PauliError) -> Self {
        CodeError::Pauli(e)
    }
}

/// A stream stabilizer code: n-k generator words on n+m qubits whose block
/// shifts generate the stabilizer group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    m: usize,
    gens: Vec<PauliPoly>,
    /// Per-generator sign; true means the -1 eigenvalue is stabilized.
    negative: Vec<bool>,
}

impl CodeSpec {
    /// Shape checks only; semantic checks (commutation, independence) are
    /// the business of [`CodeSpec::validate`].
    pub fn new(
        n: usize,
        k: usize,
        m: usize,
        gens: Vec<PauliPoly>,
        negative: Vec<bool>,
    ) -> Result<CodeSpec, CodeError> {
        if n < 1 || k > n {
            return Err(CodeError::BadLogicalCount { k, n });
        }
        if m > n {
            return Err(CodeError::UnsupportedOverlap { m, n });
        }
        if gens.len() != n - k {
            return Err(CodeError::GeneratorCount {
                expected: n - k,
                got: gens.len(),
            });
        }
        if negative.len() != gens.len() {
            return Err(CodeError::SignCount {
                expected: gens.len(),
                got: negative.len(),
            });
        }
        for (i, g) in gens.iter().enumerate() {
            if g.width() != n {
                return Err(CodeError::Pauli(PauliError::WidthMismatch {
                    left: n,
                    right: g.width(),
                }));
            }
            if g.support_end() > n + m {
                return Err(CodeError::GeneratorWidth {
                    index: i,
                    max_qubits: n + m,
                    got: g.support_end(),
                });
            }
        }
        Ok(CodeSpec {
            n,
            k,
            m,
            gens,
            negative,
        })
    }

    /// Convenience constructor from flat Pauli words, all signs positive.
    pub fn from_strings(
        n: usize,
        k: usize,
        m: usize,
        gens: &[&str],
    ) -> Result<CodeSpec, CodeError> {
        let parsed: Result<Vec<PauliPoly>, PauliError> =
            gens.iter().map(|s| PauliPoly::parse(s, n)).collect();
        let parsed = parsed?;
        let count = parsed.len();
        CodeSpec::new(n, k, m, parsed, vec![false; count])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gens(&self) -> &[PauliPoly] {
        &self.gens
    }

    pub fn negative(&self) -> &[bool] {
        &self.negative
    }

    /// Number of generators per block, n - k.
    pub fn gen_count(&self) -> usize {
        self.n - self.k
    }

    /// Number of whole blocks a generator word may reach into beyond its
    /// own: ceil(m / n).
    pub fn overlap_blocks(&self) -> usize {
        self.m.div_ceil(self.n)
    }

    /// Semantic checks: pairwise commutation at all shifts, support width,
    /// and independence of all shifted generators over a finite window.
    pub fn validate(&self) -> ValidationReport {
        let mut pairs = Vec::new();
        for i in 0..self.gens.len() {
            for j in i..self.gens.len() {
                let commute = self.gens[i]
                    .gen_commute(&self.gens[j])
                    .expect("equal widths by construction");
                pairs.push(PairCommute { i, j, commute });
            }
        }
        let support_ok: Vec<bool> = self
            .gens
            .iter()
            .map(|g| g.support_end() <= self.n + self.m)
            .collect();

        // Independence of the shifted generators is periodic, so a window of
        // twice the overlap reach is decisive.
        let window_blocks = 2 * (self.overlap_blocks() + 1);
        let expected_rank = self.gen_count() * window_blocks;
        let rank = if support_ok.iter().all(|&ok| ok) {
            let n_qubits = self.n * window_blocks + self.m;
            let rows: Vec<_> = (0..window_blocks)
                .flat_map(|j| {
                    self.gens.iter().map(move |g| {
                        g.expand(j, n_qubits)
                            .expect("window sized to fit all shifts")
                            .to_bit_row()
                    })
                })
                .collect();
            gf2_rank(&rows)
        } else {
            0
        };

        ValidationReport {
            pairs,
            support_ok,
            window_blocks,
            expected_rank,
            rank,
        }
    }

    /// All generator shifts that fit in q blocks, expanded onto
    /// n*q + m qubits. Row order: shift-major, generator-minor.
    pub fn expand_stabilizer(&self, q: usize) -> Result<ExpandedStabilizer, CodeError> {
        assert!(q >= 1);
        let report = self.validate();
        if !report.is_valid() {
            return Err(CodeError::Invalid(report));
        }
        let n_qubits = self.n * q + self.m;
        let mut rows = Vec::with_capacity(q * self.gen_count());
        for j in 0..q {
            for g in &self.gens {
                rows.push(g.expand(j, n_qubits)?);
            }
        }
        Ok(ExpandedStabilizer {
            q,
            n_qubits,
            gen_count: self.gen_count(),
            rows,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCommute {
    pub i: usize,
    pub j: usize,
    pub commute: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// gen_commute status for every pair i <= j.
    pub pairs: Vec<PairCommute>,
    /// Per generator: support fits within n+m qubits.
    pub support_ok: Vec<bool>,
    /// Blocks used for the independence check.
    pub window_blocks: usize,
    pub expected_rank: usize,
    pub rank: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.pairs.iter().all(|p| p.commute)
            && self.support_ok.iter().all(|&ok| ok)
            && self.rank == self.expected_rank
    }

    pub fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        self.pairs.iter().find(|p| !p.commute).map(|p| (p.i, p.j))
    }

    /// Human-readable issue list, empty when valid. Generator indices are
    /// 1-based to match the file format.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.pairs {
            if !p.commute {
                out.push(format!(
                    "generators {} and {} do not commute at all shifts",
                    p.i + 1,
                    p.j + 1
                ));
            }
        }
        for (i, &ok) in self.support_ok.iter().enumerate() {
            if !ok {
                out.push(format!("generator {} overruns the n+m qubit window", i + 1));
            }
        }
        if self.rank != self.expected_rank {
            out.push(format!(
                "shifted generators are dependent: rank {} over {} blocks, expected {}",
                self.rank, self.window_blocks, self.expected_rank
            ));
        }
        out
    }
}

/// Stabilizer generators expanded onto a finite window of q blocks.
#[derive(Clone, Debug)]
pub struct ExpandedStabilizer {
    pub q: usize,
    pub n_qubits: usize,
    gen_count: usize,
    /// Shift-major: row j*(n-k) + i is generator i delayed by j blocks.
    pub rows: Vec<SymplecticVec>,
}

impl ExpandedStabilizer {
    pub fn row(&self, shift: usize, gen: usize) -> &SymplecticVec {
        &self.rows[shift * self.gen_count + gen]
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }
}

/// Parse the line-oriented code file format: a `n k m` header, then n-k
/// lines each holding an optionally signed Pauli word of exactly n+m
/// letters. `#` starts a comment anywhere on a line.
pub fn parse_code(text: &str) -> Result<CodeSpec, CodeError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut gens: Vec<PauliPoly> = Vec::new();
    let mut negative: Vec<bool> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(CodeError::Syntax {
                        line: line_no,
                        msg: format!("expected header 'n k m', got '{}'", line),
                    });
                }
                let mut nums = [0usize; 3];
                for (slot, f) in nums.iter_mut().zip(&fields) {
                    *slot = f.parse().map_err(|_| CodeError::Syntax {
                        line: line_no,
                        msg: format!("'{}' is not a number", f),
                    })?;
                }
                header = Some((nums[0], nums[1], nums[2]));
            }
            Some((n, k, m)) => {
                if gens.len() == n.saturating_sub(k) {
                    return Err(CodeError::Syntax {
                        line: line_no,
                        msg: format!("unexpected extra line after {} generators", gens.len()),
                    });
                }
                let (neg, word) = match line.as_bytes()[0] {
                    b'+' => (false, &line[1..]),
                    b'-' => (true, &line[1..]),
                    _ => (false, line),
                };
                if word.len() != n + m {
                    return Err(CodeError::Syntax {
                        line: line_no,
                        msg: format!(
                            "generator has {} letters, expected n+m = {}",
                            word.len(),
                            n + m
                        ),
                    });
                }
                let ps: PauliString = word.parse().map_err(|e| CodeError::Syntax {
                    line: line_no,
                    msg: format!("{}", e),
                })?;
                gens.push(PauliPoly::from_string(&ps, n));
                negative.push(neg);
            }
        }
    }

    let Some((n, k, m)) = header else {
        return Err(CodeError::Syntax {
            line: 1,
            msg: "missing 'n k m' header".into(),
        });
    };
    let spec = CodeSpec::new(n, k, m, gens, negative)?;
    let report = spec.validate();
    if !report.is_valid() {
        return Err(CodeError::Invalid(report));
    }
    Ok(spec)
}

/// Inverse of [`parse_code`]: header line plus one fixed-width word per
/// generator, minus sign prefix only where needed.
pub fn serialize_code(c: &CodeSpec) -> String {
    let mut out = format!("{} {} {}\n", c.n(), c.k(), c.m());
    for (g, &neg) in c.gens().iter().zip(c.negative()) {
        if neg {
            out.push('-');
        }
        let letters: String = g
            .to_pauli_string()
            .dense(c.n() + c.m())
            .expect("support checked at construction")
            .iter()
            .map(|p| p.letter())
            .collect();
        out.push_str(&letters);
        out.push('\n');
    }
    out
}

/// The width-5 example: one logical qubit per block, overlap 2, built by
/// spreading the five-qubit block code along the stream.
pub fn five_qubit_stream_code() -> CodeSpec {
    CodeSpec::from_strings(5, 1, 2, &["ZXXZIII", "IZXXZII", "IIZXXZI", "IIIZXXZ"])
        .expect("statically known to be well-formed")
}
