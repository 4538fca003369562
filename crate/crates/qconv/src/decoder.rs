//! Maximum-likelihood error estimation from a syndrome stream.
//!
//! [`viterbi_decode`] runs a dynamic program over the stream: one trellis
//! state per Pauli pattern on the m qubits shared between consecutive
//! generator windows, one step per block. Its per-step work is constant for
//! a fixed code and channel, so decoding time grows linearly with the number
//! of blocks. [`brute_force_ml`] searches the full coset of compatible
//! errors and serves as the oracle the trellis is tested against, and
//! [`classify_residual`] decides whether an estimate differs from the true
//! error by a stabilizer element or by a logical operator.

use std::fmt;

use crate::channel::{extract_syndromes, ChannelError, ChannelModel, SyndromeStream};
use crate::code::{CodeSpec, ValidationReport};
use crate::pauli::{gf2_nullspace, gf2_solve, BitRow, Pauli, PauliString, SymplecticVec};
use crate::structure::LogicalOps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest n + m for which the trellis tables (4^(n+m) entries) are built.
const MAX_TRELLIS_SPAN: usize = 10;
/// Largest coset dimension (2N minus syndrome rank) brute force enumerates.
const MAX_COSET_DIM: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub enum DecoderError {
    Invalid(ValidationReport),
    StreamWidthMismatch {
        expected: usize,
        got: usize,
    },
    BlockCountMismatch {
        expected: usize,
        got: usize,
    },
    EmptyStream,
    WindowTooWide {
        span: usize,
        limit: usize,
    },
    CosetTooLarge {
        dim: usize,
        limit: usize,
    },
    /// No error is compatible with the stream; valid streams extracted from
    /// a real error never trigger this, so it signals corrupted input.
    Infeasible,
    SupportOverflow {
        needed: usize,
        available: usize,
    },
    /// classify_residual was given an estimate that does not reproduce the
    /// true error's syndromes.
    SyndromeMismatch,
    Channel(ChannelError),
}

impl fmt::Display for DecoderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderError::Invalid(report) => {
                write!(f, "code fails validation: {}", report.problems().join("; "))
            }
            DecoderError::StreamWidthMismatch { expected, got } => {
                write!(
                    f,
                    "stream has {} outcomes per block, code expects {}",
                    got, expected
                )
            }
            DecoderError::BlockCountMismatch { expected, got } => {
                write!(f, "stream has {} blocks, caller expected {}", got, expected)
            }
            DecoderError::EmptyStream => write!(f, "syndrome stream has no blocks"),
            DecoderError::WindowTooWide { span, limit } => {
                write!(
                    f,
                    "generator window spans {} qubits, trellis limit is {}",
                    span, limit
                )
            }
            DecoderError::CosetTooLarge { dim, limit } => {
                write!(
                    f,
                    "coset dimension {} exceeds enumeration limit {}",
                    dim, limit
                )
            }
            DecoderError::Infeasible => write!(f, "no error is compatible with the stream"),
            DecoderError::SupportOverflow { needed, available } => {
                write!(
                    f,
                    "error acts on {} qubits but only {} exist",
                    needed, available
                )
            }
            DecoderError::SyndromeMismatch => {
                write!(f, "estimate does not reproduce the reference syndromes")
            }
            DecoderError::Channel(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for DecoderError {}

impl From<ChannelError> for DecoderError {
    fn from(e: ChannelError) -> DecoderError {
        DecoderError::Channel(e)
    }
}

/// How equally likely candidates are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Keep the candidate whose letter sequence is smallest in the fixed
    /// order I < X < Z < Y per qubit. Fully deterministic.
    Lexicographic,
    /// Keep a uniformly random candidate among the tied ones, reproducible
    /// under the recorded seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeOptions {
    pub tie_break: TieBreak,
    /// When Some(d), additionally simulate a streaming decoder that commits
    /// block j - d after processing block j, and record per block whether
    /// all surviving candidates already agreed on it.
    pub traceback_depth: Option<usize>,
    /// Require the final overlap pattern to be the identity, for streams
    /// whose tail qubits are known to carry no error.
    pub terminated: bool,
}

impl Default for DecodeOptions {
    fn default() -> DecodeOptions {
        DecodeOptions {
            tie_break: TieBreak::Lexicographic,
            traceback_depth: None,
            terminated: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// A most likely error compatible with every syndrome in the stream.
    pub estimate: PauliString,
    /// Log-likelihood of the estimate, exactly as reported by
    /// [`ChannelModel::log_likelihood_of_counts`].
    pub loglik: f64,
    /// One flag per block; true when every surviving candidate agreed on
    /// the block at its commit step (always true without truncation, and
    /// for the final blocks whose decision is made with full information).
    pub per_block_converged: Vec<bool>,
    /// What a streaming decoder with the requested traceback depth would
    /// have emitted; present only when a depth was requested. Comparing it
    /// against `estimate` measures how much truncation costs.
    pub committed_estimate: Option<PauliString>,
}

// Letter digits pack a pattern as base-4 with qubit 0 in the highest
// position, so ascending codes are ascending letter sequences. The digit is
// x + 2z (I=0, X=1, Z=2, Y=3); counts stay in channel order I, X, Y, Z.
const DIGIT_COUNT_INDEX: [usize; 4] = [0, 1, 3, 2];

fn digit_of(p: Pauli) -> u32 {
    p.x_bit() as u32 | (p.z_bit() as u32) << 1
}

fn pauli_of_digit(d: u32) -> Pauli {
    Pauli::from_xz(d & 1 != 0, d & 2 != 0)
}

fn count_index(p: Pauli) -> usize {
    DIGIT_COUNT_INDEX[digit_of(p) as usize]
}

/// Syndrome bits of every local pattern against the generator rows
/// restricted to `width` qubits starting at `first_qubit`; entry `code` has
/// bit i set when the pattern anticommutes with row i there.
fn syndrome_table(rows: &[SymplecticVec], first_qubit: usize, width: usize) -> Vec<u16> {
    let mut table = vec![0u16];
    for q in 0..width {
        let mut contrib = [0u16; 4];
        for d in 1..4u32 {
            let (xp, zp) = (d & 1 != 0, d & 2 != 0);
            let mut bits = 0u16;
            for (i, row) in rows.iter().enumerate() {
                if (row.x(first_qubit + q) & zp) ^ (row.z(first_qubit + q) & xp) {
                    bits |= 1 << i;
                }
            }
            contrib[d as usize] = bits;
        }
        let mut next = vec![0u16; table.len() * 4];
        for (prev, &bits) in table.iter().enumerate() {
            for (d, &extra) in contrib.iter().enumerate() {
                next[prev * 4 + d] = bits ^ extra;
            }
        }
        table = next;
    }
    table
}

/// Letter counts (channel order) of every `width`-qubit pattern code.
fn counts_table(width: usize) -> Vec<[u32; 4]> {
    let mut table = vec![[0u32; 4]];
    for _ in 0..width {
        let mut next = Vec::with_capacity(table.len() * 4);
        for prev in &table {
            for d in 0..4 {
                let mut c = *prev;
                c[DIGIT_COUNT_INDEX[d]] += 1;
                next.push(c);
            }
        }
        table = next;
    }
    table
}

/// Precomputed per-block transition data: the same tables serve every step
/// because the generator window slides by exactly one block.
struct TransitionCache {
    n: usize,
    m: usize,
    states: usize,
    state_mask: u32,
    /// Syndrome bits of each m-qubit overlap pattern against the window's
    /// leading m qubits.
    overlap_syn: Vec<u16>,
    head_counts: Vec<[u32; 4]>,
    /// Extension codes grouped by their syndrome bits on the window's
    /// trailing n qubits, ascending within each group.
    groups: Vec<Vec<u32>>,
    ext_counts: Vec<[u32; 4]>,
    ch: ChannelModel,
}

impl TransitionCache {
    fn build(c: &CodeSpec, ch: ChannelModel) -> Result<TransitionCache, DecoderError> {
        let (n, m) = (c.n(), c.m());
        let span = n + m;
        if span > MAX_TRELLIS_SPAN {
            return Err(DecoderError::WindowTooWide {
                span,
                limit: MAX_TRELLIS_SPAN,
            });
        }
        let rows: Vec<SymplecticVec> = c
            .gens()
            .iter()
            .map(|g| g.expand(0, span).expect("generators fit their own window"))
            .collect();
        let ext_syn = syndrome_table(&rows, m, n);
        let mut groups = vec![Vec::new(); 1 << c.gen_count()];
        for (t, &bits) in ext_syn.iter().enumerate() {
            groups[bits as usize].push(t as u32);
        }
        Ok(TransitionCache {
            n,
            m,
            states: 1 << (2 * m),
            state_mask: ((1u64 << (2 * m)) - 1) as u32,
            overlap_syn: syndrome_table(&rows, 0, m),
            head_counts: counts_table(m),
            groups,
            ext_counts: counts_table(n),
            ch,
        })
    }

    fn extension_counts(&self, base: [u64; 4], t: u32) -> [u64; 4] {
        let ext = &self.ext_counts[t as usize];
        let mut out = base;
        for l in 0..4 {
            out[l] += ext[l] as u64;
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Survivor {
    counts: [u64; 4],
    ll: f64,
    prev_state: u32,
    prev_rank: u32,
    ext: u32,
    rank: u32,
}

struct DpRun {
    cache: TransitionCache,
    /// steps[j][state] is the surviving candidate covering blocks 0..=j
    /// whose overlap pattern is `state`.
    steps: Vec<Vec<Option<Survivor>>>,
}

fn offer(
    slot: &mut Option<Survivor>,
    tie_count: &mut u32,
    cand: Survivor,
    rng: &mut Option<ChaCha8Rng>,
) {
    match slot {
        None => {
            *slot = Some(cand);
            *tie_count = 1;
        }
        Some(held) => {
            if cand.ll > held.ll {
                *slot = Some(cand);
                *tie_count = 1;
            } else if cand.ll == held.ll {
                match rng {
                    None => {
                        if (cand.prev_rank, cand.ext) < (held.prev_rank, held.ext) {
                            *slot = Some(cand);
                        }
                    }
                    Some(r) => {
                        *tie_count += 1;
                        if r.gen_range(0..*tie_count) == 0 {
                            *slot = Some(cand);
                        }
                    }
                }
            }
        }
    }
}

/// Order each step's survivors so that rank comparisons reproduce full
/// lexicographic comparison of the underlying prefixes: survivors from
/// different states differ within their last m qubits, so (previous rank,
/// extension code) sorts exactly like the complete letter sequences.
fn assign_ranks(row: &mut [Option<Survivor>]) {
    let mut order: Vec<usize> = (0..row.len()).filter(|&st| row[st].is_some()).collect();
    order.sort_by_key(|&st| {
        let s = row[st].as_ref().unwrap();
        (s.prev_rank, s.ext)
    });
    for (rank, &st) in order.iter().enumerate() {
        row[st].as_mut().unwrap().rank = rank as u32;
    }
}

fn stream_bits(s: &SyndromeStream, j: usize) -> u16 {
    let mut bits = 0u16;
    for i in 0..s.per_block() {
        if s.anticommutes(j, i) {
            bits |= 1 << i;
        }
    }
    bits
}

fn check_inputs(c: &CodeSpec, s: &SyndromeStream) -> Result<(), DecoderError> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(DecoderError::Invalid(report));
    }
    if s.per_block() != c.gen_count() {
        return Err(DecoderError::StreamWidthMismatch {
            expected: c.gen_count(),
            got: s.per_block(),
        });
    }
    if s.blocks() == 0 {
        return Err(DecoderError::EmptyStream);
    }
    Ok(())
}

fn run_dp(
    c: &CodeSpec,
    ch: &ChannelModel,
    s: &SyndromeStream,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<DpRun, DecoderError> {
    check_inputs(c, s)?;
    let cache = TransitionCache::build(c, *ch)?;
    let q = s.blocks();
    let mut steps: Vec<Vec<Option<Survivor>>> = Vec::with_capacity(q);

    for j in 0..q {
        let bits = stream_bits(s, j);
        let mut row: Vec<Option<Survivor>> = vec![None; cache.states];
        let mut ties = vec![0u32; cache.states];
        if j == 0 {
            for head in 0..cache.states as u32 {
                let sigma = (bits ^ cache.overlap_syn[head as usize]) as usize;
                let base = cache.head_counts[head as usize];
                let base = [
                    base[0] as u64,
                    base[1] as u64,
                    base[2] as u64,
                    base[3] as u64,
                ];
                for &t in &cache.groups[sigma] {
                    let counts = cache.extension_counts(base, t);
                    let ll = cache.ch.log_likelihood_of_counts(counts);
                    if ll == f64::NEG_INFINITY {
                        continue;
                    }
                    let state = (t & cache.state_mask) as usize;
                    let cand = Survivor {
                        counts,
                        ll,
                        prev_state: head,
                        prev_rank: head,
                        ext: t,
                        rank: 0,
                    };
                    offer(&mut row[state], &mut ties[state], cand, rng);
                }
            }
        } else {
            let prev_row = &steps[j - 1];
            for (e, prev) in prev_row.iter().enumerate() {
                let Some(prev) = prev else { continue };
                let sigma = (bits ^ cache.overlap_syn[e]) as usize;
                for &t in &cache.groups[sigma] {
                    let counts = cache.extension_counts(prev.counts, t);
                    let ll = cache.ch.log_likelihood_of_counts(counts);
                    if ll == f64::NEG_INFINITY {
                        continue;
                    }
                    let state = (t & cache.state_mask) as usize;
                    let cand = Survivor {
                        counts,
                        ll,
                        prev_state: e as u32,
                        prev_rank: prev.rank,
                        ext: t,
                        rank: 0,
                    };
                    offer(&mut row[state], &mut ties[state], cand, rng);
                }
            }
        }
        if row.iter().all(Option::is_none) {
            return Err(DecoderError::Infeasible);
        }
        if rng.is_none() {
            assign_ranks(&mut row);
        }
        steps.push(row);
    }
    Ok(DpRun { cache, steps })
}

impl DpRun {
    /// State on the surviving path of (step j, state) after climbing `back`
    /// steps toward the start.
    fn state_back(&self, j: usize, state: usize, back: usize) -> usize {
        let mut s = state;
        for step in (j - back + 1..=j).rev() {
            s = self.steps[step][s].expect("path states survive").prev_state as usize;
        }
        s
    }

    /// Packed pattern of the qubits block b contributed, on the surviving
    /// path through (b, state_at_b). Block 0 packs n + m qubits.
    fn block_code(&self, b: usize, state_at_b: usize) -> u64 {
        let sv = self.steps[b][state_at_b].expect("path states survive");
        if b == 0 {
            (sv.prev_state as u64) << (2 * self.cache.n) | sv.ext as u64
        } else {
            sv.ext as u64
        }
    }

    fn best_state(
        &self,
        j: usize,
        terminated: bool,
        rng: &mut Option<ChaCha8Rng>,
    ) -> Option<usize> {
        let row = &self.steps[j];
        if terminated {
            return row[0].is_some().then_some(0);
        }
        let mut best: Option<usize> = None;
        let mut tie_count = 0u32;
        for (st, sv) in row.iter().enumerate() {
            let Some(sv) = sv else { continue };
            match best {
                None => {
                    best = Some(st);
                    tie_count = 1;
                }
                Some(b) => {
                    let held = self.steps[j][b].as_ref().unwrap();
                    if sv.ll > held.ll {
                        best = Some(st);
                        tie_count = 1;
                    } else if sv.ll == held.ll {
                        match rng {
                            None => {
                                if sv.rank < held.rank {
                                    best = Some(st);
                                }
                            }
                            Some(r) => {
                                tie_count += 1;
                                if r.gen_range(0..tie_count) == 0 {
                                    best = Some(st);
                                }
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Block codes along the surviving path ending at (last step, state).
    fn trace_codes(&self, final_state: usize) -> Vec<u64> {
        let q = self.steps.len();
        let mut codes = vec![0u64; q];
        let mut state = final_state;
        for b in (0..q).rev() {
            codes[b] = self.block_code(b, state);
            state = self.steps[b][state]
                .expect("path states survive")
                .prev_state as usize;
        }
        codes
    }

    fn letters(&self, codes: &[u64]) -> Vec<Pauli> {
        let (n, m) = (self.cache.n, self.cache.m);
        let mut letters = Vec::with_capacity(codes.len() * n + m);
        for (b, &code) in codes.iter().enumerate() {
            let width = if b == 0 { n + m } else { n };
            for q in 0..width {
                letters.push(pauli_of_digit((code >> (2 * (width - 1 - q))) as u32 & 3));
            }
        }
        letters
    }
}

/// Trellis maximum-likelihood decoding of a complete syndrome stream.
///
/// Block by block, one candidate error prefix is kept per overlap pattern:
/// the most likely prefix consistent with all syndromes seen so far that
/// ends in that pattern. Keeping every pattern is what makes the final
/// winner a global maximum-likelihood error rather than a greedy guess.
pub fn viterbi_decode(
    c: &CodeSpec,
    ch: &ChannelModel,
    s: &SyndromeStream,
    opts: &DecodeOptions,
) -> Result<DecodeResult, DecoderError> {
    let mut rng = match opts.tie_break {
        TieBreak::Lexicographic => None,
        TieBreak::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let dp = run_dp(c, ch, s, &mut rng)?;
    let q = s.blocks();
    let last = q - 1;
    let final_state = dp
        .best_state(last, opts.terminated, &mut rng)
        .ok_or(DecoderError::Infeasible)?;
    let final_survivor = dp.steps[last][final_state].expect("selected state survives");
    let codes = dp.trace_codes(final_state);
    let estimate = PauliString::new(dp.letters(&codes), 0);

    let mut per_block_converged = vec![true; q];
    let mut committed_estimate = None;
    if let Some(depth) = opts.traceback_depth {
        let mut committed = codes.clone();
        for j in 0..q {
            let Some(b) = j.checked_sub(depth) else {
                continue;
            };
            // Streaming commitment never sees the terminal constraint, so
            // the mid-stream best state ignores `terminated`.
            let best = dp
                .best_state(j, false, &mut None)
                .expect("every kept step has a survivor");
            committed[b] = dp.block_code(b, dp.state_back(j, best, depth));
            let mut agreed = true;
            let mut seen: Option<u64> = None;
            for st in 0..dp.cache.states {
                if dp.steps[j][st].is_none() {
                    continue;
                }
                let code = dp.block_code(b, dp.state_back(j, st, depth));
                match seen {
                    None => seen = Some(code),
                    Some(prev) if prev != code => {
                        agreed = false;
                        break;
                    }
                    Some(_) => {}
                }
            }
            per_block_converged[b] = agreed;
        }
        committed_estimate = Some(PauliString::new(dp.letters(&committed), 0));
    }

    Ok(DecodeResult {
        estimate,
        loglik: final_survivor.ll,
        per_block_converged,
        committed_estimate,
    })
}

/// Per-step, per-state survivor log-likelihoods of the trellis, for
/// checking the dominance property against exhaustive enumeration. State
/// indices pack the overlap pattern's letters as base-4 digits x + 2z with
/// the earliest qubit in the highest position.
pub fn survivor_logliks(
    c: &CodeSpec,
    ch: &ChannelModel,
    s: &SyndromeStream,
) -> Result<Vec<Vec<Option<f64>>>, DecoderError> {
    let dp = run_dp(c, ch, s, &mut None)?;
    Ok(dp
        .steps
        .iter()
        .map(|row| row.iter().map(|sv| sv.as_ref().map(|sv| sv.ll)).collect())
        .collect())
}

fn letter_counts(v: &SymplecticVec) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for q in 0..v.n_qubits() {
        counts[count_index(v.letter_at(q))] += 1;
    }
    counts
}

fn lex_less(a: &SymplecticVec, b: &SymplecticVec) -> bool {
    for q in 0..a.n_qubits() {
        let (da, db) = (digit_of(a.letter_at(q)), digit_of(b.letter_at(q)));
        if da != db {
            return da < db;
        }
    }
    false
}

/// Exhaustive maximum-likelihood search, used as the decoding oracle.
///
/// One compatible error is found by linear algebra; adding every
/// combination of the syndrome map's kernel then walks the entire set of
/// compatible errors, so the returned maximum is global. The tie-break
/// matches [`viterbi_decode`]'s deterministic default exactly.
pub fn brute_force_ml(
    c: &CodeSpec,
    ch: &ChannelModel,
    s: &SyndromeStream,
    q: usize,
) -> Result<DecodeResult, DecoderError> {
    check_inputs(c, s)?;
    if s.blocks() != q {
        return Err(DecoderError::BlockCountMismatch {
            expected: q,
            got: s.blocks(),
        });
    }
    let n_qubits = c.n() * q + c.m();
    let mut rows = Vec::with_capacity(q * c.gen_count());
    let mut rhs = Vec::with_capacity(q * c.gen_count());
    for j in 0..q {
        for (i, gen) in c.gens().iter().enumerate() {
            let expanded = gen
                .expand(j, n_qubits)
                .expect("generator shifts below q fit in the window");
            rows.push(expanded.to_partner_row());
            rhs.push(s.anticommutes(j, i));
        }
    }
    let seed_row = if rows.is_empty() {
        BitRow::zero(2 * n_qubits)
    } else {
        gf2_solve(&rows, &rhs).ok_or(DecoderError::Infeasible)?
    };
    let kernel = gf2_nullspace(&rows, 2 * n_qubits);
    if kernel.len() > MAX_COSET_DIM {
        return Err(DecoderError::CosetTooLarge {
            dim: kernel.len(),
            limit: MAX_COSET_DIM,
        });
    }
    // Letters each kernel vector toggles, for cheap incremental updates.
    let toggles: Vec<Vec<(usize, bool, bool)>> = kernel
        .iter()
        .map(|row| {
            let v = SymplecticVec::from_bit_row(row, n_qubits);
            (0..n_qubits)
                .filter(|&qb| v.x(qb) | v.z(qb))
                .map(|qb| (qb, v.x(qb), v.z(qb)))
                .collect()
        })
        .collect();

    let mut cur = SymplecticVec::from_bit_row(&seed_row, n_qubits);
    let mut counts = letter_counts(&cur);
    let mut best: Option<(f64, SymplecticVec)> = None;
    for step in 0u64..1 << kernel.len() {
        if step > 0 {
            // Gray-code order: exactly one kernel vector toggles per step.
            for &(qb, fx, fz) in &toggles[step.trailing_zeros() as usize] {
                let old = cur.letter_at(qb);
                counts[count_index(old)] -= 1;
                let new = Pauli::from_xz(old.x_bit() ^ fx, old.z_bit() ^ fz);
                counts[count_index(new)] += 1;
                cur.set_letter(qb, new);
            }
        }
        let ll = ch.log_likelihood_of_counts(counts);
        if ll == f64::NEG_INFINITY {
            continue;
        }
        match &mut best {
            None => best = Some((ll, cur.clone())),
            Some((best_ll, best_vec)) => {
                if ll > *best_ll {
                    *best_ll = ll;
                    *best_vec = cur.clone();
                } else if ll == *best_ll && lex_less(&cur, best_vec) {
                    *best_vec = cur.clone();
                }
            }
        }
    }
    let (loglik, vec) = best.ok_or(DecoderError::Infeasible)?;
    let letters: Vec<Pauli> = (0..n_qubits).map(|qb| vec.letter_at(qb)).collect();
    Ok(DecodeResult {
        estimate: PauliString::new(letters, 0),
        loglik,
        per_block_converged: vec![true; q],
        committed_estimate: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalKind {
    X,
    Z,
}

impl fmt::Display for LogicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicalKind::X => write!(f, "xbar"),
            LogicalKind::Z => write!(f, "zbar"),
        }
    }
}

/// One logical operator the residual fails to commute with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicalViolation {
    pub kind: LogicalKind,
    pub row: usize,
    /// Absolute block shift of the violated operator.
    pub shift: usize,
}

impl fmt::Display for LogicalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] at shift {}", self.kind, self.row, self.shift)
    }
}

/// Outcome of comparing an estimate against the true error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub violations: Vec<LogicalViolation>,
    /// True when the code is catastrophic: phase-flip logicals do not
    /// exist, so only bit-flip logicals were checked.
    pub xbar_only: bool,
}

impl ResidualReport {
    /// The residual is a stabilizer element as far as the window can tell:
    /// correcting with the estimate leaves the encoded content intact.
    pub fn is_success(&self) -> bool {
        self.violations.is_empty()
    }
}

fn dense_vec(e: &PauliString, n_qubits: usize) -> Result<SymplecticVec, DecoderError> {
    if e.support_end() > n_qubits {
        return Err(DecoderError::SupportOverflow {
            needed: e.support_end(),
            available: n_qubits,
        });
    }
    let mut v = SymplecticVec::zero(n_qubits);
    for (pos, &letter) in e.ops().iter().enumerate() {
        v.set_letter(e.offset() + pos, letter);
    }
    Ok(v)
}

/// Decide whether the decoding succeeded: the residual est * truth must
/// commute with every in-window shift of every logical operator, with
/// shifts starting where the first protected block starts. A residual that
/// anticommutes with some logical has applied that logical's conjugate
/// partner to the encoded data.
pub fn classify_residual(
    est: &PauliString,
    truth: &PauliString,
    c: &CodeSpec,
    lo: &LogicalOps,
    q: usize,
) -> Result<ResidualReport, DecoderError> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(DecoderError::Invalid(report));
    }
    let n_qubits = c.n() * q + c.m();
    let est_vec = dense_vec(est, n_qubits)?;
    let truth_vec = dense_vec(truth, n_qubits)?;
    if extract_syndromes(c, est, q)? != extract_syndromes(c, truth, q)? {
        return Err(DecoderError::SyndromeMismatch);
    }
    let mut residual = est_vec;
    residual.xor_assign(&truth_vec);

    let mut violations = Vec::new();
    let z_rows = lo.zbar().unwrap_or(&[]);
    for (kind, rows) in [(LogicalKind::X, lo.xbar()), (LogicalKind::Z, z_rows)] {
        for (r, row) in rows.iter().enumerate() {
            for s in 0..q {
                let shift = s + lo.lambda();
                let Ok(expanded) = row.expand(shift, n_qubits) else {
                    break;
                };
                if expanded.symplectic_dot(&residual) {
                    violations.push(LogicalViolation {
                        kind,
                        row: r,
                        shift,
                    });
                }
            }
        }
    }
    Ok(ResidualReport {
        violations,
        xbar_only: lo.zbar().is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{depolarizing, log_likelihood, parse_syndromes, sample_error_with};
    use crate::code::five_qubit_stream_code;
    use crate::structure::{derive_logicals, standard_form};

    fn trivial_stream(c: &CodeSpec, q: usize) -> SyndromeStream {
        SyndromeStream::new(q, c.gen_count(), vec![false; q * c.gen_count()])
    }

    /// Direct enumeration over all 4^N patterns, the oracle's oracle.
    fn enumerate_ml(
        c: &CodeSpec,
        ch: &ChannelModel,
        s: &SyndromeStream,
        q: usize,
        require_identity_tail: bool,
    ) -> Option<(f64, PauliString)> {
        let n_qubits = c.n() * q + c.m();
        assert!(n_qubits <= 9, "direct enumeration is for tiny instances");
        let mut gen_rows = Vec::new();
        for j in 0..q {
            for gen in c.gens() {
                gen_rows.push(gen.expand(j, n_qubits).unwrap());
            }
        }
        let mut best: Option<(f64, u64)> = None;
        'cand: for code in 0u64..1 << (2 * n_qubits) {
            let mut v = SymplecticVec::zero(n_qubits);
            for qb in 0..n_qubits {
                v.set_letter(
                    qb,
                    pauli_of_digit((code >> (2 * (n_qubits - 1 - qb))) as u32 & 3),
                );
            }
            if require_identity_tail {
                for qb in n_qubits - c.m()..n_qubits {
                    if v.letter_at(qb) != Pauli::I {
                        continue 'cand;
                    }
                }
            }
            for (row_idx, row) in gen_rows.iter().enumerate() {
                let (j, i) = (row_idx / c.gen_count(), row_idx % c.gen_count());
                if row.symplectic_dot(&v) != s.anticommutes(j, i) {
                    continue 'cand;
                }
            }
            let ll = ch.log_likelihood_of_counts(letter_counts(&v));
            if ll == f64::NEG_INFINITY {
                continue;
            }
            // Ascending codes are ascending letter sequences, so keeping
            // only strict improvements leaves the smallest maximizer.
            if best.is_none() || ll > best.unwrap().0 {
                best = Some((ll, code));
            }
        }
        best.map(|(ll, code)| {
            let letters = (0..n_qubits)
                .map(|qb| pauli_of_digit((code >> (2 * (n_qubits - 1 - qb))) as u32 & 3))
                .collect();
            (ll, PauliString::new(letters, 0))
        })
    }

    #[test]
    fn trivial_syndromes_decode_to_identity() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.05).unwrap();
        let s = trivial_stream(&c, 3);
        let result = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        assert!(result.estimate.is_identity());
        assert_eq!(result.loglik, ch.log_likelihood_of_counts([17, 0, 0, 0]));
        assert_eq!(result.per_block_converged, vec![true; 3]);
        assert!(result.committed_estimate.is_none());

        let oracle = brute_force_ml(&c, &ch, &s, 3).unwrap();
        assert!(oracle.estimate.is_identity());
        assert_eq!(oracle.loglik, result.loglik);
    }

    #[test]
    fn single_error_is_recovered_exactly() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.05).unwrap();
        let truth: PauliString = "IX".parse().unwrap();
        let s = extract_syndromes(&c, &truth, 2).unwrap();
        let result = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        let oracle = brute_force_ml(&c, &ch, &s, 2).unwrap();
        assert_eq!(result.loglik, oracle.loglik);
        assert_eq!(result.estimate, oracle.estimate);
        // X on qubit 1 and X on qubit 4 are indistinguishable inside this
        // window; the decoder picks the lexicographically smaller twin.
        assert_eq!(result.estimate.to_string(), "IIIIX");
        assert_eq!(result.loglik, log_likelihood(&ch, &truth, 12).unwrap());
        assert_eq!(extract_syndromes(&c, &result.estimate, 2).unwrap(), s);
    }

    #[test]
    fn reported_loglik_matches_channel_scoring() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        let truth: PauliString = "ZIYIIIXI".parse().unwrap();
        let s = extract_syndromes(&c, &truth, 2).unwrap();
        let result = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        let rescored = log_likelihood(&ch, &result.estimate, 12).unwrap();
        assert_eq!(result.loglik, rescored);
    }

    #[test]
    fn random_trials_match_the_oracle() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for _ in 0..200 {
            let truth = sample_error_with(&ch, 12, &mut rng);
            let s = extract_syndromes(&c, &truth, 2).unwrap();
            let trellis = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
            let oracle = brute_force_ml(&c, &ch, &s, 2).unwrap();
            assert_eq!(trellis.loglik, oracle.loglik);
            assert_eq!(trellis.estimate, oracle.estimate);
            assert!(trellis.loglik >= log_likelihood(&ch, &truth, 12).unwrap());
            assert_eq!(extract_syndromes(&c, &trellis.estimate, 2).unwrap(), s);
        }
    }

    #[test]
    fn coset_search_equals_direct_enumeration() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..25 {
            let truth = sample_error_with(&ch, 7, &mut rng);
            let s = extract_syndromes(&c, &truth, 1).unwrap();
            let coset = brute_force_ml(&c, &ch, &s, 1).unwrap();
            let (ll, estimate) = enumerate_ml(&c, &ch, &s, 1, false).unwrap();
            assert_eq!(coset.loglik, ll);
            assert_eq!(coset.estimate, estimate);
        }
    }

    #[test]
    fn survivors_dominate_every_enumerated_prefix() {
        // One-block window: each surviving candidate must reach the maximum
        // likelihood among all patterns sharing its overlap, for all 16
        // possible syndrome blocks.
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        for bits in 0..16u16 {
            let anti: Vec<bool> = (0..4).map(|i| bits & (1 << i) != 0).collect();
            let s = SyndromeStream::new(1, 4, anti);
            let survivors = survivor_logliks(&c, &ch, &s).unwrap();
            let mut best = [f64::NEG_INFINITY; 16];
            for code in 0u32..1 << 14 {
                let mut v = SymplecticVec::zero(7);
                for qb in 0..7 {
                    v.set_letter(qb, pauli_of_digit((code >> (2 * (6 - qb))) & 3));
                }
                let compatible = (0..4).all(|i| {
                    c.gens()[i].expand(0, 7).unwrap().symplectic_dot(&v) == s.anticommutes(0, i)
                });
                if !compatible {
                    continue;
                }
                let state = (code & 0b1111) as usize;
                let ll = ch.log_likelihood_of_counts(letter_counts(&v));
                if ll > best[state] {
                    best[state] = ll;
                }
            }
            for state in 0..16 {
                match survivors[0][state] {
                    Some(ll) => assert_eq!(ll, best[state]),
                    None => assert_eq!(best[state], f64::NEG_INFINITY),
                }
            }
        }
    }

    #[test]
    fn impossible_streams_are_rejected() {
        let c = five_qubit_stream_code();
        let quiet = depolarizing(0.0).unwrap();
        let mut anti = vec![false; 8];
        anti[1] = true;
        let s = SyndromeStream::new(2, 4, anti);
        assert_eq!(
            viterbi_decode(&c, &quiet, &s, &DecodeOptions::default()),
            Err(DecoderError::Infeasible)
        );
        assert_eq!(
            brute_force_ml(&c, &quiet, &s, 2),
            Err(DecoderError::Infeasible)
        );
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        let narrow = parse_syndromes("+-+\n", 3).unwrap();
        assert!(matches!(
            viterbi_decode(&c, &ch, &narrow, &DecodeOptions::default()),
            Err(DecoderError::StreamWidthMismatch {
                expected: 4,
                got: 3
            })
        ));
        let s = trivial_stream(&c, 2);
        assert!(matches!(
            brute_force_ml(&c, &ch, &s, 3),
            Err(DecoderError::BlockCountMismatch {
                expected: 3,
                got: 2
            })
        ));
        let empty = SyndromeStream::new(0, 4, vec![]);
        assert!(matches!(
            viterbi_decode(&c, &ch, &empty, &DecodeOptions::default()),
            Err(DecoderError::EmptyStream)
        ));
    }

    #[test]
    fn truncated_traceback_reports_agreement() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.05).unwrap();
        let truth: PauliString = "IIIIIIIZ".parse().unwrap();
        let s = extract_syndromes(&c, &truth, 5).unwrap();
        let full = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        let truncated = viterbi_decode(
            &c,
            &ch,
            &s,
            &DecodeOptions {
                traceback_depth: Some(2),
                ..DecodeOptions::default()
            },
        )
        .unwrap();
        assert_eq!(truncated.estimate, full.estimate);
        assert_eq!(truncated.per_block_converged.len(), 5);
        let committed = truncated.committed_estimate.expect("depth was requested");
        assert_eq!(committed, full.estimate);
        assert!(truncated.per_block_converged.iter().all(|&ok| ok));
    }

    #[test]
    fn terminated_mode_forces_an_identity_tail() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            // Keep the true error off the tail qubits so termination holds.
            let head = sample_error_with(&ch, 5, &mut rng);
            let s = extract_syndromes(&c, &head, 1).unwrap();
            let opts = DecodeOptions {
                terminated: true,
                ..DecodeOptions::default()
            };
            let result = viterbi_decode(&c, &ch, &s, &opts).unwrap();
            for qb in 5..7 {
                assert_eq!(result.estimate.letter_at(qb), Pauli::I);
            }
            let (ll, estimate) = enumerate_ml(&c, &ch, &s, 1, true).unwrap();
            assert_eq!(result.loglik, ll);
            assert_eq!(result.estimate, estimate);
        }
    }

    #[test]
    fn random_tie_break_is_reproducible() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.1).unwrap();
        let truth: PauliString = "IIIIIXII".parse().unwrap();
        let s = extract_syndromes(&c, &truth, 2).unwrap();
        let opts = DecodeOptions {
            tie_break: TieBreak::Random { seed: 5150 },
            ..DecodeOptions::default()
        };
        let a = viterbi_decode(&c, &ch, &s, &opts).unwrap();
        let b = viterbi_decode(&c, &ch, &s, &opts).unwrap();
        assert_eq!(a.estimate, b.estimate);
        let lex = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        assert_eq!(a.loglik, lex.loglik);
        assert_eq!(extract_syndromes(&c, &a.estimate, 2).unwrap(), s);
    }

    #[test]
    fn residual_classification_distinguishes_the_three_cases() {
        let c = five_qubit_stream_code();
        let sf = standard_form(&c).unwrap();
        let lo = derive_logicals(&sf).unwrap();
        let q = 3;
        let n_qubits = 17;

        let truth: PauliString = "IIXZ".parse().unwrap();
        let report = classify_residual(&truth, &truth, &c, &lo, q).unwrap();
        assert!(report.is_success());
        assert!(!report.xbar_only);

        // Residual equal to a stabilizer generator: still a success.
        let gen_row = c.gens()[0].expand(1, n_qubits).unwrap();
        let letters: Vec<Pauli> = (0..n_qubits).map(|qb| gen_row.letter_at(qb)).collect();
        let est = PauliString::new(letters, 0);
        let identity = PauliString::identity();
        let report = classify_residual(&est, &identity, &c, &lo, q).unwrap();
        assert!(report.is_success());

        // Residual equal to a bit-flip logical: caught by its phase-flip
        // partner at the same shift.
        let xbar_row = lo.xbar()[0].expand(lo.lambda(), n_qubits).unwrap();
        let letters: Vec<Pauli> = (0..n_qubits).map(|qb| xbar_row.letter_at(qb)).collect();
        let est = PauliString::new(letters, 0);
        let report = classify_residual(&est, &identity, &c, &lo, q).unwrap();
        assert!(!report.is_success());
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == LogicalKind::Z && v.row == 0 && v.shift == lo.lambda()));
    }

    #[test]
    fn classification_requires_matching_syndromes() {
        let c = five_qubit_stream_code();
        let sf = standard_form(&c).unwrap();
        let lo = derive_logicals(&sf).unwrap();
        let est: PauliString = "XIII".parse().unwrap();
        let truth = PauliString::identity();
        assert_eq!(
            classify_residual(&est, &truth, &c, &lo, 2),
            Err(DecoderError::SyndromeMismatch)
        );
    }

    #[test]
    fn catastrophic_codes_classify_bit_flips_only() {
        let c = CodeSpec::from_strings(2, 1, 2, &["ZZZI"]).unwrap();
        let sf = standard_form(&c).unwrap();
        let lo = derive_logicals(&sf).unwrap();
        assert!(lo.zbar().is_none());
        let truth: PauliString = "IXX".parse().unwrap();
        let report = classify_residual(&truth, &truth, &c, &lo, 3).unwrap();
        assert!(report.is_success());
        assert!(report.xbar_only);
    }

    #[test]
    fn transition_groups_match_naive_symplectic_filtering() {
        for c in [
            five_qubit_stream_code(),
            CodeSpec::from_strings(2, 1, 2, &["ZZZI"]).unwrap(),
        ] {
            let ch = depolarizing(0.1).unwrap();
            let cache = TransitionCache::build(&c, ch).unwrap();
            let (n, m) = (c.n(), c.m());
            let span = n + m;
            let rows: Vec<SymplecticVec> = c
                .gens()
                .iter()
                .map(|g| g.expand(0, span).unwrap())
                .collect();
            for head in 0..1u32 << (2 * m) {
                for t in 0..1u32 << (2 * n) {
                    let mut v = SymplecticVec::zero(span);
                    for qb in 0..m {
                        v.set_letter(qb, pauli_of_digit((head >> (2 * (m - 1 - qb))) & 3));
                    }
                    for qb in 0..n {
                        v.set_letter(m + qb, pauli_of_digit((t >> (2 * (n - 1 - qb))) & 3));
                    }
                    let mut bits = 0u16;
                    for (i, row) in rows.iter().enumerate() {
                        if row.symplectic_dot(&v) {
                            bits |= 1 << i;
                        }
                    }
                    let sigma = bits ^ cache.overlap_syn[head as usize];
                    assert!(cache.groups[sigma as usize].contains(&t));
                }
            }
            let grouped: usize = cache.groups.iter().map(Vec::len).sum();
            assert_eq!(grouped, 1 << (2 * n));
        }
    }

    #[test]
    fn full_rate_codes_decode_to_identity() {
        // No generators means no syndromes: the decoder must fall back to
        // the channel's most likely pattern on its own.
        let c = CodeSpec::from_strings(2, 2, 0, &[]).unwrap();
        let ch = depolarizing(0.2).unwrap();
        let s = SyndromeStream::new(3, 0, vec![]);
        let result = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        assert!(result.estimate.is_identity());
        let oracle = brute_force_ml(&c, &ch, &s, 3).unwrap();
        assert!(oracle.estimate.is_identity());
        assert_eq!(result.loglik, oracle.loglik);
    }

    #[test]
    fn minimum_weight_estimate_for_a_single_syndrome_bit() {
        let c = five_qubit_stream_code();
        let ch = depolarizing(0.05).unwrap();
        let mut anti = vec![false; 4];
        anti[1] = true;
        let s = SyndromeStream::new(1, 4, anti);
        let result = brute_force_ml(&c, &ch, &s, 1).unwrap();
        // Depolarizing likelihood is monotone in weight below mixing, so
        // the most likely compatible error is a minimum-weight one.
        let weight = result
            .estimate
            .ops()
            .iter()
            .filter(|&&p| p != Pauli::I)
            .count();
        assert_eq!(weight, 1);
        assert_eq!(extract_syndromes(&c, &result.estimate, 1).unwrap(), s);
        let trellis = viterbi_decode(&c, &ch, &s, &DecodeOptions::default()).unwrap();
        assert_eq!(trellis.estimate, result.estimate);
    }
}
