//! Clifford circuits for streaming encoders, plus a stabilizer tableau
//! engine used to check that a generated circuit really prepares the code
//! subspace.
//!
//! The encoder works block by block: info qubits are spread into logical
//! bit-flip operators by controlled Paulis, and each generator row with an
//! X part is projected in with a Hadamard on its pivot qubit followed by
//! controlled Paulis onto the rest of its support. Gate emission is
//! interleaved so that every gate touching block b appears before any gate
//! touching block b + lambda + 2, which is what makes the circuit usable on
//! an unbounded stream.

use std::collections::BTreeMap;
use std::fmt;

use crate::code::CodeSpec;
use crate::pauli::{gf2_express, hermitian_product, BitRow, Pauli, PauliPoly, SymplecticVec};
use crate::structure::{
    standard_form, unpermute_columns, LogicalOps, StandardForm, StructureError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitError {
    /// Encoders need at least one info block.
    ZeroBlocks,
    /// The standard form could not be diagonalized, so no pivot structure
    /// exists to build the circuit from.
    NotDiagonal,
    /// A gate references a qubit outside the register.
    QubitOutOfRange {
        qubit: usize,
        n_qubits: usize,
    },
    /// A gate is malformed (identity controlled-Pauli, control == target).
    BadGate {
        index: usize,
        msg: String,
    },
    Syntax {
        line: usize,
        msg: String,
    },
    Structure(StructureError),
}

impl fmt::Display for CircuitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitError::ZeroBlocks => write!(f, "encoder needs at least one info block"),
            CircuitError::NotDiagonal => {
                write!(
                    f,
                    "standard form is not diagonal; cannot synthesize an encoder"
                )
            }
            CircuitError::QubitOutOfRange { qubit, n_qubits } => {
                write!(
                    f,
                    "qubit {} out of range for {} qubits",
                    qubit + 1,
                    n_qubits
                )
            }
            CircuitError::BadGate { index, msg } => write!(f, "gate {}: {}", index + 1, msg),
            CircuitError::Syntax { line, msg } => write!(f, "line {}: {}", line, msg),
            CircuitError::Structure(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CircuitError {}

impl From<StructureError> for CircuitError {
    fn from(e: StructureError) -> CircuitError {
        CircuitError::Structure(e)
    }
}

/// One Clifford gate. Qubit indices are 0-based in memory; the text format
/// writes them 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Z(usize),
    /// Controlled Pauli; `letter` is X, Y or Z, never I.
    Cp {
        control: usize,
        target: usize,
        letter: Pauli,
    },
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => (q, None),
            Gate::Cp {
                control, target, ..
            } => (control, Some(target)),
        }
    }

    fn check(&self, index: usize, n_qubits: usize) -> Result<(), CircuitError> {
        let (a, b) = self.qubits();
        for q in [Some(a), b].into_iter().flatten() {
            if q >= n_qubits {
                return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if let Gate::Cp {
            control,
            target,
            letter,
        } = *self
        {
            if control == target {
                return Err(CircuitError::BadGate {
                    index,
                    msg: "controlled gate with control == target".into(),
                });
            }
            if letter == Pauli::I {
                return Err(CircuitError::BadGate {
                    index,
                    msg: "controlled identity".into(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {}", q + 1),
            Gate::S(q) => write!(f, "S {}", q + 1),
            Gate::X(q) => write!(f, "X {}", q + 1),
            Gate::Z(q) => write!(f, "Z {}", q + 1),
            Gate::Cp {
                control,
                target,
                letter,
            } => {
                write!(f, "C{} {} {}", letter.letter(), control + 1, target + 1)
            }
        }
    }
}

/// An ordered gate list on a fixed register. Encoders produced by
/// [`build_encoder`] also carry the info-qubit layout: `layout[(s, r)]` is
/// the physical qubit holding logical qubit r of info block s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    layout: BTreeMap<(usize, usize), usize>,
    block_count: usize,
}

impl Circuit {
    /// A bare circuit without encoder metadata (layout empty, block count
    /// zero). Gate indices are validated against the register size.
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        for (i, g) in gates.iter().enumerate() {
            g.check(i, n_qubits)?;
        }
        Ok(Circuit {
            n_qubits,
            gates,
            layout: BTreeMap::new(),
            block_count: 0,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn layout(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.layout
    }

    /// Number of n-qubit blocks in the register; 0 for circuits that were
    /// not produced by the encoder synthesizer.
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parse the one-gate-per-line text format: a `qubits N` header followed by
/// lines like `H 3`, `S 2`, `CZ 5 2`, `CX 5 7`. Indices are 1-based; blank
/// lines and `#` comments are skipped.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut n_qubits: Option<usize> = None;
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let head = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        let parse_qubit = |w: &str| -> Result<usize, CircuitError> {
            let v: usize = w.parse().map_err(|_| CircuitError::Syntax {
                line,
                msg: format!("bad qubit index {:?}", w),
            })?;
            let n = n_qubits.expect("header parsed before gates");
            if v == 0 || v > n {
                return Err(CircuitError::Syntax {
                    line,
                    msg: format!("qubit {} out of range 1..{}", v, n),
                });
            }
            Ok(v - 1)
        };
        if n_qubits.is_none() {
            if head != "qubits" || args.len() != 1 {
                return Err(CircuitError::Syntax {
                    line,
                    msg: "expected header `qubits N`".into(),
                });
            }
            let n: usize = args[0].parse().map_err(|_| CircuitError::Syntax {
                line,
                msg: format!("bad qubit count {:?}", args[0]),
            })?;
            n_qubits = Some(n);
            continue;
        }
        let one = |args: &[&str]| -> Result<usize, CircuitError> {
            if args.len() != 1 {
                return Err(CircuitError::Syntax {
                    line,
                    msg: "expected one qubit index".into(),
                });
            }
            parse_qubit(args[0])
        };
        let two = |args: &[&str]| -> Result<(usize, usize), CircuitError> {
            if args.len() != 2 {
                return Err(CircuitError::Syntax {
                    line,
                    msg: "expected two qubit indices".into(),
                });
            }
            let c = parse_qubit(args[0])?;
            let t = parse_qubit(args[1])?;
            if c == t {
                return Err(CircuitError::Syntax {
                    line,
                    msg: "control and target must differ".into(),
                });
            }
            Ok((c, t))
        };
        let gate = match head {
            "H" => Gate::H(one(&args)?),
            "S" => Gate::S(one(&args)?),
            "X" => Gate::X(one(&args)?),
            "Z" => Gate::Z(one(&args)?),
            "CX" | "CY" | "CZ" => {
                let (control, target) = two(&args)?;
                let letter = match head {
                    "CX" => Pauli::X,
                    "CY" => Pauli::Y,
                    _ => Pauli::Z,
                };
                Gate::Cp {
                    control,
                    target,
                    letter,
                }
            }
            other => {
                return Err(CircuitError::Syntax {
                    line,
                    msg: format!("unknown gate {:?}", other),
                })
            }
        };
        gates.push(gate);
    }
    match n_qubits {
        Some(n) => Circuit::new(n, gates),
        None => Err(CircuitError::Syntax {
            line: 1,
            msg: "missing `qubits N` header".into(),
        }),
    }
}

/// Stabilizer tableau: rows 0..N are the images of X_q under the circuit
/// applied so far, rows N..2N the images of Z_q, each with a sign.
#[derive(Clone, Debug)]
pub struct Tableau {
    n_qubits: usize,
    rows: Vec<SymplecticVec>,
    negative: Vec<bool>,
}

impl Tableau {
    pub fn new(n_qubits: usize) -> Tableau {
        let mut rows = Vec::with_capacity(2 * n_qubits);
        for q in 0..n_qubits {
            let mut v = SymplecticVec::zero(n_qubits);
            v.set_x(q, true);
            rows.push(v);
        }
        for q in 0..n_qubits {
            let mut v = SymplecticVec::zero(n_qubits);
            v.set_z(q, true);
            rows.push(v);
        }
        Tableau {
            n_qubits,
            rows,
            negative: vec![false; 2 * n_qubits],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Image of X on qubit q under the gates applied so far.
    pub fn x_image(&self, q: usize) -> (&SymplecticVec, bool) {
        (&self.rows[q], self.negative[q])
    }

    /// Image of Z on qubit q under the gates applied so far.
    pub fn z_image(&self, q: usize) -> (&SymplecticVec, bool) {
        (
            &self.rows[self.n_qubits + q],
            self.negative[self.n_qubits + q],
        )
    }

    fn h(&mut self, q: usize) {
        for (row, neg) in self.rows.iter_mut().zip(self.negative.iter_mut()) {
            let (x, z) = (row.x(q), row.z(q));
            *neg ^= x && z;
            row.set_x(q, z);
            row.set_z(q, x);
        }
    }

    fn s(&mut self, q: usize) {
        for (row, neg) in self.rows.iter_mut().zip(self.negative.iter_mut()) {
            let (x, z) = (row.x(q), row.z(q));
            *neg ^= x && z;
            row.set_z(q, z ^ x);
        }
    }

    fn x(&mut self, q: usize) {
        for (row, neg) in self.rows.iter_mut().zip(self.negative.iter_mut()) {
            *neg ^= row.z(q);
        }
    }

    fn z(&mut self, q: usize) {
        for (row, neg) in self.rows.iter_mut().zip(self.negative.iter_mut()) {
            *neg ^= row.x(q);
        }
    }

    fn cx(&mut self, c: usize, t: usize) {
        for (row, neg) in self.rows.iter_mut().zip(self.negative.iter_mut()) {
            let (xc, zc) = (row.x(c), row.z(c));
            let (xt, zt) = (row.x(t), row.z(t));
            *neg ^= xc && zt && (xt == zc);
            row.set_x(t, xt ^ xc);
            row.set_z(c, zc ^ zt);
        }
    }

    /// Conjugate every row by the gate.
    pub fn apply(&mut self, g: Gate) -> Result<(), CircuitError> {
        g.check(0, self.n_qubits).map_err(|_| {
            let (a, b) = g.qubits();
            let q = [Some(a), b]
                .into_iter()
                .flatten()
                .find(|&q| q >= self.n_qubits);
            CircuitError::QubitOutOfRange {
                qubit: q.unwrap_or(a),
                n_qubits: self.n_qubits,
            }
        })?;
        match g {
            Gate::H(q) => self.h(q),
            Gate::S(q) => self.s(q),
            Gate::X(q) => self.x(q),
            Gate::Z(q) => self.z(q),
            Gate::Cp {
                control,
                target,
                letter,
            } => match letter {
                Pauli::X => self.cx(control, target),
                Pauli::Z => {
                    // CZ = H_t CX H_t
                    self.h(target);
                    self.cx(control, target);
                    self.h(target);
                }
                Pauli::Y => {
                    // CY = S_t CX S_t^3 in matrix order, so the circuit
                    // applies S three times, CX, then S
                    self.s(target);
                    self.s(target);
                    self.s(target);
                    self.cx(control, target);
                    self.s(target);
                }
                Pauli::I => unreachable!("validated by Gate::check"),
            },
        }
        Ok(())
    }

    /// Run a whole circuit from the identity tableau.
    pub fn run(circ: &Circuit) -> Result<Tableau, CircuitError> {
        let mut t = Tableau::new(circ.n_qubits());
        for g in circ.gates() {
            t.apply(*g)?;
        }
        Ok(t)
    }

    /// The defining property of a tableau: X-row i anticommutes with Z-row
    /// i and commutes with everything else.
    pub fn symplectic_pairs_ok(&self) -> bool {
        let n = self.n_qubits;
        for i in 0..2 * n {
            for j in i..2 * n {
                let want = j == i + n && i < n;
                if self.rows[i].symplectic_dot(&self.rows[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

struct EmitUnit {
    time: usize,
    stage: u8,
    gates: Vec<Gate>,
}

/// Synthesize the streaming encoder for q info blocks.
///
/// The register holds `q + lambda + overlap` blocks of n qubits (grown when
/// a logical operator's tail reaches further). Info qubit (s, r) sits at
/// the X pivot of bit-flip logical r delayed by s + lambda blocks; every
/// other qubit starts in |0>. Two gate families are emitted, interleaved in
/// block order so the result is streamable:
///
/// - per info block s, the controlled rest of each bit-flip logical,
///   controlled on its info qubit;
/// - per generator block j, for each standard-form row with an X part: H on
///   the row's pivot qubit (S after it when the row carries Y there, Z when
///   the row's sign is negative), then the controlled rest of the row.
///
/// Rows without an X part fix |0> ancillas already and emit nothing. With
/// `simplify`, Z-type gates whose target provably still holds |0> are
/// dropped.
pub fn build_encoder(
    c: &CodeSpec,
    sf: &StandardForm,
    lo: &LogicalOps,
    q: usize,
    simplify: bool,
) -> Result<Circuit, CircuitError> {
    if q == 0 {
        return Err(CircuitError::ZeroBlocks);
    }
    if !sf.diagonal_ok() {
        return Err(CircuitError::NotDiagonal);
    }
    let (n, k) = (c.n(), c.k());
    let lambda = lo.lambda();

    let xbars: Vec<PauliPoly> = lo
        .xbar()
        .iter()
        .map(|p| unpermute_columns(p, sf.col_perm()))
        .collect();
    let pivot_block: Vec<usize> = (0..k)
        .map(|r| {
            lo.xbar()[r]
                .x(n - k + r)
                .degree()
                .expect("bit-flip logical has an X factor on its own column")
        })
        .collect();

    let mut block_count = q + lambda + c.overlap_blocks();
    for xb in &xbars {
        block_count = block_count.max(q + lambda + xb.max_block_degree().unwrap_or(0));
    }
    let n_qubits = n * block_count;

    let mut layout = BTreeMap::new();
    for s in 0..q {
        for r in 0..k {
            let col = sf.col_perm()[n - k + r];
            layout.insert((s, r), (s + lambda + pivot_block[r]) * n + col);
        }
    }

    let mut units: Vec<EmitUnit> = Vec::new();
    for s in 0..q {
        let mut gates = Vec::new();
        for r in 0..k {
            let control = layout[&(s, r)];
            let dense = xbars[r]
                .expand(s + lambda, n_qubits)
                .expect("register sized to fit every delayed logical");
            debug_assert_eq!(dense.letter_at(control), Pauli::X);
            for t in 0..n_qubits {
                let letter = dense.letter_at(t);
                if t != control && letter != Pauli::I {
                    gates.push(Gate::Cp {
                        control,
                        target: t,
                        letter,
                    });
                }
            }
        }
        units.push(EmitUnit {
            time: s + lambda,
            stage: 0,
            gates,
        });
    }

    let rank = sf.r();
    let pivot_deg: Vec<usize> = (0..rank)
        .map(|i| {
            sf.x_mat()
                .at(i, i)
                .degree()
                .expect("diagonal pivot is nonzero")
        })
        .collect();
    let d_max = pivot_deg.iter().copied().max().unwrap_or(0);
    let std_rows: Vec<PauliPoly> = (0..rank)
        .map(|i| unpermute_columns(&sf.row(i), sf.col_perm()))
        .collect();
    for j in 0.. {
        let mut gates = Vec::new();
        let mut any = false;
        for i in 0..rank {
            let Ok(dense) = std_rows[i].expand(j, n_qubits) else {
                continue;
            };
            any = true;
            let control = (j + pivot_deg[i]) * n + sf.col_perm()[i];
            let letter = dense.letter_at(control);
            debug_assert!(letter == Pauli::X || letter == Pauli::Y);
            gates.push(Gate::H(control));
            if letter == Pauli::Y {
                gates.push(Gate::S(control));
            }
            if sf.row_negative()[i] {
                gates.push(Gate::Z(control));
            }
            for t in 0..n_qubits {
                let w = dense.letter_at(t);
                if t != control && w != Pauli::I {
                    gates.push(Gate::Cp {
                        control,
                        target: t,
                        letter: w,
                    });
                }
            }
        }
        if !any {
            break;
        }
        units.push(EmitUnit {
            time: j + d_max,
            stage: 1,
            gates,
        });
    }

    units.sort_by_key(|u| (u.time, u.stage));
    let mut gates: Vec<Gate> = units.into_iter().flat_map(|u| u.gates).collect();
    if simplify {
        gates = drop_gates_on_zero_targets(gates, n_qubits, &layout);
    }
    Ok(Circuit {
        n_qubits,
        gates,
        layout,
        block_count,
    })
}

/// Forward scan deleting Z-type gates whose target qubit is still provably
/// |0> (such gates act as the identity there). A qubit stops being provably
/// zero once an H, X, or controlled X/Y touches it.
fn drop_gates_on_zero_targets(
    gates: Vec<Gate>,
    n_qubits: usize,
    layout: &BTreeMap<(usize, usize), usize>,
) -> Vec<Gate> {
    let mut zero = vec![true; n_qubits];
    for &q in layout.values() {
        zero[q] = false;
    }
    let mut out = Vec::with_capacity(gates.len());
    for g in gates {
        let keep = match g {
            Gate::Z(q) => !zero[q],
            Gate::Cp {
                target,
                letter: Pauli::Z,
                ..
            } => !zero[target],
            _ => true,
        };
        if !keep {
            continue;
        }
        match g {
            Gate::H(q) | Gate::X(q) => zero[q] = false,
            Gate::Cp {
                target,
                letter: Pauli::X | Pauli::Y,
                ..
            } => zero[target] = false,
            _ => {}
        }
        out.push(g);
    }
    out
}

/// Outcome of checking an encoder circuit against its code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub generator_checks: usize,
    /// (block shift, generator index) pairs whose generator is missing from
    /// the output stabilizer group or carries the wrong sign.
    pub generator_failures: Vec<(usize, usize)>,
    pub logical_checks: usize,
    /// (info block, logical index) pairs whose conjugated X does not match
    /// the delayed bit-flip logical modulo the stabilizer group.
    pub logical_failures: Vec<(usize, usize)>,
    /// Whether every gate touching block b precedes all gates touching
    /// block b + lambda + 2.
    pub online_ok: bool,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.generator_failures.is_empty() && self.logical_failures.is_empty() && self.online_ok
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, i) in &self.generator_failures {
            out.push(format!(
                "generator {} at block shift {} not stabilized",
                i + 1,
                j
            ));
        }
        for (s, r) in &self.logical_failures {
            out.push(format!(
                "logical {} of info block {} acts incorrectly",
                r + 1,
                s
            ));
        }
        if !self.online_ok {
            out.push("gate order violates the block-locality window".into());
        }
        out
    }
}

/// True when `target` (with sign) lies in the abelian group generated by
/// `gens` (each with sign).
fn in_signed_group(
    gens: &[(SymplecticVec, bool)],
    bits: &[BitRow],
    target: &SymplecticVec,
    target_negative: bool,
) -> bool {
    if target.is_zero() {
        return !target_negative;
    }
    let Some(combo) = gf2_express(bits, &target.to_bit_row()) else {
        return false;
    };
    let mut acc: Option<(SymplecticVec, bool)> = None;
    for (selected, (g, g_neg)) in combo.iter().zip(gens) {
        if !selected {
            continue;
        }
        acc = Some(match acc {
            None => (g.clone(), *g_neg),
            Some((v, neg)) => {
                hermitian_product(&v, neg, g, *g_neg).expect("group generators commute")
            }
        });
    }
    match acc {
        Some((v, neg)) => {
            debug_assert_eq!(&v, target);
            neg == target_negative
        }
        None => false,
    }
}

fn online_scan(circ: &Circuit, n: usize, lambda: usize) -> bool {
    let mut seen_max: Option<usize> = None;
    for g in circ.gates() {
        let (a, b) = g.qubits();
        let blocks = [Some(a), b].into_iter().flatten().map(|q| q / n);
        let (mut lo, mut hi) = (usize::MAX, 0);
        for blk in blocks {
            lo = lo.min(blk);
            hi = hi.max(blk);
        }
        if let Some(prev) = seen_max {
            if prev >= lo + lambda + 2 {
                return false;
            }
            seen_max = Some(prev.max(hi));
        } else {
            seen_max = Some(hi);
        }
    }
    true
}

/// Simulate the circuit on |0...0> (info qubits arbitrary) and check that
/// (a) every delayed generator with block shift below q + lambda sits in
/// the output stabilizer group with its declared sign, (b) X on each info
/// qubit conjugates to the matching delayed bit-flip logical modulo that
/// group, and (c) the gate order respects the block-locality window.
pub fn verify_encoder(
    circ: &Circuit,
    c: &CodeSpec,
    lo: &LogicalOps,
    q: usize,
) -> Result<VerifyReport, CircuitError> {
    let sf = standard_form(c)?;
    let n = c.n();
    let lambda = lo.lambda();
    let n_qubits = circ.n_qubits();
    let tab = Tableau::run(circ)?;

    let mut is_info = vec![false; n_qubits];
    for &qb in circ.layout().values() {
        is_info[qb] = true;
    }
    let gens: Vec<(SymplecticVec, bool)> = (0..n_qubits)
        .filter(|&qb| !is_info[qb])
        .map(|qb| {
            let (v, neg) = tab.z_image(qb);
            (v.clone(), neg)
        })
        .collect();
    let bits: Vec<BitRow> = gens.iter().map(|(v, _)| v.to_bit_row()).collect();

    let mut generator_checks = 0;
    let mut generator_failures = Vec::new();
    for j in 0..q + lambda {
        for i in 0..c.gen_count() {
            generator_checks += 1;
            let ok = match c.gens()[i].expand(j, n_qubits) {
                Ok(target) => in_signed_group(&gens, &bits, &target, c.negative()[i]),
                Err(_) => false,
            };
            if !ok {
                generator_failures.push((j, i));
            }
        }
    }

    let mut logical_checks = 0;
    let mut logical_failures = Vec::new();
    for s in 0..q {
        for r in 0..c.k() {
            logical_checks += 1;
            let ok = (|| {
                let &control = circ.layout().get(&(s, r))?;
                let expected = unpermute_columns(&lo.xbar()[r], sf.col_perm())
                    .expand(s + lambda, n_qubits)
                    .ok()?;
                let (img, img_neg) = tab.x_image(control);
                let (residue, neg) = hermitian_product(img, img_neg, &expected, false)?;
                Some(in_signed_group(&gens, &bits, &residue, neg))
            })()
            .unwrap_or(false);
            if !ok {
                logical_failures.push((s, r));
            }
        }
    }

    Ok(VerifyReport {
        generator_checks,
        generator_failures,
        logical_checks,
        logical_failures,
        online_ok: online_scan(circ, n, lambda),
    })
}
