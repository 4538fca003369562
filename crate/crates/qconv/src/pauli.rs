//! Pauli operators on a semi-infinite qubit stream.
//!
//! An operator is stored as a pair of length-n polynomial vectors: qubit
//! j*n + c carries an X factor iff the coefficient of D^j in `x_part[c]` is
//! set, a Z factor iff set in `z_part[c]`, and a Y when both are. Overall
//! phases are not tracked here; signs enter only where circuits need them.

use std::fmt;
use std::str::FromStr;

use crate::gf2poly::{Laurent, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PauliError {
    WidthMismatch {
        left: usize,
        right: usize,
    },
    InvalidLetter {
        letter: char,
        column: usize,
    },
    SupportOverflow {
        needed: usize,
        available: usize,
    },
    /// apply_poly on an operator that fails to commute with its own shifts.
    NonCommutingShifts,
}

impl fmt::Display for PauliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliError::WidthMismatch { left, right } => {
                write!(f, "block widths differ: {} vs {}", left, right)
            }
            PauliError::InvalidLetter { letter, column } => {
                write!(f, "invalid Pauli letter '{}' at column {}", letter, column)
            }
            PauliError::SupportOverflow { needed, available } => {
                write!(
                    f,
                    "operator needs {} qubits but only {} are available",
                    needed, available
                )
            }
            PauliError::NonCommutingShifts => {
                write!(f, "operator does not commute with its own delays")
            }
        }
    }
}

impl std::error::Error for PauliError {}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_xz(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Finite Pauli word with an explicit starting qubit. Canonical form: `ops`
/// begins and ends with a non-identity letter (empty means the identity).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliString {
    ops: Vec<Pauli>,
    offset: usize,
}

impl PauliString {
    pub fn identity() -> Self {
        PauliString {
            ops: Vec::new(),
            offset: 0,
        }
    }

    /// Canonicalize a dense letter sequence starting at qubit `offset`.
    pub fn new(letters: Vec<Pauli>, offset: usize) -> Self {
        let head = letters.iter().take_while(|&&p| p == Pauli::I).count();
        let tail = letters.iter().rev().take_while(|&&p| p == Pauli::I).count();
        if head == letters.len() {
            return PauliString::identity();
        }
        PauliString {
            ops: letters[head..letters.len() - tail].to_vec(),
            offset: offset + head,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    /// Qubit index of the first non-identity letter (0-based).
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// One past the last acted-on qubit; 0 for the identity.
    pub fn support_end(&self) -> usize {
        if self.is_identity() {
            0
        } else {
            self.offset + self.ops.len()
        }
    }

    pub fn letter_at(&self, qubit: usize) -> Pauli {
        if qubit < self.offset || qubit >= self.offset + self.ops.len() {
            Pauli::I
        } else {
            self.ops[qubit - self.offset]
        }
    }

    /// Dense letter vector covering qubits 0..len.
    pub fn dense(&self, len: usize) -> Result<Vec<Pauli>, PauliError> {
        if self.support_end() > len {
            return Err(PauliError::SupportOverflow {
                needed: self.support_end(),
                available: len,
            });
        }
        Ok((0..len).map(|q| self.letter_at(q)).collect())
    }

    pub fn shifted(&self, qubits: usize) -> PauliString {
        if self.is_identity() {
            PauliString::identity()
        } else {
            PauliString {
                ops: self.ops.clone(),
                offset: self.offset + qubits,
            }
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.offset {
            write!(f, "I")?;
        }
        for p in &self.ops {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.trim().chars().enumerate() {
            let p = Pauli::from_letter(c).ok_or(PauliError::InvalidLetter {
                letter: c,
                column: i + 1,
            })?;
            letters.push(p);
        }
        Ok(PauliString::new(letters, 0))
    }
}

/// Stream Pauli operator as a pair of polynomial vectors over GF(2)[D].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliPoly {
    n: usize,
    x_part: Vec<Poly>,
    z_part: Vec<Poly>,
}

impl PauliPoly {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        PauliPoly {
            n,
            x_part: vec![Poly::zero(); n],
            z_part: vec![Poly::zero(); n],
        }
    }

    pub fn from_parts(x_part: Vec<Poly>, z_part: Vec<Poly>) -> Self {
        assert_eq!(x_part.len(), z_part.len());
        assert!(!x_part.is_empty());
        PauliPoly {
            n: x_part.len(),
            x_part,
            z_part,
        }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn x(&self, col: usize) -> &Poly {
        &self.x_part[col]
    }

    pub fn z(&self, col: usize) -> &Poly {
        &self.z_part[col]
    }

    pub fn x_part(&self) -> &[Poly] {
        &self.x_part
    }

    pub fn z_part(&self) -> &[Poly] {
        &self.z_part
    }

    pub fn is_identity(&self) -> bool {
        self.x_part.iter().all(Poly::is_zero) && self.z_part.iter().all(Poly::is_zero)
    }

    pub fn from_string(s: &PauliString, n: usize) -> PauliPoly {
        assert!(n >= 1);
        let mut out = PauliPoly::identity(n);
        for (i, &p) in s.ops().iter().enumerate() {
            let qubit = s.offset() + i;
            let (block, col) = (qubit / n, qubit % n);
            if p.x_bit() {
                out.x_part[col].set_coeff(block, true);
            }
            if p.z_bit() {
                out.z_part[col].set_coeff(block, true);
            }
        }
        out
    }

    pub fn parse(s: &str, n: usize) -> Result<PauliPoly, PauliError> {
        Ok(PauliPoly::from_string(&s.parse()?, n))
    }

    pub fn to_pauli_string(&self) -> PauliString {
        let mut letters = Vec::new();
        let end = self.support_end();
        for qubit in 0..end {
            let (block, col) = (qubit / self.n, qubit % self.n);
            letters.push(Pauli::from_xz(
                self.x_part[col].coeff(block),
                self.z_part[col].coeff(block),
            ));
        }
        PauliString::new(letters, 0)
    }

    /// One past the highest acted-on qubit; 0 for the identity.
    pub fn support_end(&self) -> usize {
        let mut end = 0;
        for c in 0..self.n {
            for part in [&self.x_part[c], &self.z_part[c]] {
                if let Some(d) = part.degree() {
                    end = end.max(d * self.n + c + 1);
                }
            }
        }
        end
    }

    /// Largest D-degree over all entries; None for the identity.
    pub fn max_block_degree(&self) -> Option<usize> {
        self.x_part
            .iter()
            .chain(self.z_part.iter())
            .filter_map(Poly::degree)
            .max()
    }

    /// Shift by whole blocks: every entry gains a factor D^j.
    pub fn delay(&self, j: usize) -> PauliPoly {
        let dj = Poly::monomial(j);
        PauliPoly {
            n: self.n,
            x_part: self.x_part.iter().map(|p| p * &dj).collect(),
            z_part: self.z_part.iter().map(|p| p * &dj).collect(),
        }
    }

    /// Group product modulo phase: componentwise addition of both parts.
    pub fn multiply(&self, other: &PauliPoly) -> Result<PauliPoly, PauliError> {
        self.check_width(other)?;
        Ok(PauliPoly {
            n: self.n,
            x_part: self
                .x_part
                .iter()
                .zip(&other.x_part)
                .map(|(a, b)| a + b)
                .collect(),
            z_part: self
                .z_part
                .iter()
                .zip(&other.z_part)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Product of delayed copies, one per set coefficient of `poly`. Requires
    /// the operator to commute with its own delays so the product is
    /// unambiguous.
    pub fn apply_poly(poly: &Poly, a: &PauliPoly) -> Result<PauliPoly, PauliError> {
        if !a.gen_commute(a)? {
            return Err(PauliError::NonCommutingShifts);
        }
        Ok(PauliPoly {
            n: a.n,
            x_part: a.x_part.iter().map(|p| p * poly).collect(),
            z_part: a.z_part.iter().map(|p| p * poly).collect(),
        })
    }

    fn check_width(&self, other: &PauliPoly) -> Result<(), PauliError> {
        if self.n != other.n {
            Err(PauliError::WidthMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Finite Laurent series sum_c P_X[c](D)*Q_Z[c](1/D) + P_Z[c](D)*Q_X[c](1/D).
    /// Its coefficient at D^t is the symplectic product of this operator with
    /// `other` delayed by t blocks; identically zero means the two commute at
    /// every relative shift.
    pub fn symplectic_form(&self, other: &PauliPoly) -> Result<Laurent, PauliError> {
        self.check_width(other)?;
        let mut acc = Laurent::zero();
        for c in 0..self.n {
            let xz =
                Laurent::from_poly(&self.x_part[c]).mul(&Laurent::reciprocal_of(&other.z_part[c]));
            let zx =
                Laurent::from_poly(&self.z_part[c]).mul(&Laurent::reciprocal_of(&other.x_part[c]));
            acc = acc.add(&xz).add(&zx);
        }
        Ok(acc)
    }

    /// Ordinary commutation of the two operators as placed.
    pub fn commute_at(&self, other: &PauliPoly) -> Result<bool, PauliError> {
        Ok(!self.symplectic_form(other)?.coeff_at(0))
    }

    /// Commutation at every relative block shift.
    pub fn gen_commute(&self, other: &PauliPoly) -> Result<bool, PauliError> {
        Ok(self.symplectic_form(other)?.is_zero())
    }

    /// Flat (X|Z) bit vector for the operator delayed by `shift` blocks on a
    /// window of `n_qubits` qubits.
    pub fn expand(&self, shift: usize, n_qubits: usize) -> Result<SymplecticVec, PauliError> {
        let needed = if self.is_identity() {
            0
        } else {
            self.support_end() + shift * self.n
        };
        if needed > n_qubits {
            return Err(PauliError::SupportOverflow {
                needed,
                available: n_qubits,
            });
        }
        let mut v = SymplecticVec::zero(n_qubits);
        for c in 0..self.n {
            for j in self.x_part[c].coeff_indices() {
                v.set_x((j + shift) * self.n + c, true);
            }
            for j in self.z_part[c].coeff_indices() {
                v.set_z((j + shift) * self.n + c, true);
            }
        }
        Ok(v)
    }
}

impl fmt::Display for PauliPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pauli_string())
    }
}

fn words(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Bit-packed Pauli on a fixed window of qubits, stored as separate X and Z
/// bit vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticVec {
    n_qubits: usize,
    x_bits: Vec<u64>,
    z_bits: Vec<u64>,
}

impl SymplecticVec {
    pub fn zero(n_qubits: usize) -> Self {
        SymplecticVec {
            n_qubits,
            x_bits: vec![0; words(n_qubits)],
            z_bits: vec![0; words(n_qubits)],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x(&self, q: usize) -> bool {
        debug_assert!(q < self.n_qubits);
        (self.x_bits[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn z(&self, q: usize) -> bool {
        debug_assert!(q < self.n_qubits);
        (self.z_bits[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn set_x(&mut self, q: usize, v: bool) {
        debug_assert!(q < self.n_qubits);
        if v {
            self.x_bits[q / 64] |= 1 << (q % 64);
        } else {
            self.x_bits[q / 64] &= !(1 << (q % 64));
        }
    }

    pub fn set_z(&mut self, q: usize, v: bool) {
        debug_assert!(q < self.n_qubits);
        if v {
            self.z_bits[q / 64] |= 1 << (q % 64);
        } else {
            self.z_bits[q / 64] &= !(1 << (q % 64));
        }
    }

    pub fn letter_at(&self, q: usize) -> Pauli {
        Pauli::from_xz(self.x(q), self.z(q))
    }

    pub fn set_letter(&mut self, q: usize, p: Pauli) {
        self.set_x(q, p.x_bit());
        self.set_z(q, p.z_bit());
    }

    pub fn is_zero(&self) -> bool {
        self.x_bits.iter().all(|&w| w == 0) && self.z_bits.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &SymplecticVec) {
        assert_eq!(self.n_qubits, other.n_qubits);
        for (a, b) in self.x_bits.iter_mut().zip(&other.x_bits) {
            *a ^= b;
        }
        for (a, b) in self.z_bits.iter_mut().zip(&other.z_bits) {
            *a ^= b;
        }
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x_bits
            .iter()
            .zip(&self.z_bits)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Symplectic inner product mod 2: 0 means commute, 1 means anticommute.
    pub fn symplectic_dot(&self, other: &SymplecticVec) -> bool {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut acc = 0u64;
        for i in 0..self.x_bits.len() {
            acc ^= self.x_bits[i] & other.z_bits[i];
            acc ^= self.z_bits[i] & other.x_bits[i];
        }
        acc.count_ones() % 2 == 1
    }

    /// Flat 2N-bit row (X bits then Z bits) for plain GF(2) linear algebra.
    pub fn to_bit_row(&self) -> BitRow {
        let mut row = BitRow::zero(2 * self.n_qubits);
        for q in 0..self.n_qubits {
            if self.x(q) {
                row.set(q, true);
            }
            if self.z(q) {
                row.set(self.n_qubits + q, true);
            }
        }
        row
    }

    pub fn from_bit_row(row: &BitRow, n_qubits: usize) -> SymplecticVec {
        assert_eq!(row.width(), 2 * n_qubits);
        let mut v = SymplecticVec::zero(n_qubits);
        for q in 0..n_qubits {
            v.set_x(q, row.get(q));
            v.set_z(q, row.get(n_qubits + q));
        }
        v
    }

    /// Row whose plain dot product with any error's bit row equals the
    /// symplectic product with this operator (X and Z halves swapped).
    pub fn to_partner_row(&self) -> BitRow {
        let mut row = BitRow::zero(2 * self.n_qubits);
        for q in 0..self.n_qubits {
            if self.z(q) {
                row.set(q, true);
            }
            if self.x(q) {
                row.set(self.n_qubits + q, true);
            }
        }
        row
    }

    /// Debug dump: X then Z bit vectors, hex, lowest qubit in the lowest bit.
    pub fn hex_dump(&self) -> String {
        let hex = |bits: &[u64]| -> String {
            bits.iter()
                .map(|w| format!("{:016x}", w))
                .collect::<Vec<_>>()
                .join("")
        };
        format!("X:{} Z:{}", hex(&self.x_bits), hex(&self.z_bits))
    }
}

impl fmt::Display for SymplecticVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter_at(q).letter())?;
        }
        Ok(())
    }
}

/// Product of two signed Hermitian Paulis on the same window. Returns None
/// when they anticommute (the product then carries a factor of i and falls
/// outside the signed Hermitian set). `negative` flags a -1 sign.
pub fn hermitian_product(
    a: &SymplecticVec,
    a_negative: bool,
    b: &SymplecticVec,
    b_negative: bool,
) -> Option<(SymplecticVec, bool)> {
    assert_eq!(a.n_qubits(), b.n_qubits());
    // Exponent of i accumulated per qubit when merging X/Z factors.
    let mut g: i64 = 0;
    for q in 0..a.n_qubits() {
        let (x1, z1) = (a.x(q), a.z(q));
        let (x2, z2) = (b.x(q), b.z(q));
        g += match (x1, z1) {
            (false, false) => 0,
            (true, true) => z2 as i64 - x2 as i64,
            (true, false) => {
                if z2 {
                    2 * (x2 as i64) - 1
                } else {
                    0
                }
            }
            (false, true) => {
                if x2 {
                    1 - 2 * (z2 as i64)
                } else {
                    0
                }
            }
        };
    }
    let phase = (2 * (a_negative as i64) + 2 * (b_negative as i64) + g).rem_euclid(4);
    if phase % 2 != 0 {
        return None;
    }
    let mut prod = a.clone();
    prod.xor_assign(b);
    Some((prod, phase == 2))
}

/// Dense GF(2) bit vector with a fixed width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitRow {
    width: usize,
    bits: Vec<u64>,
}

impl BitRow {
    pub fn zero(width: usize) -> Self {
        BitRow {
            width,
            bits: vec![0; words(width)],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.width);
        if v {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        assert_eq!(self.width, other.width);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &BitRow) -> bool {
        assert_eq!(self.width, other.width);
        let mut acc = 0u64;
        for (a, b) in self.bits.iter().zip(&other.bits) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    fn leading_bit(&self) -> Option<usize> {
        for (w, &word) in self.bits.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// GF(2) rank of a set of rows.
pub fn gf2_rank(rows: &[BitRow]) -> usize {
    let mut basis: Vec<BitRow> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &basis {
            let lead = b.leading_bit().unwrap();
            if r.get(lead) {
                r.xor_assign(b);
            }
        }
        if !r.is_zero() {
            basis.push(r);
        }
    }
    basis.len()
}

/// Coefficients expressing `target` as a GF(2) combination of `rows`, if any.
pub fn gf2_express(rows: &[BitRow], target: &BitRow) -> Option<Vec<bool>> {
    // Echelon basis over the row vectors, with companion rows tracking which
    // original rows combine into each basis element.
    let mut basis: Vec<(BitRow, BitRow)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut c = BitRow::zero(rows.len());
        c.set(i, true);
        for (b, bc) in &basis {
            let lead = b.leading_bit().unwrap();
            if r.get(lead) {
                r.xor_assign(b);
                c.xor_assign(bc);
            }
        }
        if !r.is_zero() {
            basis.push((r, c));
        }
    }
    let mut t = target.clone();
    let mut combo = BitRow::zero(rows.len());
    for (b, bc) in &basis {
        let lead = b.leading_bit().unwrap();
        if t.get(lead) {
            t.xor_assign(b);
            combo.xor_assign(bc);
        }
    }
    if t.is_zero() {
        Some((0..rows.len()).map(|i| combo.get(i)).collect())
    } else {
        None
    }
}

/// One solution v of the system rows[i] . v = rhs[i] over GF(2), if any.
pub fn gf2_solve(rows: &[BitRow], rhs: &[bool]) -> Option<BitRow> {
    assert_eq!(rows.len(), rhs.len());
    let width = rows.first().map_or(0, BitRow::width);
    // Forward elimination on augmented rows.
    let mut aug: Vec<(BitRow, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, bit)
    let mut next = 0usize;
    for col in 0..width {
        let Some(found) = (next..aug.len()).find(|&r| aug[r].0.get(col)) else {
            continue;
        };
        aug.swap(next, found);
        let (pivot_row, pivot_rhs) = aug[next].clone();
        for (r, (row, b)) in aug.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivots.push((next, col));
        next += 1;
        if next == aug.len() {
            break;
        }
    }
    // Inconsistent zero-row with nonzero rhs means no solution.
    if aug.iter().any(|(row, b)| row.is_zero() && *b) {
        return None;
    }
    let mut v = BitRow::zero(width);
    for &(r, col) in &pivots {
        if aug[r].1 {
            v.set(col, true);
        }
    }
    Some(v)
}

/// Basis of the nullspace { v : rows[i] . v = 0 for all i }.
pub fn gf2_nullspace(rows: &[BitRow], width: usize) -> Vec<BitRow> {
    let mut echelon: Vec<BitRow> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for b in &echelon {
            let lead = b.leading_bit().unwrap();
            if r.get(lead) {
                r.xor_assign(b);
            }
        }
        if !r.is_zero() {
            echelon.push(r);
        }
    }
    // Back-substitute to reduced form so each pivot bit appears in one row.
    echelon.sort_by_key(|r| r.leading_bit().unwrap());
    for i in (0..echelon.len()).rev() {
        let lead = echelon[i].leading_bit().unwrap();
        let fixed = echelon[i].clone();
        for j in 0..i {
            if echelon[j].get(lead) {
                echelon[j].xor_assign(&fixed);
            }
        }
    }
    let pivot_bits: Vec<usize> = echelon.iter().map(|r| r.leading_bit().unwrap()).collect();
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_bits.contains(&free) {
            continue;
        }
        let mut v = BitRow::zero(width);
        v.set(free, true);
        for (r, &p) in echelon.iter().zip(&pivot_bits) {
            if r.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}
