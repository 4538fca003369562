//! Polynomials over GF(2) in the delay variable D, plus the finite Laurent
//! and matrix layers the stabilizer machinery is built on.
//!
//! Coefficients are bit-packed little-endian: bit i of limb i/64 is the
//! coefficient of D^i. Addition is XOR, so every element is its own negative.

use std::fmt;
use std::ops::{Add, Mul, Range};
use std::str::FromStr;

/// Hard cap on polynomial degree. Intermediate blow-ups (e.g. feeding an
/// adversarial matrix to the elimination) fail loudly instead of eating RAM.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2PolyError {
    DegreeOverflow { degree: usize },
    DivisionByZero,
    Parse(String),
}

impl fmt::Display for Gf2PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gf2PolyError::DegreeOverflow { degree } => {
                write!(f, "polynomial degree {} exceeds cap {}", degree, MAX_DEGREE)
            }
            Gf2PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            Gf2PolyError::Parse(s) => write!(f, "cannot parse polynomial: {}", s),
        }
    }
}

impl std::error::Error for Gf2PolyError {}

/// Polynomial over GF(2). Invariant: no trailing zero limbs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    limbs: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { limbs: vec![1] }
    }

    /// D^d.
    pub fn monomial(d: usize) -> Self {
        assert!(d <= MAX_DEGREE, "monomial degree {} exceeds cap", d);
        let mut limbs = vec![0u64; d / 64 + 1];
        limbs[d / 64] = 1u64 << (d % 64);
        Poly { limbs }
    }

    pub fn from_coeff_indices(idx: &[usize]) -> Self {
        let mut p = Poly::zero();
        for &i in idx {
            p.set_coeff(i, true);
        }
        p
    }

    fn trim(&mut self) {
        while let Some(&last) = self.limbs.last() {
            if last == 0 {
                self.limbs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Smallest exponent with a set coefficient, or None for zero.
    pub fn trailing_order(&self) -> Option<usize> {
        for (i, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some(i * 64 + l.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Exactly one coefficient set (any power of D, including 1).
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.degree() == self.trailing_order()
    }

    pub fn coeff(&self, i: usize) -> bool {
        match self.limbs.get(i / 64) {
            Some(l) => (l >> (i % 64)) & 1 == 1,
            None => false,
        }
    }

    pub fn set_coeff(&mut self, i: usize, v: bool) {
        assert!(i <= MAX_DEGREE, "coefficient index {} exceeds cap", i);
        if i / 64 >= self.limbs.len() {
            if !v {
                return;
            }
            self.limbs.resize(i / 64 + 1, 0);
        }
        if v {
            self.limbs[i / 64] |= 1u64 << (i % 64);
        } else {
            self.limbs[i / 64] &= !(1u64 << (i % 64));
        }
        self.trim();
    }

    pub fn coeff_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &l) in self.limbs.iter().enumerate() {
            let mut bits = l;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    fn xor_shifted(&mut self, other: &Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let (word, bit) = (shift / 64, shift % 64);
        let need = word + other.limbs.len() + 1;
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[word + i] ^= l << bit;
            if bit != 0 {
                self.limbs[word + i + 1] ^= l >> (64 - bit);
            }
        }
        self.trim();
    }

    pub fn add_assign(&mut self, other: &Poly) {
        self.xor_shifted(other, 0);
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, Gf2PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let deg = self.degree().unwrap() + other.degree().unwrap();
        if deg > MAX_DEGREE {
            return Err(Gf2PolyError::DegreeOverflow { degree: deg });
        }
        // Iterate over the sparser operand.
        let (a, b) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero();
        for i in a.coeff_indices() {
            out.xor_shifted(b, i);
        }
        Ok(out)
    }

    /// Multiply by D^t.
    pub fn shl(&self, t: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let deg = self.degree().unwrap() + t;
        assert!(deg <= MAX_DEGREE, "shift overflows degree cap");
        let mut out = Poly::zero();
        out.xor_shifted(self, t);
        out
    }

    /// Exact division by D^t. Panics if some coefficient below t is set.
    pub fn shr_exact(&self, t: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let ord = self.trailing_order().unwrap();
        assert!(ord >= t, "not divisible by D^{}", t);
        let mut out = Poly::zero();
        for i in self.coeff_indices() {
            out.set_coeff(i - t, true);
        }
        out
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), Gf2PolyError> {
        let dd = divisor.degree().ok_or(Gf2PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.set_coeff(shift, true);
            rem.xor_shifted(divisor, shift);
        }
        Ok((quot, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other
            .divmod(self)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        let (q, r) = self.divmod(&g).unwrap();
        debug_assert!(r.is_zero());
        q.checked_mul(other).expect("lcm within degree cap")
    }

    /// Coefficient reversal: coefficient of D^i becomes coefficient of
    /// D^(deg - i). The zero polynomial reverses to itself.
    pub fn reverse(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => {
                let mut out = Poly::zero();
                for i in self.coeff_indices() {
                    out.set_coeff(d - i, true);
                }
                out
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomial product within degree cap")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in self.coeff_indices() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "D")?,
                _ => write!(f, "D^{}", i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Poly {
    type Err = Gf2PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Gf2PolyError::Parse("empty string".into()));
        }
        if compact == "0" {
            return Ok(Poly::zero());
        }
        let mut p = Poly::zero();
        for term in compact.split('+') {
            let i = match term {
                "1" => 0,
                "D" => 1,
                t => {
                    let exp = t
                        .strip_prefix("D^")
                        .ok_or_else(|| Gf2PolyError::Parse(format!("bad term '{}'", t)))?;
                    exp.parse::<usize>()
                        .map_err(|_| Gf2PolyError::Parse(format!("bad exponent '{}'", exp)))?
                }
            };
            if i > MAX_DEGREE {
                return Err(Gf2PolyError::DegreeOverflow { degree: i });
            }
            // XOR semantics: repeated terms cancel, as in the ring itself.
            p.set_coeff(i, !p.coeff(i));
        }
        Ok(p)
    }
}

/// Finite Laurent element D^shift * body. Canonical form: body has a nonzero
/// constant term (its trailing D powers are folded into shift), and zero is
/// represented with shift 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent {
    body: Poly,
    shift: i64,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            body: Poly::zero(),
            shift: 0,
        }
    }

    pub fn new(body: Poly, shift: i64) -> Self {
        match body.trailing_order() {
            None => Laurent::zero(),
            Some(ord) => Laurent {
                body: body.shr_exact(ord),
                shift: shift + ord as i64,
            },
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Laurent::new(p.clone(), 0)
    }

    /// P(1/D) for a plain polynomial: D^(-deg) * reverse(P).
    pub fn reciprocal_of(p: &Poly) -> Self {
        match p.degree() {
            None => Laurent::zero(),
            Some(d) => Laurent::new(p.reverse(), -(d as i64)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    /// Coefficient of D^e.
    pub fn coeff_at(&self, e: i64) -> bool {
        if e < self.shift {
            return false;
        }
        self.body.coeff((e - self.shift) as usize)
    }

    /// Smallest exponent present, None if zero.
    pub fn min_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.shift)
        }
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.body.degree().map(|d| self.shift + d as i64)
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        Laurent::new(
            self.body
                .checked_mul(&other.body)
                .expect("laurent product within cap"),
            self.shift + other.shift,
        )
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(other.shift);
        let a = self.body.shl((self.shift - base) as usize);
        let b = other.body.shl((other.shift - base) as usize);
        Laurent::new(&a + &b, base)
    }

    pub fn delayed(&self, t: i64) -> Laurent {
        if self.is_zero() {
            Laurent::zero()
        } else {
            Laurent {
                body: self.body.clone(),
                shift: self.shift + t,
            }
        }
    }

    /// Lossless conversion when no negative exponents are present.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.shift < 0 {
            return None;
        }
        Some(self.body.shl(self.shift as usize))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.shift == 0 {
            return write!(f, "{}", self.body);
        }
        write!(f, "D^({})*({})", self.shift, self.body)
    }
}

/// Multiply the whole group by the smallest D^p (p >= 0) that clears every
/// negative exponent. Relative shifts between elements are preserved; a group
/// with no negative exponents comes back unchanged.
pub fn laurent_normalize_group(group: &[Laurent]) -> Vec<Poly> {
    let min = group
        .iter()
        .filter_map(Laurent::min_exponent)
        .min()
        .unwrap_or(0);
    let p = (-min).max(0);
    group
        .iter()
        .map(|l| {
            l.delayed(p)
                .to_poly()
                .expect("shift cleared all negative exponents")
        })
        .collect()
}

/// Dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Poly {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Poly] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row dst += factor * row src.
    pub fn add_mul_row(&mut self, dst: usize, src: usize, factor: &Poly) {
        assert_ne!(dst, src);
        for c in 0..self.cols {
            let term = factor
                .checked_mul(self.at(src, c))
                .expect("row op within degree cap");
            self.at_mut(dst, c).add_assign(&term);
        }
    }

    /// row *= D^power; negative powers require exact divisibility.
    pub fn scale_row(&mut self, r: usize, power: i64) {
        for c in 0..self.cols {
            let p = self.at(r, c).clone();
            *self.at_mut(r, c) = if power >= 0 {
                p.shl(power as usize)
            } else {
                p.shr_exact((-power) as usize)
            };
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// One recorded elimination operation, replayable on a parallel row set.
#[derive(Clone, Debug)]
pub enum RowOp {
    AddMul {
        dst: usize,
        src: usize,
        factor: Poly,
    },
    /// Multiply a row by D^power (negative = exact down-shift of the row).
    Scale {
        row: usize,
        power: i64,
    },
    SwapRows {
        a: usize,
        b: usize,
    },
    /// Qubit-level column swap; with a linked offset this swaps both halves.
    SwapCols {
        a: usize,
        b: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ElimSpec {
    pub rows: Range<usize>,
    pub cols: Range<usize>,
    /// When Some(off), swapping columns (a, b) also swaps (a+off, b+off);
    /// the offset may be negative. Row scaling decisions always consider the
    /// whole row, linked part included.
    pub linked_offset: Option<isize>,
    /// Permit down-scaling a pivot row to clear a common pure-monomial factor.
    pub allow_scaling: bool,
}

impl ElimSpec {
    pub fn plain(rows: Range<usize>, cols: Range<usize>) -> Self {
        ElimSpec {
            rows,
            cols,
            linked_offset: None,
            allow_scaling: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub matrix: PolyMatrix,
    /// (row, col) of each pivot; pivot columns sit at the front of the range.
    pub pivots: Vec<(usize, usize)>,
    /// col_perm[j] = index the j-th current column had in the input.
    pub col_perm: Vec<usize>,
    pub ops: Vec<RowOp>,
    /// False when some above-pivot entry resisted exact division.
    pub diagonal: bool,
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn linked_col(c: usize, off: isize) -> usize {
    let shifted = c as isize + off;
    debug_assert!(shifted >= 0);
    shifted as usize
}

fn apply_op(m: &mut PolyMatrix, op: &RowOp, linked: Option<isize>) {
    match op {
        RowOp::AddMul { dst, src, factor } => m.add_mul_row(*dst, *src, factor),
        RowOp::Scale { row, power } => m.scale_row(*row, *power),
        RowOp::SwapRows { a, b } => m.swap_rows(*a, *b),
        RowOp::SwapCols { a, b } => {
            m.swap_cols(*a, *b);
            if let Some(off) = linked {
                m.swap_cols(linked_col(*a, off), linked_col(*b, off));
            }
        }
    }
}

/// Gaussian elimination over GF(2)[D] restricted to a row and column range.
///
/// Pivot convention: scan columns left to right; within a column pick the
/// nonzero entry of minimal degree among unused rows (ties: lowest row).
/// Entries below a pivot that it does not divide are reduced Euclid-style
/// (the remainder then becomes the new minimal-degree pivot), so below-pivot
/// clearing always completes. Above-pivot entries are cleared only when the
/// pivot divides them exactly; a survivor flips `diagonal` off. With
/// allow_scaling, a pivot row whose entries share a common D^s factor is
/// down-shifted before use; scaling is never used to introduce such a factor.
pub fn eliminate(input: &PolyMatrix, spec: &ElimSpec) -> Elimination {
    let mut m = input.clone();
    let mut ops: Vec<RowOp> = Vec::new();
    let mut col_perm: Vec<usize> = (0..input.cols()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut diagonal = true;

    let record = |m: &mut PolyMatrix, ops: &mut Vec<RowOp>, op: RowOp, perm: &mut Vec<usize>| {
        if let RowOp::SwapCols { a, b } = op {
            perm.swap(a, b);
            if let Some(off) = spec.linked_offset {
                perm.swap(linked_col(a, off), linked_col(b, off));
            }
        }
        apply_op(m, &op, spec.linked_offset);
        ops.push(op);
    };

    let mut next_row = spec.rows.start;
    let mut next_col = spec.cols.start;

    for scan_col in spec.cols.clone() {
        if next_row >= spec.rows.end {
            break;
        }
        if scan_col < next_col {
            continue;
        }

        // Euclid within the column until one entry divides the rest below it.
        loop {
            let mut best: Option<(usize, usize)> = None; // (degree, row)
            for r in next_row..spec.rows.end {
                if let Some(d) = m.at(r, scan_col).degree() {
                    if best.is_none_or(|(bd, _)| d < bd) {
                        best = Some((d, r));
                    }
                }
            }
            let Some((_, pivot_row)) = best else { break };

            if pivot_row != next_row {
                record(
                    &mut m,
                    &mut ops,
                    RowOp::SwapRows {
                        a: next_row,
                        b: pivot_row,
                    },
                    &mut col_perm,
                );
            }

            if spec.allow_scaling {
                // Scaling acts on the whole row, so the factor must be
                // common to every column, linked ones included.
                let common = (0..m.cols())
                    .filter_map(|c| m.at(next_row, c).trailing_order())
                    .min()
                    .unwrap_or(0);
                if common > 0 {
                    record(
                        &mut m,
                        &mut ops,
                        RowOp::Scale {
                            row: next_row,
                            power: -(common as i64),
                        },
                        &mut col_perm,
                    );
                }
            }

            let pivot = m.at(next_row, scan_col).clone();
            let mut clean = true;
            for r in next_row + 1..spec.rows.end {
                let entry = m.at(r, scan_col).clone();
                if entry.is_zero() {
                    continue;
                }
                let (q, rem) = entry.divmod(&pivot).expect("pivot nonzero");
                if !q.is_zero() {
                    record(
                        &mut m,
                        &mut ops,
                        RowOp::AddMul {
                            dst: r,
                            src: next_row,
                            factor: q,
                        },
                        &mut col_perm,
                    );
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }

        if m.at(next_row, scan_col).is_zero() {
            continue; // column had no pivot material
        }

        if scan_col != next_col {
            record(
                &mut m,
                &mut ops,
                RowOp::SwapCols {
                    a: next_col,
                    b: scan_col,
                },
                &mut col_perm,
            );
        }

        // Clear above the pivot where division is exact.
        let pivot = m.at(next_row, next_col).clone();
        for r in spec.rows.start..next_row {
            let entry = m.at(r, next_col).clone();
            if entry.is_zero() {
                continue;
            }
            let (q, rem) = entry.divmod(&pivot).expect("pivot nonzero");
            if rem.is_zero() {
                record(
                    &mut m,
                    &mut ops,
                    RowOp::AddMul {
                        dst: r,
                        src: next_row,
                        factor: q,
                    },
                    &mut col_perm,
                );
            } else {
                diagonal = false;
            }
        }

        pivots.push((next_row, next_col));
        next_row += 1;
        next_col += 1;
    }

    Elimination {
        matrix: m,
        pivots,
        col_perm,
        ops,
        diagonal,
    }
}

/// Replay a recorded op sequence on another matrix (same row count).
pub fn replay_ops(m: &mut PolyMatrix, ops: &[RowOp], linked_offset: Option<isize>) {
    for op in ops {
        apply_op(m, op, linked_offset);
    }
}

/// Is `candidate` a GF(2)[D]-combination of the rows of `basis`?
///
/// Brings `basis` to echelon form (no scaling, so the row module is exactly
/// preserved) and reduces the candidate against the pivots; membership holds
/// iff every pivot divides what it meets and the residue vanishes.
pub fn row_space_contains(basis: &PolyMatrix, candidate: &[Poly]) -> bool {
    assert_eq!(basis.cols(), candidate.len());
    let elim = eliminate(basis, &ElimSpec::plain(0..basis.rows(), 0..basis.cols()));
    let mut v: Vec<Poly> = elim
        .col_perm
        .iter()
        .map(|&orig| candidate[orig].clone())
        .collect();
    for &(pr, pc) in &elim.pivots {
        if v[pc].is_zero() {
            continue;
        }
        let (q, rem) = v[pc].divmod(elim.matrix.at(pr, pc)).expect("pivot nonzero");
        if !rem.is_zero() {
            return false;
        }
        for c in 0..v.len() {
            let term = q.checked_mul(elim.matrix.at(pr, c)).expect("within cap");
            v[c].add_assign(&term);
        }
    }
    v.iter().all(Poly::is_zero)
}
