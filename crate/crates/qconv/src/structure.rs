//! Standard polynomial form of a code's generator matrix, derivation of the
//! stream logical operators, the conditioning polynomial, catastrophicity,
//! and logical-qubit accounting.
//!
//! The generator matrix (X part | Z part) over GF(2)[D] is brought to
//!
//! ```text
//!   [ A B C | E F G ]   r rows
//!   [ 0 0 0 | J K L ]   n-k-r rows
//! ```
//!
//! with column split r | n-k-r | k, by one elimination pass on the X part
//! followed by one on the lower Z block. A and K come out diagonal whenever
//! the ring allows it. Logical operators are then read off the blocks as
//! rational expressions in 1/D; the conditioning polynomial is the minimal
//! one clearing all denominators.

use std::fmt;

use crate::code::{CodeSpec, ValidationReport};
use crate::gf2poly::{
    eliminate, laurent_normalize_group, ElimSpec, Laurent, Poly, PolyMatrix, RowOp,
};
use crate::pauli::{hermitian_product, PauliPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    Invalid(ValidationReport),
    /// Ring elimination could not fully diagonalize A or K.
    NotDiagonal,
    /// Generator rows collapsed during elimination; the code was dependent.
    DependentRows,
    /// The conditioning polynomial is not a monomial, so the phase-type
    /// logical operators have unbounded support.
    Catastrophic {
        conditioning: Poly,
    },
    /// A diagonal entry of A is not a monomial even though the conditioning
    /// polynomial is; the phase-type logicals cannot be assembled.
    NonMonomialDiagonal {
        entry: Poly,
    },
    /// Logical accounting needs strictly more generator blocks than the
    /// largest logical-operator degree.
    WindowTooShort {
        blocks: usize,
        lambda: usize,
    },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::Invalid(report) => {
                write!(f, "code is not valid: {}", report.problems().join("; "))
            }
            StructureError::NotDiagonal => {
                write!(
                    f,
                    "standard form is not diagonal; logical derivation unavailable"
                )
            }
            StructureError::DependentRows => {
                write!(f, "generator rows are dependent over GF(2)[D]")
            }
            StructureError::Catastrophic { conditioning } => {
                write!(
                    f,
                    "catastrophic code: conditioning polynomial {} is not a monomial",
                    conditioning
                )
            }
            StructureError::NonMonomialDiagonal { entry } => {
                write!(f, "diagonal entry {} is not a monomial", entry)
            }
            StructureError::WindowTooShort { blocks, lambda } => {
                write!(
                    f,
                    "{} generator blocks do not exceed the logical degree {}",
                    blocks, lambda
                )
            }
        }
    }
}

impl std::error::Error for StructureError {}

/// Generator matrix in standard polynomial form, together with the column
/// permutation and the operation transcript that produced it.
#[derive(Clone, Debug)]
pub struct StandardForm {
    n: usize,
    k: usize,
    m: usize,
    r: usize,
    x_mat: PolyMatrix,
    z_mat: PolyMatrix,
    /// col_perm[j] = input qubit column now sitting at column j.
    col_perm: Vec<usize>,
    row_log: Vec<RowOp>,
    diagonal_ok: bool,
    /// Sign of each standard-form row under the input generator signs.
    row_negative: Vec<bool>,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Rank of the X part.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn col_perm(&self) -> &[usize] {
        &self.col_perm
    }

    pub fn row_log(&self) -> &[RowOp] {
        &self.row_log
    }

    pub fn diagonal_ok(&self) -> bool {
        self.diagonal_ok
    }

    pub fn row_negative(&self) -> &[bool] {
        &self.row_negative
    }

    pub fn x_mat(&self) -> &PolyMatrix {
        &self.x_mat
    }

    pub fn z_mat(&self) -> &PolyMatrix {
        &self.z_mat
    }

    /// Standard-form row i as a Pauli operator in the permuted column basis.
    pub fn row(&self, i: usize) -> PauliPoly {
        PauliPoly::from_parts(self.x_mat.row(i).to_vec(), self.z_mat.row(i).to_vec())
    }

    pub fn rows(&self) -> Vec<PauliPoly> {
        (0..self.x_mat.rows()).map(|i| self.row(i)).collect()
    }

    fn slice(
        m: &PolyMatrix,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> PolyMatrix {
        let mut out = PolyMatrix::zero(rows.len(), cols.len());
        for (ri, r) in rows.enumerate() {
            for (ci, c) in cols.clone().enumerate() {
                *out.at_mut(ri, ci) = m.at(r, c).clone();
            }
        }
        out
    }

    fn mid(&self) -> usize {
        self.n - self.k - self.r
    }

    /// r x r diagonal X block.
    pub fn block_a(&self) -> PolyMatrix {
        Self::slice(&self.x_mat, 0..self.r, 0..self.r)
    }

    pub fn block_b(&self) -> PolyMatrix {
        Self::slice(&self.x_mat, 0..self.r, self.r..self.n - self.k)
    }

    pub fn block_c(&self) -> PolyMatrix {
        Self::slice(&self.x_mat, 0..self.r, self.n - self.k..self.n)
    }

    pub fn block_e(&self) -> PolyMatrix {
        Self::slice(&self.z_mat, 0..self.r, 0..self.r)
    }

    pub fn block_f(&self) -> PolyMatrix {
        Self::slice(&self.z_mat, 0..self.r, self.r..self.n - self.k)
    }

    pub fn block_g(&self) -> PolyMatrix {
        Self::slice(&self.z_mat, 0..self.r, self.n - self.k..self.n)
    }

    pub fn block_j(&self) -> PolyMatrix {
        Self::slice(&self.z_mat, self.r..self.x_mat.rows(), 0..self.r)
    }

    /// (n-k-r) x (n-k-r) diagonal Z block of the lower rows.
    pub fn block_k(&self) -> PolyMatrix {
        Self::slice(
            &self.z_mat,
            self.r..self.x_mat.rows(),
            self.r..self.n - self.k,
        )
    }

    pub fn block_l(&self) -> PolyMatrix {
        Self::slice(
            &self.z_mat,
            self.r..self.x_mat.rows(),
            self.n - self.k..self.n,
        )
    }
}

/// Move an operator written in the permuted column basis back to the
/// original qubit columns.
pub fn unpermute_columns(p: &PauliPoly, col_perm: &[usize]) -> PauliPoly {
    let n = p.width();
    assert_eq!(n, col_perm.len());
    let mut x = vec![Poly::zero(); n];
    let mut z = vec![Poly::zero(); n];
    for j in 0..n {
        x[col_perm[j]] = p.x(j).clone();
        z[col_perm[j]] = p.z(j).clone();
    }
    PauliPoly::from_parts(x, z)
}

fn scale_pauli(p: &PauliPoly, power: i64) -> PauliPoly {
    let map = |poly: &Poly| -> Poly {
        if power >= 0 {
            poly.shl(power as usize)
        } else {
            poly.shr_exact((-power) as usize)
        }
    };
    PauliPoly::from_parts(
        p.x_part().iter().map(&map).collect(),
        p.z_part().iter().map(&map).collect(),
    )
}

fn swap_pauli_cols(p: &PauliPoly, a: usize, b: usize) -> PauliPoly {
    let mut x: Vec<Poly> = p.x_part().to_vec();
    let mut z: Vec<Poly> = p.z_part().to_vec();
    x.swap(a, b);
    z.swap(a, b);
    PauliPoly::from_parts(x, z)
}

/// Replay the elimination transcript on signed generator rows to find the
/// sign each standard-form row carries. All products stay inside the
/// commuting stabilizer group, so every step has a well-defined +/-1 phase.
fn replay_signs(
    gens: &[PauliPoly],
    negative: &[bool],
    ops: &[RowOp],
    n: usize,
) -> Vec<(PauliPoly, bool)> {
    let mut rows: Vec<(PauliPoly, bool)> =
        gens.iter().cloned().zip(negative.iter().copied()).collect();
    for op in ops {
        match op {
            RowOp::AddMul { dst, src, factor } => {
                for t in factor.coeff_indices() {
                    let term = rows[*src].0.delay(t);
                    let term_neg = rows[*src].1;
                    let window = term.support_end().max(rows[*dst].0.support_end());
                    let a = rows[*dst]
                        .0
                        .expand(0, window)
                        .expect("window covers support");
                    let b = term.expand(0, window).expect("window covers support");
                    let (_, neg) = hermitian_product(&a, rows[*dst].1, &b, term_neg)
                        .expect("stabilizer rows commute");
                    let prod = rows[*dst].0.multiply(&term).expect("equal widths");
                    rows[*dst] = (prod, neg);
                }
            }
            RowOp::Scale { row, power } => {
                rows[*row].0 = scale_pauli(&rows[*row].0, *power);
            }
            RowOp::SwapRows { a, b } => rows.swap(*a, *b),
            RowOp::SwapCols { a, b } => {
                let (qa, qb) = (a % n, b % n);
                for row in rows.iter_mut() {
                    row.0 = swap_pauli_cols(&row.0, qa, qb);
                }
            }
        }
    }
    rows
}

/// Two elimination passes: X part over all columns, then the Z part of the
/// leftover rows, with column swaps always acting on whole qubits.
pub fn standard_form(c: &CodeSpec) -> Result<StandardForm, StructureError> {
    let report = c.validate();
    if !report.is_valid() {
        return Err(StructureError::Invalid(report));
    }
    let n = c.n();
    let rows = c.gen_count();

    let mut comb = PolyMatrix::zero(rows, 2 * n);
    for (i, g) in c.gens().iter().enumerate() {
        for col in 0..n {
            *comb.at_mut(i, col) = g.x(col).clone();
            *comb.at_mut(i, n + col) = g.z(col).clone();
        }
    }

    let pass1 = eliminate(
        &comb,
        &ElimSpec {
            rows: 0..rows,
            cols: 0..n,
            linked_offset: Some(n as isize),
            allow_scaling: true,
        },
    );
    let r = pass1.rank();
    let pass2 = eliminate(
        &pass1.matrix,
        &ElimSpec {
            rows: r..rows,
            cols: n + r..2 * n,
            linked_offset: Some(-(n as isize)),
            allow_scaling: true,
        },
    );
    if pass2.rank() != rows - r {
        return Err(StructureError::DependentRows);
    }

    // Compose the two column permutations; both passes swap whole qubits, so
    // the X and Z halves always agree.
    let col_perm: Vec<usize> = (0..n).map(|j| pass1.col_perm[pass2.col_perm[j]]).collect();
    for j in 0..n {
        debug_assert_eq!(
            pass1.col_perm[pass2.col_perm[n + j]],
            col_perm[j] + n,
            "halves permuted identically"
        );
    }

    let mut row_log = pass1.ops;
    row_log.extend(pass2.ops);

    let replayed = replay_signs(c.gens(), c.negative(), &row_log, n);
    let row_negative: Vec<bool> = replayed.iter().map(|(_, neg)| *neg).collect();

    let x_mat = StandardForm::slice(&pass2.matrix, 0..rows, 0..n);
    let z_mat = StandardForm::slice(&pass2.matrix, 0..rows, n..2 * n);

    // The sign replay recomputes the operators; they must agree with the
    // matrix the eliminations produced.
    for (i, (p, _)) in replayed.iter().enumerate() {
        debug_assert_eq!(p.x_part(), x_mat.row(i), "replayed X row {} diverged", i);
        debug_assert_eq!(p.z_part(), z_mat.row(i), "replayed Z row {} diverged", i);
    }

    Ok(StandardForm {
        n,
        k: c.k(),
        m: c.m(),
        r,
        x_mat,
        z_mat,
        col_perm,
        row_log,
        diagonal_ok: pass1.diagonal && pass2.diagonal,
        row_negative,
    })
}

/// Rational function of D written as D^shift * num/den with num, den coprime
/// and den carrying a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frac {
    num: Poly,
    den: Poly,
    shift: i64,
}

impl Frac {
    fn zero() -> Frac {
        Frac {
            num: Poly::zero(),
            den: Poly::one(),
            shift: 0,
        }
    }

    fn canonical(num: Poly, den: Poly, mut shift: i64) -> Frac {
        assert!(!den.is_zero(), "fraction with zero denominator");
        if num.is_zero() {
            return Frac::zero();
        }
        let a = num.trailing_order().unwrap();
        let b = den.trailing_order().unwrap();
        shift += a as i64 - b as i64;
        let num = num.shr_exact(a);
        let den = den.shr_exact(b);
        let g = num.gcd(&den);
        let (num, rn) = num.divmod(&g).unwrap();
        let (den, rd) = den.divmod(&g).unwrap();
        debug_assert!(rn.is_zero() && rd.is_zero());
        Frac { num, den, shift }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// p evaluated at 1/D.
    fn recip(p: &Poly) -> Frac {
        match p.degree() {
            None => Frac::zero(),
            Some(d) => Frac::canonical(p.reverse(), Poly::one(), -(d as i64)),
        }
    }

    /// 1 / p(1/D) for nonzero p.
    fn recip_inv(p: &Poly) -> Frac {
        let d = p.degree().expect("inverting the zero polynomial");
        Frac::canonical(Poly::one(), p.reverse(), d as i64)
    }

    fn mul(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        Frac::canonical(&self.num * &o.num, &self.den * &o.den, self.shift + o.shift)
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(o.shift);
        let a = (&self.num * &o.den).shl((self.shift - base) as usize);
        let b = (&o.num * &self.den).shl((o.shift - base) as usize);
        Frac::canonical(&a + &b, &self.den * &o.den, base)
    }

    /// The entry multiplied by `lambda`, which the denominator must divide.
    fn scaled_to_laurent(&self, lambda: &Poly) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let (q, rem) = lambda.divmod(&self.den).expect("nonzero denominator");
        assert!(
            rem.is_zero(),
            "conditioning polynomial misses a denominator"
        );
        Laurent::new(&self.num * &q, self.shift)
    }

    /// Plain Laurent value; defined only when the denominator is trivial.
    fn to_laurent(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.den.is_one() {
            Some(Laurent::new(self.num.clone(), self.shift))
        } else {
            None
        }
    }
}

/// Raw rational entries of the bit-flip logicals: (U2 rows, V1 rows, Lambda)
/// with the conditioning polynomial not yet multiplied in.
fn xbar_fracs(sf: &StandardForm) -> (Vec<Vec<Frac>>, Vec<Vec<Frac>>, Poly) {
    let (k, r, mid) = (sf.k(), sf.r(), sf.mid());
    let a = sf.block_a();
    let f_blk = sf.block_f();
    let g_blk = sf.block_g();
    let k_blk = sf.block_k();
    let l_blk = sf.block_l();

    let mut u2 = vec![vec![Frac::zero(); mid]; k];
    for i in 0..k {
        for j in 0..mid {
            u2[i][j] = Frac::recip(l_blk.at(j, i)).mul(&Frac::recip_inv(k_blk.at(j, j)));
        }
    }
    let mut v1 = vec![vec![Frac::zero(); r]; k];
    for i in 0..k {
        for l in 0..r {
            let mut acc = Frac::recip(g_blk.at(l, i));
            for j in 0..mid {
                acc = acc.add(&u2[i][j].mul(&Frac::recip(f_blk.at(l, j))));
            }
            v1[i][l] = acc.mul(&Frac::recip_inv(a.at(l, l)));
        }
    }

    let mut lambda = Poly::one();
    for row in u2.iter().chain(v1.iter()) {
        for frac in row {
            if !frac.is_zero() {
                lambda = lambda.lcm(&frac.den);
            }
        }
    }
    (u2, v1, lambda)
}

/// Raw Laurent entries (x columns then z columns) of each bit-flip logical
/// row, before the group shift normalization.
fn xbar_laurents(
    sf: &StandardForm,
    u2: &[Vec<Frac>],
    v1: &[Vec<Frac>],
    lambda: &Poly,
) -> Vec<Vec<Laurent>> {
    let (n, k, r, mid) = (sf.n(), sf.k(), sf.r(), sf.mid());
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut entries = vec![Laurent::zero(); 2 * n];
        for j in 0..mid {
            entries[r + j] = u2[i][j].scaled_to_laurent(lambda);
        }
        entries[n - k + i] = Laurent::from_poly(lambda);
        for l in 0..r {
            entries[n + l] = v1[i][l].scaled_to_laurent(lambda);
        }
        rows.push(entries);
    }
    rows
}

/// Raw Laurent entries of each phase-flip logical row. Requires a monomial
/// conditioning polynomial.
fn zbar_laurents(sf: &StandardForm, lambda: &Poly) -> Result<Vec<Vec<Laurent>>, StructureError> {
    if !lambda.is_monomial() {
        return Err(StructureError::Catastrophic {
            conditioning: lambda.clone(),
        });
    }
    let (n, k, r) = (sf.n(), sf.k(), sf.r());
    let a = sf.block_a();
    let c_blk = sf.block_c();
    let inv_lambda = Frac::recip_inv(lambda);
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut entries = vec![Laurent::zero(); 2 * n];
        for l in 0..r {
            let frac = Frac::recip(c_blk.at(l, i))
                .mul(&Frac::recip_inv(a.at(l, l)))
                .mul(&inv_lambda);
            entries[n + l] =
                frac.to_laurent()
                    .ok_or_else(|| StructureError::NonMonomialDiagonal {
                        entry: a.at(l, l).clone(),
                    })?;
        }
        entries[n + n - k + i] = inv_lambda
            .to_laurent()
            .expect("reciprocal of a monomial is a pure shift");
        rows.push(entries);
    }
    Ok(rows)
}

fn rows_from_polys(n: usize, rows: &[Vec<Poly>]) -> Vec<PauliPoly> {
    rows.iter()
        .map(|entries| PauliPoly::from_parts(entries[..n].to_vec(), entries[n..].to_vec()))
        .collect()
}

/// Stream logical operators in the standard form's column basis.
#[derive(Clone, Debug)]
pub struct LogicalOps {
    xbar: Vec<PauliPoly>,
    zbar: Option<Vec<PauliPoly>>,
    conditioning: Poly,
    lambda: usize,
}

impl LogicalOps {
    /// Bit-flip logicals, one per protected qubit per block.
    pub fn xbar(&self) -> &[PauliPoly] {
        &self.xbar
    }

    /// Phase-flip logicals; absent exactly for catastrophic codes.
    pub fn zbar(&self) -> Option<&[PauliPoly]> {
        self.zbar.as_deref()
    }

    pub fn conditioning(&self) -> &Poly {
        &self.conditioning
    }

    /// Largest polynomial degree over all logical entries.
    pub fn lambda(&self) -> usize {
        self.lambda
    }
}

/// Derive both logical families, shift-normalized jointly so that the
/// equal-shift pairing between bit-flip and phase-flip rows is preserved.
/// For catastrophic codes the phase-flip family is absent and the bit-flip
/// rows are normalized on their own.
pub fn derive_logicals(sf: &StandardForm) -> Result<LogicalOps, StructureError> {
    if !sf.diagonal_ok() {
        return Err(StructureError::NotDiagonal);
    }
    let n = sf.n();
    let (u2, v1, lambda_poly) = xbar_fracs(sf);
    let x_rows = xbar_laurents(sf, &u2, &v1, &lambda_poly);
    let z_rows = match zbar_laurents(sf, &lambda_poly) {
        Ok(rows) => Some(rows),
        Err(StructureError::Catastrophic { .. }) => None,
        Err(e) => return Err(e),
    };

    // One flat group: a common shift leaves every pairwise commutation
    // relation intact, including the equal-shift pairing.
    let mut group: Vec<Laurent> = x_rows.iter().flatten().cloned().collect();
    if let Some(z) = &z_rows {
        group.extend(z.iter().flatten().cloned());
    }
    let polys = laurent_normalize_group(&group);

    let per_row = 2 * n;
    let split: Vec<Vec<Poly>> = polys.chunks(per_row).map(<[Poly]>::to_vec).collect();
    let xbar = rows_from_polys(n, &split[..x_rows.len()]);
    let zbar = z_rows.map(|z| {
        debug_assert_eq!(split.len(), x_rows.len() + z.len());
        rows_from_polys(n, &split[x_rows.len()..])
    });

    let lambda = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    Ok(LogicalOps {
        xbar,
        zbar,
        conditioning: lambda_poly,
        lambda,
    })
}

/// Bit-flip logical rows and the conditioning polynomial.
pub fn derive_xbar(sf: &StandardForm) -> Result<(Vec<PauliPoly>, Poly), StructureError> {
    let ops = derive_logicals(sf)?;
    Ok((ops.xbar, ops.conditioning))
}

/// Phase-flip logical rows, shift-aligned with [`derive_xbar`]'s output.
/// Fails with [`StructureError::Catastrophic`] when the conditioning
/// polynomial is not a monomial.
pub fn derive_zbar(sf: &StandardForm) -> Result<Vec<PauliPoly>, StructureError> {
    let ops = derive_logicals(sf)?;
    ops.zbar.ok_or(StructureError::Catastrophic {
        conditioning: ops.conditioning,
    })
}

/// A code is catastrophic exactly when its conditioning polynomial is not a
/// monomial; such codes spread single physical errors over unboundedly many
/// logical qubits.
pub fn is_catastrophic(c: &CodeSpec) -> Result<bool, StructureError> {
    let sf = standard_form(c)?;
    if !sf.diagonal_ok() {
        return Err(StructureError::NotDiagonal);
    }
    let (_, _, lambda) = xbar_fracs(&sf);
    Ok(!lambda.is_monomial())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalCount {
    /// Stream logical qubits usable across p generator blocks.
    pub protected: usize,
    /// Boundary qubits that do not follow the stream structure and are
    /// pinned to |0> by the encoder.
    pub sacrificed: usize,
}

/// Logical-qubit accounting for a transmission stabilized by p blocks of
/// generators.
pub fn count_logicals(c: &CodeSpec, p: usize) -> Result<LogicalCount, StructureError> {
    let sf = standard_form(c)?;
    let ops = derive_logicals(&sf)?;
    let lambda = ops.lambda();
    if p <= lambda {
        return Err(StructureError::WindowTooShort { blocks: p, lambda });
    }
    let reach = c.overlap_blocks();
    Ok(LogicalCount {
        protected: c.k() * (p + reach - lambda),
        sacrificed: reach * c.gen_count() + lambda * c.k(),
    })
}
