//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: Smith normal form over the
//! integers (with unimodular transforms), finitely generated subgroup /
//! quotient bookkeeping for weight lattices, and exact rank computations
//! over the rationals. No floating point, no overflow, no tolerances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Errors from integer/rational linear algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Build from a flat row-major entry vector; `entries.len()` must be `rows*cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from machine-integer rows (test/construction convenience).
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product; errors when inner dimensions disagree.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-vector times matrix: `v * self` (v.len() must equal `rows`).
    pub fn row_vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if v.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out[j] += vi * e;
                }
            }
        }
        Ok(out)
    }

    /// Exact integer determinant (fraction-free elimination); square only.
    pub fn determinant(&self) -> Result<BigInt, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::ShapeMismatch(format!(
                "determinant of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut w = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i8;
        for k in 0..n - 1 {
            if w.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !w.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        w.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = w.get(i, j) * w.get(k, k) - w.get(i, k) * w.get(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "fraction-free step must divide exactly");
                    w.set(i, j, q);
                }
                w.set(i, k, BigInt::zero());
            }
            prev = w.get(k, k).clone();
        }
        let det = w.get(n - 1, n - 1).clone();
        Ok(if sign < 0 { -det } else { det })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_t
    fn row_sub_mul(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.get(t, j);
            if !delta.is_zero() {
                let cur = self.get(i, j) - delta;
                self.set(i, j, cur);
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub_mul(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.get(i, t);
            if !delta.is_zero() {
                let cur = self.get(i, j) - delta;
                self.set(i, j, cur);
            }
        }
    }

    /// row_i += row_t
    fn row_add(&mut self, i: usize, t: usize) {
        for j in 0..self.cols {
            let cur = self.get(i, j) + self.get(t, j);
            self.set(i, j, cur);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let cur = -self.get(i, j).clone();
            self.set(i, j, cur);
        }
    }
}

/// Result of a Smith normal form computation: `u * a * v = diag(d)`.
///
/// `d` satisfies the divisibility chain `d[i] | d[i+1]` with all entries
/// non-negative and any zeros trailing; `u` and `v` are unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form with transforms.
///
/// Pivot selection: smallest nonzero absolute value in the remaining
/// submatrix, ties broken in row-major order.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.rows;
    let n = a.cols;
    let mut w = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let rank_bound = m.min(n);
    let mut t = 0;
    while t < rank_bound {
        // Pivot: smallest |nonzero| in w[t.., t..], row-major ties.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let e = w.get(i, j);
                if e.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if e.abs() < w.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        u.swap_rows(t, pi);
        w.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // Clear column t below the pivot.
            let mut col_dirty = false;
            for i in t + 1..m {
                if w.get(i, t).is_zero() {
                    continue;
                }
                let q = w.get(i, t).div_floor(w.get(t, t));
                w.row_sub_mul(i, t, &q);
                u.row_sub_mul(i, t, &q);
                if !w.get(i, t).is_zero() {
                    // Remainder is strictly smaller than |pivot|: promote it.
                    w.swap_rows(t, i);
                    u.swap_rows(t, i);
                    col_dirty = true;
                }
            }
            if col_dirty {
                continue 'reduce;
            }
            // Clear row t right of the pivot.
            let mut row_dirty = false;
            for j in t + 1..n {
                if w.get(t, j).is_zero() {
                    continue;
                }
                let q = w.get(t, j).div_floor(w.get(t, t));
                w.col_sub_mul(j, t, &q);
                v.col_sub_mul(j, t, &q);
                if !w.get(t, j).is_zero() {
                    w.swap_cols(t, j);
                    v.swap_cols(t, j);
                    row_dirty = true;
                }
            }
            if row_dirty {
                continue 'reduce;
            }
            // Cross is clear: enforce that the pivot divides the rest of the
            // submatrix so the invariant-factor chain holds.
            let mut offender: Option<usize> = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.get(i, j).is_multiple_of(w.get(t, t)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // Fold the offending row into row t and re-reduce; the
                    // pivot's absolute value strictly shrinks each round.
                    w.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break 'reduce,
            }
        }
        t += 1;
    }
    // Sign-normalize the diagonal.
    let mut d = Vec::with_capacity(rank_bound);
    for i in 0..rank_bound {
        if w.get(i, i).is_negative() {
            w.negate_row(i);
            u.negate_row(i);
        }
        d.push(w.get(i, i).clone());
    }
    debug_assert!({
        let mut ok = true;
        for i in 0..d.len().saturating_sub(1) {
            if !(d[i + 1].is_multiple_of(&d[i]) || (d[i].is_zero() && d[i + 1].is_zero())) {
                ok = false;
            }
        }
        ok
    });
    SmithForm { d, u, v }
}

/// A finitely generated subgroup of `Z^ambient_rank`, given by generator rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSubgroup {
    pub ambient_rank: usize,
    pub generators: IntMatrix,
}

impl LatticeSubgroup {
    /// Generators are the rows of `generators`; its column count must equal
    /// `ambient_rank`.
    pub fn new(ambient_rank: usize, generators: IntMatrix) -> Result<Self, LinAlgError> {
        if generators.cols != ambient_rank {
            return Err(LinAlgError::DimensionMismatch {
                expected: ambient_rank,
                got: generators.cols,
            });
        }
        Ok(LatticeSubgroup { ambient_rank, generators })
    }

    /// Subgroup with no generators (the zero subgroup).
    pub fn empty(ambient_rank: usize) -> Self {
        LatticeSubgroup { ambient_rank, generators: IntMatrix::zero(0, ambient_rank) }
    }
}

/// A finitely generated abelian group presented as `Z^r / subgroup`.
///
/// `invariant_factors[i] == 0` encodes a free `Z` factor, `1` a trivial
/// factor; the chain `f[i] | f[i+1]` holds up to the trailing zeros.
/// `projection` maps an ambient row vector to coset coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    pub invariant_factors: Vec<BigInt>,
    pub projection: IntMatrix,
}

impl QuotientGroup {
    /// Canonical coset coordinates of an ambient vector: component `i` is
    /// reduced into `[0, f_i)` when `f_i > 0` and kept verbatim when `f_i = 0`.
    pub fn project(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        let mut w = self.projection.row_vec_mul(v)?;
        for (wi, f) in w.iter_mut().zip(&self.invariant_factors) {
            if !f.is_zero() {
                *wi = wi.mod_floor(f);
            }
        }
        Ok(w)
    }

    /// Order of the group if finite, `None` when a free factor is present.
    pub fn order(&self) -> Option<BigInt> {
        let mut o = BigInt::one();
        for f in &self.invariant_factors {
            if f.is_zero() {
                return None;
            }
            o *= f;
        }
        Some(o)
    }
}

/// Quotient `Z^ambient_rank / subgroup` in invariant-factor form.
pub fn quotient_of(sub: &LatticeSubgroup) -> QuotientGroup {
    let r = sub.ambient_rank;
    let snf = smith_normal_form(&sub.generators);
    let mut invariant_factors = snf.d.clone();
    invariant_factors.resize(r, BigInt::zero());
    QuotientGroup { invariant_factors, projection: snf.v }
}

/// Membership test `v ∈ subgroup` via the Smith transforms.
pub fn lattice_contains(sub: &LatticeSubgroup, v: &[BigInt]) -> Result<bool, LinAlgError> {
    if v.len() != sub.ambient_rank {
        return Err(LinAlgError::DimensionMismatch { expected: sub.ambient_rank, got: v.len() });
    }
    let snf = smith_normal_form(&sub.generators);
    let w = snf.v.row_vec_mul(v)?;
    for (i, wi) in w.iter().enumerate() {
        let d = snf.d.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !wi.is_zero() {
                return Ok(false);
            }
        } else if !wi.is_multiple_of(&d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dense matrix of exact rationals (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }
}

/// Exact rank of a rational matrix.
pub fn rational_image_dim(a: &RatMatrix) -> usize {
    let mut red = RowReducer::new();
    for i in 0..a.rows {
        let row: SparseRow = (0..a.cols)
            .filter_map(|j| {
                let e = a.get(i, j);
                (!e.is_zero()).then(|| (j as u32, e.clone()))
            })
            .collect();
        red.offer(row);
    }
    red.rank()
}

/// Kernel dimension (right null space) by rank–nullity.
pub fn rational_kernel_dim(a: &RatMatrix) -> usize {
    a.cols - rational_image_dim(a)
}

/// Sparse row: strictly increasing column indices with nonzero entries.
pub(crate) type SparseRow = Vec<(u32, BigRational)>;

/// Incremental exact row reduction for rank computations on large sparse
/// systems. Pivot rows are stored monic; every arithmetic step is exact
/// rational (entries auto-reduced), so results are field-independent ranks.
pub(crate) struct RowReducer {
    pivots: HashMap<u32, usize>,
    rows: Vec<SparseRow>,
}

impl RowReducer {
    pub(crate) fn new() -> Self {
        RowReducer { pivots: HashMap::new(), rows: Vec::new() }
    }

    /// Reduce `row` against the accumulated pivots; if a nonzero remainder
    /// survives, store it as a new monic pivot row. Returns whether the rank
    /// increased.
    pub(crate) fn offer(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else { return false };
            match self.pivots.get(&lead) {
                Some(&idx) => {
                    let coeff = row[0].1.clone();
                    row = sparse_sub_scaled(&row, &self.rows[idx], &coeff);
                }
                None => {
                    let lead_coeff = row[0].1.clone();
                    if !lead_coeff.is_one() {
                        for (_, e) in row.iter_mut() {
                            *e /= lead_coeff.clone();
                        }
                    }
                    self.pivots.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// `a - factor * b` for sorted sparse rows (b is monic with leading column =
/// a's leading column, so the leading entry cancels).
fn sparse_sub_scaled(a: &SparseRow, b: &SparseRow, factor: &BigRational) -> SparseRow {
    let mut out = SparseRow::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, ea)), Some((cb, eb))) => {
                if ca < cb {
                    out.push((*ca, ea.clone()));
                    i += 1;
                } else if cb < ca {
                    let v = -factor * eb;
                    if !v.is_zero() {
                        out.push((*cb, v));
                    }
                    j += 1;
                } else {
                    let v = ea - factor * eb;
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((ca, ea)), None) => {
                out.push((*ca, ea.clone()));
                i += 1;
            }
            (None, Some((cb, eb))) => {
                let v = -factor * eb;
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// A growing basis of a rational subspace kept in reduced row-echelon form,
/// so that membership and coordinate expression over the stored rows are
/// single-pass operations.
#[derive(Debug, Clone)]
pub(crate) struct RrefBasis {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivot_cols: Vec<usize>,
}

impl RrefBasis {
    pub(crate) fn new(width: usize) -> Self {
        RrefBasis { width, rows: Vec::new(), pivot_cols: Vec::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn row(&self, i: usize) -> &[BigRational] {
        &self.rows[i]
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &c * ri;
                }
            }
        }
        w
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub(crate) fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[p].clone();
        for wi in w.iter_mut() {
            *wi /= lead.clone();
        }
        // Eliminate the new pivot column from the stored rows to keep the
        // full reduced form.
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri -= &c * wi;
                }
            }
        }
        self.rows.push(w);
        self.pivot_cols.push(p);
        true
    }

    /// Coordinates of `v` over the stored rows, or `None` when `v` lies
    /// outside the span.
    pub(crate) fn express(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        let mut coords = vec![BigRational::zero(); self.rows.len()];
        for (idx, (row, &p)) in self.rows.iter().zip(&self.pivot_cols).enumerate() {
            let c = w[p].clone();
            if !c.is_zero() {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &c * ri;
                }
            }
            coords[idx] = c;
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }
}
