//! Brute-force first cohomology over exact rationals.
//!
//! This module builds explicit finite-dimensional Lie algebras (structure
//! constants checked against antisymmetry and the Jacobi identity) and
//! explicit modules (the representation identity checked), computes H¹ as
//! derivations modulo inner derivations by sparse exact elimination, and
//! constructs the finite-dimensional quotients that model the supported
//! map algebras locally. [`oracle_ext_dim`] assembles those pieces into an
//! independent Ext¹ computation used to verify every closed formula at
//! desk scale. No floating point appears anywhere.

use crate::chars;
use crate::emalg::{validate, AlgebraConfig, EmalgError, EvalRepSpec, Family, PointSpec};
use crate::intlinalg::{RowReducer, RrefBasis, SparseRow};
use crate::rootsys::{self, RootSystemSpec, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Errors from oracle constructions and solves.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("inconsistent structure constants: {0}")]
    Inconsistent(String),
    #[error("label too large")]
    TooLarge,
    #[error("unsupported by the oracle: {0}")]
    Unsupported(String),
    #[error("the functional does not vanish on the derived subalgebra")]
    NonvanishingOnDerived,
    #[error("validation failed: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<EmalgError>),
}

fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Sparse rational matrices (row-major, rows sorted by column)
// ---------------------------------------------------------------------------

type SparseMat = Vec<SparseRow>;

fn mat_zero(dim: usize) -> SparseMat {
    vec![vec![]; dim]
}

fn collect_row(acc: BTreeMap<u32, BigRational>) -> SparseRow {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn row_add_scaled(acc: &mut BTreeMap<u32, BigRational>, row: &SparseRow, k: &BigRational) {
    for (c, v) in row {
        let e = acc.entry(*c).or_insert_with(BigRational::zero);
        *e += k * v;
    }
}

fn mat_mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    a.iter()
        .map(|arow| {
            let mut acc = BTreeMap::new();
            for (k, av) in arow {
                row_add_scaled(&mut acc, &b[*k as usize], av);
            }
            collect_row(acc)
        })
        .collect()
}

/// `Σ kᵢ·Mᵢ` over equally sized sparse matrices.
fn mat_lincomb(dim: usize, terms: &[(&SparseMat, BigRational)]) -> SparseMat {
    (0..dim)
        .map(|r| {
            let mut acc = BTreeMap::new();
            for (m, k) in terms {
                row_add_scaled(&mut acc, &m[r], k);
            }
            collect_row(acc)
        })
        .collect()
}

fn mat_equal(a: &SparseMat, b: &SparseMat) -> bool {
    a == b
}

// ---------------------------------------------------------------------------
// Lie algebras and modules with checked invariants
// ---------------------------------------------------------------------------

/// A finite-dimensional Lie algebra given by exact structure constants.
/// Construction verifies antisymmetry (by building from the upper triangle)
/// and the Jacobi identity on every basis triple.
#[derive(Debug, Clone)]
pub struct FinDimLie {
    pub dim: usize,
    /// `bracket[i*dim + j]` = the combination `[x_i, x_j]` over the basis.
    bracket: Vec<SparseRow>,
    pub basis_labels: Vec<String>,
}

type Combo = Vec<(usize, BigRational)>;

impl FinDimLie {
    /// Build from upper-triangle brackets `[x_i, x_j]` (i < j); the lower
    /// triangle is filled antisymmetrically and `[x,x] = 0`.
    pub fn from_upper(
        dim: usize,
        upper: &[(usize, usize, Combo)],
        basis_labels: Vec<String>,
    ) -> Result<Self, OracleError> {
        assert_eq!(basis_labels.len(), dim, "one label per basis element");
        let mut bracket = vec![SparseRow::new(); dim * dim];
        for (i, j, combo) in upper {
            assert!(i < j && *j < dim, "upper-triangle indices required");
            let mut acc = BTreeMap::new();
            for (k, c) in combo {
                assert!(*k < dim);
                let e = acc.entry(*k as u32).or_insert_with(BigRational::zero);
                *e += c;
            }
            let row = collect_row(acc);
            bracket[j * dim + i] = row.iter().map(|(c, v)| (*c, -v)).collect();
            bracket[i * dim + j] = row;
        }
        let lie = FinDimLie { dim, bracket, basis_labels };
        lie.check_jacobi()?;
        Ok(lie)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseRow {
        &self.bracket[i * self.dim + j]
    }

    /// `[a, x_k]` for a basis combination `a`.
    fn bracket_with_basis(&self, a: &SparseRow, k: usize) -> SparseRow {
        let mut acc = BTreeMap::new();
        for (m, c) in a {
            row_add_scaled(&mut acc, self.bracket(*m as usize, k), c);
        }
        collect_row(acc)
    }

    /// `[a, b]` for basis combinations.
    fn bracket_of_combos(&self, a: &SparseRow, b: &SparseRow) -> SparseRow {
        let mut acc = BTreeMap::new();
        for (i, ci) in a {
            for (j, cj) in b {
                row_add_scaled(&mut acc, self.bracket(*i as usize, *j as usize), &(ci * cj));
            }
        }
        collect_row(acc)
    }

    fn check_jacobi(&self) -> Result<(), OracleError> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let mut acc = BTreeMap::new();
                    for (c, v) in self.bracket_with_basis(self.bracket(i, j), k) {
                        let e = acc.entry(c).or_insert_with(BigRational::zero);
                        *e += v;
                    }
                    for (c, v) in self.bracket_with_basis(self.bracket(j, k), i) {
                        let e = acc.entry(c).or_insert_with(BigRational::zero);
                        *e += v;
                    }
                    for (c, v) in self.bracket_with_basis(self.bracket(k, i), j) {
                        let e = acc.entry(c).or_insert_with(BigRational::zero);
                        *e += v;
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return Err(OracleError::Inconsistent(format!(
                            "Jacobi identity fails on basis triple ({}, {}, {})",
                            self.basis_labels[i], self.basis_labels[j], self.basis_labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional module over a [`FinDimLie`], one exact action matrix
/// per basis element; construction verifies the representation identity
/// `A([x,y]) = A(x)A(y) − A(y)A(x)` on every basis pair.
#[derive(Debug, Clone)]
pub struct FinModule {
    pub dim: usize,
    action: Vec<SparseMat>,
}

impl FinModule {
    pub fn new(l: &FinDimLie, action: Vec<SparseMat>) -> Result<Self, OracleError> {
        let m = FinModule::shape_checked(l, action);
        for i in 0..l.dim {
            for j in (i + 1)..l.dim {
                let comm = {
                    let ab = mat_mul(&m.action[i], &m.action[j]);
                    let ba = mat_mul(&m.action[j], &m.action[i]);
                    mat_lincomb(m.dim, &[(&ab, BigRational::one()), (&ba, -BigRational::one())])
                };
                let terms: Vec<(&SparseMat, BigRational)> = l
                    .bracket(i, j)
                    .iter()
                    .map(|(k, c)| (&m.action[*k as usize], c.clone()))
                    .collect();
                let expect = mat_lincomb(m.dim, &terms);
                if !mat_equal(&comm, &expect) {
                    return Err(OracleError::Inconsistent(format!(
                        "representation identity fails on basis pair ({}, {})",
                        l.basis_labels[i], l.basis_labels[j]
                    )));
                }
            }
        }
        Ok(m)
    }

    /// For modules whose identity holds by construction (functorial images
    /// of checked modules); shapes are still validated.
    fn unchecked(l: &FinDimLie, action: Vec<SparseMat>) -> Self {
        FinModule::shape_checked(l, action)
    }

    fn shape_checked(l: &FinDimLie, action: Vec<SparseMat>) -> Self {
        assert_eq!(action.len(), l.dim, "one action matrix per basis element");
        let dim = action.first().map(|m| m.len()).unwrap_or(0);
        for m in &action {
            assert_eq!(m.len(), dim, "square action matrices of equal size");
        }
        FinModule { dim, action }
    }

    pub fn action(&self, i: usize) -> &SparseMat {
        &self.action[i]
    }

    /// The trivial one-dimensional module.
    pub fn trivial(l: &FinDimLie) -> Self {
        FinModule { dim: 1, action: vec![vec![vec![]]; l.dim] }
    }
}

/// A one-dimensional module `k_λ`; the construction check enforces that `λ`
/// kills the derived subalgebra.
pub fn one_dim_module(l: &FinDimLie, lambda: &[BigRational]) -> Result<FinModule, OracleError> {
    assert_eq!(lambda.len(), l.dim);
    let action: Vec<SparseMat> = lambda
        .iter()
        .map(|c| {
            if c.is_zero() {
                vec![vec![]]
            } else {
                vec![vec![(0u32, c.clone())]]
            }
        })
        .collect();
    FinModule::new(l, action).map_err(|_| OracleError::NonvanishingOnDerived)
}

// ---------------------------------------------------------------------------
// Cohomology solves
// ---------------------------------------------------------------------------

/// dim H¹(L, V) = dim Der(L,V) − dim IDer(L,V), by exact sparse elimination
/// on the derivation equations `D([x,y]) = x·D(y) − y·D(x)`.
pub fn h1_dim(l: &FinDimLie, v: &FinModule) -> u64 {
    let n = l.dim;
    let d = v.dim;
    let col = |i: usize, b: usize| (i * d + b) as u32;
    let mut sys = RowReducer::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for a in 0..d {
                let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
                for (k, c) in l.bracket(i, j) {
                    let e = acc.entry(col(*k as usize, a)).or_insert_with(BigRational::zero);
                    *e += c;
                }
                for (b, val) in &v.action(i)[a] {
                    let e = acc.entry(col(j, *b as usize)).or_insert_with(BigRational::zero);
                    *e -= val;
                }
                for (b, val) in &v.action(j)[a] {
                    let e = acc.entry(col(i, *b as usize)).or_insert_with(BigRational::zero);
                    *e += val;
                }
                sys.offer(collect_row(acc));
            }
        }
    }
    let der = n * d - sys.rank();
    // Inner derivations: the image of v ↦ (x ↦ x·v), of dimension
    // dim V − dim V^L = rank of the stacked action matrix.
    let mut stacked = RowReducer::new();
    for i in 0..n {
        for a in 0..d {
            stacked.offer(v.action(i)[a].clone());
        }
    }
    (der - stacked.rank()) as u64
}

/// The module `Hom(V₁, V₂)` with `x·M = A₂(x)M − M A₁(x)`; its identity
/// holds because the factors' identities do.
pub fn hom_module(l: &FinDimLie, v1: &FinModule, v2: &FinModule) -> FinModule {
    let d1 = v1.dim;
    let d2 = v2.dim;
    let idx = |r: usize, c: usize| (r * d1 + c) as u32;
    let action: Vec<SparseMat> = (0..l.dim)
        .map(|x| {
            let a1 = v1.action(x);
            let a2 = v2.action(x);
            // Column view of A₁ for the right-multiplication term.
            let mut a1_cols: Vec<Vec<(usize, BigRational)>> = vec![vec![]; d1];
            for (s, row) in a1.iter().enumerate() {
                for (c, val) in row {
                    a1_cols[*c as usize].push((s, val.clone()));
                }
            }
            let mut mat = Vec::with_capacity(d1 * d2);
            for r in 0..d2 {
                for c in 0..d1 {
                    let mut acc = BTreeMap::new();
                    for (s, val) in &a2[r] {
                        let e = acc
                            .entry(idx(*s as usize, c))
                            .or_insert_with(BigRational::zero);
                        *e += val;
                    }
                    for (s, val) in &a1_cols[c] {
                        let e = acc.entry(idx(r, *s)).or_insert_with(BigRational::zero);
                        *e -= val;
                    }
                    mat.push(collect_row(acc));
                }
            }
            mat
        })
        .collect();
    FinModule::unchecked(l, action)
}

/// dim Ext¹(V₁, V₂) over `L`, as H¹ with coefficients in `Hom(V₁, V₂)`.
pub fn ext1_dim(l: &FinDimLie, v1: &FinModule, v2: &FinModule) -> u64 {
    h1_dim(l, &hom_module(l, v1, v2))
}

/// dim H¹(L, k_λ) by the kernel-of-λ route: for `λ = 0` it is
/// `dim L/[L,L]`; otherwise, with `K = ker λ` and `z` any element with
/// `λ(z) = 1`, it is `dim K − dim(K' + {u − [z,u] : u ∈ K})`. Must agree
/// with [`h1_dim`] on the one-dimensional module.
pub fn h1_onedim_via_k_lambda(
    l: &FinDimLie,
    lambda: &[BigRational],
) -> Result<u64, OracleError> {
    assert_eq!(lambda.len(), l.dim);
    let n = l.dim;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut s = BigRational::zero();
            for (k, c) in l.bracket(i, j) {
                s += c * &lambda[*k as usize];
            }
            if !s.is_zero() {
                return Err(OracleError::NonvanishingOnDerived);
            }
        }
    }
    if lambda.iter().all(|c| c.is_zero()) {
        // The answer is the dimension of the abelianization.
        let mut derived = RowReducer::new();
        for i in 0..n {
            for j in (i + 1)..n {
                derived.offer(l.bracket(i, j).clone());
            }
        }
        return Ok((n - derived.rank()) as u64);
    }
    let i0 = lambda.iter().position(|c| !c.is_zero()).unwrap();
    let z: SparseRow = vec![(i0 as u32, lambda[i0].recip())];
    // Basis of K = ker λ: u_j = x_j − λ_j·z for j ≠ i0.
    let kernel_basis: Vec<SparseRow> = (0..n)
        .filter(|&j| j != i0)
        .map(|j| {
            let mut acc = BTreeMap::new();
            acc.insert(j as u32, BigRational::one());
            let e = acc.entry(i0 as u32).or_insert_with(BigRational::zero);
            *e -= &lambda[j] / &lambda[i0];
            collect_row(acc)
        })
        .collect();
    let mut span = RowReducer::new();
    for (a, ua) in kernel_basis.iter().enumerate() {
        for ub in kernel_basis.iter().skip(a + 1) {
            span.offer(l.bracket_of_combos(ua, ub));
        }
    }
    for u in &kernel_basis {
        let zu = l.bracket_of_combos(&z, u);
        let mut acc: BTreeMap<u32, BigRational> =
            u.iter().map(|(c, v)| (*c, v.clone())).collect();
        for (c, v) in zu {
            let e = acc.entry(c).or_insert_with(BigRational::zero);
            *e -= v;
        }
        span.offer(collect_row(acc));
    }
    Ok((n - 1 - span.rank()) as u64)
}

// ---------------------------------------------------------------------------
// Built-in simple algebras and their evaluation modules
// ---------------------------------------------------------------------------

/// Structure constants for the built-in simple algebras (rank ≤ 2 of type
/// A), in a Chevalley-style basis.
pub fn builtin_simple(spec: &RootSystemSpec) -> Result<FinDimLie, OracleError> {
    match spec.to_string().as_str() {
        "A1" => sl2(),
        "A2" => sl3(),
        other => Err(OracleError::Unsupported(format!(
            "no built-in structure constants for {other}"
        ))),
    }
}

fn sl2() -> Result<FinDimLie, OracleError> {
    // Basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = −2f.
    FinDimLie::from_upper(
        3,
        &[
            (0, 1, vec![(2, q(1))]),
            (0, 2, vec![(0, q(-2))]),
            (1, 2, vec![(1, q(2))]),
        ],
        vec!["e".into(), "f".into(), "h".into()],
    )
}

type Dense3 = [[i64; 3]; 3];

fn sl3_matrices() -> Vec<(Dense3, &'static str)> {
    let unit = |r: usize, c: usize| -> Dense3 {
        let mut m = [[0i64; 3]; 3];
        m[r][c] = 1;
        m
    };
    let mut h1 = [[0i64; 3]; 3];
    h1[0][0] = 1;
    h1[1][1] = -1;
    let mut h2 = [[0i64; 3]; 3];
    h2[1][1] = 1;
    h2[2][2] = -1;
    vec![
        (unit(0, 1), "e12"),
        (unit(1, 2), "e23"),
        (unit(0, 2), "e13"),
        (unit(1, 0), "e21"),
        (unit(2, 1), "e32"),
        (unit(2, 0), "e31"),
        (h1, "h1"),
        (h2, "h2"),
    ]
}

fn dense3_comm(a: &Dense3, b: &Dense3) -> Dense3 {
    let mut out = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            for k in 0..3 {
                out[r][c] += a[r][k] * b[k][c] - b[r][k] * a[k][c];
            }
        }
    }
    out
}

fn sl3() -> Result<FinDimLie, OracleError> {
    let mats = sl3_matrices();
    let mut upper = Vec::new();
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let comm = dense3_comm(&mats[i].0, &mats[j].0);
            let combo = express_in_sl3_basis(&comm);
            if !combo.is_empty() {
                upper.push((i, j, combo));
            }
        }
    }
    FinDimLie::from_upper(8, &upper, mats.iter().map(|(_, l)| l.to_string()).collect())
}

/// Express a traceless 3×3 matrix over the generator list by reading off
/// entries (off-diagonal entries pick the matching elementary matrix, the
/// diagonal decomposes over h₁, h₂); verified by reconstruction.
fn express_in_sl3_basis(m: &Dense3) -> Combo {
    let coeffs = [
        m[0][1], m[1][2], m[0][2], m[1][0], m[2][1], m[2][0], m[0][0], -m[2][2],
    ];
    let mut recon = [[0i64; 3]; 3];
    for (c, (mat, _)) in coeffs.iter().zip(sl3_matrices()) {
        for r in 0..3 {
            for col in 0..3 {
                recon[r][col] += c * mat[r][col];
            }
        }
    }
    assert_eq!(&recon, m, "matrix must lie in the traceless span");
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, q(*c)))
        .collect()
}

/// The irreducible sl2 module with highest weight `n` in the standard
/// weight basis `v_0, …, v_n`.
fn sl2_module(l: &FinDimLie, n: usize) -> Result<FinModule, OracleError> {
    let d = n + 1;
    let mut e = mat_zero(d);
    let mut f = mat_zero(d);
    let mut h = mat_zero(d);
    for k in 0..d {
        if k >= 1 {
            e[k - 1].push((k as u32, q((n - k + 1) as i64)));
        }
        if k + 1 < d {
            f[k + 1].push((k as u32, q((k + 1) as i64)));
        }
        let hv = n as i64 - 2 * k as i64;
        if hv != 0 {
            h[k].push((k as u32, q(hv)));
        }
    }
    FinModule::new(l, vec![e, f, h])
}

/// The irreducible sl3 module `V(a,b)`, realized as the cyclic span of the
/// highest-weight line inside `(k³)^{⊗a} ⊗ (k³*)^{⊗b}`.
fn sl3_module(l: &FinDimLie, a: usize, b: usize) -> Result<FinModule, OracleError> {
    let mats = sl3_matrices();
    let slots = a + b;
    let big = 3usize.pow(slots as u32);
    let pow3: Vec<usize> = (0..slots).map(|s| 3usize.pow(s as u32)).collect();
    // The action of generator g on the tensor space, as a function on dense
    // vectors (Leibniz over slots; dual slots act by −Xᵀ).
    let apply = |gen: &Dense3, v: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); big];
        for (idx, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for s in 0..slots {
                let digit = (idx / pow3[s]) % 3;
                for r in 0..3 {
                    let entry = if s < a { gen[r][digit] } else { -gen[digit][r] };
                    if entry != 0 {
                        out[idx - digit * pow3[s] + r * pow3[s]] += coeff * q(entry);
                    }
                }
            }
        }
        out
    };
    // Highest-weight vector: e₀ in every covariant slot, the highest dual
    // basis vector (index 2) in every contravariant slot.
    let hw_idx: usize = (a..slots).map(|s| 2 * pow3[s]).sum();
    let mut hw = vec![BigRational::zero(); big];
    hw[hw_idx] = BigRational::one();
    let mut span = RrefBasis::new(big);
    span.insert(&hw);
    let mut queue = vec![hw];
    let lowering = [mats[3].0, mats[4].0]; // e21, e32
    while let Some(v) = queue.pop() {
        for gen in &lowering {
            let w = apply(gen, &v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    let cd = rootsys::build(&RootSystemSpec::parse("A2").unwrap()).expect("A2");
    let expect = chars::dim(&cd, &Weight::new(vec![a as i64, b as i64]));
    assert_eq!(span.len() as u64, expect, "cyclic span must have the predicted dimension");
    let d = span.len();
    let mut action = Vec::with_capacity(8);
    for (gen, _) in &mats {
        let mut rows: Vec<BTreeMap<u32, BigRational>> = vec![BTreeMap::new(); d];
        for i in 0..d {
            let w = apply(gen, span.row(i));
            let coords = span
                .express(&w)
                .expect("irreducible submodule is closed under the action");
            for (r, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    rows[r].insert(i as u32, c);
                }
            }
        }
        action.push(rows.into_iter().map(collect_row).collect::<SparseMat>());
    }
    FinModule::new(l, action)
}

/// The evaluation module of an irreducible label over
/// `builtin_simple(spec)`. Dimension is gated at 64.
pub fn evaluation_module(spec: &RootSystemSpec, hw: &Weight) -> Result<FinModule, OracleError> {
    let cd = rootsys::build(spec).map_err(|e| OracleError::Unsupported(e.to_string()))?;
    if chars::dim(&cd, hw) > 64 {
        return Err(OracleError::TooLarge);
    }
    let l = builtin_simple(spec)?;
    match spec.to_string().as_str() {
        "A1" => sl2_module(&l, hw.coords[0] as usize),
        "A2" => sl3_module(&l, hw.coords[0] as usize, hw.coords[1] as usize),
        other => Err(OracleError::Unsupported(format!("no built-in modules for {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Algebra constructions: currents, jets, sums, tensor modules
// ---------------------------------------------------------------------------

/// `g ⊗ k[t]/(t^N)` with basis `x_i ⊗ t^p` indexed `p·dim(g) + i`.
pub fn build_truncated_current(g: &FinDimLie, n: usize) -> Result<FinDimLie, OracleError> {
    assert!(n >= 1, "at least one layer");
    let d = g.dim;
    let dim = d * n;
    let mut upper = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let (p, i) = (a / d, a % d);
            let (qq, j) = (b / d, b % d);
            if p + qq >= n {
                continue;
            }
            let combo: Combo = g
                .bracket(i, j)
                .iter()
                .map(|(k, c)| ((p + qq) * d + *k as usize, c.clone()))
                .collect();
            if !combo.is_empty() {
                upper.push((a, b, combo));
            }
        }
    }
    let labels = (0..n)
        .flat_map(|p| {
            g.basis_labels.iter().map(move |l| {
                if p == 0 {
                    l.clone()
                } else {
                    format!("{l}*t^{p}")
                }
            })
        })
        .collect();
    FinDimLie::from_upper(dim, &upper, labels)
}

/// `g ⊗ (k ⊕ m/m²)` for a `d`-dimensional cotangent space: a core copy of
/// `g` plus `d` abelian layers on which the core acts adjointly. Basis
/// `x_i ⊗ u_s` indexed `s·dim(g) + i` with `u_0 = 1`.
pub fn build_first_order_jet(g: &FinDimLie, d: usize) -> Result<FinDimLie, OracleError> {
    let gd = g.dim;
    let dim = gd * (d + 1);
    let mut upper = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let (s, i) = (a / gd, a % gd);
            let (t, j) = (b / gd, b % gd);
            if s != 0 && t != 0 {
                continue;
            }
            let layer = s.max(t);
            let combo: Combo = g
                .bracket(i, j)
                .iter()
                .map(|(k, c)| (layer * gd + *k as usize, c.clone()))
                .collect();
            if !combo.is_empty() {
                upper.push((a, b, combo));
            }
        }
    }
    let labels = (0..=d)
        .flat_map(|s| {
            g.basis_labels.iter().map(move |l| {
                if s == 0 {
                    l.clone()
                } else {
                    format!("{l}*u{s}")
                }
            })
        })
        .collect();
    FinDimLie::from_upper(dim, &upper, labels)
}

/// External direct sum of Lie algebras (blocks commute).
pub fn direct_sum(parts: &[&FinDimLie]) -> Result<FinDimLie, OracleError> {
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let mut upper = Vec::new();
    let mut labels = Vec::with_capacity(dim);
    let mut offset = 0;
    for (idx, part) in parts.iter().enumerate() {
        for i in 0..part.dim {
            for j in (i + 1)..part.dim {
                let combo: Combo = part
                    .bracket(i, j)
                    .iter()
                    .map(|(k, c)| (offset + *k as usize, c.clone()))
                    .collect();
                if !combo.is_empty() {
                    upper.push((offset + i, offset + j, combo));
                }
            }
        }
        labels.extend(part.basis_labels.iter().map(|l| {
            if parts.len() == 1 {
                l.clone()
            } else {
                format!("{l}[{idx}]")
            }
        }));
        offset += part.dim;
    }
    FinDimLie::from_upper(dim, &upper, labels)
}

/// Raw action table of a module over a block of a direct sum, extended by
/// zero to the whole algebra.
fn extend_actions(total_dim: usize, offset: usize, action: &[SparseMat], vdim: usize) -> Vec<SparseMat> {
    let mut out = vec![mat_zero(vdim); total_dim];
    for (i, m) in action.iter().enumerate() {
        out[offset + i] = m.clone();
    }
    out
}

/// Pull a module back through the projection of `l` onto a copy of the
/// module's algebra whose basis sits at `offset..offset+g_dim` in `l` (the
/// complementary basis elements act by zero). Meaningful when that
/// complement spans an ideal — jets over their core, summands of a direct
/// sum — and the representation identity is re-checked on construction.
pub fn pullback_module(
    l: &FinDimLie,
    offset: usize,
    base: &FinModule,
) -> Result<FinModule, OracleError> {
    let g_dim = base.action.len();
    assert!(offset + g_dim <= l.dim, "projection window must fit in the algebra");
    let mut action = vec![mat_zero(base.dim); l.dim];
    for (i, m) in base.action.iter().enumerate() {
        action[offset + i] = m.clone();
    }
    FinModule::new(l, action)
}

/// Tensor product of two modules over the same algebra, with the usual
/// Leibniz action; index `(p, q) ↦ p·dim₂ + q`.
pub fn outer_tensor_module(l: &FinDimLie, m1: &FinModule, m2: &FinModule) -> Result<FinModule, OracleError> {
    let raw = tensor_actions(
        l.dim,
        &(0..l.dim).map(|x| m1.action(x).clone()).collect::<Vec<_>>(),
        m1.dim,
        &(0..l.dim).map(|x| m2.action(x).clone()).collect::<Vec<_>>(),
        m2.dim,
    );
    FinModule::new(l, raw)
}

fn tensor_actions(
    ldim: usize,
    a1: &[SparseMat],
    d1: usize,
    a2: &[SparseMat],
    d2: usize,
) -> Vec<SparseMat> {
    let d = d1 * d2;
    (0..ldim)
        .map(|x| {
            let m1 = &a1[x];
            let m2 = &a2[x];
            let mut mat = Vec::with_capacity(d);
            for p in 0..d1 {
                for qq in 0..d2 {
                    let mut acc = BTreeMap::new();
                    for (s, val) in &m1[p] {
                        let e = acc
                            .entry((*s as usize * d2 + qq) as u32)
                            .or_insert_with(BigRational::zero);
                        *e += val;
                    }
                    for (t, val) in &m2[qq] {
                        let e = acc
                            .entry((p * d2 + *t as usize) as u32)
                            .or_insert_with(BigRational::zero);
                        *e += val;
                    }
                    mat.push(collect_row(acc));
                }
            }
            mat
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Onsager pairs and their finite quotients
// ---------------------------------------------------------------------------

/// A simple algebra with an order-2 eigenspace decomposition `g = g₀ ⊕ g₁`
/// (basis ordered `g₀,rss | g₀,ab | g₁`), all brackets respecting the
/// grading.
#[derive(Debug, Clone)]
pub struct OnsagerPair {
    pub g: FinDimLie,
    pub n0_rss: usize,
    pub n0_ab: usize,
}

impl OnsagerPair {
    pub fn new(g: FinDimLie, n0_rss: usize, n0_ab: usize) -> Result<Self, OracleError> {
        let n0 = n0_rss + n0_ab;
        assert!(n0 <= g.dim);
        for i in 0..g.dim {
            for j in (i + 1)..g.dim {
                let odd = (i >= n0) ^ (j >= n0);
                for (k, _) in g.bracket(i, j) {
                    let target_odd = *k as usize >= n0;
                    if target_odd != odd {
                        return Err(OracleError::Inconsistent(format!(
                            "bracket ({}, {}) violates the eigenspace grading",
                            g.basis_labels[i], g.basis_labels[j]
                        )));
                    }
                }
            }
        }
        Ok(OnsagerPair { g, n0_rss, n0_ab })
    }

    pub fn n0(&self) -> usize {
        self.n0_rss + self.n0_ab
    }
}

/// The built-in pair: sl2 with the involution that swaps `e ↔ f` and
/// negates `h`. Fixed part spanned by `z₀ = (e+f)/2`; odd part spanned by
/// `v₊ = h − e + f` and `v₋ = h + e − f`, with `[z₀, v±] = ±v±` and
/// `[v₊, v₋] = 8z₀`.
pub fn builtin_sl2_pair() -> OnsagerPair {
    let g = FinDimLie::from_upper(
        3,
        &[
            (0, 1, vec![(1, q(1))]),
            (0, 2, vec![(2, q(-1))]),
            (1, 2, vec![(0, q(8))]),
        ],
        vec!["z0".into(), "v+".into(), "v-".into()],
    )
    .expect("built-in pair brackets satisfy Jacobi");
    OnsagerPair::new(g, 0, 1).expect("built-in pair is graded")
}

/// Dense rational polynomials in `z`, low degree first, no trailing zeros.
type Poly = Vec<BigRational>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(out)
}

/// Remainder of `p` modulo a monic polynomial `m`.
fn poly_rem(p: &Poly, m: &Poly) -> Poly {
    assert!(m.last().map(|c| c.is_one()).unwrap_or(false), "monic modulus");
    let deg_m = m.len() - 1;
    let mut r = p.clone();
    while r.len() > deg_m {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - deg_m;
        for (k, mk) in m.iter().take(deg_m).enumerate() {
            r[shift + k] -= &lead * mk;
        }
    }
    poly_trim(r)
}

fn z_pow(k: usize) -> Poly {
    let mut p = vec![BigRational::zero(); k + 1];
    p[k] = BigRational::one();
    p
}

/// A finite-dimensional quotient of an Onsager-type map algebra adapted to
/// a set of evaluation points, together with the evaluation of every basis
/// element into the target pair.
pub struct OnsagerQuotient {
    pub lie: FinDimLie,
    /// `eval[point][basis_idx]` = combination over the pair's basis.
    pub eval: Vec<Vec<Combo>>,
}

/// Build the quotient adapted to points `xs` on the doubled line (each `x`
/// describes the orbit `{x, 1/x}`; `x = ±1` are the fixed points). In the
/// coordinates `z = t + t⁻¹`, `y = t − t⁻¹` (so `y² = z² − 4`):
/// the fixed-part semisimple component is cut by `∏(z−aᵢ)^{eᵢ}`, the central
/// component by `(z²−4)·∏_free(z−aᵢ)²`, and the odd component by
/// `y·∏(z−aᵢ)^{eᵢ}`, with `aᵢ = xᵢ + 1/xᵢ` and `eᵢ = 1` at fixed points,
/// `2` at free ones.
pub fn build_onsager_quotient(
    pair: &OnsagerPair,
    xs: &[BigRational],
) -> Result<OnsagerQuotient, OracleError> {
    let n0 = pair.n0();
    let gd = pair.g.dim;
    let mut points = Vec::new();
    let mut seen_a: Vec<BigRational> = Vec::new();
    for x in xs {
        if x.is_zero() {
            return Err(OracleError::Unsupported("x = 0 is not on the doubled line".into()));
        }
        let a = x + x.recip();
        let y = x - x.recip();
        if seen_a.contains(&a) {
            return Err(OracleError::Unsupported(
                "two points lie in the same orbit (equal z-values)".into(),
            ));
        }
        seen_a.push(a.clone());
        points.push((a, y));
    }
    let z2m4 = vec![q(-4), q(0), q(1)];
    let mut p_side = vec![BigRational::one()];
    let mut p_ab = z2m4.clone();
    for (a, y) in &points {
        let lin = vec![-a.clone(), BigRational::one()];
        let fixed = y.is_zero();
        debug_assert_eq!(fixed, *a == q(2) || *a == q(-2));
        p_side = poly_mul(&p_side, &lin);
        if !fixed {
            p_side = poly_mul(&p_side, &lin);
            p_ab = poly_mul(&p_ab, &poly_mul(&lin, &lin));
        }
    }
    let deg_side = p_side.len() - 1;
    let deg_ab = p_ab.len() - 1;
    // Basis layout: per fixed-part generator, monomials below its modulus;
    // per odd generator, y times monomials below the side modulus.
    let width = |i: usize| -> usize {
        if i < pair.n0_rss {
            deg_side
        } else if i < n0 {
            deg_ab
        } else {
            deg_side
        }
    };
    let mut offsets = vec![0usize; gd];
    let mut dim = 0usize;
    for i in 0..gd {
        offsets[i] = dim;
        dim += width(i);
    }
    let qidx = |i: usize, k: usize| offsets[i] + k;
    let modulus = |i: usize| -> &Poly {
        if i >= pair.n0_rss && i < n0 {
            &p_ab
        } else {
            &p_side
        }
    };
    let mut upper = Vec::new();
    for i in 0..gd {
        for k in 0..width(i) {
            for j in i..gd {
                let l_start = if j == i { k + 1 } else { 0 };
                for l in l_start..width(j) {
                    let both_odd = i >= n0 && j >= n0;
                    let base = if both_odd {
                        poly_mul(&z_pow(k + l), &z2m4)
                    } else {
                        z_pow(k + l)
                    };
                    let mut combo = Combo::new();
                    for (m, c) in pair.g.bracket(i, j) {
                        let m = *m as usize;
                        let red = poly_rem(&base, modulus(m));
                        for (p, coeff) in red.iter().enumerate() {
                            if !coeff.is_zero() {
                                debug_assert!(p < width(m));
                                combo.push((qidx(m, p), c * coeff));
                            }
                        }
                    }
                    if !combo.is_empty() {
                        upper.push((qidx(i, k), qidx(j, l), combo));
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(dim);
    for i in 0..gd {
        for k in 0..width(i) {
            let base = &pair.g.basis_labels[i];
            let odd = i >= n0;
            labels.push(match (odd, k) {
                (false, 0) => base.clone(),
                (false, _) => format!("{base}*z^{k}"),
                (true, 0) => format!("{base}*y"),
                (true, _) => format!("{base}*y*z^{k}"),
            });
        }
    }
    let lie = FinDimLie::from_upper(dim, &upper, labels)?;
    let eval = points
        .iter()
        .map(|(a, y)| {
            (0..gd)
                .flat_map(|i| {
                    (0..width(i)).map(move |k| (i, k))
                })
                .map(|(i, k)| {
                    let mut c = num_traits::pow::pow(a.clone(), k);
                    if i >= n0 {
                        c *= y;
                    }
                    if c.is_zero() {
                        vec![]
                    } else {
                        vec![(i, c)]
                    }
                })
                .collect()
        })
        .collect();
    Ok(OnsagerQuotient { lie, eval })
}

/// Action matrices of the built-in pair's basis `z₀, v₊, v₋` on the sl2
/// module `V(n)` evaluated at a free point.
fn builtin_pair_module(n: usize) -> Result<Vec<SparseMat>, OracleError> {
    let l = sl2()?;
    let m = sl2_module(&l, n)?;
    let (e, f, h) = (m.action(0), m.action(1), m.action(2));
    let d = m.dim;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let z0 = mat_lincomb(d, &[(e, half.clone()), (f, half)]);
    let vp = mat_lincomb(d, &[(h, q(1)), (e, q(-1)), (f, q(1))]);
    let vm = mat_lincomb(d, &[(h, q(1)), (e, q(1)), (f, q(-1))]);
    Ok(vec![z0, vp, vm])
}

/// The local model of an exchange-involution orbit: a first-order jet of
/// `s` at a fixed point, and a direct sum of two such jets for a free
/// (two-point) orbit.
pub fn build_exchange_quotient(
    s: &FinDimLie,
    fixed: bool,
    tangent_dim: usize,
) -> Result<FinDimLie, OracleError> {
    let jet = build_first_order_jet(s, tangent_dim)?;
    if fixed {
        Ok(jet)
    } else {
        direct_sum(&[&jet, &jet])
    }
}

// ---------------------------------------------------------------------------
// Top-level driver
// ---------------------------------------------------------------------------

struct Slot {
    lie: FinDimLie,
    /// Per rep (from, to): raw action matrices over this slot's algebra.
    modules: [Vec<SparseMat>; 2],
    dims: [usize; 2],
}

/// Pull an evaluation module back through a jet: the core layer acts, the
/// nilpotent layers act by zero.
fn jet_pullback(jet_dim: usize, g_dim: usize, base: &FinModule) -> Vec<SparseMat> {
    let mut out = vec![mat_zero(base.dim); jet_dim];
    for i in 0..g_dim {
        out[i] = base.action(i).clone();
    }
    out
}

fn trivial_actions(ldim: usize) -> Vec<SparseMat> {
    vec![vec![vec![]]; ldim]
}

fn label_weight(rep: &EvalRepSpec, point: &str, rank: usize) -> Weight {
    rep.support
        .get(point)
        .map(|l| l.hw.clone())
        .unwrap_or_else(|| Weight::zero(rank))
}

/// Brute-force Ext¹ between two validated representations: build a faithful
/// finite-dimensional model of the relevant quotient of the map algebra,
/// realize both representations as checked modules over it, and solve the
/// derivation equations exactly.
pub fn oracle_ext_dim(
    config: &AlgebraConfig,
    from: &EvalRepSpec,
    to: &EvalRepSpec,
) -> Result<u64, OracleError> {
    let mut errs = validate(config, from);
    errs.extend(validate(config, to));
    if !errs.is_empty() {
        return Err(OracleError::Validation(errs));
    }
    if from.noneval_tag != to.noneval_tag {
        return Err(OracleError::Unsupported(
            "distinct non-evaluation twists have no finite-dimensional model".into(),
        ));
    }
    if config.g_ab_dim > 0 {
        return Err(OracleError::Unsupported(
            "abelian target factors have no finite-dimensional model".into(),
        ));
    }
    let union: Vec<&PointSpec> = {
        let ids: BTreeSet<&String> = from.support.keys().chain(to.support.keys()).collect();
        ids.iter().map(|id| config.point(id).expect("validated point id")).collect()
    };
    match &config.family {
        Family::Untwisted | Family::Multiloop { .. } => {
            let g = builtin_simple(&config.g_spec)?;
            let mut slots = Vec::new();
            for pt in &union {
                let jet = build_first_order_jet(&g, pt.tangent_dim)?;
                let jet_dim = jet.dim;
                let mut modules = Vec::new();
                let mut dims = Vec::new();
                for rep in [from, to] {
                    let hw = label_weight(rep, &pt.id, config.g_spec.rank());
                    let base = evaluation_module(&config.g_spec, &hw)?;
                    dims.push(base.dim);
                    modules.push(jet_pullback(jet_dim, g.dim, &base));
                }
                slots.push(Slot {
                    lie: jet,
                    modules: [modules.remove(0), modules.remove(0)],
                    dims: [dims[0], dims[1]],
                });
            }
            solve_slots(slots)
        }
        Family::Exchange => {
            let s_spec = &config.g_spec;
            let s = builtin_simple(s_spec)?;
            let rank = s_spec.rank();
            let mut slots = Vec::new();
            for pt in &union {
                let jet = build_first_order_jet(&s, pt.tangent_dim)?;
                let jet_dim = jet.dim;
                if pt.fixed_point {
                    let mut modules = Vec::new();
                    let mut dims = Vec::new();
                    for rep in [from, to] {
                        let hw = label_weight(rep, &pt.id, rank);
                        let base = evaluation_module(s_spec, &hw)?;
                        dims.push(base.dim);
                        modules.push(jet_pullback(jet_dim, s.dim, &base));
                    }
                    slots.push(Slot {
                        lie: jet,
                        modules: [modules.remove(0), modules.remove(0)],
                        dims: [dims[0], dims[1]],
                    });
                } else {
                    // A free orbit contributes two jet copies; the label
                    // splits into the two tensor factors.
                    for half in 0..2 {
                        let mut modules = Vec::new();
                        let mut dims = Vec::new();
                        for rep in [from, to] {
                            let full = label_weight(rep, &pt.id, 2 * rank);
                            let part = Weight::new(
                                full.coords[half * rank..(half + 1) * rank].to_vec(),
                            );
                            let base = evaluation_module(s_spec, &part)?;
                            dims.push(base.dim);
                            modules.push(jet_pullback(jet_dim, s.dim, &base));
                        }
                        slots.push(Slot {
                            lie: jet.clone(),
                            modules: [modules.remove(0), modules.remove(0)],
                            dims: [dims[0], dims[1]],
                        });
                    }
                }
            }
            solve_slots(slots)
        }
        Family::Onsager => {
            let pair_cfg = config.onsager.as_ref().expect("onsager config carries pair data");
            let is_builtin = config.g_spec.to_string() == "A1"
                && pair_cfg.g0_spec.rank() == 0
                && pair_cfg.g0_ab_dim == 1;
            if !is_builtin {
                return Err(OracleError::Unsupported(
                    "only the built-in rank-one pair has an oracle model".into(),
                ));
            }
            let pair = builtin_sl2_pair();
            // Fixed points take the parameters 1 and −1 (in sorted-id
            // order); free orbits take 2, 3, 4, … whose z-values are
            // pairwise distinct.
            let mut xs = Vec::new();
            let mut next_free = 2i64;
            let mut fixed_seen = 0;
            for pt in &union {
                if pt.fixed_point {
                    xs.push(q(if fixed_seen == 0 { 1 } else { -1 }));
                    fixed_seen += 1;
                } else {
                    xs.push(q(next_free));
                    next_free += 1;
                }
            }
            let quotient = build_onsager_quotient(&pair, &xs)?;
            let ldim = quotient.lie.dim;
            let mut folded: Option<[(Vec<SparseMat>, usize); 2]> = None;
            for (p_idx, pt) in union.iter().enumerate() {
                let mut per_rep: Vec<(Vec<SparseMat>, usize)> = Vec::new();
                for rep in [from, to] {
                    let (mats, d) = if pt.fixed_point {
                        let c = rep
                            .support
                            .get(&pt.id)
                            .map(|l| l.charges[0].clone())
                            .unwrap_or_else(BigRational::zero);
                        let z0 = if c.is_zero() { vec![vec![]] } else { vec![vec![(0u32, c)]] };
                        (vec![z0, vec![vec![]], vec![vec![]]], 1usize)
                    } else {
                        let hw = label_weight(rep, &pt.id, 1);
                        let mats = builtin_pair_module(hw.coords[0] as usize)?;
                        let d = mats[0].len();
                        (mats, d)
                    };
                    let action: Vec<SparseMat> = (0..ldim)
                        .map(|qi| {
                            let terms: Vec<(&SparseMat, BigRational)> = quotient.eval[p_idx][qi]
                                .iter()
                                .map(|(gi, c)| (&mats[*gi], c.clone()))
                                .collect();
                            mat_lincomb(d, &terms)
                        })
                        .collect();
                    per_rep.push((action, d));
                }
                let b = per_rep.remove(1);
                let a = per_rep.remove(0);
                folded = Some(match folded {
                    None => [a, b],
                    Some([fa, fb]) => [
                        (tensor_actions(ldim, &fa.0, fa.1, &a.0, a.1), fa.1 * a.1),
                        (tensor_actions(ldim, &fb.0, fb.1, &b.0, b.1), fb.1 * b.1),
                    ],
                });
            }
            let [fa, fb] = folded.unwrap_or([
                (trivial_actions(ldim), 1),
                (trivial_actions(ldim), 1),
            ]);
            let v1 = FinModule::new(&quotient.lie, fa.0)?;
            let v2 = FinModule::new(&quotient.lie, fb.0)?;
            Ok(ext1_dim(&quotient.lie, &v1, &v2))
        }
    }
}

/// Assemble per-slot algebras and raw modules into a single algebra/module
/// pair and solve.
fn solve_slots(slots: Vec<Slot>) -> Result<u64, OracleError> {
    let lies: Vec<&FinDimLie> = slots.iter().map(|s| &s.lie).collect();
    let total = direct_sum(&lies)?;
    let ldim = total.dim;
    let mut folded: Option<[(Vec<SparseMat>, usize); 2]> = None;
    let mut offset = 0;
    for slot in &slots {
        let a = (
            extend_actions(ldim, offset, &slot.modules[0], slot.dims[0]),
            slot.dims[0],
        );
        let b = (
            extend_actions(ldim, offset, &slot.modules[1], slot.dims[1]),
            slot.dims[1],
        );
        folded = Some(match folded {
            None => [a, b],
            Some([fa, fb]) => [
                (tensor_actions(ldim, &fa.0, fa.1, &a.0, a.1), fa.1 * a.1),
                (tensor_actions(ldim, &fb.0, fb.1, &b.0, b.1), fb.1 * b.1),
            ],
        });
        offset += slot.lie.dim;
    }
    let [fa, fb] =
        folded.unwrap_or([(trivial_actions(ldim), 1), (trivial_actions(ldim), 1)]);
    let v1 = FinModule::new(&total, fa.0)?;
    let v2 = FinModule::new(&total, fb.0)?;
    Ok(ext1_dim(&total, &v1, &v2))
}
