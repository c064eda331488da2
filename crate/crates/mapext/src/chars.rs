//! Finite-dimensional character theory: weight multiplicities, dimensions,
//! tensor product decompositions, and Hom-space dimensions for modules that
//! carry extra abelian charge tags.
//!
//! All arithmetic is exact. Weight multiplicities come from Freudenthal's
//! recursion; tensor products from Klimyk's formula, with an independent
//! character-convolution decomposition (`tensor_decompose_by_characters`)
//! kept as a second path for cross-checking.

use crate::rootsys::{CartanData, RootSystemSpec, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A finite multiset of weights with positive integer multiplicities —
/// the character of a finite-dimensional module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    pub mults: HashMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn empty() -> Self {
        WeightMultiset { mults: HashMap::new() }
    }

    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    /// Character of a tensor product: convolution of the weight multisets.
    pub fn convolve(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut mults: HashMap<Weight, u64> = HashMap::new();
        for (a, &ma) in &self.mults {
            for (b, &mb) in &other.mults {
                *mults.entry(a.add(b)).or_insert(0) += ma * mb;
            }
        }
        WeightMultiset { mults }
    }

    /// Character of a direct sum.
    pub fn add_multiset(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut mults = self.mults.clone();
        for (w, &m) in &other.mults {
            *mults.entry(w.clone()).or_insert(0) += m;
        }
        WeightMultiset { mults }
    }
}

/// An irreducible label: a dominant highest weight together with a vector of
/// rational charge tags for the abelian directions of the acting algebra.
/// Labels only compare equal when both parts agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    pub hw: Weight,
    pub charges: Vec<BigRational>,
}

impl IrrepLabel {
    pub fn new(hw: Weight, charges: Vec<BigRational>) -> Self {
        IrrepLabel { hw, charges }
    }

    pub fn uncharged(hw: Weight) -> Self {
        IrrepLabel { hw, charges: vec![] }
    }

    /// The trivial label of matching shape.
    pub fn trivial(rank: usize, n_charges: usize) -> Self {
        IrrepLabel { hw: Weight::zero(rank), charges: vec![BigRational::zero(); n_charges] }
    }

    pub fn is_trivial(&self) -> bool {
        self.hw.is_zero() && self.charges.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.hw)?;
        if !self.charges.is_empty() {
            let parts: Vec<String> = self.charges.iter().map(|c| c.to_string()).collect();
            write!(f, "@[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

/// A formal non-negative integer combination of irreducible labels, used for
/// finite-dimensional coefficient modules (adjoint modules, graded pieces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleExpr {
    pub terms: Vec<(IrrepLabel, u64)>,
}

impl ModuleExpr {
    pub fn zero() -> Self {
        ModuleExpr { terms: vec![] }
    }

    pub fn of(label: IrrepLabel) -> Self {
        ModuleExpr { terms: vec![(label, 1)] }
    }

    pub fn push(&mut self, label: IrrepLabel, mult: u64) {
        if mult == 0 {
            return;
        }
        for (l, m) in &mut self.terms {
            if *l == label {
                *m += mult;
                return;
            }
        }
        self.terms.push((label, mult));
    }
}

type MultisetCache = Mutex<HashMap<(RootSystemSpec, Vec<i64>), Arc<WeightMultiset>>>;

fn multiset_cache() -> &'static MultisetCache {
    static CACHE: OnceLock<MultisetCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All dominant weights `μ ≤ λ` (every such weight occurs in `V(λ)`),
/// together with the offset vectors `k` with `μ = λ - Σ k_i α_i`.
fn dominant_weights_below(cd: &CartanData, lambda: &Weight) -> Vec<(Weight, Vec<i64>)> {
    let rank = cd.rank();
    if rank == 0 {
        return vec![(Weight::zero(0), vec![])];
    }
    // (λ - μ, ρ) = Σ k_i d_i and (μ, ρ) ≥ 0 bound the search box by
    // Σ k_i d_i ≤ (λ, ρ).
    let budget_rat = cd.weight_inner(lambda, &cd.rho);
    let budget = (budget_rat.numer() / budget_rat.denom()).to_i64().expect("weight in range");
    let d: Vec<i64> = (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            let v = cd.weight_inner(&cd.root_to_weight(&e), &cd.rho);
            (v.numer() / v.denom()).to_i64().unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut k = vec![0i64; rank];
    'outer: loop {
        let spent: i64 = k.iter().zip(&d).map(|(&ki, &di)| ki * di).sum();
        if spent <= budget {
            // μ = λ - Σ k_i α_i in fundamental coordinates.
            let mut coords = lambda.coords.clone();
            for (i, x) in coords.iter_mut().enumerate() {
                for (j, &kj) in k.iter().enumerate() {
                    // α_j in fundamental coordinates is column j of the Cartan
                    // matrix; subtract k_j · (α_j)_i.
                    *x -= kj * cd.cartan.get(i, j).to_i64().unwrap();
                }
            }
            if coords.iter().all(|&c| c >= 0) {
                out.push((Weight::new(coords), k.clone()));
            }
        }
        // Odometer with budget-based early advance.
        for i in 0..rank {
            k[i] += 1;
            let spent: i64 = k.iter().zip(&d).map(|(&ki, &di)| ki * di).sum();
            if spent <= budget {
                continue 'outer;
            }
            k[i] = 0;
        }
        break;
    }
    out
}

/// The full Weyl orbit of a weight (breadth-first over simple reflections).
fn weyl_orbit(cd: &CartanData, w: &Weight) -> Vec<Weight> {
    let rank = cd.rank();
    let mut seen: std::collections::HashSet<Weight> = std::collections::HashSet::new();
    let mut stack = vec![w.clone()];
    seen.insert(w.clone());
    while let Some(v) = stack.pop() {
        for i in 0..rank {
            let ci = v.coords[i];
            if ci == 0 {
                continue;
            }
            let mut refl = v.coords.clone();
            for (j, x) in refl.iter_mut().enumerate() {
                *x -= ci * cd.cartan.get(j, i).to_i64().unwrap();
            }
            let r = Weight::new(refl);
            if seen.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// Weight multiplicities of the irreducible module `V(λ)` by Freudenthal's
/// recursion, expanded over the full Weyl orbit of each dominant weight.
/// Results are memoized per `(root system, highest weight)`.
pub fn weight_multiplicities(cd: &CartanData, lambda: &Weight) -> Arc<WeightMultiset> {
    assert!(lambda.is_dominant(), "highest weight must be dominant");
    let key = (cd.spec.clone(), lambda.coords.clone());
    if let Some(hit) = multiset_cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let computed = Arc::new(compute_weight_multiplicities(cd, lambda));
    multiset_cache().lock().unwrap().insert(key, Arc::clone(&computed));
    computed
}

fn compute_weight_multiplicities(cd: &CartanData, lambda: &Weight) -> WeightMultiset {
    let mut candidates = dominant_weights_below(cd, lambda);
    // Process by decreasing (μ, ρ): the recursion for m(μ) consults weights
    // strictly higher in that order.
    candidates.sort_by(|a, b| {
        let ha = cd.weight_inner(&a.0, &cd.rho);
        let hb = cd.weight_inner(&b.0, &cd.rho);
        hb.cmp(&ha)
    });
    let mut dominant_mults: HashMap<Weight, BigInt> = HashMap::new();
    let lam_rho = lambda.add(&cd.rho);
    let norm_top = cd.weight_inner(&lam_rho, &lam_rho);
    for (mu, _) in &candidates {
        if mu == lambda {
            dominant_mults.insert(mu.clone(), BigInt::from(1));
            continue;
        }
        // Σ_{α>0} Σ_{k≥1} m(μ+kα)·(μ+kα, α), over exact rationals.
        let mut rhs = BigRational::zero();
        for alpha in &cd.positive_roots {
            let alpha_fw = cd.root_to_weight(alpha);
            let mut nu = mu.clone();
            loop {
                nu = nu.add(&alpha_fw);
                let (red, _, _) = cd.dominant_reduce(&nu);
                let Some(m) = dominant_mults.get(&red) else { break };
                let inner = cd.weight_root_inner(&nu, alpha);
                rhs += BigRational::from(BigInt::from(m.clone()) * BigInt::from(inner));
            }
        }
        let mu_rho = mu.add(&cd.rho);
        let denom = &norm_top - cd.weight_inner(&mu_rho, &mu_rho);
        assert!(denom.is_positive(), "Freudenthal denominator must be positive below λ");
        let m = BigRational::from(BigInt::from(2)) * rhs / denom;
        assert!(m.is_integer(), "Freudenthal multiplicity must be integral");
        dominant_mults.insert(mu.clone(), m.to_integer());
    }
    let mut mults: HashMap<Weight, u64> = HashMap::new();
    for (mu, m) in &dominant_mults {
        let m64 = m.to_u64().expect("multiplicity fits in u64");
        assert!(m64 >= 1, "dominant weights below λ have positive multiplicity");
        for w in weyl_orbit(cd, mu) {
            mults.insert(w, m64);
        }
    }
    WeightMultiset { mults }
}

/// Dimension of `V(λ)` by the Weyl dimension formula (exact).
pub fn dim(cd: &CartanData, lambda: &Weight) -> u64 {
    assert!(lambda.is_dominant(), "highest weight must be dominant");
    let lam_rho = lambda.add(&cd.rho);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for alpha in &cd.positive_roots {
        num *= BigInt::from(cd.pairing_with_coroot(&lam_rho, alpha));
        den *= BigInt::from(cd.pairing_with_coroot(&cd.rho, alpha));
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero());
    q.to_u64().expect("dimension fits in u64")
}

/// Dimension of the module described by a `ModuleExpr` (charges carry no
/// dimension).
pub fn expr_dim(cd: &CartanData, expr: &ModuleExpr) -> u64 {
    expr.terms.iter().map(|(l, m)| m * dim(cd, &l.hw)).sum()
}

/// Decompose `V(λ) ⊗ V(μ)` into irreducibles by Klimyk's formula. Terms are
/// uncharged labels sorted lexicographically by weight.
pub fn tensor_decompose(cd: &CartanData, lambda: &Weight, mu: &Weight) -> ModuleExpr {
    // Iterate over the character of the smaller factor.
    let (anchor, iterated) =
        if dim(cd, mu) <= dim(cd, lambda) { (lambda, mu) } else { (mu, lambda) };
    let wt = weight_multiplicities(cd, iterated);
    let terms = decompose_product_with_character(cd, &wt, anchor)
        .into_iter()
        .map(|(w, m)| (IrrepLabel::uncharged(w), m))
        .collect();
    ModuleExpr { terms }
}

/// Decompose `U ⊗ V(λ)` where `U` is given only by its character. This is the
/// workhorse behind both `tensor_decompose` and edge tests on weight graphs.
pub fn decompose_product_with_character(
    cd: &CartanData,
    u_char: &WeightMultiset,
    lambda: &Weight,
) -> Vec<(Weight, u64)> {
    let lam_rho = lambda.add(&cd.rho);
    let mut acc: HashMap<Weight, i64> = HashMap::new();
    for (xi, &m) in &u_char.mults {
        let v = lam_rho.add(xi);
        let (red, parity, _) = cd.dominant_reduce(&v);
        // Points on a chamber wall (dominant representative touching zero)
        // contribute nothing.
        if red.coords.contains(&0) {
            continue;
        }
        let target = red.sub(&cd.rho);
        *acc.entry(target).or_insert(0) += parity as i64 * m as i64;
    }
    let mut out: Vec<(Weight, u64)> = acc
        .into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(w, m)| {
            assert!(m > 0, "tensor multiplicities must be non-negative");
            (w, m as u64)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Multiplicity of `V(target)` inside `U ⊗ V(λ)` for a character `U`.
pub fn mult_in_product_with_character(
    cd: &CartanData,
    u_char: &WeightMultiset,
    lambda: &Weight,
    target: &Weight,
) -> u64 {
    decompose_product_with_character(cd, u_char, lambda)
        .into_iter()
        .find(|(w, _)| w == target)
        .map(|(_, m)| m)
        .unwrap_or(0)
}

/// Multiplicity of `V(target)` inside `V(λ) ⊗ V(μ)`.
pub fn mult_in_tensor(cd: &CartanData, lambda: &Weight, mu: &Weight, target: &Weight) -> u64 {
    let (anchor, iterated) =
        if dim(cd, mu) <= dim(cd, lambda) { (lambda, mu) } else { (mu, lambda) };
    let wt = weight_multiplicities(cd, iterated);
    mult_in_product_with_character(cd, &wt, anchor, target)
}

/// Second, independent tensor decomposition: convolve the two characters and
/// repeatedly strip the highest remaining term. Slower, used as a cross-check
/// against Klimyk's formula.
pub fn tensor_decompose_by_characters(
    cd: &CartanData,
    lambda: &Weight,
    mu: &Weight,
) -> ModuleExpr {
    let mut remaining: HashMap<Weight, i64> = HashMap::new();
    for (w, &m) in
        &weight_multiplicities(cd, lambda).convolve(&weight_multiplicities(cd, mu)).mults
    {
        remaining.insert(w.clone(), m as i64);
    }
    let mut out = Vec::new();
    loop {
        // Strip the term with the highest (w, ρ); it is necessarily a highest
        // weight of the remaining module, hence dominant with positive mult.
        let top = remaining
            .iter()
            .filter(|(_, &m)| m != 0)
            .max_by(|a, b| cd.weight_inner(a.0, &cd.rho).cmp(&cd.weight_inner(b.0, &cd.rho)));
        let Some((w, &m)) = top else { break };
        let w = w.clone();
        assert!(w.is_dominant(), "highest remaining term must be dominant");
        assert!(m > 0, "highest remaining term must have positive multiplicity");
        for (xi, &k) in &weight_multiplicities(cd, &w).mults {
            let e = remaining.entry(xi.clone()).or_insert(0);
            *e -= m * k as i64;
            assert!(*e >= 0, "stripping must not overshoot");
        }
        out.push((IrrepLabel::uncharged(w), m as u64));
    }
    out.sort_by(|a, b| a.0.hw.cmp(&b.0.hw));
    ModuleExpr { terms: out }
}

/// Label of the dual module: dual highest weight, negated charges.
pub fn dual_label(cd: &CartanData, label: &IrrepLabel) -> IrrepLabel {
    IrrepLabel {
        hw: cd.dual_weight(&label.hw).expect("label weights are dominant"),
        charges: label.charges.iter().map(|c| -c.clone()).collect(),
    }
}

/// `dim Hom(U, V^* ⊗ W)` for a coefficient module `U` (a `ModuleExpr`) and
/// irreducible labels `V`, `W` over the same algebra. A term `T` of `U`
/// contributes `mult · [charge(T) + charge(V) = charge(W)] · [V(W) : T ⊗ V]`.
pub fn hom_dim(cd: &CartanData, u: &ModuleExpr, v: &IrrepLabel, w: &IrrepLabel) -> u64 {
    let mut total = 0u64;
    for (t, m) in &u.terms {
        assert_eq!(t.charges.len(), v.charges.len(), "charge vectors must align");
        assert_eq!(t.charges.len(), w.charges.len(), "charge vectors must align");
        let charges_match = t
            .charges
            .iter()
            .zip(&v.charges)
            .zip(&w.charges)
            .all(|((a, b), c)| &(a + b) == c);
        if !charges_match {
            continue;
        }
        total += m * mult_in_tensor(cd, &t.hw, &v.hw, &w.hw);
    }
    total
}

/// The adjoint module of a semisimple root system as a module expression:
/// one uncharged highest-root term per simple component.
pub fn adjoint_expr(cd: &CartanData) -> ModuleExpr {
    let mut e = ModuleExpr::zero();
    for theta in cd.component_highest_roots() {
        e.push(IrrepLabel::uncharged(cd.root_to_weight(&theta)), 1);
    }
    e
}
