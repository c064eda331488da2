//! Spectral characters and block decompositions: canonical normal forms for
//! the local block class of an irreducible evaluation label, pointwise
//! assembly into spectral characters, equality-of-block tests, enumeration
//! of all blocks over a finite support, and a brute-force chain-search
//! equivalence used to cross-check the lattice description.

use crate::chars::{self, IrrepLabel, WeightMultiset};
use crate::emalg::{g_fixed_at, validate, AlgebraConfig, EmalgError, EvalRepSpec, Family, PointSpec};
use crate::intlinalg::{lattice_contains, quotient_of, QuotientGroup};
use crate::rootsys::{self, CartanData, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

/// Errors from block/character computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    /// A point contributes an infinite class set (a `k/Z` or free `Z`
    /// factor); enumeration is impossible.
    #[error("nonfinite block set")]
    Nonfinite,
    #[error(transparent)]
    Invalid(#[from] EmalgError),
}

/// The block of the category of evaluation representations at one point, in
/// canonical normal form.
#[derive(Debug, Clone)]
pub enum BlockClass {
    /// A coset in a finitely generated quotient of the weight lattice
    /// (canonical coordinates per the quotient's invariant factors).
    LatticeCoset { quotient: QuotientGroup, coset: Vec<BigInt> },
    /// Fixed Onsager point with central isotropy directions: a coset in
    /// `P₀/Q₀` together with the central character modulo `Z`, normalized
    /// into `[0, 1)`.
    OnsagerFixed { quotient: QuotientGroup, coset: Vec<BigInt>, charge_mod_z: BigRational },
    /// The block of the trivial representation.
    Zero,
}

impl BlockClass {
    /// Whether this is the block of the trivial representation (the
    /// identity coset with zero central character).
    pub fn is_zero_class(&self) -> bool {
        match self {
            BlockClass::Zero => true,
            BlockClass::LatticeCoset { coset, .. } => coset.iter().all(|c| c.is_zero()),
            BlockClass::OnsagerFixed { coset, charge_mod_z, .. } => {
                coset.iter().all(|c| c.is_zero()) && charge_mod_z.is_zero()
            }
        }
    }
}

impl PartialEq for BlockClass {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero_class() && other.is_zero_class() {
            return true;
        }
        match (self, other) {
            (
                BlockClass::LatticeCoset { quotient: q1, coset: c1 },
                BlockClass::LatticeCoset { quotient: q2, coset: c2 },
            ) => q1 == q2 && c1 == c2,
            (
                BlockClass::OnsagerFixed { quotient: q1, coset: c1, charge_mod_z: z1 },
                BlockClass::OnsagerFixed { quotient: q2, coset: c2, charge_mod_z: z2 },
            ) => q1 == q2 && c1 == c2 && z1 == z2,
            _ => false,
        }
    }
}

impl Eq for BlockClass {}

/// The spectral character of a representation: its per-point block classes
/// (zero classes omitted) plus the non-evaluation tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralCharacter {
    pub values: BTreeMap<String, BlockClass>,
    pub noneval_tag: String,
}

impl SpectralCharacter {
    pub fn empty() -> Self {
        SpectralCharacter { values: BTreeMap::new(), noneval_tag: String::new() }
    }
}

fn reject_reductive(config: &AlgebraConfig) -> Result<(), BlockError> {
    if config.g_ab_dim > 0 {
        return Err(BlockError::Invalid(EmalgError::AlgebraInvalid(
            "block decompositions are implemented for semisimple targets only (g_ab_dim = 0)"
                .into(),
        )));
    }
    Ok(())
}

fn lattice_coset(cd: &CartanData, lambda: &Weight) -> BlockClass {
    let quotient = quotient_of(&cd.root_lattice());
    let v: Vec<BigInt> = lambda.coords.iter().map(|&c| BigInt::from(c)).collect();
    let coset = quotient.project(&v).expect("rank checked");
    BlockClass::LatticeCoset { quotient, coset }
}

/// The block class of one local label at one point.
pub fn block_class(
    config: &AlgebraConfig,
    x: &PointSpec,
    v: &IrrepLabel,
) -> Result<BlockClass, BlockError> {
    reject_reductive(config)?;
    let desc = g_fixed_at(config, x);
    if v.hw.coords.len() != desc.rs.rank() || v.charges.len() != desc.ab_rank {
        return Err(BlockError::Invalid(EmalgError::LabelInvalid {
            rep: "label".into(),
            point: x.id.clone(),
            msg: format!(
                "label shape does not match g^x = {} with abelian rank {}",
                desc.rs, desc.ab_rank
            ),
        }));
    }
    if v.is_trivial() {
        return Ok(BlockClass::Zero);
    }
    match &config.family {
        Family::Untwisted | Family::Multiloop { .. } | Family::Exchange => {
            let cd = rootsys::build(&desc.rs).map_err(EmalgError::from)?;
            Ok(lattice_coset(&cd, &v.hw))
        }
        Family::Onsager => {
            let pair = config.onsager.as_ref().expect("onsager config carries pair data");
            if !x.fixed_point {
                let cd = rootsys::build(&config.g_spec).map_err(EmalgError::from)?;
                return Ok(lattice_coset(&cd, &v.hw));
            }
            let cd0 = rootsys::build(&pair.g0_spec).map_err(EmalgError::from)?;
            if pair.g0_ab_dim == 0 {
                // Classes are cosets of the integer span of the odd part's
                // weights inside the weight lattice of g₀.
                let wt = chars::weight_multiplicities(&cd0, &pair.nu);
                let quotient = weight_equivalence_quotient(&cd0, &wt)?;
                let coords: Vec<BigInt> =
                    v.hw.coords.iter().map(|&c| BigInt::from(c)).collect();
                let coset = quotient.project(&coords).expect("rank checked");
                return Ok(BlockClass::LatticeCoset { quotient, coset });
            }
            // One central direction: normalize the charge into [0,1) by an
            // integer shift n, moving the weight by n·ν along the way.
            let a = &v.charges[0];
            let n_big = -a.floor().to_integer();
            let n = n_big.to_i64().ok_or_else(|| {
                BlockError::Invalid(EmalgError::BadValue {
                    key: "charge".into(),
                    msg: "charge magnitude out of supported range".into(),
                })
            })?;
            let shifted: Vec<i64> = v
                .hw
                .coords
                .iter()
                .zip(&pair.nu.coords)
                .map(|(&l, &nu)| l + n * nu)
                .collect();
            let quotient = quotient_of(&cd0.root_lattice());
            let coords: Vec<BigInt> = shifted.iter().map(|&c| BigInt::from(c)).collect();
            let coset = quotient.project(&coords).expect("rank checked");
            let charge_mod_z = a + BigRational::from(n_big);
            assert!(!charge_mod_z.is_negative() && charge_mod_z < BigRational::from(BigInt::from(1)));
            Ok(BlockClass::OnsagerFixed { quotient, coset, charge_mod_z })
        }
    }
}

/// The spectral character of a validated representation: pointwise block
/// classes with zero classes omitted, tag carried along.
pub fn spectral_character(
    config: &AlgebraConfig,
    rep: &EvalRepSpec,
) -> Result<SpectralCharacter, BlockError> {
    reject_reductive(config)?;
    let errs = validate(config, rep);
    if let Some(e) = errs.into_iter().next() {
        return Err(BlockError::Invalid(e));
    }
    let mut values = BTreeMap::new();
    for (pid, label) in &rep.support {
        let x = config.point(pid).expect("validated point id");
        let class = block_class(config, x, label)?;
        if !class.is_zero_class() {
            values.insert(pid.clone(), class);
        }
    }
    Ok(SpectralCharacter { values, noneval_tag: rep.noneval_tag.clone() })
}

/// Whether two representations lie in the same block: equality of spectral
/// characters, non-evaluation tags included.
pub fn same_block(
    config: &AlgebraConfig,
    a: &EvalRepSpec,
    b: &EvalRepSpec,
) -> Result<bool, BlockError> {
    Ok(spectral_character(config, a)? == spectral_character(config, b)?)
}

/// All classes of a finite quotient group, as canonical coordinate tuples.
fn all_classes(q: &QuotientGroup) -> Result<Vec<Vec<BigInt>>, BlockError> {
    let mut sizes = Vec::with_capacity(q.invariant_factors.len());
    for f in &q.invariant_factors {
        if f.is_zero() {
            return Err(BlockError::Nonfinite);
        }
        sizes.push(f.to_u64().ok_or(BlockError::Nonfinite)?);
    }
    let mut out = vec![vec![BigInt::zero(); sizes.len()]];
    for (i, &s) in sizes.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * s as usize);
        for tuple in &out {
            for v in 0..s {
                let mut t = tuple.clone();
                t[i] = BigInt::from(v);
                next.push(t);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The finite set of block classes available at one point, or an error when
/// that set is infinite.
fn point_classes(config: &AlgebraConfig, x: &PointSpec) -> Result<Vec<BlockClass>, BlockError> {
    let desc = g_fixed_at(config, x);
    match &config.family {
        Family::Untwisted | Family::Multiloop { .. } | Family::Exchange => {
            let cd = rootsys::build(&desc.rs).map_err(EmalgError::from)?;
            let quotient = quotient_of(&cd.root_lattice());
            Ok(all_classes(&quotient)?
                .into_iter()
                .map(|coset| BlockClass::LatticeCoset { quotient: quotient.clone(), coset })
                .collect())
        }
        Family::Onsager => {
            let pair = config.onsager.as_ref().expect("onsager config carries pair data");
            if !x.fixed_point {
                let cd = rootsys::build(&config.g_spec).map_err(EmalgError::from)?;
                let quotient = quotient_of(&cd.root_lattice());
                return Ok(all_classes(&quotient)?
                    .into_iter()
                    .map(|coset| BlockClass::LatticeCoset { quotient: quotient.clone(), coset })
                    .collect());
            }
            if pair.g0_ab_dim > 0 {
                // The central character ranges over k/Z.
                return Err(BlockError::Nonfinite);
            }
            let cd0 = rootsys::build(&pair.g0_spec).map_err(EmalgError::from)?;
            let wt = chars::weight_multiplicities(&cd0, &pair.nu);
            let quotient = weight_equivalence_quotient(&cd0, &wt)?;
            Ok(all_classes(&quotient)?
                .into_iter()
                .map(|coset| BlockClass::LatticeCoset { quotient: quotient.clone(), coset })
                .collect())
        }
    }
}

/// Enumerate every spectral-character skeleton supported on the given
/// points: the cartesian product of the per-point finite class sets.
pub fn enumerate_blocks(
    config: &AlgebraConfig,
    point_ids: &[String],
) -> Result<Vec<SpectralCharacter>, BlockError> {
    reject_reductive(config)?;
    let mut seen = BTreeSet::new();
    let mut per_point = Vec::new();
    for pid in point_ids {
        if !seen.insert(pid.clone()) {
            return Err(BlockError::Invalid(EmalgError::Duplicate {
                what: "enumeration point".into(),
                id: pid.clone(),
            }));
        }
        let x = config.point(pid).ok_or_else(|| {
            BlockError::Invalid(EmalgError::UnknownPoint {
                rep: "enumeration".into(),
                point: pid.clone(),
            })
        })?;
        per_point.push((pid.clone(), point_classes(config, x)?));
    }
    let mut out = vec![SpectralCharacter::empty()];
    for (pid, classes) in per_point {
        let mut next = Vec::with_capacity(out.len() * classes.len());
        for skeleton in &out {
            for class in &classes {
                let mut s = skeleton.clone();
                if !class.is_zero_class() {
                    s.values.insert(pid.clone(), class.clone());
                }
                next.push(s);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The quotient of the weight lattice by the integer span of the weights of
/// `U`. Errors when the span fails to contain the root lattice (a necessary
/// condition for `U` to be faithful).
pub fn weight_equivalence_quotient(
    cd: &CartanData,
    u: &WeightMultiset,
) -> Result<QuotientGroup, BlockError> {
    let weights: Vec<Weight> = u.mults.keys().cloned().collect();
    let span = cd.span_of_weights(&weights).map_err(EmalgError::from)?;
    for row in 0..cd.rank() {
        let alpha: Vec<BigInt> = (0..cd.rank()).map(|j| cd.cartan.get(j, row).clone()).collect();
        if !lattice_contains(&span, &alpha).expect("rank checked") {
            return Err(BlockError::Invalid(EmalgError::AlgebraInvalid(
                "the span of the module's weights does not contain the root lattice".into(),
            )));
        }
    }
    Ok(quotient_of(&span))
}

/// A box-bounded breadth-first search for a chain `λ = λ₀, …, λ_n = μ` of
/// dominant weights in which consecutive members admit a nonzero
/// `U ⊗ V(λ_i) → V(λ_{i+1})` map in either direction. A `true` answer is a
/// finite witness of block equivalence; `false` only means no chain exists
/// within the box.
pub fn chain_reachable(
    cd: &CartanData,
    u: &WeightMultiset,
    lambda: &Weight,
    mu: &Weight,
    box_bound: i64,
) -> bool {
    assert!(lambda.is_dominant() && mu.is_dominant(), "chain endpoints must be dominant");
    if lambda == mu {
        return true;
    }
    let rank = cd.rank();
    let in_box = |w: &Weight| w.coords.iter().all(|&c| 0 <= c && c <= box_bound);
    if !in_box(lambda) || !in_box(mu) {
        return false;
    }
    // All dominant weights in the box.
    let mut states = vec![Weight::new(vec![0; rank])];
    for i in 0..rank {
        let mut next = Vec::with_capacity(states.len() * (box_bound as usize + 1));
        for s in &states {
            for v in 0..=box_bound {
                let mut c = s.coords.clone();
                c[i] = v;
                next.push(Weight::new(c));
            }
        }
        states = next;
    }
    let edge = |a: &Weight, b: &Weight| {
        chars::mult_in_product_with_character(cd, u, a, b) > 0
            || chars::mult_in_product_with_character(cd, u, b, a) > 0
    };
    let mut visited: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(w) = queue.pop_front() {
        for s in &states {
            if visited.contains(s) || !edge(&w, s) {
                continue;
            }
            if s == mu {
                return true;
            }
            visited.insert(s.clone());
            queue.push_back(s.clone());
        }
    }
    false
}

/// Default search box for [`chain_reachable`]: generous relative to the
/// endpoint coordinates while keeping the state space small.
pub fn default_box_bound(lambda: &Weight, mu: &Weight) -> i64 {
    let m = lambda.coords.iter().chain(&mu.coords).copied().max().unwrap_or(0);
    10 * (1 + m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emalg::parse_config;
    use num_traits::One;

    fn cd(s: &str) -> CartanData {
        rootsys::build(&rootsys::RootSystemSpec::parse(s).unwrap()).unwrap()
    }

    fn config(text: &str) -> AlgebraConfig {
        parse_config(text).unwrap().algebra
    }

    fn label(coords: &[i64]) -> IrrepLabel {
        IrrepLabel::uncharged(Weight::new(coords.to_vec()))
    }

    const ML_A2: &str = r#"
        algebra { family = multiloop; g = "A2"; n = 1 }
        point "p1" { tangent_dim = 1 }
        point "p2" { tangent_dim = 1 }
    "#;

    #[test]
    fn multiloop_classes_are_root_lattice_cosets() {
        let cfg = config(ML_A2);
        let x = cfg.point("p1").unwrap();
        let c10 = block_class(&cfg, x, &label(&[1, 0])).unwrap();
        let c01 = block_class(&cfg, x, &label(&[0, 1])).unwrap();
        let c11 = block_class(&cfg, x, &label(&[1, 1])).unwrap();
        let c21 = block_class(&cfg, x, &label(&[2, 1])).unwrap();
        assert_ne!(c10, c01);
        assert!(c11.is_zero_class());
        assert_eq!(c11, BlockClass::Zero);
        // (2,1) − (1,0) = (1,1) ∈ Q.
        assert_eq!(c10, c21);
    }

    #[test]
    fn trivial_label_gives_the_zero_class() {
        let cfg = config(ML_A2);
        let x = cfg.point("p1").unwrap();
        // Trivial labels are not valid support entries, but the class map
        // itself sends them to Zero.
        let z = block_class(&cfg, x, &label(&[0, 0])).unwrap();
        assert!(matches!(z, BlockClass::Zero));
    }

    fn rep_at(points: &[(&str, Vec<i64>)]) -> EvalRepSpec {
        let mut support = BTreeMap::new();
        for (p, coords) in points {
            support.insert(p.to_string(), label(coords));
        }
        EvalRepSpec { support, noneval_tag: String::new() }
    }

    #[test]
    fn root_lattice_twists_do_not_change_the_character() {
        let cfg = config(ML_A2);
        let a = rep_at(&[("p1", vec![1, 0]), ("p2", vec![0, 1])]);
        let b = rep_at(&[("p1", vec![2, 1]), ("p2", vec![1, 2])]);
        let ca = spectral_character(&cfg, &a).unwrap();
        let cb = spectral_character(&cfg, &b).unwrap();
        assert_eq!(ca, cb);
        assert!(same_block(&cfg, &a, &b).unwrap());
        // A label in the identity coset is omitted: same character as an
        // absent point.
        let c = rep_at(&[("p1", vec![1, 0]), ("p2", vec![1, 1])]);
        let d = rep_at(&[("p1", vec![1, 0])]);
        assert!(same_block(&cfg, &c, &d).unwrap());
    }

    #[test]
    fn same_block_multiloop_a1_parity() {
        let cfg = config(
            r#"
            algebra { family = multiloop; g = "A1"; n = 1 }
            point "p1" { tangent_dim = 1 }
        "#,
        );
        let one = rep_at(&[("p1", vec![1])]);
        let three = rep_at(&[("p1", vec![3])]);
        let two = rep_at(&[("p1", vec![2])]);
        assert!(same_block(&cfg, &one, &three).unwrap());
        assert!(!same_block(&cfg, &one, &two).unwrap());
    }

    #[test]
    fn tags_enter_character_equality() {
        let cfg = config(ML_A2);
        let a = rep_at(&[("p1", vec![1, 0])]);
        let mut b = a.clone();
        b.noneval_tag = "t".into();
        assert!(!same_block(&cfg, &a, &b).unwrap());
    }

    #[test]
    fn enumerate_counts_match_lattice_orders() {
        let cfg = config(ML_A2);
        let two = enumerate_blocks(&cfg, &["p1".into(), "p2".into()]).unwrap();
        assert_eq!(two.len(), 9);
        let one = enumerate_blocks(&cfg, &["p1".into()]).unwrap();
        assert_eq!(one.len(), 3);
        // The empty-support character is among them exactly once.
        assert_eq!(two.iter().filter(|c| c.values.is_empty()).count(), 1);
        let g2 = config(
            r#"
            algebra { family = multiloop; g = "G2"; n = 1 }
            point "p1" { tangent_dim = 1 }
        "#,
        );
        assert_eq!(enumerate_blocks(&g2, &["p1".into()]).unwrap().len(), 1);
    }

    const ONSAGER: &str = r#"
        algebra { family = onsager; g = "A1" }
        point "one" { tangent_dim = 1; fixed = true }
        point "x" { tangent_dim = 1 }
    "#;

    #[test]
    fn onsager_fixed_charge_normal_form() {
        let cfg = config(ONSAGER);
        let x = cfg.point("one").unwrap();
        let five_halves = IrrepLabel::new(
            Weight::zero(0),
            vec![BigRational::new(BigInt::from(5), BigInt::from(2))],
        );
        let class = block_class(&cfg, x, &five_halves).unwrap();
        match &class {
            BlockClass::OnsagerFixed { coset, charge_mod_z, .. } => {
                assert!(coset.is_empty());
                assert_eq!(*charge_mod_z, BigRational::new(BigInt::from(1), BigInt::from(2)));
            }
            other => panic!("unexpected class {other:?}"),
        }
        // Integer shifts land in the same class; non-integer shifts do not.
        let seven_halves = IrrepLabel::new(
            Weight::zero(0),
            vec![BigRational::new(BigInt::from(7), BigInt::from(2))],
        );
        let neg_half = IrrepLabel::new(
            Weight::zero(0),
            vec![BigRational::new(BigInt::from(-1), BigInt::from(2))],
        );
        let third = IrrepLabel::new(
            Weight::zero(0),
            vec![BigRational::new(BigInt::from(1), BigInt::from(3))],
        );
        assert_eq!(class, block_class(&cfg, x, &seven_halves).unwrap());
        assert_eq!(class, block_class(&cfg, x, &neg_half).unwrap());
        assert_ne!(class, block_class(&cfg, x, &third).unwrap());
        // An integer charge is zero-equivalent to the trivial class.
        let two = IrrepLabel::new(Weight::zero(0), vec![BigRational::from(BigInt::from(2))]);
        assert!(block_class(&cfg, x, &two).unwrap().is_zero_class());
    }

    #[test]
    fn onsager_free_points_use_the_full_root_lattice() {
        let cfg = config(ONSAGER);
        let x = cfg.point("x").unwrap();
        let c1 = block_class(&cfg, x, &label(&[1])).unwrap();
        let c2 = block_class(&cfg, x, &label(&[2])).unwrap();
        let c3 = block_class(&cfg, x, &label(&[3])).unwrap();
        assert_eq!(c1, c3);
        assert_ne!(c1, c2);
        assert!(c2.is_zero_class());
    }

    #[test]
    fn onsager_enumeration_is_nonfinite_at_central_fixed_points() {
        let cfg = config(ONSAGER);
        assert_eq!(enumerate_blocks(&cfg, &["x".into()]).unwrap().len(), 2);
        let err = enumerate_blocks(&cfg, &["one".into()]).unwrap_err();
        assert_eq!(err, BlockError::Nonfinite);
        assert_eq!(err.to_string(), "nonfinite block set");
    }

    #[test]
    fn onsager_fixed_with_semisimple_isotropy_uses_the_odd_span() {
        // sl3 / so3-type data: g₀ of type A1, odd part V(4).
        let cfg = config(
            r#"
            algebra { family = onsager; g = "A2"; g0 = "A1"; g0_ab_dim = 0; nu = [4] }
            point "one" { tangent_dim = 1; fixed = true }
        "#,
        );
        let x = cfg.point("one").unwrap();
        // Span of wt V(4) = {±4, ±2, 0} is 2Z = Q₀, so classes = P₀/Q₀ = Z/2.
        let c1 = block_class(&cfg, x, &label(&[1])).unwrap();
        let c3 = block_class(&cfg, x, &label(&[3])).unwrap();
        let c2 = block_class(&cfg, x, &label(&[2])).unwrap();
        assert_eq!(c1, c3);
        assert!(c2.is_zero_class());
        assert_eq!(enumerate_blocks(&cfg, &["one".into()]).unwrap().len(), 2);
    }

    #[test]
    fn onsager_fixed_charged_relation_matches_direct_search() {
        // Pair with charged odd part: shifting the charge by n moves the
        // weight coset by n·ν.
        let cfg = config(
            r#"
            algebra { family = onsager; g = "A2"; g0 = "A1"; g0_ab_dim = 1; nu = [1] }
            point "one" { tangent_dim = 1; fixed = true }
        "#,
        );
        let x = cfg.point("one").unwrap();
        let make = |w: i64, num: i64, den: i64| {
            IrrepLabel::new(Weight::new(vec![w]), vec![BigRational::new(num.into(), den.into())])
        };
        let class = |l: &IrrepLabel| block_class(&cfg, x, l).unwrap();
        let related = |a: &IrrepLabel, b: &IrrepLabel| {
            // Direct search: b.charge = a.charge + n and b.hw ≡ a.hw + n·ν.
            (-8i64..=8).any(|n| {
                &a.charges[0] + BigRational::from(BigInt::from(n)) == b.charges[0]
                    && (b.hw.coords[0] - a.hw.coords[0] - n) % 2 == 0
            })
        };
        let samples = [
            make(1, 1, 2),
            make(1, 3, 2),
            make(0, 1, 2),
            make(1, 5, 2),
            make(2, 1, 2),
            make(1, 1, 3),
            make(0, 3, 1),
        ];
        for a in &samples {
            for b in &samples {
                assert_eq!(class(a) == class(b), related(a, b), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn reductive_targets_are_rejected() {
        let cfg = config(
            r#"
            algebra { family = untwisted; g = "A1"; g_ab_dim = 1 }
            point "p1" { tangent_dim = 1 }
        "#,
        );
        let rep = rep_at(&[]);
        assert!(matches!(
            spectral_character(&cfg, &rep),
            Err(BlockError::Invalid(EmalgError::AlgebraInvalid(_)))
        ));
    }

    #[test]
    fn weight_quotient_orders() {
        let a1 = cd("A1");
        let adjoint = chars::weight_multiplicities(&a1, &Weight::new(vec![2]));
        let q = weight_equivalence_quotient(&a1, &adjoint).unwrap();
        assert_eq!(q.order(), Some(BigInt::from(2)));
        let defining = chars::weight_multiplicities(&a1, &Weight::new(vec![1]));
        let q = weight_equivalence_quotient(&a1, &defining).unwrap();
        assert_eq!(q.order(), Some(BigInt::one()));
        let a2 = cd("A2");
        let adjoint = chars::weight_multiplicities(&a2, &Weight::new(vec![1, 1]));
        let q = weight_equivalence_quotient(&a2, &adjoint).unwrap();
        assert_eq!(q.order(), Some(BigInt::from(3)));
        // A non-faithful module: the trivial one.
        let trivial = chars::weight_multiplicities(&a1, &Weight::new(vec![0]));
        assert!(weight_equivalence_quotient(&a1, &trivial).is_err());
    }

    #[test]
    fn chain_reachability_examples() {
        let a1 = cd("A1");
        let adjoint = chars::weight_multiplicities(&a1, &Weight::new(vec![2]));
        let w = |c: i64| Weight::new(vec![c]);
        assert!(chain_reachable(&a1, &adjoint, &w(1), &w(1), 10));
        assert!(chain_reachable(&a1, &adjoint, &w(1), &w(3), 10));
        assert!(!chain_reachable(&a1, &adjoint, &w(0), &w(1), 10));
        // Reachability respects the lattice necessary condition.
        let a2 = cd("A2");
        let adj2 = chars::weight_multiplicities(&a2, &Weight::new(vec![1, 1]));
        let span = a2
            .span_of_weights(&adj2.mults.keys().cloned().collect::<Vec<_>>())
            .unwrap();
        let pairs = [([0, 0], [1, 1]), ([1, 0], [0, 1]), ([1, 0], [2, 2]), ([0, 1], [1, 2])];
        for (a, b) in pairs {
            let la = Weight::new(a.to_vec());
            let mu = Weight::new(b.to_vec());
            let reach = chain_reachable(&a2, &adj2, &la, &mu, 8);
            let diff: Vec<BigInt> =
                mu.sub(&la).coords.iter().map(|&c| BigInt::from(c)).collect();
            let member = lattice_contains(&span, &diff).unwrap();
            assert_eq!(reach, member, "{la} -> {mu}");
        }
        assert_eq!(default_box_bound(&w(1), &w(3)), 40);
    }
}
