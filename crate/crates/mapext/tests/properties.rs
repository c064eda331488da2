//! Randomized structural invariants: exact-arithmetic laws that must hold
//! for every input, checked on generated instances.

use mapext::blocks::same_block;
use mapext::chars;
use mapext::emalg::{load_config, AlgebraConfig, EvalRepSpec};
use mapext::ext::ext_dim;
use mapext::intlinalg::{lattice_contains, quotient_of, smith_normal_form, IntMatrix};
use mapext::oracle::{
    build_onsager_quotient, builtin_sl2_pair, ext1_dim, one_dim_module, oracle_ext_dim, FinModule,
};
use mapext::rootsys::{self, RootSystemSpec, Weight};
use mapext::{BigInt, BigRational};
use proptest::prelude::*;

fn rs(s: &str) -> RootSystemSpec {
    RootSystemSpec::parse(s).expect("valid root-system spec")
}

fn algebra(text: &str) -> AlgebraConfig {
    load_config(text).expect("valid config").algebra
}

fn eval_rep(points: &[(&str, i64)]) -> EvalRepSpec {
    let mut rep = EvalRepSpec::trivial();
    for &(p, h) in points {
        if h == 0 {
            continue;
        }
        rep.support.insert(
            p.to_string(),
            chars::IrrepLabel::uncharged(Weight::new(vec![h])),
        );
    }
    rep
}

fn two_point_loop_config() -> AlgebraConfig {
    algebra(
        "algebra { family = multiloop; g = \"A1\"; n = 1 }\n\
         point \"p1\" { tangent_dim = 1 }\npoint \"p2\" { tangent_dim = 1 }\n\
         point \"p3\" { tangent_dim = 1 }",
    )
}

const SPEC_POOL: [&str; 6] = ["A1", "A2", "B2", "A3", "G2", "A1xA1"];
const RANK2_POOL: [&str; 4] = ["A1", "A2", "B2", "A1xA1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Smith form really is a diagonalization: u·a·v is diagonal with
    /// the reported entries, which are non-negative and form a divisibility
    /// chain with zeros last.
    #[test]
    fn smith_form_reconstructs_and_divides(
        rows in 1usize..=4,
        cols in 1usize..=4,
        raw in proptest::collection::vec(-9i64..=9, 16),
    ) {
        let entries: Vec<BigInt> = raw[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
        let a = IntMatrix::new(rows, cols, entries).unwrap();
        let snf = smith_normal_form(&a);
        let prod = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
        for i in 0..rows {
            for j in 0..cols {
                let expected = if i == j && i < snf.d.len() {
                    snf.d[i].clone()
                } else {
                    BigInt::from(0)
                };
                prop_assert_eq!(prod.get(i, j), &expected);
            }
        }
        let zero = BigInt::from(0);
        for k in 0..snf.d.len() {
            prop_assert!(snf.d[k] >= zero);
            if k + 1 < snf.d.len() {
                if snf.d[k] == zero {
                    prop_assert_eq!(&snf.d[k + 1], &zero);
                } else {
                    prop_assert_eq!(&(&snf.d[k + 1] % &snf.d[k]), &zero);
                }
            }
        }
    }

    /// Reduction into the dominant chamber produces a dominant weight, is
    /// the identity on dominant inputs, and is idempotent with even parity.
    #[test]
    fn dominant_reduction_lands_in_the_chamber(
        which in 0usize..SPEC_POOL.len(),
        raw in proptest::collection::vec(-6i64..=6, 4),
    ) {
        let cd = rootsys::build(&rs(SPEC_POOL[which])).unwrap();
        let w = Weight::new(raw[..cd.rank()].to_vec());
        let (dom, parity, _singular) = cd.dominant_reduce(&w);
        prop_assert!(dom.is_dominant());
        prop_assert!(parity == 1 || parity == -1);
        let (again, parity2, singular2) = cd.dominant_reduce(&dom);
        prop_assert_eq!(&again, &dom);
        prop_assert_eq!(parity2, 1);
        prop_assert!(!singular2);
        if w.is_dominant() {
            prop_assert_eq!(&dom, &w);
            prop_assert_eq!(parity, 1);
        }
    }

    /// Dualization of highest weights is an involution preserving dimension.
    #[test]
    fn dual_weight_is_an_involution(
        which in 0usize..SPEC_POOL.len(),
        raw in proptest::collection::vec(0i64..=4, 4),
    ) {
        let cd = rootsys::build(&rs(SPEC_POOL[which])).unwrap();
        let lam = Weight::new(raw[..cd.rank()].to_vec());
        let dual = cd.dual_weight(&lam).unwrap();
        prop_assert!(dual.is_dominant());
        prop_assert_eq!(cd.dual_weight(&dual).unwrap(), lam.clone());
        prop_assert_eq!(chars::dim(&cd, &dual), chars::dim(&cd, &lam));
    }

    /// Weight multiplicities are Weyl-invariant, total to the module
    /// dimension, and assign multiplicity one to the highest weight.
    #[test]
    fn weight_multiplicities_are_weyl_symmetric(
        which in 0usize..RANK2_POOL.len(),
        raw in proptest::collection::vec(0i64..=3, 2),
    ) {
        let cd = rootsys::build(&rs(RANK2_POOL[which])).unwrap();
        let lam = Weight::new(raw[..cd.rank()].to_vec());
        let ms = chars::weight_multiplicities(&cd, &lam);
        prop_assert_eq!(ms.total(), chars::dim(&cd, &lam));
        prop_assert_eq!(ms.get(&lam), 1);
        for (w, &m) in &ms.mults {
            let (dom, _, _) = cd.dominant_reduce(w);
            prop_assert_eq!(ms.get(&dom), m, "multiplicity at {:?} vs its dominant form", w.coords);
        }
    }

    /// Tensor decomposition is symmetric in its factors, and the trivial
    /// module appears in V(λ)⊗V(μ)* exactly when λ = μ.
    #[test]
    fn tensor_decomposition_is_symmetric(
        which in 0usize..RANK2_POOL.len(),
        raw in proptest::collection::vec(0i64..=2, 4),
    ) {
        let cd = rootsys::build(&rs(RANK2_POOL[which])).unwrap();
        let r = cd.rank();
        let lam = Weight::new(raw[..r].to_vec());
        let mu = Weight::new(raw[r..2 * r].to_vec());
        let ab = chars::tensor_decompose(&cd, &lam, &mu);
        let ba = chars::tensor_decompose(&cd, &mu, &lam);
        prop_assert_eq!(ab, ba);
        let dual_mu = cd.dual_weight(&mu).unwrap();
        let prod = chars::tensor_decompose(&cd, &lam, &dual_mu);
        let trivial_mult: u64 = prod
            .terms
            .iter()
            .filter(|(l, _)| l.hw.coords.iter().all(|&c| c == 0))
            .map(|(_, m)| *m)
            .sum();
        prop_assert_eq!(trivial_mult, u64::from(lam == mu));
    }

    /// Coset coordinates modulo the root lattice are invariant under shifts
    /// by lattice generators, and the generators lie in the lattice.
    #[test]
    fn root_lattice_projection_is_shift_invariant(
        which in 0usize..SPEC_POOL.len(),
        raw in proptest::collection::vec(-5i64..=5, 4),
        gen_pick in 0usize..4,
    ) {
        let cd = rootsys::build(&rs(SPEC_POOL[which])).unwrap();
        let sub = cd.root_lattice();
        let quotient = quotient_of(&sub);
        let r = cd.rank();
        let v: Vec<BigInt> = raw[..r].iter().map(|&x| BigInt::from(x)).collect();
        let gi = gen_pick % sub.generators.rows;
        let row: Vec<BigInt> = (0..r).map(|j| sub.generators.get(gi, j).clone()).collect();
        prop_assert!(lattice_contains(&sub, &row).unwrap());
        let shifted: Vec<BigInt> = v.iter().zip(&row).map(|(a, b)| a + b).collect();
        prop_assert_eq!(quotient.project(&v).unwrap(), quotient.project(&shifted).unwrap());
    }

    /// Root-system names round-trip through parse and display.
    #[test]
    fn spec_text_round_trips(
        parts in proptest::collection::vec(0usize..8, 1..=3),
    ) {
        let pool = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"];
        let text: String =
            parts.iter().map(|&i| pool[i]).collect::<Vec<_>>().join("x");
        let spec = RootSystemSpec::parse(&text).unwrap();
        prop_assert_eq!(spec.to_string(), text.clone());
        prop_assert_eq!(RootSystemSpec::parse(&spec.to_string()).unwrap(), spec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Ext dimensions between evaluation representations are symmetric, and
    /// a nonzero Ext forces the two representations into the same block.
    #[test]
    fn ext_is_symmetric_and_links_blocks(
        h in proptest::collection::vec(0i64..=3, 4),
    ) {
        let cfg = two_point_loop_config();
        let v = eval_rep(&[("p1", h[0]), ("p2", h[1])]);
        let w = eval_rep(&[("p1", h[2]), ("p2", h[3])]);
        let ab = ext_dim(&cfg, &v, &w).unwrap();
        let ba = ext_dim(&cfg, &w, &v).unwrap();
        prop_assert!(ab.infinite_summands.is_empty());
        prop_assert_eq!(ab.finite_dim, ba.finite_dim);
        prop_assert!(same_block(&cfg, &v, &v).unwrap());
        if ab.finite_dim > 0 {
            prop_assert!(same_block(&cfg, &v, &w).unwrap());
        }
    }

    /// Tensoring both sides with one shared evaluation factor at a fresh
    /// point leaves Ext unchanged for distinct representations and adds the
    /// new factor's self-extensions on the diagonal.
    #[test]
    fn appending_a_shared_factor_shifts_ext_predictably(
        h in proptest::collection::vec(0i64..=3, 2),
        z in 1i64..=3,
    ) {
        let cfg = two_point_loop_config();
        let v = eval_rep(&[("p1", h[0])]);
        let w = eval_rep(&[("p1", h[1])]);
        let vz = eval_rep(&[("p1", h[0]), ("p3", z)]);
        let wz = eval_rep(&[("p1", h[1]), ("p3", z)]);
        let zz = eval_rep(&[("p3", z)]);
        let base = ext_dim(&cfg, &v, &w).unwrap().finite_dim;
        let appended = ext_dim(&cfg, &vz, &wz).unwrap().finite_dim;
        let diagonal = ext_dim(&cfg, &zz, &zz).unwrap().finite_dim;
        let expected = base + if h[0] == h[1] { diagonal } else { 0 };
        prop_assert_eq!(appended, expected);
    }

    /// The single-point formula is linear in the tangent dimension, and the
    /// brute-force dimension agrees with it on small instances.
    #[test]
    fn tangent_scaling_is_linear_and_matches_the_oracle(
        h in proptest::collection::vec(0i64..=2, 2),
        t in 1usize..=2,
    ) {
        let at = |tangent: usize| {
            algebra(&format!(
                "algebra {{ family = untwisted; g = \"A1\" }}\npoint \"p\" {{ tangent_dim = {tangent} }}"
            ))
        };
        let v = eval_rep(&[("p", h[0])]);
        let w = eval_rep(&[("p", h[1])]);
        let unit = ext_dim(&at(1), &v, &w).unwrap().finite_dim;
        let scaled = ext_dim(&at(t), &v, &w).unwrap().finite_dim;
        prop_assert_eq!(scaled, t as u64 * unit);
        prop_assert_eq!(oracle_ext_dim(&at(t), &v, &w).unwrap(), scaled);
    }

    /// Extensions between charge characters at the Onsager fixed point are
    /// symmetric under swapping the two characters.
    #[test]
    fn fixed_point_charge_extensions_are_symmetric(
        a_num in -6i64..=6,
        a_den in 1i64..=2,
        d_num in -4i64..=4,
        d_den in 1i64..=2,
    ) {
        let pair = builtin_sl2_pair();
        let quot = build_onsager_quotient(&pair, &[BigRational::from(BigInt::from(1))]).unwrap();
        let k = |c: &BigRational| -> FinModule {
            let lam: Vec<BigRational> = (0..quot.lie.dim)
                .map(|qi| {
                    quot.eval[0][qi]
                        .iter()
                        .filter(|(gi, _)| *gi == 0)
                        .map(|(_, coeff)| coeff * c)
                        .sum()
                })
                .collect();
            one_dim_module(&quot.lie, &lam).unwrap()
        };
        let a = BigRational::new(BigInt::from(a_num), BigInt::from(a_den));
        let b = &a + BigRational::new(BigInt::from(d_num), BigInt::from(d_den));
        prop_assert_eq!(
            ext1_dim(&quot.lie, &k(&a), &k(&b)),
            ext1_dim(&quot.lie, &k(&b), &k(&a))
        );
    }
}
