//! Exact computation of first extension groups and block decompositions for
//! finite-dimensional irreducible representations of equivariant map algebras.
//!
//! An equivariant map algebra is the Lie algebra of equivariant regular maps
//! from an affine variety `X` to a finite-dimensional reductive Lie algebra
//! `g`, under a finite abelian group `Γ` acting on both. Its irreducible
//! finite-dimensional representations are (twists of) evaluation
//! representations: pick finitely many points of `X` in distinct `Γ`-orbits,
//! pick an irreducible of the isotropy algebra `g^x` at each, and tensor the
//! pullbacks. This crate computes, in exact arithmetic:
//!
//! * `dim Ext^1(V, V')` between two such representations, by closed formulas
//!   dispatched per family (current/untwisted, multiloop, exchange involution,
//!   generalized Onsager), with every infinite-dimensional summand carried
//!   symbolically — never silently dropped or approximated;
//! * the block decomposition of the category of finite-dimensional modules,
//!   via spectral characters (families of lattice cosets and, for Onsager
//!   fixed points, a rational-charge-mod-Z component);
//! * the same Ext dimensions a second time, from scratch, by brute-force Lie
//!   algebra cohomology (`H^1(L, V^* ⊗ V')` as derivations modulo inner
//!   derivations) over exact rationals on finite-dimensional local model
//!   algebras — the oracle every closed formula is tested against.
//!
//! Module map:
//!
//! * [`intlinalg`] — arbitrary-precision integer matrices, Smith normal form,
//!   lattice subgroups, quotient groups, exact rational rank.
//! * [`rootsys`] — root systems of the classical/exceptional types, Cartan
//!   data, dominance reduction, dual weights, root lattices.
//! * [`chars`] — irreducible characters: Freudenthal weight multiplicities,
//!   Weyl dimension, tensor product decomposition (Klimyk plus a brute-force
//!   character-stripping reference path), Hom-space dimensions.
//! * [`emalg`] — algebra/point/representation descriptions, the plain-text
//!   config format, and validation.
//! * [`ext`] — the Ext¹ engine (support comparison, single-point formulas,
//!   Künneth combination, graded general form).
//! * [`blocks`] — block classes, spectral characters, block enumeration,
//!   weight-lattice equivalence and chain reachability.
//! * [`oracle`] — exact finite-dimensional Lie algebras and modules, `H^1`
//!   and `Ext^1` by linear algebra, and builders for the local model algebras
//!   (truncated currents, first-order jets, exchange and Onsager quotients).

pub mod blocks;
pub mod chars;
pub mod emalg;
pub mod ext;
pub mod intlinalg;
pub mod oracle;
pub mod rootsys;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
