//! Exact-arithmetic engine for trigonometric Weyl-group invariants on the
//! F4 root lattice.
//!
//! The crate builds, in order:
//!
//! 1. the scaled-integer lattice geometry ([`lattice`]),
//! 2. Weyl orbits and their combinatorial data ([`orbits`]),
//! 3. the algebra of invariant exponential sums and fusion rules ([`expsum`]),
//! 4. sparse multivariate polynomials over the basis invariants ([`poly`]),
//! 5. the algebraic basis obtained by fusion-rule inversion ([`chevalley`]),
//! 6. the inverse Riemannian, its determinant and the sine-product
//!    factorization ([`metric`]),
//! 7. the exactly solvable Sutherland-type operator, its invariant flag and
//!    spectra ([`sutherland`]).
//!
//! Everything is exact: lattice points are scaled integers, coefficients are
//! arbitrary-precision rationals. Floating point enters only in numeric
//! cross-check oracles. [`verify`] bundles the full self-check pipeline.

pub mod chevalley;
pub mod expsum;
pub mod lattice;
pub mod metric;
pub mod orbits;
pub mod poly;
pub mod q;
pub mod reference;
pub mod sutherland;
pub mod verify;

pub use chevalley::BasisResult;
pub use expsum::{ExpSum, FusionTable, InvariantCombo};
pub use lattice::{LatticeVector, OrderingVector, SCALE};
pub use metric::{FactorizationResult, InverseMetric};
pub use orbits::{Orbit, OrbitLabel, OrbitTable, RootSystem};
pub use poly::{Monomial, Poly, TermOrder};
pub use q::Q;
pub use sutherland::{FlagSpace, OperatorSpec, PotentialData, RCoefficients};
