//! Exact computation of monodromy-at-infinity invariants of convenient,
//! non-degenerate polynomials from their Newton polyhedra.
//!
//! All geometry is generic over an exact integer [`Scalar`]; the aliases
//! below fix it to [`BigInt`] or `i64`.

pub mod ehrhart;
pub mod error;
pub mod hodge;
pub mod lattice;
pub mod monodromy;
pub mod oracle;
pub mod scalar;

pub use num_bigint::BigInt;

pub use ehrhart::{RootOfUnity, TwistedCharacter};
pub use error::{Error, Result};
pub use hodge::{EPolynomial, HodgeEngine, HodgeGrid};
pub use lattice::{LatticePolytope, LatticeVector};
pub use monodromy::{JordanTable, NewtonAtInfinity, SpectrumPoly, SupportSpec, ZetaFactorization};
pub use scalar::Scalar;

pub type Vector = LatticeVector<BigInt>;
pub type Polytope = LatticePolytope<BigInt>;
pub type Character = TwistedCharacter<BigInt>;
pub type Support = SupportSpec<BigInt>;
pub type Newton = NewtonAtInfinity<BigInt>;
pub type HodgeClass = EPolynomial<BigInt>;

pub type Vector64 = LatticeVector<i64>;
pub type Polytope64 = LatticePolytope<i64>;
pub type Character64 = TwistedCharacter<i64>;
pub type Support64 = SupportSpec<i64>;
pub type Newton64 = NewtonAtInfinity<i64>;
pub type HodgeClass64 = EPolynomial<i64>;
