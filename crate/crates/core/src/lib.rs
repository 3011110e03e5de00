//! Exact computations with finite abelian groups: Stickelberger pairings,
//! resolvent exponent identities, Swan ideals, self-dual class models and
//! quadratic-field arithmetic.

pub mod arith;
pub mod error;
pub mod groups;
pub mod homs;
pub mod lattice;
pub mod psi_model;
pub mod quad_arith;
pub mod stickelberger;
pub mod suites;
pub mod swan_lattice;

pub use error::{Error, Result};

pub type IntLattice = lattice::Lattice<i64>;
pub type Rational = num_rational::Ratio<i64>;
pub type IntGroupRingElement = swan_lattice::GroupRingElement<i64>;
pub type RatGroupRingElement = swan_lattice::GroupRingElement<Rational>;
