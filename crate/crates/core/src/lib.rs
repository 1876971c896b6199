//! Exact structure-constant algebra for Lie triple maps on generalized matrix
//! algebras.
//!
//! Every computation is exact. The library is generic over an exact field
//! (see [`Field`]); the aliases at the crate root fix that field to
//! arbitrary-precision rationals, which is what the catalog, file formats and
//! CLI use.

pub mod algebra;
pub mod catalog;
pub mod centralizers;
pub mod derivations;
pub mod error;
pub mod gma;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod properness;
pub mod reproduce;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rational number; the ground field of the catalog.
pub type Rational = num_rational::BigRational;

pub type Matrix = linalg::Matrix<Rational>;
pub type Subspace = linalg::Subspace<Rational>;
pub type Algebra = algebra::StructureConstants<Rational>;
pub type Element = algebra::Element<Rational>;
pub type LinearOperator = operator::LinearOperator<Rational>;
pub type Bimodule = gma::Bimodule<Rational>;
pub type MoritaContext = gma::MoritaContext<Rational>;
pub type Gma = gma::Gma<Rational>;
pub type Eta = gma::Eta<Rational>;
pub type BlockDecomposition = centralizers::BlockDecomposition<Rational>;
pub type CornerMaps = centralizers::CornerMaps<Rational>;
pub type PropernessCertificate = properness::PropernessCertificate<Rational>;
pub type GltdDecomposition = derivations::GltdDecomposition<Rational>;
