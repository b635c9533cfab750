//! Point counting, classification and intersection bounds for quadrics over
//! finite fields, with an exhaustive census engine for pairs of quadrics.

pub mod bounds;
pub mod census;
pub mod error;
pub mod field;
pub mod linalg;
pub mod pair;
pub mod proj;
pub mod quadric;
pub mod syntax;
pub mod variety;

pub use bounds::{BoundScalar, BoundsParams, BoundsTable};
pub use error::{Error, Result};
pub use field::{extend_field, make_field, Elem, ElemRepr, Element, Embedding, FieldSpec};
pub use proj::{canonicalize, enumerate_points, pi, PointTable, ProjPoint};
pub use quadric::{
    canonical_form, classify, rank, split_linear_factors, vanishing_radical, LinearForm,
    QuadraticForm, QuadricProfile, QuadricType,
};
pub use census::{probe_conjecture1, run_census, CensusConfig, CensusSummary};
pub use syntax::{parse_algebraic_set, parse_form, parse_quadric};
pub use variety::{check_conjecture2, estimate_dim_degree, AlgebraicSet, Form};

/// Exact rational used for bounds with a `1/(q-1)` term.
pub type Rational = num_rational::Ratio<i128>;
/// Arbitrary-precision rational for parameters beyond `i128`.
pub type BigRational = num_rational::Ratio<num_bigint::BigInt>;
/// Bounds table over exact rationals.
pub type ExactBoundsTable = BoundsTable<Rational>;
