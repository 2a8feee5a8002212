//! Exact algebra of two-level fractional factorial designs.
//!
//! A fraction of the full design {-1,+1}^m is pinned down by its counting
//! polynomial: the unique square-free polynomial whose value at a run is the
//! run's multiplicity. All coefficients are dyadic rationals over 2^m and
//! everything here is computed exactly on integer numerators.
//!
//! The crate covers:
//!
//! - bit-level points, multi-indices and subgroup enumeration over Z2^m
//!   ([`gf2`]),
//! - counting/indicator polynomials, their ring operations, strength and
//!   regularity tests ([`polynomial`]),
//! - regular-fraction specifications and the coefficient test for embedding
//!   a regular fraction into an arbitrary one ([`regular`]),
//! - decomposition of a fraction into disjoint regular fractions, greedy and
//!   exhaustive ([`decompose`]),
//! - the 12-run Plackett-Burman design, its 5-column projection classes and
//!   the catalog of 12-point strength-2 orthogonal arrays ([`pbcatalog`]).

pub mod decompose;
pub mod error;
pub mod gf2;
pub mod pbcatalog;
pub mod polynomial;
pub mod regular;

pub use decompose::{decompose_all, decompose_greedy, disjoint, Decomposition};
pub use error::{Error, Result};
pub use gf2::{enumerate_subgroups, gaussian_binomial, MultiIndex, Point, Sign, Subgroup};
pub use pbcatalog::{
    alpha_patterns, build_pb12, classify_projections, column_index, column_label,
    generate_strength2_catalog, project, AlphaPattern, PbDesign, ProjectionClass,
};
pub use polynomial::{CountingPolynomial, Fraction};
pub use regular::{find_regular_subfractions, inclusion_test, necessary_test, RegularSpec};
