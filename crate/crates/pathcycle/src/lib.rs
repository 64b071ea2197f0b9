//! Exact-arithmetic library for the Hopf monoid of sets of paths and cycles.
//!
//! Structures are vertex-labeled graphs whose connected components are paths
//! or cycles (cycles on 1 and 2 vertices are the non-simple loop and double
//! edge). The library provides:
//!
//! * the Hopf operations (disjoint-union product, restriction/contraction
//!   coproduct) and the antipode, computed three independent ways: by the
//!   Milnor–Moore recursion ([`hopf::antipode_mm`]), as a signed sum over
//!   tubings ([`tubings::antipode_tubings`]), and as a grouping-free sum over
//!   (pointed) noncrossing partitions weighted by Catalan numbers
//!   ([`noncrossing::antipode_nc`], [`noncrossing::antipode_pnc`]);
//! * graph associahedra of paths (associahedra) and cycles (cyclohedra) as
//!   Minkowski sums of simplices, with the face/tubing correspondence and
//!   f-vectors ([`polytope`]);
//! * the character group as pairs of truncated power series with exact
//!   rational coefficients, and compositional inversion through four routes:
//!   direct recursion, associahedron faces, noncrossing partitions, and
//!   cyclohedron faces / pointed noncrossing partitions ([`series`]).
//!
//! All coefficients are exact rationals backed by arbitrary-precision
//! integers; there is no floating point anywhere.
//!
//! ```
//! use pathcycle::graphs::LabeledGraph;
//! use pathcycle::{hopf, noncrossing, tubings};
//!
//! let cycle = LabeledGraph::parse("(12)")?;
//! let s = hopf::antipode_mm(&cycle);
//! assert_eq!(s, tubings::antipode_tubings(&cycle)?);
//! assert_eq!(s, noncrossing::antipode_pnc(&cycle)?);
//! assert_eq!(
//!     s.to_json().to_string(),
//!     r#"[{"coeff":"-1","graph":"(12)"},{"coeff":"1","graph":"1|(2)"},{"coeff":"1","graph":"2|(1)"}]"#,
//! );
//! # Ok::<(), pathcycle::Error>(())
//! ```
//!
//! ```
//! use pathcycle::series::{group_inv, TruncatedPair, TruncatedSeries};
//!
//! // (x/(1-x), -ln(1-x))⁻¹ = (x/(1+x), -ln(1+x)), exactly.
//! let geom = TruncatedSeries::named("geom", 8).unwrap();
//! let nlog = TruncatedSeries::named("nlog", 8).unwrap();
//! let pair = TruncatedPair::from_gh(&geom, &nlog)?;
//! let inverse = group_inv(&pair);
//! let altgeom = TruncatedSeries::named("altgeom", 8).unwrap();
//! let log = TruncatedSeries::named("log", 8).unwrap();
//! assert_eq!(inverse, TruncatedPair::from_gh(&altgeom, &log.neg())?);
//! # Ok::<(), pathcycle::Error>(())
//! ```

pub mod graphs;
pub mod hopf;
pub mod noncrossing;
pub mod polytope;
pub mod series;
pub mod tubings;

mod error;

pub use error::{Error, Result};

/// Exact rational scalar used for all coefficients and coordinates.
pub type Rational = num::BigRational;

/// Arbitrary-precision unsigned integer used for counting results.
pub type Count = num::BigUint;
