//! Exact-arithmetic computations around seminormality and weak
//! normality of monomial objects: weak subintegral closure and integral
//! closure of monomial ideals, Rees valuations, seminormalization of
//! numerical semigroups and affine monoids, element-level weak
//! subintegrality certificates, and the ordinary-point test for plane
//! curve germs.
//!
//! All values are immutable after construction and all operations are
//! pure functions, so concurrent use needs no synchronization.

pub mod closure;
pub mod curve;
pub mod element;
pub mod ideal;
pub mod lattice;
pub mod monoid;
pub mod parse;
pub mod poly;
pub mod polyhedron;
pub mod semigroup;
pub mod valuation;

pub use closure::{CharSpec, OracleOutcome, StarFaceResult};
pub use curve::{PlaneCurveGerm, TestVerdict};
pub use element::{SchanuelMatrix, SosiCertificate, SwanOutcome, WsiCertificate};
pub use ideal::{IdealOp, MonomialIdeal, OrdValue, UpsetClosure};
pub use lattice::{ExponentVector, IntegerLattice};
pub use monoid::{AffineMonoid, MonoidAlgebra, MonomialAlgebraContext};
pub use parse::{parse_polynomial, ParseError};
pub use poly::SparsePolynomial;
pub use polyhedron::{Face, Facet, RationalPolyhedron};
pub use semigroup::{NumericalSemigroup, SaturationResult};
pub use valuation::MonomialValuation;
