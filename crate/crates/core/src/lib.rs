//! Exact algebra for cyclic group actions on projective hypersurfaces.
//!
//! The crate classifies pairs of fixed points of a diagonal cyclic action on
//! a hypersurface `{F = 0}` by the shape of the invariant linear system
//! through them, and builds re-verifiable certificates (explicit equivariant
//! rational curves, chains, shared fixed components, lines) that connect
//! them.

pub mod action;
pub mod catalog;
pub mod criteria;
pub mod curves;
pub mod error;
pub mod field;
pub mod linsys;
pub mod poly;
pub mod smooth;

pub use action::{CoordinateSubspace, CyclicAction, FixedComponent, FixedLocus};
pub use error::{
    ActionError, CriteriaError, CurveError, FieldError, FormatError, LinsysError, PolyError,
    SmoothError,
};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linsys::{BaseLocus, LinearSystem};
pub use poly::{AmbientPoly, BinaryForm, Monomial};
