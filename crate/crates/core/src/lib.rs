//! Exact computational calculus for Lie-Rinehart algebras over the rationals.
//!
//! This crate implements, with exact rational arithmetic throughout:
//!
//! * sparse linear algebra over Q with canonical reduced-row-echelon
//!   subspaces ([`exactlin`]),
//! * Z-graded vector spaces and the Koszul sign oracle ([`graded`]),
//! * Lie-Rinehart algebras with two backends — finite-dimensional Lie
//!   algebras over Q and polynomial vector fields over Q[x_1..x_n]
//!   ([`liering`]),
//! * the exterior (Gerstenhaber) algebra of multivectors with the
//!   Schouten-Nijenhuis bracket ([`multivec`]),
//! * the dual Chevalley-Eilenberg complex with contraction, Lie derivative
//!   and the graded commutation relations of Cartan calculus ([`cartan`]),
//! * the L-infinity algebra of observables attached to a closed form of
//!   degree k+1, with its Leibniz-bracket companion and covariant momentum
//!   maps ([`observables`]),
//! * constraint triples (ambient/allowed/null), their monoidal structure and
//!   the induced constraint structures on exterior and Chevalley-Eilenberg
//!   algebras ([`constraint`]),
//! * the reduction pipeline that produces the reduced algebra of observables
//!   from a coisotropic-style ideal and a chosen set of symmetries
//!   ([`reduction`]).
//!
//! Everything is deterministic: no floating point, no randomized pivoting,
//! and all randomized test corpora are seeded. Polynomial backends use
//! bounded-degree coefficient windows only where a computation must
//! enumerate a finite coefficient space (linear solving); the algebraic
//! operations themselves are exact at every degree.
//!
//! All functions are pure: operations build new values and never mutate
//! shared state, so independent checks can safely run concurrently.

pub mod cartan;
pub mod constraint;
pub mod exactlin;
pub mod graded;
pub mod liering;
pub mod multivec;
pub mod observables;

pub use cartan::CeForm;
pub use constraint::{ConstraintError, ConstraintMap, ConstraintTriple, ReducedTriple};
pub use exactlin::{ExactMatrix, Rational, Subspace};
pub use graded::{GradedElement, GradedMap, GradedSpace};
pub use liering::{CoordinateIdeal, LieRinehartInstance, LrElement, PolyScalar};
pub use multivec::Multivector;
pub use observables::{Cocycle, HamPair, ObservablesComplex};
