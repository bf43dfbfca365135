//! Exact arithmetic for the extended affine symmetric group and the
//! structures built on it:
//!
//! - [`weyl`]: the group itself — translation-permutation pairs, the word
//!   length function (closed form and breadth-first cross-check), canonical
//!   reduced words, and a rotation generator `Pi` normalizing the simple
//!   reflections.
//! - [`scalars`]: the coefficient field `Q(r)` of rational functions in one
//!   formal parameter, with exact canonical forms.
//! - [`hecke`]: the one-parameter deformation of the group algebra in its
//!   standard basis, with defining-relation verification.
//! - [`group_algebra`]: the undeformed group algebra, plus a two-generator
//!   presentation of the rank-2 group with a normal-form solver.
//! - [`iso`]: the explicit parameter-dependent isomorphism between the
//!   deformed and undeformed algebras at rank 2 (defined away from `r = -1`),
//!   and the rank-3 braid obstruction showing where it stops existing.
//! - [`bernstein`]: block descriptors for inertial classes of GL(2)
//!   representations and the combinatorics (segments, compositions,
//!   intertwining parameters) that index the general-rank picture.
//! - [`padic`]: an exact convolution algebra of double-coset-invariant
//!   functions on invertible 2x2 rational matrices at a prime `p`, at the
//!   full integral level and its Iwahori refinement.
//! - [`expr`]: the shared textual grammar for scalars and elements.

pub mod bernstein;
pub mod expr;
pub mod group_algebra;
pub mod hecke;
pub mod iso;
pub mod padic;
pub mod scalars;
pub mod weyl;

pub use bernstein::{
    BlockDescriptor, InertialClassGL2, MoritaDecomposition, Quasicharacter, Segment,
};
pub use expr::ExprError;
pub use group_algebra::GroupAlgebraElement;
pub use hecke::{HeckeAlgebra, HeckeElement, RelationReport};
pub use iso::{braid_obstruction, IsoContext, IsoError};
pub use padic::{BiInvariantFunction, GL2Element, Level, PadicContext, PadicError, Ratio};
pub use scalars::{Parameter, Rational, RationalFunction, ScalarError};
pub use weyl::{DescentStrategy, ExtAffineWeylElement, Permutation, WeylError};
