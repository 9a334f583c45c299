//! Exact finite-difference calculus for polynomials on finitely generated
//! abelian groups Z^k × F and their subsemigroups.
//!
//! A function is a polynomial of degree at most n when all of its
//! (n+1)-fold differences vanish. The crate evaluates such polynomials from
//! difference data, extends them from a semigroup J to G = J − J, splits
//! them into homogeneous parts and tensor factors, diagonalizes quadratic
//! forms by congruence, and computes dimensions and bases of the spaces
//! P^n(G). Every computation is exact over Gaussian rationals.
//!
//! ```
//! use abelpoly::extension::extend_eval;
//! use abelpoly::group::{GroupDescriptor, SemigroupDescriptor};
//! use abelpoly::{GroupElement, GroupFunction, Scalar};
//!
//! let g = GroupDescriptor::lattice(1);
//! let j = SemigroupDescriptor::standard_orthant(g.clone())?;
//! let q = GroupFunction::from_fn(g, |t| {
//!     let x = t.free_coords()[0];
//!     Scalar::from_int(x * x)
//! })
//! .restricted_to(&j)?;
//! let v = extend_eval(&q, &j, 2, &GroupElement::free([-2]), None)?;
//! assert_eq!(v, Scalar::from_int(4));
//! # Ok::<(), abelpoly::Error>(())
//! ```

pub mod combinatorics;
pub mod difference;
pub mod error;
pub mod extension;
pub mod function;
pub mod group;
pub mod io;
pub mod linalg;
pub mod polynomial;
pub mod riss;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use function::GroupFunction;
pub use group::{GroupDescriptor, GroupElement, SemigroupDescriptor, SemigroupKind};
pub use polynomial::{MonomialForm, MultiIndex, NewtonForm};
pub use scalar::Scalar;
