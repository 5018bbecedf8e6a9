//! Exact computations with ample groupoids with compact unit space: compact
//! open bisections, topological full groups, the convolution algebra
//! `C_c(G)` over the Gaussian rationals, and invariant measures.
//!
//! Three families of groupoids are modelled exactly:
//!
//! * [`FiniteGroupoid`]: finite discrete groupoids with a composition table;
//! * [`ShiftGroupoid`]: the Deaconu–Renault groupoid of the full one-sided
//!   shift, whose full group is Thompson's group `V`;
//! * [`CompactifiedZGroupoid`]: translation, dihedral and sign-flip actions
//!   on the compactified integers and their restrictions.

pub mod bisection;
pub mod error;
pub mod extz;
pub mod models;
pub mod prefix;
pub mod sampling;
pub mod scalar;
mod text;
pub mod word;
pub mod fullgroup;
pub mod starconv;
pub mod measures;

pub use bisection::{AmpleGroupoid, ClopenSet, CompactBisection, FiniteBisection, ShiftArrow, ShiftBisection};
pub use error::{Error, Result};
pub use extz::{ExtInt, ExtZSet, ZAction, ZGroupElem};
pub use models::{AxiomReport, CompactifiedZGroupoid, FiniteGroupoid, Orbit, ShiftGroupoid};
pub use prefix::CylinderSet;
pub use scalar::{Rational, Scalar};
pub use word::{Point, Word};
