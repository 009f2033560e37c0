//! Orthogonal polynomial machinery for inner bounds on extreme zeros.
//!
//! The crate evaluates a handful of classical and q-classical families in
//! arbitrary precision, builds associated polynomials and mixed three-term
//! recurrences (via the Christoffel determinant), isolates zeros with
//! certified bisection, and evaluates closed-form inner bounds for the
//! smallest and largest zeros.
//!
//! Everything here is `no_std` + `alloc`; IO and formatting live in the
//! `ortho-bounds` companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bigreal;
pub mod bounds;
pub mod christoffel;
pub mod error;
pub mod families;
pub mod poly;
pub mod recurrence;
pub mod zeros;

pub use bigreal::{BigReal, DEFAULT_PRECISION};
pub use bounds::{BoundEntry, BoundReport, BoundValue, Construction, Direction, InterlacingReport};
pub use christoffel::{CSpec, MixedRec};
pub use error::{Error, Result};
pub use families::{FamilyId, FamilySpec, RecurrencePair, Support};
pub use poly::Poly;
pub use recurrence::Recurrence;
pub use zeros::ZeroSet;
