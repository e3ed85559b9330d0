//! Interpolation and projection calculus on finite boolean algebras.
//!
//! Elements are atom bitsets and subalgebras are partitions of the atoms.
//! On top of that sit projections and commutation ([`interp`]), coproducts,
//! quotients and pushouts ([`construct`]), ordinal segment arithmetic
//! ([`ordinals`]), approximation systems with interpolant synthesis
//! ([`approx`]), the truncated counterexample algebra ([`gadget`]), and the
//! randomized and exhaustive check suites that exercise all of it
//! ([`suite`]).

pub mod approx;
pub mod ba;
pub mod construct;
pub mod error;
pub mod gadget;
pub mod interp;
pub mod ordinals;
pub mod suite;

pub use ba::{Element, FinAlg, SubOrder, Subalgebra};
pub use error::{Error, Result};
