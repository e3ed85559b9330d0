//! Finite boolean algebras as power sets of atoms, with subalgebras stored
//! as atom partitions.

mod algebra;
mod element;
mod exchange;
mod partition;
mod suborder;

pub use algebra::FinAlg;
pub use element::{AtomList, Atoms, Element};
pub use exchange::{AlgebraDoc, NamedAlgebra};
pub use partition::{Subalgebra, DEFAULT_ENUMERATION_CAP};
pub use suborder::SubOrder;
