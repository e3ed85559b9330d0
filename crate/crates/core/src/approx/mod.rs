//! Systems of stage subalgebras indexed by ordinal positions: validation,
//! ranks, segment projections, projection trees, interpolating maps built
//! from them, and the projection-limit checks.

mod exchange;
mod limits;
mod orbit;
mod sigma;
mod synth;
mod system;

pub use exchange::SystemDoc;
pub use limits::{check_rclimit, check_rcnested, union_hypotheses, LimitWitness, NestedOutcome};
pub use orbit::{expansion_orbit, projection_orbit, ElementOrbit, ProjectionOrbit};
pub use sigma::{sigma_tree, varsigma, SigmaNode, SigmaTree};
pub use synth::{synth_fn_map, synth_transitive_fn_map, LazyFn, PairCheck};
pub use system::{ApproxSystem, StageUnion, Violation};
