//! Projections, relative completeness, commutation, interpolating maps and
//! commuting families.

mod commute;
mod expansion;
mod family;
mod fnmap;
pub mod lemmas;
mod proj;

pub use commute::{
    commute_witness, commutes, subalgebra_commute_witness, subalgebras_commute, CommuteWitness,
};
pub use expansion::{
    fn_map_from_expansion, least_member_containing, strongly_commuting_expansion, PartialAlgebra,
    PartialOp,
};
pub use family::{
    close_under_intersection, extend_sfn_family, verify_sfn_family, CommFamily, ExtendedFamily,
    ExtensionStep, SfnVerdict,
};
pub use fnmap::{
    interpolation_violation, transitivity_violation, verify_fn_map, verify_pairs, FnMap,
    FnViolation, Interpolator,
};
pub use proj::{
    is_relatively_complete, proj_down, proj_down_suborder, proj_subalgebra, proj_suborder,
    proj_up, proj_up_suborder, relative_completeness_gap, Direction,
};
