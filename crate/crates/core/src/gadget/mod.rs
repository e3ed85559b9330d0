//! The truncated counterexample algebra: a free algebra on base, `b0`, `b1`
//! and `h` generators modulo a small ideal, with checks of its projection
//! tables, independence, pushout structure and orbit growth.

mod build;
mod checks;
mod system;

pub use build::{
    b_name, base_name, build_gadget, build_gadget_capped, generator_names, h_name, GadgetAlgebra,
    GadgetParams,
};
pub use checks::{
    check_essproj, check_ideal_triviality, check_independence, check_pre_independence,
    check_pre_pushout_characterization, check_pushout_characterization, check_targets,
    free_extension_ranks, orbit_budget, orbit_growth, proj_b_h0_chain, proj_b_h0_value,
    pushout_characterization, row_element, target_indices, transfer_bpush, ChainLink, EssprojCell,
    HPattern, IdealTriviality, OrbitGrowth, PushoutCharacterization, TargetCase, TargetOutcome,
};
pub use system::{
    check_gadget_fn, check_gadget_rcnested, check_system_projections, gadget_as_system,
    sample_comparable_pairs, segment_zero_indices, FnSample, NestedAt, SystemProjection,
};
