//! Free algebras, coproducts, pushouts and quotients, and the embedding
//! classifiers used on them.

mod classify;
mod colimit;
mod hom;

pub use classify::{
    check_freepushout, free_extension_rank, free_extension_within, is_independent, splits,
    splits_with, FreeExtension,
};
pub use colimit::{
    compare_pushouts, coproduct, free_algebra, free_algebra_named, free_label, pushout, pushout_direct,
    quotient_by_ideal, DirectPushout, Pushout, PushoutComparison, SharedSubalgebra, DEFAULT_ATOM_CAP,
};
pub use hom::{CofactorMaps, Hom, QuotientMap};
