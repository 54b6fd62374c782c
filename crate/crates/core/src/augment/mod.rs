//! Local improvement moves on a `K_{s,t}`-tiling: the auxiliary graph of
//! lilliputs and giants, F1 improvements, augmentations applied in the
//! t-expansion, and the expand-and-improve driver.

mod augmentation;
mod aux;
mod iterate;

pub use augmentation::{
    apply_augmentation, find_augmentation, validate_augmentation, Augmentation, EdgeSet, Violation,
};
pub use aux::{build_auxiliary, find_f1_improvement, AuxNode, AuxiliaryGraph};
pub use iterate::{
    check_trace_contract, iterate_expansion_improvement, iterate_expansion_improvement_from, paper_parameters,
    trace_to_csv, Action, IterationConfig, IterationResult, PaperParameters, TraceRow,
};
