//! Exhaustive finite-scale analysis of three-case deciders built from an
//! isomorphic encoding, and of the phase transition in their canonical
//! parameter.

pub mod alphabet;
pub mod analysis;
pub mod error;
pub mod exact;
pub mod iso;
pub mod language;
pub mod parameter;
pub mod roughp;

pub use alphabet::{parity_counts, parity_counts_enumerated, Alphabet, ParityCounts, Word};
pub use analysis::{
    accepting_fraction, balance_check, bound_curve, compute_f, scan, verify_acc_bounds, BallTally, BoundKind,
    BoundParams, ScanReport, SliceStats,
};
pub use error::{Error, Result};
pub use exact::{DecayConstant, Polynomial, Surd};
pub use iso::{build_table_iso, verify_bijection, PIso, TableIso};
pub use language::{Language, LanguageSpec, Membership, OddWeight, FirstIsTwo, TableLanguage};
pub use parameter::{gamma, Orientation, ParamValue};
pub use roughp::{ClassCounts, RoughDecider, Sign, Splitter, Verdict};
