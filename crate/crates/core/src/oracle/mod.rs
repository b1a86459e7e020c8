//! Independent brute-force ground truth.
//!
//! * [`enumerate`]: labeled graphs, two-graphs and antipodal spaces, filtered
//!   by locally re-implemented axiom checks.
//! * [`check`]: partial isomorphisms and automorphisms by exhaustive search,
//!   and a separate model of the witness `B` (own distance rule, own
//!   application of `θ`).
//! * [`verify`]: EPPA, switching EPPA and coherence checks that take the
//!   extensions from the main modules and judge them with [`check`] only.

pub mod check;
pub mod enumerate;
pub mod verify;

pub use check::{
    all_automorphisms, all_partial_isomorphisms, is_antipode_closed, random_partial_isomorphism,
    Checkable, OddTriples, WitnessModel,
};
pub use enumerate::{
    enumerate_antipodal_spaces, enumerate_antipodal_spaces_raw, enumerate_graphs,
    enumerate_two_graphs, sample_antipodal_space, Enumerated, EnumerationCursor, StructureKind,
};
pub use verify::{
    run_two_graph_coherence, run_verify_coherence, run_verify_eppa, verify_coherence, verify_eppa,
    verify_switching_eppa, CoherenceReport, Failure, VerificationReport, VerifyKind,
};
