//! Extension property for partial automorphisms (EPPA) of two-graphs,
//! switching classes of graphs and antipodal metric spaces of diameter 3.
//!
//! The central object is the witness `B` of an antipodal space `A`
//! ([`witness`]): every isomorphism between subspaces of `A` extends to an
//! automorphism of `B`, and the extensions compose. [`pipelines`] turns this
//! into witnesses for graphs up to switching and for two-graphs.
//! [`oracle`] holds the brute-force checks the constructions are tested
//! against.

pub mod antipodal;
pub mod error;
pub mod format;
pub mod manifest;
pub mod oracle;
pub mod parity;
pub mod pipelines;
pub mod structures;
pub mod switching;
pub mod witness;

pub use antipodal::{
    double_cover, graph_of_two_graph, lift_two_graph_isomorphism, pode_graph,
    two_graph_of_antipodal, PodeGraph, PodeLabelling,
};
pub use error::{Error, Result};
pub use pipelines::{
    apa_counterexample_report, extend_plain_iso, extend_switching_iso, extend_two_graph_partial,
    switching_eppa_witness, two_graph_eppa_witness, SwitchingEppaCertificate,
    TwoGraphEppaCertificate,
};
pub use structures::{
    antipode, validate_antipodal, validate_graph, validate_two_graph, AntipodalSpace, Graph,
    PartialMap, SwitchingPartialMap, TwoGraph, ValidationReport, Vertex, Violation, ViolationKind,
};
pub use switching::{
    associated_two_graph, find_switch_set, is_switching_isomorphism, seidel_switch, SwitchSet,
};
pub use witness::{
    apply_witness_automorphism, build_witness, close_under_antipodes, extend_automorphism,
    flip_set, pode_value, project_and_extend, witness_distance, FlipSet, MatchingEdgeId, Valuation,
    WitnessAutomorphism, WitnessContext, WitnessVertex, DEFAULT_MATERIALIZE_LIMIT,
};
