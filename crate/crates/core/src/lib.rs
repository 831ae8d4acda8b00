//! Gauss-diagram calculus for virtual string links.
//!
//! The crate models string links on `n` strands as Gauss diagrams (signed
//! arrows from the over-passage to the under-passage), implements the
//! Reidemeister, forbidden and cobordism moves on them, computes the ordered
//! pairwise linking numbers, and produces replayable, fingerprint-chained
//! traces for every normal form and equivalence it claims.
//!
//! Module map:
//!
//! * [`diagram`] and [`gsld`]: the data model, validation, the GSLD text
//!   format and the structural operations (connected sum, closure,
//!   concordance inverse).
//! * [`invariants`]: ordered and unordered linking numbers.
//! * [`moves`]: every rewriting move, its preconditions and enumeration.
//! * [`normalize`]: standard forms, the unwelded and cobordism normalizers and
//!   the equivalence decision procedure.
//! * [`cobordism`]: traces, replay, surface bookkeeping and the welded
//!   unknotting construction.
//! * [`oracle`]: random generation, bounded search and independent
//!   cross-checks.
//! * [`cli`]: the `vslink` command-line front end.

pub mod cli;
pub mod cobordism;
pub mod diagram;
pub mod error;
pub mod gsld;
pub mod invariants;
pub mod moves;
pub mod normalize;
pub mod oracle;

pub use cobordism::{
    is_concordance, is_string_link_cobordism, replay_trace, surface_linking_vectors, surface_stats,
    welded_unknot_trace, CobordismSurface, Fingerprint, Step, SurfaceComponent, Trace,
};
pub use diagram::{
    Arc, ChordId, CompRef, Component, ComponentKind, Endpoint, GaussDiagram, Role, Sign, Violation,
};
pub use error::{Error, MoveError, ParseError, Result, TraceError};
pub use gsld::{parse_diagram, serialize_diagram};
pub use invariants::{
    linking_vector, linking_vector_by_owner, lk_over, self_chord_count, ulk, LinkingVector,
};
pub use moves::{
    apply_move, enumerate_moves, validate_move, Calculus, EnumCaps, Move, MoveClass, R3PatternId,
};
pub use normalize::{
    commute_via_saddles, equivalent, normalize_cobordism, normalize_unwelded, standard_form,
    trivialize_inverse_sum, Equivalence,
};
