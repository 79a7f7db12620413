//! Chord-diagram analytics and the rewriting calculus on spiders:
//! separability, standard forms, chord slides and cyclings, mirrors and the
//! certified reduction to standard form.

mod certificate;
mod chord;
mod cut;
mod reduce;
mod slide;

pub use certificate::{BracketTerm, ReductionCertificate, TraceStats};
pub use chord::{
    chord_diagram_of, classify_vertices, inner_boundary_components, is_separable, is_standard_form, mirror,
    multiplicity, split_separable, Arc, ChordDiagram, ConfigurationState, StandardForm, VertexClass,
};
pub use cut::cut;
pub use reduce::reduce_to_standard;
pub use slide::{chord_cycle, chord_slide, ChordCycle, CycleOutcome};
