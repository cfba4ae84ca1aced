//! Embedding antidirected patterns into dense hosts.
//!
//! The stages are usable on their own: [`extract_bipartite`] keeps a quarter
//! of the arcs between two halves, [`almost_regular_subdigraph`] trims the
//! result until maximum and minimum degree are within a constant factor,
//! [`find_rich_set`] and [`embed_via_rich_set`] place a pattern once a rich
//! set is known, and [`random_zoom`] samples a piece of the host where one is
//! guaranteed. [`faks_pipeline`] chains them.

mod almost_regular;
mod extract;
mod pipeline;
mod rich;
mod zoom;

pub use almost_regular::{almost_regular_subdigraph, default_t, RegularizeResult};
pub use extract::{extract_bipartite, DEFAULT_EXTRACT_ATTEMPTS};
pub use pipeline::{
    dense_bipartite_host, density_constant, faks_pipeline, ExtractDiagnostics, PipelineConfig, PipelineReport,
    ZoomDiagnostics,
};
pub use rich::{embed_via_rich_set, find_rich_set, verify_rich_set, RichSetCertificate, MAX_STORED_WITNESSES};
pub use zoom::{random_zoom, ZoomConfig, ZoomOutcome, DEFAULT_MAX_RETRIES};
