//! Architectural dependence analysis for ACME-style descriptions.
//!
//! The pipeline is [`acme::parse`] → [`sadg::build_sadg`] →
//! [`slicer::slice_graph`] → [`slicer::project_slice`] →
//! [`acme::emit_text`]. [`slicer::slice`] runs all of it in one call.
//!
//! ```
//! use archslice::{acme, slicer};
//!
//! let desc = acme::parse(archslice::LAS_FIXTURE).unwrap();
//! let s = slicer::slice(
//!     &desc,
//!     "resource_mgr",
//!     ["incident_info_request", "receive_incident_info"],
//!     slicer::SliceDirection::Backward,
//! )
//! .unwrap();
//! assert!(s.description.component("dispatcher").is_none());
//! assert!(s.description.component("call_entry").is_some());
//! ```

pub mod acme;
pub mod batch;
pub mod cli;
pub mod diagnostic;
pub mod flow;
pub mod sadg;
pub mod slicer;

pub use diagnostic::{Code, Diagnostic, Location, Severity};

/// The London Ambulance Service dispatch system used throughout the tests.
pub const LAS_FIXTURE: &str = include_str!("../fixtures/las.acme");
