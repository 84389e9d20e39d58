//! Reasoning-then-coding solver for natural-language graph problems.
//!
//! The crate is organised around the stages of the solver and the tooling
//! needed to evaluate it offline:
//!
//! - [`graph`]: graph model, natural-language graph parsing, canonical
//!   standard-input rendering and formulation hashing.
//! - [`oracle`]: exact reference algorithms for every benchmark task family.
//! - [`verify`]: witness checkers that are independent of the oracle code.
//! - [`llm`]: completion backends (live HTTP, scripted fixtures), retries
//!   and usage accounting.
//! - [`sandbox`]: child-process execution of generated programs.
//! - [`pipeline`]: formatting, extracting, reasoning and coding stages with
//!   an artifact cache and bounded repair.
//! - [`harness`]: dataset IO, instance generation, answer checking,
//!   evaluation and reports.

pub mod graph;
pub mod harness;
pub mod llm;
pub mod oracle;
pub mod pipeline;
pub mod sandbox;
pub mod sync;
pub mod verify;

pub use graph::{Edge, Graph, GraphError};
