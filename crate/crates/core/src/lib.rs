//! QA-driven event extraction for Portuguese.
//!
//! The crate models ACE-style event annotation (triggers typed by an
//! 8-type/33-subtype ontology, plus role-labelled argument spans) and
//! implements the full tooling pipeline around it:
//!
//! * ingestion of annotated-sentence JSON into a validated, character-offset
//!   corpus model ([`corpus`], [`formats`]);
//! * projection of English annotations onto machine-translated Portuguese
//!   text through a cascade of alignment stages ([`align`]);
//! * trigger tagging as IOB2 sequence labelling ([`iob`], [`trigger`]);
//! * argument extraction as extractive question answering with unanswerable
//!   questions ([`templates`], [`arguments`]);
//! * exact-match scoring with near-miss diagnostics ([`scorer`]).
//!
//! Model inference itself lives behind the [`trigger::TokenLabelBackend`] and
//! [`arguments::QaBackend`] traits; the crate ships deterministic mock
//! backends for tests and pipelines, and real model runners can be plugged in
//! without touching the surrounding machinery.

pub mod align;
pub mod arguments;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod iob;
pub mod ontology;
pub mod scorer;
pub mod similarity;
pub mod templates;
pub mod text;
pub mod trigger;

pub use error::{Error, Result};
