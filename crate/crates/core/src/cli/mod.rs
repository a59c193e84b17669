//! File front end: algebra documents, the analysis pipeline and its
//! reports.

mod document;
mod pipeline;

pub use document::{AlgebraDocument, Combination, DocumentOptions, ParseError, ParseErrors};
pub use pipeline::{fixture_document, FixtureFamily, run_pipeline, Command, OutputFormat, RunOptions, RunReport, Verdict};
