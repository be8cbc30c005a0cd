//! Executable checks of the generating-set and regularity identities over
//! graph corpora, with machine-readable reports.

pub mod corpus;
pub mod report;
pub mod suites;

pub use corpus::{Corpus, CorpusSpec, NamedGraph, NamedIdeal};
pub use report::{emit_report, Format, Instance, Report, Status, Summary};
pub use suites::{run_suite, run_suite_cached, RegCache, Suite, SuiteConfig};
