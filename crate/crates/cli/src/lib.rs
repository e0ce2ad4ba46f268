//! Command-line front end: the map DSL, the built-in corpus, JSON reports.

pub mod app;
pub mod corpus;
pub mod dsl;
pub mod report;
pub mod subject;
