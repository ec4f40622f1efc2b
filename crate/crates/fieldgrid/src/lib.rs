//! Configuration ingestion, grid sampling, deterministic parallel
//! evaluation, CSV/JSON export and the end-to-end verification scenarios
//! behind the `fieldgrid` command-line tool.

pub mod config;
pub mod evaluate;
pub mod grid;
pub mod report;
pub mod scenarios;
