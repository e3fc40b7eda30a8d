//! Command-line companion to `maclab-core`: suite runners, report and
//! polynomial serialization, selector parsing, and the on-disk cache.

pub mod cache;
pub mod poly;
pub mod report;
pub mod select;
pub mod suites;
