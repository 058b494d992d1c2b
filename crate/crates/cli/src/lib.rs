//! The `normdec` command-line pipeline: group input, configuration, the
//! `info`, `decompose` and `selftest` verbs, reports and the on-disk cache.

pub mod args;
pub mod cache;
pub mod input;
pub mod report;
pub mod run;
