//! Verification harness: corpus, reports and the commands behind the `commuting` binary.

pub mod commands;
pub mod corpus;
pub mod pipeline;
pub mod report;
