//! Command-line front end for `paveset`: instance documents, subcommands
//! and their reports.

pub mod commands;
pub mod doc;
pub mod report;
