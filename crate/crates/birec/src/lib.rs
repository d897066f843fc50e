//! File formats, reports and the command-line front end over `birec-core`.

pub mod cli;
pub mod corpus;
pub mod format;
pub mod report;
