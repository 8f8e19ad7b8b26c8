//! Driver for the `pglab` command: group specifications, the built-in corpus,
//! analysis reports and corpus verification.

pub mod corpus;
pub mod report;
pub mod spec;
pub mod verify;
