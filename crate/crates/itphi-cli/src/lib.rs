//! Batch front end for the phi-dimension library: file formats, JSON run
//! reports, the deterministic corpus generator, the verification battery and
//! the command dispatcher.

pub mod checks;
pub mod corpus;
pub mod formats;
pub mod report;
pub mod runner;
pub mod selftest;
