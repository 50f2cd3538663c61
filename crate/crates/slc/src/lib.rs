//! Command-line front end for `slc-core`: JSON reports and their replay.

pub mod cli;
pub mod codec;
pub mod verify;
