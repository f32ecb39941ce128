//! Library side of the `tomo` binary: descriptor parsing, CSV writers,
//! report types and the verification suite. The thin clap front end in
//! `main.rs` dispatches into these modules.

pub mod csvout;
pub mod descriptor;
pub mod report;
pub mod suite;
