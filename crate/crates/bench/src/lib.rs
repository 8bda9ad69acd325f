//! Instance and result formats, differential verification, benchmarking and
//! SVG rendering for the `lgclip` clippers, plus the `lgclip` command line.

pub mod bench;
pub mod cli;
pub mod format;
pub mod render;
pub mod report;
pub mod verify;
