//! File formats, SVG output, reproduction suites and the command line for `qca`.

pub mod cli;
pub mod diagram_file;
pub mod seed_file;
pub mod suites;
pub mod svg;
