//! Standard-library companion to `treegeo-core`: JSON file formats, seeded
//! samplers, partition and continuity audits, SVG drawings and the CLI.

pub mod audit;
pub mod cli;
pub mod io;
pub mod sample;
pub mod svg;
