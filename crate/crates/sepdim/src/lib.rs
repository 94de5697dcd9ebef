//! IO companion to `sepdim-core`: file formats, reports, fixtures and
//! worker-parallel drivers. The `sepdim` binary wires these to a CLI.

pub mod fixtures;
pub mod format;
pub mod parallel;
pub mod report;
