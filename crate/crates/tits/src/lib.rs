//! File formats, the rules-file loader, golden tables and the `tits` command
//! line, on top of `tits-core`.

pub mod cli;
pub mod json;
pub mod rules;
pub mod tables;
