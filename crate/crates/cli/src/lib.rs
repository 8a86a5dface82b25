//! Library side of the `arrpi1` command-line tool.

pub mod commands;
pub mod input;
pub mod svg;
