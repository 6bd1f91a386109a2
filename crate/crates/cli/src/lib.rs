//! Command-line front end: tensor files, reports, tables and graph quartics.

pub mod app;
pub mod catalog;
pub mod graph;
pub mod io;
pub mod report;
