//! Command-line front end for `ffhybrid-core`: cached unit groups, the group
//! transform for L-polynomials, parallel moment scans and JSON/CSV output.

pub mod cache;
pub mod config;
pub mod fast;
pub mod output;
pub mod run;
pub mod scan;
pub mod suites;
