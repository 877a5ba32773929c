pub mod config;
pub mod output;
pub mod suites;
pub mod vector;
