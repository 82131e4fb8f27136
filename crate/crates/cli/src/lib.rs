pub mod cache;
pub mod formats;
pub mod suites;
