//! Input language, JSON output and the randomized identity checks for
//! `jetforge-core`.

pub mod check;
pub mod commands;
pub mod dsl;
pub mod oracle;
pub mod random;
