//! Instance files, generators and run wrappers around `cacaug-core`.
//!
//! The `cacaug` binary in this crate exposes the whole toolkit: `validate`,
//! `solve`, `verify`, `gen`, `analyze` and `bench`. See the repository
//! README for the file formats and exit codes.

#![forbid(unsafe_code)]

pub mod formats;
pub mod gen;
pub mod run;

pub use cacaug_core as core;
