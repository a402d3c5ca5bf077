#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod abelian;
pub mod algebra;
pub mod balgebra;
pub mod bundle;
pub mod certificate;
pub mod cli;
pub mod coaction;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod harmonic;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod structure;
pub mod suites;

pub use error::{Error, Result};
