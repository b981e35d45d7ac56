//! Seeded sampling, the reproduction suite and report rendering behind the
//! `kloc` binary. Kept as a library so integration tests can drive the
//! checks directly.

pub mod report;
pub mod sample;
pub mod suite;
