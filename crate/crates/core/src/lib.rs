//! Layered solid tori, normal meridian discs and their parallelity bundles.

pub mod bundle;
pub mod cli;
pub mod curves;
pub mod error;
pub mod golden;
pub mod layered;
pub mod normal;
pub mod report;
pub mod search;
pub mod slope;
pub mod tri;
pub mod util;

pub use error::{Error, Result};
