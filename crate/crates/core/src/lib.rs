#![cfg_attr(not(test), no_std)]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod arrangement;
pub mod certify;
pub mod curve;
pub mod decimal;
pub mod density;
pub mod group;
pub mod homology;
pub mod mapping_class;
pub mod poly;
pub mod standard;
pub mod surface;
pub mod twist;

pub use error::{Error, Result};
