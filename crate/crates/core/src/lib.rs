//! Symbol calculus and deformation quantization on coadjoint orbits of compact
//! semisimple groups.

pub mod error;
pub mod exact;
pub mod orbit;
pub mod repr;
pub mod rootsys;
pub mod scalar;
pub mod starprod;
pub mod symbols;
pub mod uea;

pub use error::{Error, Result};
