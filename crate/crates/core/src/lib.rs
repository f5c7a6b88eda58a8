//! Exact continued-fraction arithmetic and decision procedures for Sturmian,
//! Denjoy and interval exchange systems.

pub mod error;
pub mod iet;
pub mod json;
pub mod realnum;
pub mod cfrac;
pub mod decision;
pub mod decide;
pub mod denjoy;
pub mod moebius;
pub mod sturmian;

pub use error::{Error, Result};
pub use realnum::{Basis, RealValue};
