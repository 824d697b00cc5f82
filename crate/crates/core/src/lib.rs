pub mod cabling;
pub mod closedform;
pub mod error;
pub mod jclass;
pub mod knot;
pub mod laurent;
pub mod pdoracle;
pub mod verify;

pub use error::{Error, Result};
pub use knot::{CableType, Family, KnotId};
pub use laurent::{GapSignature, LaurentPoly, Var};
