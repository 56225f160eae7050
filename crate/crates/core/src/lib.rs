pub mod acmoves;
pub mod constructions;
pub mod covers;
pub mod enumerate;
pub mod error;
pub mod fox;
pub mod intlinalg;
pub mod laurent;
pub mod presentations;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
