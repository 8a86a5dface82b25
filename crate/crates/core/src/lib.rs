//! Finite presentations of the fundamental group of the complement of a
//! complex line arrangement, read off a braided wiring diagram, together
//! with freeness verdicts and their certificates.

pub mod analysis;
mod error;
pub mod exactnum;
pub mod geometry;
pub mod pipeline;
pub mod presentation;
pub mod projective;
pub mod wiring;

pub use error::{Error, ErrorClass, Result};
