//! Theta-body relaxations of cycle and cut polytopes of binary matroids.

pub mod analysis;
pub mod basis;
pub mod budget;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod matroid;
pub mod moment;
pub mod sdp;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, RowEchelon, Subset};
pub use matroid::{BinaryMatroid, Graph, Side};
