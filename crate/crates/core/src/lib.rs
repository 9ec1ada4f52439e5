//! Symbolic and numerical toolkit for the N = 1 supersymmetric sinh-Gordon
//! equation: Grassmann arithmetic, superspace calculus, the symmetry
//! superalgebra and its subalgebras, symmetry reductions and their
//! special-function solutions.

pub mod algebra;
pub mod error;
pub mod fieldcalc;
pub mod grassmann;
pub mod reduction;
pub mod sampling;
pub mod special;
pub mod superspace;
pub mod symalg;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{Parity, Supernumber};
