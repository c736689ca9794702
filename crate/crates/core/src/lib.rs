//! Grassmann and Clifford Hopf algebra products as rectangular structure
//! matrices, with their singular value decompositions and the spectral
//! identities they satisfy.

pub mod blade;
pub mod deformation;
pub mod element;
pub mod error;
pub mod experiments;
pub mod exterior;
pub mod matrix;
pub mod scalar;
pub mod spectral;
pub mod structure;

pub use blade::{blade_wedge, Blade};
pub use element::{Element, TensorElement};
pub use error::{Error, Result};
pub use matrix::RectMatrix;
pub use scalar::{Rational, Scalar};
