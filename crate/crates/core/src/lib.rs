//! Exact rational computations with A∞-algebras and A∞-bimodules, built
//! around the Koszul complex and the bar resolution of `S(V*)`.
//!
//! Structures are stored as families of suspended Taylor components acting on
//! basis monomials; all coefficients are exact rationals.

pub mod ainfty;
pub mod basis;
pub mod enumerate;
pub mod error;
pub mod graded;
pub mod homology;
pub mod koszul;
pub mod polyalg;
pub mod taylor;
pub mod tensor_bar;

/// Largest supported `dim V`.
pub const MAX_DIM: usize = 6;

pub use basis::{Mono, Space, TensorWord};
pub use error::{Error, Result};
pub use graded::{Degree, Element, Sign, Q};
