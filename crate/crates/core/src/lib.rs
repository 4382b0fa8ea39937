//! Exact linear algebra for quiver representations and the Leavitt path
//! algebra functor.

pub mod chen;
pub mod error;
pub mod factor;
pub mod field;
pub mod graph;
pub mod io;
pub mod leavitt;
pub mod matrix;
pub mod moduli;
pub mod poly;
pub mod quiverrep;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use graph::{Cycle, Graph, Path};
pub use poly::Poly;
pub use leavitt::{LElement, LMonomial, PiElement, PiModule};
pub use quiverrep::{DimVector, Rep, RepHom, Subspace};
