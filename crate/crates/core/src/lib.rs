//! Milnor-basis arithmetic, finite sub-Hopf algebras of the mod-2 Steenrod
//! algebra, finite graded modules over them, and stable-category tools.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod gf2;
pub mod grading;
pub mod module;
pub mod milnor;
pub mod profile;
pub mod registry;
pub mod stable;

pub use algebra::HopfAlgebra;
pub use error::{Error, Result};
pub use profile::Profile;
pub use registry::{algebra, parse_algebra, quotient};
pub use milnor::{MilnorElement, MilnorMonomial};
