//! Exact computations for noncommutative quadric hypersurfaces A = S/Sw:
//! isolated-singularity test, maximal Cohen–Macaulay modules and the graded
//! structure of End(𝕄 ⊕ A).

pub mod algebra;
pub mod error;
pub mod field;
pub mod hypersurface;
pub mod linalg;
pub mod mcm;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod quadratic;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
