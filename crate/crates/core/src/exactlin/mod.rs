//! Exact linear algebra over the integers, the rationals and the field with two elements.

mod bits;
mod integer;
mod mod2;

pub use bits::BitVector;
pub use integer::{Inertia, IntMatrix, IntSymMatrix, MatrixError};
pub use mod2::{Mod2AffineSolutionSet, Mod2Matrix};
