//! Exact arithmetic over Q and F_p, and the linear-algebra kernel that every
//! separability decision reduces to.
//!
//! There are no tolerances anywhere: rationals are arbitrary precision and
//! every comparison is literal equality.

mod elim;
mod matrix;
mod residual;
mod scalar;

pub use elim::{axpy, AffineSolution, Eliminator, Feasibility, Infeasible, SparseVec};
pub use matrix::{solve_affine, Matrix};
pub use residual::{eliminate_affine, kernel_of, solve_residual, Residual, ResidualKey};
pub use scalar::{div_by_int, Field, Scalar};
