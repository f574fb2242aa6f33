//! Solvers for symmetric circulant real linear systems `A x = b`.
//!
//! A symmetric circulant matrix is stored by its first row
//! ([`CirculantSpec`]). Its eigenvalues are real ([`spectrum`]), and the
//! system can be solved three ways:
//!
//! * [`solve_direct`]: closed-form real sum over eigenvalues, `O(n^2)`;
//! * [`solve_fft`]: DFT diagonalization, `O(n log n)`;
//! * [`solve_constant`]: constant right-hand side, `O(n)`.
//!
//! The [`oracle`] module holds an independent dense reference path (LU and
//! Jacobi) used for verification.

pub mod dft;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod solver;
pub mod spectrum;
mod trig;

pub use dft::{cached_plan, dft_forward, dft_inverse, DftPlan, Strategy};
pub use error::{Error, Result};
pub use matrix::{make_spec, make_spec_from_generator, CirculantSpec, RealVector};
pub use num_complex::Complex64;
pub use oracle::{
    dense_eigenvalues, dense_solve, materialize, random_rhs, random_spec, DenseMatrix,
};
pub use solver::{
    apply, apply_fft, rhs_spectrum, solve, solve_constant, solve_direct, solve_fft, RhsSpectrum,
    SolveOptions, SolvePath, SolveReport,
};
pub use spectrum::{
    is_singular, spectrum, SingularityReport, Spectrum, DEFAULT_SINGULAR_TOLERANCE,
};
