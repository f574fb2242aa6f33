//! Fixtures shared by the criterion benches.

use circsym_core::{random_rhs, random_spec, CirculantSpec, RealVector};

/// Sizes swept by the solver benches: powers of two plus odd lengths that
/// take the Bluestein path.
pub const SIZES: &[usize] = &[64, 256, 1000, 1024, 4096];

/// A diagonally dominant system of order `n` with a random right-hand side.
pub fn fixture(n: usize) -> (CirculantSpec, RealVector) {
    (random_spec(n, 0xC1C5), random_rhs(n, 0xC1C5))
}
