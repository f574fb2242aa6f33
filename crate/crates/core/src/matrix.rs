//! Symmetric circulant matrices stored by first row, and real vectors.
//!
//! The `(k, j)` entry of the matrix is `a[(j - k) mod n]`, and the first row
//! satisfies `a[n - l] == a[l]` for every `l` in `1..n`.

use crate::error::{Error, Result};

/// A symmetric circulant matrix, compressed to its first row.
///
/// The symmetry `first_row[n - l] == first_row[l]` holds bitwise for every
/// value of this type.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpec {
    first_row: Vec<f64>,
}

impl CirculantSpec {
    /// Validates a full first row. Symmetry is checked exactly.
    pub fn new(mut first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_finite(&first_row)?;
        let n = first_row.len();
        for l in 1..=n / 2 {
            let mirror = n - l;
            let (left, right) = (first_row[l], first_row[mirror]);
            if left.to_bits() != right.to_bits() && left != right {
                return Err(Error::SymmetryViolation {
                    l,
                    mirror,
                    left,
                    right,
                    diff: (left - right).abs(),
                });
            }
            // 0.0 vs -0.0: keep the stored row bitwise symmetric
            first_row[mirror] = left;
        }
        Ok(Self { first_row })
    }

    /// Builds the unique symmetric row with `first_row[0] = a0` and
    /// `first_row[m] = first_row[n - m] = half[m - 1]` for `1 <= m <= n/2`.
    pub fn from_generator(a0: f64, half: &[f64], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if half.len() != n / 2 {
            return Err(Error::LengthMismatch {
                expected: n / 2,
                actual: half.len(),
            });
        }
        if !a0.is_finite() {
            return Err(Error::NonFinite {
                index: 0,
                value: a0,
            });
        }
        if let Some((i, &v)) = half.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                index: i + 1,
                value: v,
            });
        }
        let mut first_row = vec![0.0; n];
        first_row[0] = a0;
        for (m, &a) in (1..).zip(half) {
            first_row[m] = a;
            first_row[n - m] = a;
        }
        Ok(Self { first_row })
    }

    /// System dimension.
    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// Entry `(row, col)` of the full matrix.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        let n = self.n();
        self.first_row[(col + n - row % n) % n]
    }

    /// `max_m |a_m|`.
    pub fn max_abs(&self) -> f64 {
        self.first_row.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// The row sum `sum_j a_j`, accumulated in index order.
    pub fn row_sum(&self) -> f64 {
        self.first_row.iter().sum()
    }

    /// Multiplies every coefficient by `c`. Symmetry is preserved.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.first_row.iter().map(|a| a * c).collect())
    }
}

/// Validates a full first row. See [`CirculantSpec::new`].
pub fn make_spec(first_row: &[f64]) -> Result<CirculantSpec> {
    CirculantSpec::new(first_row.to_vec())
}

/// Builds a symmetric first row from `a0` and the `n / 2` free coefficients.
pub fn make_spec_from_generator(a0: f64, half: &[f64], n: usize) -> Result<CirculantSpec> {
    CirculantSpec::from_generator(a0, half, n)
}

/// A finite real vector: a right-hand side `b` or a solution `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self(entries))
    }

    /// A vector of length `n` with every entry equal to `beta`.
    pub fn constant(n: usize, beta: f64) -> Result<Self> {
        Self::new(vec![beta; n])
    }

    /// Wraps values produced by a solver. Callers guarantee finiteness.
    pub(crate) fn from_trusted(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite()));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `max_j |v_j|`, zero for an empty vector.
    pub fn inf_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// True when every entry is bitwise equal to the first one.
    pub fn is_bitwise_constant(&self) -> bool {
        match self.0.first() {
            Some(first) => self.0.iter().all(|v| v.to_bits() == first.to_bits()),
            None => false,
        }
    }

    /// `max_j |self_j - other_j|`.
    ///
    /// # Panics
    /// If the lengths differ.
    pub fn max_abs_diff(&self, other: &RealVector) -> f64 {
        assert_eq!(self.len(), other.len(), "vector lengths differ");
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

impl AsRef<[f64]> for RealVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(entries: Vec<f64>) -> Result<Self> {
        Self::new(entries)
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}
