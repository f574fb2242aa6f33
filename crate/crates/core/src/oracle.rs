//! Ground truth that shares no code with the solvers: the dense matrix,
//! Gaussian elimination with partial pivoting, a cyclic Jacobi eigensolver,
//! the naive `O(n^2)` DFT, and random test-system generators.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{CirculantSpec, RealVector};

/// Largest order [`materialize`] will allocate.
pub const DEFAULT_DENSE_CAP: usize = 8192;

/// Sweep limit for [`dense_eigenvalues`].
pub const DEFAULT_JACOBI_SWEEPS: usize = 50;

/// A square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if entries.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Expands a circulant spec into its dense matrix,
/// `entries[k][j] = first_row[(j - k) mod n]`.
pub fn materialize(spec: &CirculantSpec) -> Result<DenseMatrix> {
    materialize_with_cap(spec, DEFAULT_DENSE_CAP)
}

pub fn materialize_with_cap(spec: &CirculantSpec, cap: usize) -> Result<DenseMatrix> {
    let n = spec.n();
    if n > cap {
        return Err(Error::AllocationLimit { n, cap });
    }
    let a = spec.first_row();
    let mut entries = Vec::with_capacity(n * n);
    for k in 0..n {
        for j in 0..n {
            entries.push(a[(j + n - k) % n]);
        }
    }
    Ok(DenseMatrix { n, entries })
}

/// Solves `m x = b` by LU factorization with partial pivoting.
///
/// Fails with `NumericallySingular` when a pivot falls below
/// `1e-13 * ||m||_inf`.
pub fn dense_solve(m: &DenseMatrix, b: &RealVector) -> Result<RealVector> {
    let n = m.n;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let threshold = 1e-13 * m.inf_norm();
    let mut lu = m.entries.clone();
    let mut x = b.as_slice().to_vec();

    for col in 0..n {
        let (pivot_row, pivot) =
            (col..n)
                .map(|r| (r, lu[r * n + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot < threshold || pivot == 0.0 {
            return Err(Error::NumericallySingular {
                column: col,
                pivot,
                threshold,
            });
        }
        if pivot_row != col {
            for c in 0..n {
                lu.swap(col * n + c, pivot_row * n + c);
            }
            x.swap(col, pivot_row);
        }
        let diag = lu[col * n + col];
        for r in col + 1..n {
            let factor = lu[r * n + col] / diag;
            if factor == 0.0 {
                continue;
            }
            lu[r * n + col] = factor;
            for c in col + 1..n {
                lu[r * n + c] -= factor * lu[col * n + c];
            }
            x[r] -= factor * x[col];
        }
    }

    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| lu[r * n + c] * x[c]).sum();
        x[r] = (x[r] - tail) / lu[r * n + r];
    }
    RealVector::new(x)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.
pub fn dense_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    dense_eigenvalues_with_sweeps(m, DEFAULT_JACOBI_SWEEPS)
}

pub fn dense_eigenvalues_with_sweeps(m: &DenseMatrix, max_sweeps: usize) -> Result<Vec<f64>> {
    let n = m.n;
    if let Some((row, col)) = first_asymmetry(m) {
        return Err(Error::NotSymmetric { row, col });
    }
    let target = 1e-11 * m.inf_norm();
    let mut a = m.entries.clone();

    let off_norm = |a: &[f64]| -> f64 {
        let mut sum = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    sum += a[p * n + q] * a[p * n + q];
                }
            }
        }
        sum.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn first_asymmetry(m: &DenseMatrix) -> Option<(usize, usize)> {
    (0..m.n)
        .flat_map(|r| (r + 1..m.n).map(move |c| (r, c)))
        .find(|&(r, c)| m.get(r, c) != m.get(c, r))
}

/// Naive `O(n^2)` DFT, `X_k = sum_j v_j e^{sign * 2 pi i jk/n}`, unnormalized.
pub fn naive_dft(v: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|k| {
            v.iter()
                .enumerate()
                .map(|(j, &x)| {
                    let r = (j * k) % n;
                    let angle = sign * 2.0 * PI * r as f64 / n as f64;
                    x * Complex64::new(angle.cos(), angle.sin())
                })
                .sum()
        })
        .collect()
}

fn rng_for(n: usize, seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(stream);
    rng
}

/// A strictly diagonally dominant symmetric circulant spec, deterministic in
/// `(n, seed)`.
///
/// `a_1 .. a_{n/2}` are uniform on `[-1, 1]` and
/// `a_0 = 1 + sum_{m=1}^{n-1} |a_m|`, so every eigenvalue is at least 1.
///
/// # Panics
/// If `n == 0`.
pub fn random_spec(n: usize, seed: u64) -> CirculantSpec {
    assert!(n >= 1, "random_spec needs n >= 1");
    let mut rng = rng_for(n, seed, 0);
    let half: Vec<f64> = (0..n / 2).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let mirrored: f64 = (1..n).map(|m| half[m.min(n - m) - 1].abs()).sum();
    CirculantSpec::from_generator(1.0 + mirrored, &half, n)
        .expect("generator input is finite and correctly sized")
}

/// A right-hand side with entries uniform on `[-1, 1]`, deterministic in
/// `(n, seed)` and independent of [`random_spec`]'s stream.
pub fn random_rhs(n: usize, seed: u64) -> RealVector {
    let mut rng = rng_for(n, seed, 1);
    RealVector::new((0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .expect("uniform draws are finite")
}

/// A scalar uniform on `[lo, hi]`, deterministic in `seed`.
pub fn random_scalar(seed: u64, lo: f64, hi: f64) -> f64 {
    rng_for(0, seed, 2).random_range(lo..=hi)
}
