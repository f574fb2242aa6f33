//! Solution paths for `A x = b` with `A` symmetric circulant.
//!
//! * [`solve_direct`]: the closed-form real-arithmetic sum over eigenvalues,
//!   `O(n^2)`, no complex numbers.
//! * [`solve_fft`]: `x = F Psi^{-1} F^* b` through DFT plans, `O(n log n)`.
//! * [`solve_constant`]: `x_l = beta / sum_j a_j` for a constant right-hand
//!   side, `O(n)`.
//!
//! [`solve`] dispatches between them and always reports the residual.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dft::{cached_plan, DftPlan};
use crate::error::{Error, Result};
use crate::matrix::{CirculantSpec, RealVector};
use crate::spectrum::{
    spectrum_via_dft, spectrum_with_tolerance, Spectrum, DEFAULT_SINGULAR_TOLERANCE,
};
use crate::trig;

/// Default size at which [`solve`] switches from the direct formula to FFT.
pub const DEFAULT_FFT_THRESHOLD: usize = 64;

/// The normalized transform of a right-hand side,
/// `T_k = (1/n) sum_j b_j e^{2 pi i kj/n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsSpectrum {
    coefficients: Vec<Complex64>,
}

impl RhsSpectrum {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max_k |T_{n-k} - conj(T_k)|` over `k` in `1..n`.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let n = self.n();
        (1..n).fold(0.0, |m, k| {
            m.max((self.coefficients[n - k] - self.coefficients[k].conj()).norm())
        })
    }
}

/// Which solution path produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolvePath {
    Direct,
    Fft,
    ConstantRhs,
}

impl SolvePath {
    pub fn as_str(self) -> &'static str {
        match self {
            SolvePath::Direct => "direct",
            SolvePath::Fft => "fft",
            SolvePath::ConstantRhs => "constant-rhs",
        }
    }
}

impl fmt::Display for SolvePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolvePath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(SolvePath::Direct),
            "fft" => Ok(SolvePath::Fft),
            "constant" | "constant-rhs" => Ok(SolvePath::ConstantRhs),
            other => Err(format!("unknown solve path '{other}'")),
        }
    }
}

/// Knobs for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Force a path; `None` dispatches automatically.
    pub path: Option<SolvePath>,
    pub fft_threshold: usize,
    pub singular_tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            path: None,
            fft_threshold: DEFAULT_FFT_THRESHOLD,
            singular_tolerance: DEFAULT_SINGULAR_TOLERANCE,
        }
    }
}

/// A solution together with how it was obtained and how well it fits.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: RealVector,
    pub path: SolvePath,
    /// `||A x - b||_inf`.
    pub residual_inf_norm: f64,
    pub spectrum_min_abs: f64,
    /// Largest imaginary part discarded by the FFT path.
    pub fft_imag_residue: Option<f64>,
}

/// Output of the FFT path before the imaginary part is dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct FftSolution {
    pub solution: RealVector,
    /// `max_l |Im x_l|` of the final inverse transform.
    pub imag_residue: f64,
    /// `1e-11 * n * max_k |T_k / psi_k|`.
    pub imag_tolerance: f64,
}

/// `y = A x`, with `y_k = sum_j a_{(j-k) mod n} x_j`. `O(n^2)`.
pub fn apply(spec: &CirculantSpec, x: &RealVector) -> Result<RealVector> {
    check_dim(spec.n(), x.len())?;
    let a = spec.first_row();
    let n = a.len();
    let x = x.as_slice();
    let y = (0..n)
        .map(|k| {
            // row k is the first row rotated right by k
            let (head, tail) = a.split_at(n - k);
            tail.iter().chain(head).zip(x).map(|(a, x)| a * x).sum()
        })
        .collect();
    Ok(RealVector::from_trusted(y))
}

/// `y = A x` as a circular convolution through `plan`. `O(n log n)`.
pub fn apply_fft(plan: &DftPlan, spec: &CirculantSpec, x: &RealVector) -> Result<RealVector> {
    check_dim(spec.n(), x.len())?;
    check_dim(plan.n(), x.len())?;
    let psi = spectrum_via_dft(plan, spec)?;
    let mut work = plan.forward_real(x.as_slice())?;
    for (w, p) in work.iter_mut().zip(psi.values()) {
        *w *= p;
    }
    plan.inverse_in_place(&mut work);
    Ok(RealVector::from_trusted(
        work.iter().map(|z| z.re).collect(),
    ))
}

/// `T_k = (1/n) sum_j b_j e^{2 pi i kj/n}`, i.e. the normalized inverse DFT
/// of `b`.
pub fn rhs_spectrum(plan: &DftPlan, b: &RealVector) -> Result<RhsSpectrum> {
    check_dim(plan.n(), b.len())?;
    Ok(RhsSpectrum {
        coefficients: plan.inverse_real(b.as_slice())?,
    })
}

/// Closed-form solve in real arithmetic. `O(n^2)`.
pub fn solve_direct(spec: &CirculantSpec, b: &RealVector) -> Result<RealVector> {
    check_dim(spec.n(), b.len())?;
    solve_direct_with_spectrum(&crate::spectrum::spectrum(spec), b)
}

/// Closed-form solve given precomputed eigenvalues:
///
/// ```text
/// x_l = (1/n) psi_0^{-1} sum_j b_j
///     + (2/n) sum_{k=1}^{(n-1)/2} psi_k^{-1} sum_j b_j cos(2 pi k (j - l)/n)
///     + [n even] ((-1)^l / n) psi_{n/2}^{-1} sum_j (-1)^j b_j
/// ```
///
/// The inner cosine sum is split as
/// `cos(u - v) = cos u cos v + sin u sin v`, so each `k` needs one pass over
/// `b` and one pass over `l`.
pub fn solve_direct_with_spectrum(spectrum: &Spectrum, b: &RealVector) -> Result<RealVector> {
    let n = spectrum.n();
    check_dim(n, b.len())?;
    spectrum.ensure_nonsingular()?;
    let psi = spectrum.values();
    let b = b.as_slice();
    let (cos, sin) = trig::tables(n);
    let pairs = (n - 1) / 2;
    let inv_n = 1.0 / n as f64;

    // (sum_j b_j cos(2 pi kj/n), sum_j b_j sin(2 pi kj/n)) / psi_k
    let weights: Vec<(f64, f64)> = (1..=pairs)
        .map(|k| {
            let (mut c, mut s) = (0.0, 0.0);
            let mut r = 0;
            for &bj in b {
                c += bj * cos[r];
                s += bj * sin[r];
                r += k;
                if r >= n {
                    r -= n;
                }
            }
            (c / psi[k], s / psi[k])
        })
        .collect();

    let mean_term = inv_n * b.iter().sum::<f64>() / psi[0];
    let alternating_term = if n.is_multiple_of(2) {
        let alt: f64 = b
            .iter()
            .enumerate()
            .map(|(j, &bj)| if j.is_multiple_of(2) { bj } else { -bj })
            .sum();
        inv_n * alt / psi[n / 2]
    } else {
        0.0
    };

    let x = (0..n)
        .map(|l| {
            let mut acc = 0.0;
            let mut r = 0;
            for &(wc, ws) in &weights {
                r += l;
                if r >= n {
                    r -= n;
                }
                acc += wc * cos[r] + ws * sin[r];
            }
            let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
            mean_term + 2.0 * inv_n * acc + sign * alternating_term
        })
        .collect();
    Ok(RealVector::from_trusted(x))
}

/// FFT solve, `x_l = sum_k psi_k^{-1} T_k e^{-2 pi i lk/n}`. `O(n log n)`.
pub fn solve_fft(spec: &CirculantSpec, b: &RealVector) -> Result<RealVector> {
    Ok(solve_fft_detailed(spec, b, DEFAULT_SINGULAR_TOLERANCE)?.solution)
}

/// [`solve_fft`] with an explicit tolerance, returning the discarded
/// imaginary residue as well.
pub fn solve_fft_detailed(
    spec: &CirculantSpec,
    b: &RealVector,
    singular_tolerance: f64,
) -> Result<FftSolution> {
    check_dim(spec.n(), b.len())?;
    let plan = cached_plan(spec.n())?;
    let spectrum = spectrum_via_dft(&plan, spec)?.with_tolerance(singular_tolerance)?;
    solve_fft_with_spectrum(&plan, &spectrum, b)
}

/// FFT solve given precomputed eigenvalues.
pub fn solve_fft_with_spectrum(
    plan: &DftPlan,
    spectrum: &Spectrum,
    b: &RealVector,
) -> Result<FftSolution> {
    let n = spectrum.n();
    check_dim(n, b.len())?;
    check_dim(plan.n(), n)?;
    spectrum.ensure_nonsingular()?;

    let mut work = rhs_spectrum(plan, b)?.coefficients;
    let mut scale = 0.0f64;
    for (t, psi) in work.iter_mut().zip(spectrum.values()) {
        *t /= psi;
        scale = scale.max(t.norm());
    }
    plan.forward_in_place(&mut work);

    let imag_residue = work.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    let imag_tolerance = 1e-11 * n as f64 * scale;
    if imag_residue > imag_tolerance {
        log::warn!(
            "fft solve (n = {n}): discarded imaginary part {imag_residue:e} exceeds {imag_tolerance:e}"
        );
    }
    Ok(FftSolution {
        solution: RealVector::from_trusted(work.iter().map(|z| z.re).collect()),
        imag_residue,
        imag_tolerance,
    })
}

/// Constant right-hand side `b_j = beta`: `x_l = beta / sum_j a_j`.
pub fn solve_constant(spec: &CirculantSpec, beta: f64) -> Result<RealVector> {
    solve_constant_with_tolerance(spec, beta, DEFAULT_SINGULAR_TOLERANCE)
}

/// [`solve_constant`] with an explicit tolerance.
///
/// `psi_0 = sum_j a_j` counts as zero when `|psi_0| <= tol * sum_j |a_j|`;
/// `sum_j |a_j|` bounds every `|psi_k|` and costs `O(n)`.
pub fn solve_constant_with_tolerance(
    spec: &CirculantSpec,
    beta: f64,
    singular_tolerance: f64,
) -> Result<RealVector> {
    if !beta.is_finite() {
        return Err(Error::NonFinite {
            index: 0,
            value: beta,
        });
    }
    if !singular_tolerance.is_finite() || singular_tolerance < 0.0 {
        return Err(Error::InvalidTolerance(singular_tolerance));
    }
    let psi0 = spec.row_sum();
    let bound: f64 = spec.first_row().iter().map(|a| a.abs()).sum();
    if bound == 0.0 || psi0.abs() <= singular_tolerance * bound {
        return Err(Error::SingularSystem {
            indices: vec![0],
            magnitudes: vec![psi0.abs()],
        });
    }
    RealVector::constant(spec.n(), beta / psi0)
}

/// Solves `A x = b`, picking a path and verifying the result.
///
/// Without a forced path: a bitwise-constant `b` goes to the constant-RHS
/// path, otherwise FFT when `n >= fft_threshold`, otherwise direct. The
/// residual uses the `O(n^2)` product below the threshold and the FFT
/// product at or above it.
pub fn solve(spec: &CirculantSpec, b: &RealVector, options: &SolveOptions) -> Result<SolveReport> {
    let n = spec.n();
    check_dim(n, b.len())?;
    let tol = options.singular_tolerance;
    let path = options.path.unwrap_or(if b.is_bitwise_constant() {
        SolvePath::ConstantRhs
    } else if n >= options.fft_threshold {
        SolvePath::Fft
    } else {
        SolvePath::Direct
    });

    let large = n >= options.fft_threshold;
    let plan = if large || path != SolvePath::Direct {
        Some(cached_plan(n)?)
    } else {
        None
    };

    let (solution, spectrum_min_abs, fft_imag_residue) = match path {
        SolvePath::Direct => {
            let spectrum = spectrum_with_tolerance(spec, tol)?;
            let x = solve_direct_with_spectrum(&spectrum, b)?;
            (x, spectrum.min_abs(), None)
        }
        SolvePath::Fft => {
            let plan = plan.as_deref().expect("plan built for fft path");
            let spectrum = spectrum_via_dft(plan, spec)?.with_tolerance(tol)?;
            let out = solve_fft_with_spectrum(plan, &spectrum, b)?;
            (out.solution, spectrum.min_abs(), Some(out.imag_residue))
        }
        SolvePath::ConstantRhs => {
            if !b.is_bitwise_constant() {
                return Err(Error::NonConstantRhs);
            }
            let x = solve_constant_with_tolerance(spec, b.as_slice()[0], tol)?;
            let plan = plan.as_deref().expect("plan built for constant path");
            (x, spectrum_via_dft(plan, spec)?.min_abs(), None)
        }
    };

    let product = match (&plan, large) {
        (Some(plan), true) => apply_fft(plan, spec, &solution)?,
        _ => apply(spec, &solution)?,
    };
    let residual_inf_norm = product
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(0.0f64, |m, (y, b)| m.max((y - b).abs()));

    Ok(SolveReport {
        solution,
        path,
        residual_inf_norm,
        spectrum_min_abs,
        fft_imag_residue,
    })
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::make_spec;
    use crate::oracle::{dense_solve, materialize, random_rhs, random_spec};

    fn spec(row: &[f64]) -> CirculantSpec {
        make_spec(row).unwrap()
    }

    fn rv(v: &[f64]) -> RealVector {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn assert_vec_close(a: &RealVector, b: &RealVector, tol: f64) {
        let d = a.max_abs_diff(b);
        assert!(d <= tol, "diff {d:e} > {tol:e}: {a:?} vs {b:?}");
    }

    #[test]
    fn apply_examples() {
        let x = rv(&[3.0, -1.0, 7.0, 0.0]);
        assert_eq!(apply(&spec(&[1.0, 0.0, 0.0, 0.0]), &x).unwrap(), x);
        let a = spec(&[4.0, 1.0, 0.0, 1.0]);
        assert_eq!(apply(&a, &rv(&[1.0; 4])).unwrap(), rv(&[6.0; 4]));
        // column 0 of the materialized matrix
        let col0: Vec<f64> = {
            let m = materialize(&a).unwrap();
            (0..4).map(|k| m.get(k, 0)).collect()
        };
        assert_eq!(col0, vec![4.0, 1.0, 0.0, 1.0]);
        assert_eq!(apply(&a, &rv(&[1.0, 0.0, 0.0, 0.0])).unwrap(), rv(&col0));
        assert!(matches!(
            apply(&a, &rv(&[1.0])).unwrap_err(),
            Error::DimensionMismatch {
                expected: 4,
                actual: 1
            }
        ));
    }

    #[test]
    fn apply_fft_matches_apply() {
        for n in [1, 2, 3, 8, 13, 64, 100] {
            let a = random_spec(n, 11);
            let x = random_rhs(n, 11);
            let plan = DftPlan::new(n).unwrap();
            assert_vec_close(
                &apply_fft(&plan, &a, &x).unwrap(),
                &apply(&a, &x).unwrap(),
                1e-12 * n as f64 * a.max_abs(),
            );
        }
    }

    #[test]
    fn rhs_spectrum_examples() {
        let plan = DftPlan::new(4).unwrap();
        let t = rhs_spectrum(&plan, &rv(&[1.0; 4])).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (z, w) in t.coefficients().iter().zip(want) {
            assert!((z - Complex64::new(w, 0.0)).norm() < 1e-15);
        }
        let t = rhs_spectrum(&plan, &rv(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        for z in t.coefficients() {
            assert!((z - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        }
        // naive sum: T_k = (1/4) e^{2 pi i k/4} = i^k / 4
        let t = rhs_spectrum(&plan, &rv(&[0.0, 1.0, 0.0, 0.0])).unwrap();
        let want = [
            Complex64::new(0.25, 0.0),
            Complex64::new(0.0, 0.25),
            Complex64::new(-0.25, 0.0),
            Complex64::new(0.0, -0.25),
        ];
        for (z, w) in t.coefficients().iter().zip(want) {
            assert!((z - w).norm() < 1e-15, "{z} vs {w}");
        }
        assert!(rhs_spectrum(&plan, &rv(&[1.0; 3])).is_err());
    }

    #[test]
    fn direct_identity_and_constant() {
        let b = rv(&[3.0, -1.0, 7.0, 0.0]);
        assert_vec_close(
            &solve_direct(&spec(&[1.0, 0.0, 0.0, 0.0]), &b).unwrap(),
            &b,
            1e-15,
        );
        assert_vec_close(
            &solve_direct(&spec(&[4.0, 1.0, 0.0, 1.0]), &rv(&[6.0; 4])).unwrap(),
            &rv(&[1.0; 4]),
            1e-15,
        );
    }

    /// The closed-form sum, evaluated term by term with fresh cosines.
    #[allow(clippy::needless_range_loop)]
    fn brute_force_sum(row: &[f64], b: &[f64]) -> Vec<f64> {
        use std::f64::consts::PI;
        let n = row.len();
        let psi: Vec<f64> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|m| row[m] * (2.0 * PI * (m * k) as f64 / n as f64).cos())
                    .sum()
            })
            .collect();
        (0..n)
            .map(|l| {
                let mut x = b.iter().sum::<f64>() / (n as f64 * psi[0]);
                for k in 1..=(n - 1) / 2 {
                    let s: f64 = (0..n)
                        .map(|j| {
                            let d = j as f64 - l as f64;
                            b[j] * (2.0 * PI * k as f64 * d / n as f64).cos()
                        })
                        .sum();
                    x += 2.0 / n as f64 * s / psi[k];
                }
                if n.is_multiple_of(2) {
                    let alt: f64 = (0..n).map(|j| (-1f64).powi(j as i32) * b[j]).sum();
                    x += (-1f64).powi(l as i32) / n as f64 * alt / psi[n / 2];
                }
                x
            })
            .collect()
    }

    #[test]
    fn direct_unit_rhs_matches_two_oracles() {
        let row = [4.0, 1.0, 0.0, 1.0];
        let b = rv(&[1.0, 0.0, 0.0, 0.0]);
        let lu = dense_solve(&materialize(&spec(&row)).unwrap(), &b).unwrap();
        let brute = rv(&brute_force_sum(&row, b.as_slice()));
        assert_vec_close(&lu, &brute, 1e-14);
        // Frozen: A^{-1} e_0 = [7, -2, 1, -2] / 24
        let frozen = rv(&[7.0 / 24.0, -2.0 / 24.0, 1.0 / 24.0, -2.0 / 24.0]);
        assert_vec_close(&lu, &frozen, 1e-15);
        assert_vec_close(&solve_direct(&spec(&row), &b).unwrap(), &frozen, 1e-15);
    }

    #[test]
    fn direct_odd_branch() {
        let row = [2.0, 1.0, 1.0];
        let b = rv(&[4.0, 1.0, 1.0]);
        let lu = dense_solve(&materialize(&spec(&row)).unwrap(), &b).unwrap();
        // Frozen: A = I + J, A^{-1} = I - J/4, x = b - 6/4
        assert_vec_close(&lu, &rv(&[2.5, -0.5, -0.5]), 1e-14);
        assert_vec_close(&solve_direct(&spec(&row), &b).unwrap(), &lu, 1e-14);
    }

    #[test]
    fn direct_small_orders() {
        // n = 1: x = b / a0
        assert_eq!(
            solve_direct(&spec(&[4.0]), &rv(&[2.0])).unwrap(),
            rv(&[0.5])
        );
        // n = 2: [[3,1],[1,3]] x = [1, 2] -> [1/8, 5/8]
        assert_vec_close(
            &solve_direct(&spec(&[3.0, 1.0]), &rv(&[1.0, 2.0])).unwrap(),
            &rv(&[0.125, 0.625]),
            1e-15,
        );
    }

    #[test]
    fn direct_matches_brute_force_sum() {
        for n in 1..=20 {
            let a = random_spec(n, 77);
            let b = random_rhs(n, 77);
            let brute = rv(&brute_force_sum(a.first_row(), b.as_slice()));
            assert_vec_close(&solve_direct(&a, &b).unwrap(), &brute, 1e-12);
        }
    }

    #[test]
    fn singular_systems_rejected() {
        let a = spec(&[2.0, 1.0, 0.0, 1.0]);
        let b = rv(&[1.0, 2.0, 3.0, 4.0]);
        for result in [solve_direct(&a, &b), solve_fft(&a, &b)] {
            match result.unwrap_err() {
                Error::SingularSystem { indices, .. } => assert_eq!(indices, vec![2]),
                other => panic!("{other:?}"),
            }
        }
        assert!(matches!(
            solve_direct(&a, &rv(&[1.0])).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn fft_examples() {
        let b = rv(&[3.0, -1.0, 7.0, 0.0, 2.5]);
        assert_vec_close(
            &solve_fft(&spec(&[1.0, 0.0, 0.0, 0.0, 0.0]), &b).unwrap(),
            &b,
            1e-14,
        );
        assert_vec_close(
            &solve_fft(&spec(&[4.0, 1.0, 0.0, 1.0]), &rv(&[6.0; 4])).unwrap(),
            &rv(&[1.0; 4]),
            1e-14,
        );
        let a = random_spec(16, 2024);
        let b = random_rhs(16, 2024);
        let lu = dense_solve(&materialize(&a).unwrap(), &b).unwrap();
        let x = solve_fft(&a, &b).unwrap();
        assert_vec_close(&x, &lu, 1e-10 * (1.0 + lu.inf_norm()));
    }

    #[test]
    fn fft_reports_small_imaginary_residue() {
        let a = random_spec(1000, 5);
        let b = random_rhs(1000, 5);
        let out = solve_fft_detailed(&a, &b, DEFAULT_SINGULAR_TOLERANCE).unwrap();
        assert!(out.imag_residue <= out.imag_tolerance);
    }

    #[test]
    fn constant_examples() {
        assert_eq!(
            solve_constant(&spec(&[4.0, 1.0, 0.0, 1.0]), 6.0).unwrap(),
            rv(&[1.0; 4])
        );
        assert_eq!(
            solve_constant(&spec(&[2.0, 1.0, 1.0]), 0.0).unwrap(),
            rv(&[0.0; 3])
        );
        match solve_constant(&spec(&[1.0, -0.5, 0.0, -0.5]), 1.0).unwrap_err() {
            Error::SingularSystem { indices, .. } => assert_eq!(indices, vec![0]),
            other => panic!("{other:?}"),
        }
        assert!(solve_constant(&spec(&[0.0, 0.0]), 1.0).is_err());
        assert!(solve_constant(&spec(&[1.0]), f64::NAN).is_err());
    }

    #[test]
    fn dispatch_rules() {
        let opts = SolveOptions::default();
        let a = spec(&[4.0, 1.0, 0.0, 1.0]);
        let r = solve(&a, &rv(&[6.0; 4]), &opts).unwrap();
        assert_eq!(r.path, SolvePath::ConstantRhs);
        assert_eq!(r.solution, rv(&[1.0; 4]));
        assert_eq!(r.residual_inf_norm, 0.0);
        assert_eq!(r.spectrum_min_abs, 2.0);

        let r = solve(&a, &rv(&[1.0, 2.0, 3.0, 4.0]), &opts).unwrap();
        assert_eq!(r.path, SolvePath::Direct);
        assert!(r.residual_inf_norm < 1e-14);

        let big = random_spec(1024, 1);
        let r = solve(&big, &random_rhs(1024, 1), &opts).unwrap();
        assert_eq!(r.path, SolvePath::Fft);
        assert!(r.residual_inf_norm < 1e-12);
        assert!(r.spectrum_min_abs >= 1.0 - 1e-12);
        assert!(r.fft_imag_residue.is_some());
    }

    #[test]
    fn forced_paths_and_threshold() {
        let a = random_spec(10, 3);
        let b = random_rhs(10, 3);
        let forced = SolveOptions {
            path: Some(SolvePath::Fft),
            ..SolveOptions::default()
        };
        assert_eq!(solve(&a, &b, &forced).unwrap().path, SolvePath::Fft);
        let low = SolveOptions {
            fft_threshold: 8,
            ..SolveOptions::default()
        };
        assert_eq!(solve(&a, &b, &low).unwrap().path, SolvePath::Fft);
        let constant = SolveOptions {
            path: Some(SolvePath::ConstantRhs),
            ..SolveOptions::default()
        };
        assert_eq!(solve(&a, &b, &constant).unwrap_err(), Error::NonConstantRhs);
        let big_direct = SolveOptions {
            path: Some(SolvePath::Direct),
            ..SolveOptions::default()
        };
        let a = random_spec(100, 3);
        let r = solve(&a, &random_rhs(100, 3), &big_direct).unwrap();
        assert_eq!(r.path, SolvePath::Direct);
        assert!(r.residual_inf_norm < 1e-12);
    }

    #[test]
    fn solve_singular_and_tolerance_override() {
        let a = spec(&[2.0, 1.0, 0.0, 1.0]);
        let b = rv(&[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            solve(&a, &b, &SolveOptions::default()).unwrap_err(),
            Error::SingularSystem { .. }
        ));
        // psi = [4.1, 2.1, 0.1, 2.1]: 0.1 clears 0.01 * 4.1 but not 0.5 * 4.1.
        let a = spec(&[2.1, 1.0, 0.0, 1.0]);
        let loose = SolveOptions {
            singular_tolerance: 0.01,
            ..SolveOptions::default()
        };
        assert!(solve(&a, &b, &loose).is_ok());
        let strict = SolveOptions {
            singular_tolerance: 0.5,
            ..SolveOptions::default()
        };
        assert!(solve(&a, &b, &strict).is_err());
    }

    #[test]
    fn path_parsing() {
        for p in [SolvePath::Direct, SolvePath::Fft, SolvePath::ConstantRhs] {
            assert_eq!(p.as_str().parse::<SolvePath>().unwrap(), p);
        }
        assert_eq!(
            "constant".parse::<SolvePath>().unwrap(),
            SolvePath::ConstantRhs
        );
        assert!("qr".parse::<SolvePath>().is_err());
    }
}
