//! Real eigenvalues of symmetric circulant matrices.

use crate::dft::DftPlan;
use crate::error::{Error, Result};
use crate::matrix::CirculantSpec;
use crate::trig;

/// Relative threshold under which `|psi_k|` counts as zero.
pub const DEFAULT_SINGULAR_TOLERANCE: f64 = 1e-10;

/// The eigenvalues `psi_0 .. psi_{n-1}` of a symmetric circulant matrix,
/// together with the tolerance used to judge singularity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    singular_tolerance: f64,
}

/// Outcome of [`Spectrum::is_singular`].
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    pub singular: bool,
    /// Every `k` with `|psi_k| <= tol * max|psi|`.
    pub offending: Vec<usize>,
    pub min_abs: f64,
    pub max_abs: f64,
}

impl Spectrum {
    /// Wraps externally supplied eigenvalues, checking finiteness and the
    /// mirror symmetry `values[k] == values[n - k]` to `1e-12` relative.
    pub fn new(values: Vec<f64>, singular_tolerance: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_tolerance(singular_tolerance)?;
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                index,
                value: values[index],
            });
        }
        let n = values.len();
        let max = max_abs(&values);
        for k in 1..=n / 2 {
            let (left, right) = (values[k], values[n - k]);
            if (left - right).abs() > 1e-12 * max {
                return Err(Error::AsymmetricSpectrum {
                    k,
                    mirror: n - k,
                    left,
                    right,
                });
            }
        }
        Ok(Self {
            values,
            singular_tolerance,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn singular_tolerance(&self) -> f64 {
        self.singular_tolerance
    }

    pub fn with_tolerance(mut self, singular_tolerance: f64) -> Result<Self> {
        check_tolerance(singular_tolerance)?;
        self.singular_tolerance = singular_tolerance;
        Ok(self)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.values)
    }

    pub fn min_abs(&self) -> f64 {
        self.values
            .iter()
            .fold(f64::INFINITY, |m, v| m.min(v.abs()))
    }

    /// `max|psi| / min|psi|`; infinite when some eigenvalue is zero.
    pub fn condition_number(&self) -> f64 {
        self.max_abs() / self.min_abs()
    }

    /// Relative singularity test: singular iff
    /// `min|psi| <= tol * max|psi|` or the spectrum is identically zero.
    pub fn is_singular(&self) -> SingularityReport {
        let max = self.max_abs();
        let threshold = self.singular_tolerance * max;
        let offending: Vec<usize> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| max == 0.0 || v.abs() <= threshold)
            .map(|(k, _)| k)
            .collect();
        SingularityReport {
            singular: !offending.is_empty(),
            offending,
            min_abs: self.min_abs(),
            max_abs: max,
        }
    }

    /// `Ok(())` for a nonsingular spectrum, otherwise `SingularSystem`.
    pub fn ensure_nonsingular(&self) -> Result<()> {
        let report = self.is_singular();
        if report.singular {
            let magnitudes = report
                .offending
                .iter()
                .map(|&k| self.values[k].abs())
                .collect();
            return Err(Error::SingularSystem {
                indices: report.offending,
                magnitudes,
            });
        }
        Ok(())
    }
}

/// Eigenvalues by the real cosine sum
/// `psi_k = a_0 + 2 sum_{m=1}^{(n-1)/2} a_m cos(2 pi mk/n) + [n even] (-1)^k a_{n/2}`.
///
/// `O(n^2)` with one table lookup per term.
pub fn spectrum(spec: &CirculantSpec) -> Spectrum {
    let a = spec.first_row();
    let n = a.len();
    let cos = trig::cos_table(n);
    let pairs = (n - 1) / 2;
    let values = (0..n)
        .map(|k| {
            let mut sum = 0.0;
            let mut r = 0;
            for &am in &a[1..=pairs] {
                r += k;
                if r >= n {
                    r -= n;
                }
                sum += am * cos[r];
            }
            let mut psi = a[0] + 2.0 * sum;
            if n.is_multiple_of(2) {
                let middle = a[n / 2];
                psi += if k.is_multiple_of(2) { middle } else { -middle };
            }
            psi
        })
        .collect();
    Spectrum {
        values,
        singular_tolerance: DEFAULT_SINGULAR_TOLERANCE,
    }
}

/// [`spectrum`] with an explicit singular tolerance.
pub fn spectrum_with_tolerance(spec: &CirculantSpec, singular_tolerance: f64) -> Result<Spectrum> {
    spectrum(spec).with_tolerance(singular_tolerance)
}

/// Eigenvalues as the forward DFT of the first row, `O(n log n)`.
///
/// The imaginary parts vanish for a symmetric row and are dropped; mirror
/// pairs are averaged so the result is exactly symmetric.
pub fn spectrum_via_dft(plan: &DftPlan, spec: &CirculantSpec) -> Result<Spectrum> {
    let transformed = plan.forward_real(spec.first_row())?;
    let n = transformed.len();
    let mut values: Vec<f64> = transformed.iter().map(|z| z.re).collect();
    for k in 1..=n / 2 {
        let mean = 0.5 * (values[k] + values[n - k]);
        values[k] = mean;
        values[n - k] = mean;
    }
    Ok(Spectrum {
        values,
        singular_tolerance: DEFAULT_SINGULAR_TOLERANCE,
    })
}

/// Singularity test as a free function.
pub fn is_singular(spectrum: &Spectrum) -> SingularityReport {
    spectrum.is_singular()
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}
