//! Cross-checks of every solver path against the dense oracle.
//!
//! For each `(n, seed)` case: the cosine-sum spectrum against the naive DFT
//! of the first row and against Jacobi eigenvalues of the dense matrix, the
//! direct solve against LU, the FFT solve against the direct solve, and the
//! direct solve's residual.

use std::io::{self, Write};

use rayon::prelude::*;

use circsym_core::oracle::{dense_eigenvalues, naive_dft};
use circsym_core::solver::{solve_direct_with_spectrum, solve_fft_with_spectrum};
use circsym_core::spectrum::spectrum_via_dft;
use circsym_core::{
    apply, cached_plan, dense_solve, materialize, random_rhs, random_spec, spectrum, Complex64,
    Result as CoreResult, Spectrum,
};

/// Relative size of the fault injected by `--perturb-eigenvalue`.
pub const PERTURBATION: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub seeds: u64,
    pub base_seed: u64,
    /// Scale `psi_k` (and its mirror) by `1 + PERTURBATION` before solving.
    pub perturb_eigenvalue: Option<usize>,
    pub singular_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &'static str, error: f64, tolerance: f64) -> Self {
        Self {
            name,
            error,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }

    pub fn ratio(&self) -> f64 {
        if self.tolerance > 0.0 {
            self.error / self.tolerance
        } else if self.error > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Set when a solver refused the case outright.
    pub failure: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.checks.iter().all(Check::passed)
    }

    fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .max_by(|a, b| a.ratio().total_cmp(&b.ratio()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub cases: Vec<CaseResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }

    pub fn even_cases(&self) -> usize {
        self.cases.iter().filter(|c| c.n.is_multiple_of(2)).count()
    }

    pub fn odd_cases(&self) -> usize {
        self.cases.len() - self.even_cases()
    }

    /// The case and check with the largest error-to-tolerance ratio.
    pub fn worst(&self) -> Option<(&CaseResult, &Check)> {
        self.cases
            .iter()
            .filter_map(|c| c.worst().map(|w| (c, w)))
            .max_by(|a, b| a.1.ratio().total_cmp(&b.1.ratio()))
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        for case in &self.cases {
            write!(
                out,
                "n={} seed={} parity={}",
                case.n,
                case.seed,
                if case.n.is_multiple_of(2) {
                    "even"
                } else {
                    "odd"
                }
            )?;
            for check in &case.checks {
                write!(out, " {}={:.3e}", check.name, check.error)?;
            }
            match &case.failure {
                Some(msg) => writeln!(out, " FAIL ({msg})")?,
                None if case.passed() => writeln!(out, " PASS")?,
                None => writeln!(out, " FAIL")?,
            }
        }
        let has = |n: usize| self.cases.iter().any(|c| c.n == n);
        writeln!(
            out,
            "cases: {}, passed: {}, failed: {}",
            self.cases.len(),
            self.cases.len() - self.failures(),
            self.failures()
        )?;
        writeln!(
            out,
            "branches: even n: {} cases, odd n: {} cases, n=1: {}, n=2: {}",
            self.even_cases(),
            self.odd_cases(),
            if has(1) { "yes" } else { "no" },
            if has(2) { "yes" } else { "no" },
        )?;
        if let Some((case, check)) = self.worst() {
            writeln!(
                out,
                "worst: n={} seed={} check={} error={:e} tolerance={:e} ratio={:.3e}",
                case.n,
                case.seed,
                check.name,
                check.error,
                check.tolerance,
                check.ratio()
            )?;
        }
        Ok(())
    }
}

/// Runs every `(n, seed)` case, fanning out over the rayon pool. Results come
/// back in input order.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let cases: Vec<(usize, u64)> = (config.n_min..=config.n_max)
        .flat_map(|n| (0..config.seeds).map(move |s| (n, config.base_seed.wrapping_add(s))))
        .collect();
    let cases = cases
        .into_par_iter()
        .map(|(n, seed)| match verify_case(n, seed, config) {
            Ok(checks) => CaseResult {
                n,
                seed,
                checks,
                failure: None,
            },
            Err(e) => CaseResult {
                n,
                seed,
                checks: Vec::new(),
                failure: Some(e.to_string()),
            },
        })
        .collect();
    VerifyReport { cases }
}

fn perturb(spectrum: &Spectrum, k: usize) -> CoreResult<Spectrum> {
    let mut values = spectrum.values().to_vec();
    let n = values.len();
    let k = k % n;
    values[k] *= 1.0 + PERTURBATION;
    if k != 0 {
        values[n - k] = values[k];
    }
    Spectrum::new(values, spectrum.singular_tolerance())
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn verify_case(n: usize, seed: u64, config: &VerifyConfig) -> CoreResult<Vec<Check>> {
    let spec = random_spec(n, seed);
    let b = random_rhs(n, seed);
    let plan = cached_plan(n)?;
    let tol = config.singular_tolerance;

    let mut psi = spectrum(&spec).with_tolerance(tol)?;
    let mut psi_fft = spectrum_via_dft(&plan, &spec)?.with_tolerance(tol)?;
    if let Some(k) = config.perturb_eigenvalue {
        psi = perturb(&psi, k)?;
        psi_fft = perturb(&psi_fft, k)?;
    }

    let row: Vec<Complex64> = spec
        .first_row()
        .iter()
        .map(|&a| Complex64::new(a, 0.0))
        .collect();
    let naive = naive_dft(&row, -1.0);
    let dft_tol = 1e-12 * n as f64 * spec.max_abs();
    let naive_re: Vec<f64> = naive.iter().map(|z| z.re).collect();
    let naive_im = naive.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));

    let dense = materialize(&spec)?;
    let mut sorted = psi.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let eig = dense_eigenvalues(&dense)?;

    let x_direct = solve_direct_with_spectrum(&psi, &b)?;
    let x_dense = dense_solve(&dense, &b)?;
    let x_fft = solve_fft_with_spectrum(&plan, &psi_fft, &b)?.solution;
    let residual = apply(&spec, &x_direct)?.max_abs_diff(&b);

    Ok(vec![
        Check::new("spectrum_dft", max_diff(psi.values(), &naive_re), dft_tol),
        Check::new("spectrum_imag", naive_im, dft_tol),
        Check::new(
            "spectrum_eig",
            max_diff(&sorted, &eig),
            1e-9 * psi.max_abs(),
        ),
        Check::new(
            "direct_dense",
            x_direct.max_abs_diff(&x_dense),
            1e-9 * (1.0 + x_dense.inf_norm()),
        ),
        Check::new(
            "fft_direct",
            x_fft.max_abs_diff(&x_direct),
            1e-10 * (1.0 + x_direct.inf_norm()),
        ),
        Check::new("residual", residual, 1e-8 * (1.0 + b.inf_norm())),
    ])
}
