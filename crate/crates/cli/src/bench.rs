//! Wall-clock timing of the solver paths and log-log scaling fits.
//!
//! Every measurement runs on the calling thread, one case after another.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use circsym_core::oracle::DEFAULT_DENSE_CAP;
use circsym_core::{
    apply, dense_solve, materialize, random_rhs, random_spec, solve_direct, solve_fft, RealVector,
    Result as CoreResult,
};

/// Paths the bench can time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchPath {
    Direct,
    Fft,
    Dense,
}

impl BenchPath {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchPath::Direct => "direct",
            BenchPath::Fft => "fft",
            BenchPath::Dense => "dense",
        }
    }
}

impl fmt::Display for BenchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(BenchPath::Direct),
            "fft" => Ok(BenchPath::Fft),
            "dense" => Ok(BenchPath::Dense),
            other => Err(format!("unknown bench path '{other}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub warmup: usize,
    pub paths: Vec<BenchPath>,
    /// Largest `n` timed on the dense path.
    pub dense_max: usize,
    pub seed: u64,
    /// Each repetition repeats the solve until at least this much time has
    /// passed and reports the per-call average.
    pub min_batch: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![256, 1024, 4096],
            repetitions: 9,
            warmup: 2,
            paths: vec![BenchPath::Direct, BenchPath::Fft, BenchPath::Dense],
            dense_max: 1024,
            seed: 0,
            min_batch: Duration::from_millis(2),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.sizes.is_empty() {
            return Err("no sizes given".into());
        }
        if self.sizes.contains(&0) {
            return Err("sizes must be positive".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!(
                "sizes must be strictly ascending: {:?}",
                self.sizes
            ));
        }
        if self.repetitions == 0 {
            return Err("repetitions must be at least 1".into());
        }
        if self.paths.is_empty() {
            return Err("no paths given".into());
        }
        if self.dense_max > DEFAULT_DENSE_CAP {
            return Err(format!("dense-max may not exceed {DEFAULT_DENSE_CAP}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub path: BenchPath,
    pub median_ns: f64,
    pub mad_ns: f64,
    pub residual_inf: f64,
    /// `||b||_inf` of the benchmarked system.
    pub rhs_inf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln(median_ns)` against `ln(n)`, per path.
    pub exponents: Vec<(BenchPath, f64)>,
    pub skipped: Vec<(BenchPath, usize)>,
}

impl BenchResult {
    pub fn exponent(&self, path: BenchPath) -> Option<f64> {
        self.exponents.iter().find(|(p, _)| *p == path).map(|e| e.1)
    }

    pub fn median(&self, path: BenchPath, n: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.path == path && r.n == n)
            .map(|r| r.median_ns)
    }

    /// `CSV: n,path,median_ns,mad_ns,residual_inf`, then `#` footer lines
    /// with the fitted exponents.
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "n,path,median_ns,mad_ns,residual_inf")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{:.1},{:.1},{:e}",
                r.n, r.path, r.median_ns, r.mad_ns, r.residual_inf
            )?;
        }
        for (path, slope) in &self.exponents {
            writeln!(out, "# scaling_exponent,{path},{slope:.4}")?;
        }
        for (path, n) in &self.skipped {
            writeln!(out, "# skipped,{path},{n}")?;
        }
        Ok(())
    }
}

pub fn run_bench(config: &BenchConfig) -> CoreResult<BenchResult> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &n in &config.sizes {
        let spec = random_spec(n, config.seed);
        let b = random_rhs(n, config.seed);
        for &path in &config.paths {
            let (times, x) = match path {
                BenchPath::Direct => time_path(config, || solve_direct(&spec, &b))?,
                BenchPath::Fft => time_path(config, || solve_fft(&spec, &b))?,
                BenchPath::Dense => {
                    if n > config.dense_max {
                        skipped.push((path, n));
                        continue;
                    }
                    let m = materialize(&spec)?;
                    time_path(config, || dense_solve(&m, &b))?
                }
            };
            let median_ns = median(&times);
            let deviations: Vec<f64> = times.iter().map(|t| (t - median_ns).abs()).collect();
            rows.push(BenchRow {
                n,
                path,
                median_ns,
                mad_ns: median(&deviations),
                residual_inf: apply(&spec, &x)?.max_abs_diff(&b),
                rhs_inf: b.inf_norm(),
            });
        }
    }

    let exponents = config
        .paths
        .iter()
        .filter_map(|&path| {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.path == path)
                .map(|r| ((r.n as f64).ln(), r.median_ns.ln()))
                .collect();
            least_squares_slope(&points).map(|s| (path, s))
        })
        .collect();

    Ok(BenchResult {
        rows,
        exponents,
        skipped,
    })
}

/// Per-call nanoseconds for each repetition, plus the last solution.
fn time_path(
    config: &BenchConfig,
    mut solve: impl FnMut() -> CoreResult<RealVector>,
) -> CoreResult<(Vec<f64>, RealVector)> {
    let started = Instant::now();
    let mut x = solve()?;
    let single = started.elapsed().max(Duration::from_nanos(1));
    let batch = (config.min_batch.as_nanos() / single.as_nanos()).clamp(1, 1 << 20) as u32;

    for _ in 0..config.warmup {
        for _ in 0..batch {
            x = solve()?;
        }
    }
    let mut times = Vec::with_capacity(config.repetitions);
    for _ in 0..config.repetitions {
        let started = Instant::now();
        for _ in 0..batch {
            x = std::hint::black_box(solve()?);
        }
        times.push(started.elapsed().as_nanos() as f64 / f64::from(batch));
    }
    Ok((times, x))
}

pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Slope of the least-squares line through `points`; `None` with fewer than
/// two distinct abscissae.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
