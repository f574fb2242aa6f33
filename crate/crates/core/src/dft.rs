//! Discrete Fourier transforms over precomputed plans.
//!
//! Convention: `forward` is the unnormalized transform
//! `X_k = sum_j v_j e^{-2 pi i jk/n}` and `inverse` is
//! `v_j = (1/n) sum_k X_k e^{+2 pi i jk/n}`. The unitary matrix `F` with
//! entries `e^{-2 pi i jk/n} / sqrt(n)` therefore satisfies
//! `F^* v = inverse(v) * sqrt(n)` and `F v = forward(v) / sqrt(n)`.
//!
//! Power-of-two lengths use an iterative radix-2 kernel. Every other length
//! goes through Bluestein's chirp-z reformulation as a power-of-two cyclic
//! convolution.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// How a plan evaluates its transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Radix2,
    ArbitraryLength,
}

#[derive(Debug)]
struct Bluestein {
    inner: Box<DftPlan>,
    /// `e^{-pi i j^2 / n}` for `j` in `0..n`.
    chirp: Vec<Complex64>,
    /// Forward transform of the zero-padded conjugate chirp filter.
    filter_spectrum: Vec<Complex64>,
}

/// A reusable length-`n` DFT. Immutable after construction.
#[derive(Debug)]
pub struct DftPlan {
    n: usize,
    twiddles: Vec<Complex64>,
    strategy: Strategy,
    bluestein: Option<Bluestein>,
}

impl DftPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let twiddles = (0..n).map(|j| root_of_unity(j, n)).collect();
        if n.is_power_of_two() {
            return Ok(Self {
                n,
                twiddles,
                strategy: Strategy::Radix2,
                bluestein: None,
            });
        }

        let m = (2 * n - 1).next_power_of_two();
        let inner = Box::new(DftPlan::new(m)?);
        let two_n = 2 * n as u128;
        let chirp: Vec<Complex64> = (0..n)
            .map(|j| {
                let r = (j as u128 * j as u128) % two_n;
                Complex64::from_polar(1.0, -PI * r as f64 / n as f64)
            })
            .collect();
        let mut filter = vec![Complex64::new(0.0, 0.0); m];
        filter[0] = chirp[0].conj();
        for j in 1..n {
            filter[j] = chirp[j].conj();
            filter[m - j] = chirp[j].conj();
        }
        inner.radix2_in_place(&mut filter);

        Ok(Self {
            n,
            twiddles,
            strategy: Strategy::ArbitraryLength,
            bluestein: Some(Bluestein {
                inner,
                chirp,
                filter_spectrum: filter,
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// `e^{-2 pi i j/n}` for `j` in `0..n`.
    pub fn twiddles(&self) -> &[Complex64] {
        &self.twiddles
    }

    /// Unnormalized forward transform.
    pub fn forward(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        self.forward_in_place(&mut out);
        Ok(out)
    }

    /// Forward transform of a real sequence.
    pub fn forward_real(&self, v: &[f64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        let mut out: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward_in_place(&mut out);
        Ok(out)
    }

    /// Inverse transform, including the `1/n` factor.
    pub fn inverse(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        self.inverse_in_place(&mut out);
        Ok(out)
    }

    /// Inverse transform of a real sequence, including the `1/n` factor.
    pub fn inverse_real(&self, v: &[f64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        let mut out: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.inverse_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn forward_in_place(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.n);
        match &self.bluestein {
            None => self.radix2_in_place(data),
            Some(b) => self.bluestein_in_place(b, data),
        }
    }

    pub(crate) fn inverse_in_place(&self, data: &mut [Complex64]) {
        // conj(F(conj(v))) / n
        data.iter_mut().for_each(|z| *z = z.conj());
        self.forward_in_place(data);
        let scale = 1.0 / self.n as f64;
        data.iter_mut().for_each(|z| *z = z.conj() * scale);
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: len,
            });
        }
        Ok(())
    }

    fn radix2_in_place(&self, data: &mut [Complex64]) {
        let n = data.len();
        if n <= 1 {
            return;
        }
        let shift = usize::BITS - n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> shift;
            if i < j {
                data.swap(i, j);
            }
        }

        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for chunk in data.chunks_exact_mut(len) {
                let (lo, hi) = chunk.split_at_mut(half);
                for (j, (e, o)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let t = self.twiddles[j * stride] * *o;
                    *o = *e - t;
                    *e += t;
                }
            }
            len <<= 1;
        }
    }

    fn bluestein_in_place(&self, b: &Bluestein, data: &mut [Complex64]) {
        let m = b.inner.n;
        let mut work = vec![Complex64::new(0.0, 0.0); m];
        for ((w, v), c) in work.iter_mut().zip(data.iter()).zip(&b.chirp) {
            *w = v * c;
        }
        b.inner.radix2_in_place(&mut work);
        for (w, h) in work.iter_mut().zip(&b.filter_spectrum) {
            *w *= h;
        }
        b.inner.inverse_radix2_in_place(&mut work);
        for ((out, w), c) in data.iter_mut().zip(&work).zip(&b.chirp) {
            *out = w * c;
        }
    }

    fn inverse_radix2_in_place(&self, data: &mut [Complex64]) {
        data.iter_mut().for_each(|z| *z = z.conj());
        self.radix2_in_place(data);
        let scale = 1.0 / self.n as f64;
        data.iter_mut().for_each(|z| *z = z.conj() * scale);
    }
}

/// `e^{-2 pi i j/n}`, with the angle reduced to the first half-turn so that
/// conjugate pairs `j` and `n - j` are exact conjugates.
fn root_of_unity(j: usize, n: usize) -> Complex64 {
    let j = j % n;
    if 2 * j > n {
        root_of_unity(n - j, n).conj()
    } else {
        Complex64::from_polar(1.0, -2.0 * PI * j as f64 / n as f64)
    }
}

/// Unnormalized forward DFT through `plan`.
pub fn dft_forward(plan: &DftPlan, v: &[Complex64]) -> Result<Vec<Complex64>> {
    plan.forward(v)
}

/// Inverse DFT through `plan`, divided by `n`.
pub fn dft_inverse(plan: &DftPlan, v: &[Complex64]) -> Result<Vec<Complex64>> {
    plan.inverse(v)
}

fn plan_cache() -> &'static RwLock<HashMap<usize, Arc<DftPlan>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<DftPlan>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Returns the process-wide plan for length `n`, building it on first use.
///
/// Lookups take a shared lock. Two threads racing on a new `n` may both build
/// a plan; the first insert wins and the other copy is dropped.
pub fn cached_plan(n: usize) -> Result<Arc<DftPlan>> {
    if let Some(plan) = plan_cache()
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .get(&n)
    {
        return Ok(Arc::clone(plan));
    }
    let plan = Arc::new(DftPlan::new(n)?);
    let mut cache = plan_cache().write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(cache.entry(n).or_insert(plan)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_dft;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn assert_close(actual: &[Complex64], expected: &[Complex64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (k, (a, e)) in actual.iter().zip(expected).enumerate() {
            assert!((a - e).norm() <= tol, "k={k}: {a} vs {e}");
        }
    }

    #[test]
    fn strategy_selection() {
        assert_eq!(DftPlan::new(1).unwrap().strategy(), Strategy::Radix2);
        assert_eq!(DftPlan::new(64).unwrap().strategy(), Strategy::Radix2);
        assert_eq!(
            DftPlan::new(3).unwrap().strategy(),
            Strategy::ArbitraryLength
        );
        assert_eq!(
            DftPlan::new(1000).unwrap().strategy(),
            Strategy::ArbitraryLength
        );
        assert_eq!(DftPlan::new(0).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn twiddles_on_unit_circle() {
        for n in [1, 2, 5, 12, 1024, 1000] {
            let plan = DftPlan::new(n).unwrap();
            for w in plan.twiddles() {
                assert!((w.norm() - 1.0).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn delta_and_constant() {
        let plan = DftPlan::new(4).unwrap();
        let ones = real(&[1.0; 4]);
        assert_close(
            &plan.forward(&real(&[1.0, 0.0, 0.0, 0.0])).unwrap(),
            &ones,
            1e-15,
        );
        assert_close(
            &plan.forward(&ones).unwrap(),
            &real(&[4.0, 0.0, 0.0, 0.0]),
            1e-15,
        );
        assert_close(
            &plan.inverse(&real(&[4.0, 0.0, 0.0, 0.0])).unwrap(),
            &ones,
            1e-15,
        );
        assert_close(
            &plan.inverse(&ones).unwrap(),
            &real(&[1.0, 0.0, 0.0, 0.0]),
            1e-15,
        );
    }

    #[test]
    fn shifted_delta() {
        let plan = DftPlan::new(4).unwrap();
        let input = real(&[0.0, 1.0, 0.0, 0.0]);
        // Frozen from the naive DFT sum.
        let expected = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        assert_close(&naive_dft(&input, -1.0), &expected, 1e-15);
        assert_close(&plan.forward(&input).unwrap(), &expected, 1e-15);
    }

    #[test]
    fn round_trip_small() {
        let v = real(&[0.3, -1.2, 5.0, 0.7]);
        let plan = DftPlan::new(4).unwrap();
        let back = plan.inverse(&plan.forward(&v).unwrap()).unwrap();
        assert_close(&back, &v, 1e-12);
    }

    #[test]
    fn matches_naive_for_all_small_lengths() {
        for n in 1..=40 {
            let plan = DftPlan::new(n).unwrap();
            let v: Vec<Complex64> = (0..n)
                .map(|j| c((j as f64 * 0.37).sin(), (j as f64 * 1.3).cos()))
                .collect();
            let max = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
            let tol = 1e-12 * n as f64 * max;
            assert_close(&plan.forward(&v).unwrap(), &naive_dft(&v, -1.0), tol);
        }
    }

    #[test]
    fn length_mismatch() {
        let plan = DftPlan::new(4).unwrap();
        assert_eq!(
            plan.forward(&real(&[1.0, 2.0])).unwrap_err(),
            Error::LengthMismatch {
                expected: 4,
                actual: 2
            }
        );
        assert!(plan.inverse(&real(&[1.0; 5])).is_err());
    }

    #[test]
    fn cache_returns_shared_plan() {
        let a = cached_plan(48).unwrap();
        let b = cached_plan(48).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(cached_plan(0).is_err());
    }

    #[test]
    fn cache_is_usable_across_threads() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || cached_plan(96 + i % 2).unwrap().n()))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), 96 + i % 2);
        }
    }
}
