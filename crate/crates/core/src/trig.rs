use std::f64::consts::PI;

/// `cos(2 pi r / n)` and `sin(2 pi r / n)` for `r` in `0..n`.
///
/// Only `r <= n/2` is evaluated; the upper half is mirrored so that
/// `cos[n - r] == cos[r]` and `sin[n - r] == -sin[r]` hold exactly.
pub(crate) fn tables(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut cos = vec![0.0; n];
    let mut sin = vec![0.0; n];
    let step = 2.0 * PI / n as f64;
    for r in 0..=n / 2 {
        let (s, c) = (step * r as f64).sin_cos();
        cos[r] = c;
        sin[r] = s;
        if r != 0 && r != n - r {
            cos[n - r] = c;
            sin[n - r] = -s;
        }
    }
    if n.is_multiple_of(2) && n >= 2 {
        // exact at the half turn
        cos[n / 2] = -1.0;
        sin[n / 2] = 0.0;
    }
    if n.is_multiple_of(4) {
        cos[n / 4] = 0.0;
        sin[n / 4] = 1.0;
        cos[3 * n / 4] = 0.0;
        sin[3 * n / 4] = -1.0;
    }
    (cos, sin)
}

/// Cosine half of [`tables`].
pub(crate) fn cos_table(n: usize) -> Vec<f64> {
    tables(n).0
}
