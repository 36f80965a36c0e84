use num_complex::Complex64;
use rustfft::FftPlanner;

/// Fourier coefficients `c_k = (1/M) sum_j v_j e^{-2 pi i j k / M}`, index `k mod M`.
pub fn coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Samples `v_j = sum_k c_k e^{2 pi i j k / M}` of a trigonometric polynomial.
pub fn synthesize(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

/// Signed frequency of FFT index `k` for length `m`.
pub fn frequency(k: usize, m: usize) -> i64 {
    if k <= m / 2 {
        k as i64
    } else {
        k as i64 - m as i64
    }
}

/// Periodic conjugate function (discrete Hilbert transform) of equispaced real
/// samples: multiply mode `n` by `-i sgn(n)`, dropping the Nyquist mode.
pub fn conjugate_function(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut c = coefficients(&values.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>());
    for (k, ck) in c.iter_mut().enumerate() {
        let n = frequency(k, m);
        *ck = if n == 0 || (m.is_multiple_of(2) && k == m / 2) {
            Complex64::new(0.0, 0.0)
        } else {
            *ck * Complex64::new(0.0, -(n.signum() as f64))
        };
    }
    synthesize(&c).into_iter().map(|z| z.re).collect()
}
