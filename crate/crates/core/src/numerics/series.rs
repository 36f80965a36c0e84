use num_complex::Complex64;

/// Coefficients of `log p` for a power series with `p[0] = 1`, truncated to `p.len()`.
///
/// Uses `n h_n = n p_n - sum_{k<n} k h_k p_{n-k}`, from `h' p = p'`.
pub fn log1(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len();
    let mut h = vec![Complex64::new(0.0, 0.0); n];
    for m in 1..n {
        let mut acc = p[m] * m as f64;
        for k in 1..m {
            acc -= h[k] * p[m - k] * k as f64;
        }
        h[m] = acc / m as f64;
    }
    h
}

/// Coefficients of `p'` shifted so that index `n` holds the coefficient of `z^n`.
pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(n, c)| c * n as f64).collect()
}

/// Horner evaluation of `sum p_n z^n`.
pub fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}
