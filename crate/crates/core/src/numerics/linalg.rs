//! Small dense complex factorizations.

use num_complex::Complex64;

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `A^H A`.
    pub fn gram(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aki = self[(k, i)].conj();
                if aki == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = self.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += aki * row[j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest singular value by power iteration on `A^H A`.
    pub fn norm_estimate(&self, iterations: usize) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + 0.1 * (i as f64).sin(), 0.0))
            .collect();
        let mut sigma = 0.0;
        for _ in 0..iterations {
            let y = self.mul_vec(&x);
            // A^H y
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            for (i, yi) in y.iter().enumerate() {
                for (zj, a) in z.iter_mut().zip(self.row(i)) {
                    *zj += a.conj() * yi;
                }
            }
            let xn: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let zn: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if zn == 0.0 {
                return 0.0;
            }
            let next = (zn / xn).sqrt();
            x = z.into_iter().map(|c| c / zn).collect();
            if (next - sigma).abs() <= 1e-13 * next {
                return next;
            }
            sigma = next;
        }
        sigma
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// `log det A` for Hermitian positive-definite `A` by Cholesky; `None` when a
/// pivot is not positive.
pub fn cholesky_log_det(a: &Matrix) -> Option<f64> {
    let n = a.dim();
    let mut l = Matrix::zeros(n);
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return None;
        }
        let ljj = d.sqrt();
        l[(j, j)] = Complex64::new(ljj, 0.0);
        log_det += 2.0 * ljj.ln();
        for i in j + 1..n {
            let mut s = a[(i, j)];
            let (ri, rj) = (i * n, j * n);
            for k in 0..j {
                s -= l.data[ri + k] * l.data[rj + k].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Some(log_det)
}

/// Solve `A x = b` by LU with partial pivoting; `None` for a singular matrix.
pub fn lu_solve(a: &Matrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.dim();
    let mut m = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))?;
        if m[(pivot, col)].norm() == 0.0 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.data.swap(pivot * n + j, col * n + j);
            }
            x.swap(pivot, col);
        }
        let p = m[(col, col)];
        for i in col + 1..n {
            let factor = m[(i, col)] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let v = m.data[col * n + j];
                m.data[i * n + j] -= factor * v;
            }
            let xc = x[col];
            x[i] -= factor * xc;
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= m[(i, j)] * x[j];
        }
        x[i] = s / m[(i, i)];
    }
    Some(x)
}
