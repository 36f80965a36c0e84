//! Weil-Petersson inner product, symplectic form and complex structure on
//! truncated vector fields of the circle, with the Witt-algebra bracket.
//!
//! Fields are written in the basis `e_n`; a real field has `v_{-n} = conj(v_n)`.
//! Modes `-1, 0, 1` span the kernel of the form and are not stored for real fields.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LoewnerError, Result};
use crate::grunsky::energy_via_grunsky;
use crate::liouville::ExteriorMapSeries;

pub const DEFAULT_ORDER: usize = 64;
pub const DEFAULT_ALPHA: f64 = 1.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `n^3 - n`.
fn weight(n: i64) -> f64 {
    let n = n as f64;
    n * n * n - n
}

/// Real vector field with modes `2 <= |n| <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleVectorField {
    /// `v_n` for `n = 2..=N`.
    positive: Vec<Complex64>,
    /// `v_{-n}` for `n = 2..=N`.
    negative: Vec<Complex64>,
}

impl CircleVectorField {
    /// Field from both halves; the negative modes must be exact conjugates.
    pub fn new(positive: Vec<Complex64>, negative: Vec<Complex64>) -> Result<Self> {
        if positive.len() != negative.len() {
            return Err(LoewnerError::TruncationMismatch(positive.len() + 1, negative.len() + 1));
        }
        if let Some(k) = positive.iter().zip(&negative).position(|(p, q)| *q != p.conj()) {
            return Err(LoewnerError::InvalidInput(format!(
                "field is not real: mode {} is not the conjugate of mode {}",
                -(k as i64 + 2),
                k + 2
            )));
        }
        Ok(Self { positive, negative })
    }

    /// Field determined by `v_2, ..., v_N`.
    pub fn from_positive(positive: Vec<Complex64>) -> Self {
        let negative = positive.iter().map(|v| v.conj()).collect();
        Self { positive, negative }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_positive(vec![ZERO; order.saturating_sub(1)])
    }

    /// The real field `v_n = v_{-n} = 1` at a single mode.
    pub fn mode(order: usize, n: usize) -> Self {
        let mut f = Self::zero(order);
        f.positive[n - 2] = Complex64::new(1.0, 0.0);
        f.negative[n - 2] = Complex64::new(1.0, 0.0);
        f
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.positive.len() + 1
    }

    /// `v_n` for any `n`; zero outside the stored range.
    pub fn get(&self, n: i64) -> Complex64 {
        let k = n.unsigned_abs() as usize;
        if k < 2 || k > self.order() {
            ZERO
        } else if n > 0 {
            self.positive[k - 2]
        } else {
            self.negative[k - 2]
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_positive(self.positive.iter().map(|v| v * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        Ok(Self::from_positive(
            self.positive.iter().zip(&other.positive).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `[[n, re, im], ...]` for `n >= 2`.
    pub fn to_triples(&self) -> Vec<(i64, f64, f64)> {
        self.positive
            .iter()
            .enumerate()
            .map(|(k, v)| (k as i64 + 2, v.re, v.im))
            .collect()
    }

    /// Inverse of [`to_triples`](Self::to_triples); unlisted modes are zero.
    pub fn from_triples(order: usize, triples: &[(i64, f64, f64)]) -> Result<Self> {
        let mut f = Self::zero(order);
        for &(n, re, im) in triples {
            if n < 2 || n as usize > order {
                return Err(LoewnerError::InvalidInput(format!(
                    "mode {n} is outside 2..={order}"
                )));
            }
            f.positive[n as usize - 2] = Complex64::new(re, im);
            f.negative[n as usize - 2] = Complex64::new(re, -im);
        }
        Ok(f)
    }

    /// The same field in the complexified basis, modes `|n| <= N`.
    pub fn complexify(&self) -> ComplexModeField {
        let n = self.order();
        let mut out = ComplexModeField::zero(n);
        for k in 2..=n as i64 {
            out.set(k, self.get(k));
            out.set(-k, self.get(-k));
        }
        out
    }
}

fn check_orders(u: &CircleVectorField, v: &CircleVectorField) -> Result<()> {
    if u.order() != v.order() {
        return Err(LoewnerError::TruncationMismatch(u.order(), v.order()));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(LoewnerError::InvalidInput("alpha must be positive".into()));
    }
    Ok(())
}

/// `sum_{n >= 2} (n^3 - n) u_n conj(v_n)`.
fn pairing(u: &CircleVectorField, v: &CircleVectorField) -> Complex64 {
    u.positive
        .iter()
        .zip(&v.positive)
        .enumerate()
        .map(|(k, (a, b))| a * b.conj() * weight(k as i64 + 2))
        .sum()
}

/// `alpha Re sum (n^3 - n) u_n conj(v_n)`.
pub fn wp_inner(u: &CircleVectorField, v: &CircleVectorField, alpha: f64) -> Result<f64> {
    check_orders(u, v)?;
    check_alpha(alpha)?;
    Ok(alpha * pairing(u, v).re)
}

/// `-alpha Im sum (n^3 - n) u_n conj(v_n)`.
pub fn wp_symplectic(u: &CircleVectorField, v: &CircleVectorField, alpha: f64) -> Result<f64> {
    check_orders(u, v)?;
    check_alpha(alpha)?;
    Ok(-alpha * pairing(u, v).im)
}

/// Hilbert transform: multiplies positive modes by `i` and negative modes by `-i`.
pub fn hilbert_j(v: &CircleVectorField) -> CircleVectorField {
    CircleVectorField::from_positive(v.positive.iter().map(|c| c * I).collect())
}

/// Complexified field with modes `-N..=N`, no reality constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexModeField {
    order: usize,
    /// `u_n` at index `n + N`.
    coeffs: Vec<Complex64>,
}

impl ComplexModeField {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![ZERO; 2 * order + 1],
        }
    }

    /// Basis vector `e_n`.
    pub fn basis(order: usize, n: i64) -> Self {
        let mut f = Self::zero(order);
        f.set(n, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * order + 1 {
            return Err(LoewnerError::TruncationMismatch(order, (coeffs.len().max(1) - 1) / 2));
        }
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            ZERO
        } else {
            self.coeffs[(n + self.order as i64) as usize]
        }
    }

    pub fn set(&mut self, n: i64, value: Complex64) {
        let idx = (n + self.order as i64) as usize;
        self.coeffs[idx] = value;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub field: ComplexModeField,
    /// Whether a nonzero contribution beyond the truncation was dropped.
    pub truncated: bool,
}

/// `[e_m, e_n] = i (n - m) e_{m+n}`, extended bilinearly.
pub fn lie_bracket(a: &ComplexModeField, b: &ComplexModeField) -> Result<Bracket> {
    if a.order != b.order {
        return Err(LoewnerError::TruncationMismatch(a.order, b.order));
    }
    let n = a.order as i64;
    let mut out = ComplexModeField::zero(a.order);
    let mut truncated = false;
    for m in -n..=n {
        let am = a.get(m);
        if am == ZERO {
            continue;
        }
        for k in -n..=n {
            let bk = b.get(k);
            if bk == ZERO || k == m {
                continue;
            }
            let term = am * bk * I * (k - m) as f64;
            if (m + k).abs() > n {
                truncated = true;
            } else {
                let idx = (m + k + n) as usize;
                out.coeffs[idx] += term;
            }
        }
    }
    Ok(Bracket {
        field: out,
        truncated,
    })
}

/// Largest coefficient of `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobi_residual(a: &ComplexModeField, b: &ComplexModeField, c: &ComplexModeField) -> Result<f64> {
    let t1 = lie_bracket(a, &lie_bracket(b, c)?.field)?.field;
    let t2 = lie_bracket(b, &lie_bracket(c, a)?.field)?.field;
    let t3 = lie_bracket(c, &lie_bracket(a, b)?.field)?.field;
    Ok(t1.add(&t2).add(&t3).max_abs())
}

/// `omega(e_m, e_{-m}) = i alpha (m^3 - m) / 2`.
pub fn cocycle_coefficient(m: i64, alpha: f64) -> Complex64 {
    I * alpha * weight(m) * 0.5
}

/// `|omega([e_m,e_n],e_p) + omega([e_n,e_p],e_m) + omega([e_p,e_m],e_n)|`.
///
/// Each term is `i (b - a) omega(e_{a+b}, e_c) = -(alpha / 2) (b - a) ((a+b)^3 - (a+b))`
/// when `a + b + c = 0`, so the sum is `alpha / 2` times an integer computed exactly.
pub fn cocycle_residual(m: i64, n: i64, p: i64, alpha: f64) -> f64 {
    if m + n + p != 0 {
        return 0.0;
    }
    let w = |k: i128| k * k * k - k;
    let term = |a: i64, b: i64| (b as i128 - a as i128) * w(a as i128 + b as i128);
    let integer = term(m, n) + term(n, p) + term(p, m);
    0.5 * alpha * integer.unsigned_abs() as f64
}

/// `|(1 - m) a_{m+1} + (m + 2) a_m|` with `a_m = i alpha (m^3 - m) / 2`. The common
/// factor `i alpha / 2` is pulled out so the integer part is evaluated exactly.
pub fn recursion_residual(m: i64, alpha: f64) -> f64 {
    let w = |n: i128| n * n * n - n;
    let m = m as i128;
    let integer = (1 - m) * w(m + 1) + (m + 2) * w(m);
    0.5 * alpha * integer.unsigned_abs() as f64
}

/// Outcome of the identity checks on modes up to `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub order: usize,
    pub alpha: f64,
    /// Largest `|J(J v) + v|` coefficient over the basis fields.
    pub j_squared: f64,
    /// Largest `|omega(u, J v) - <u, v>|` over pairs of basis fields.
    pub compatibility: f64,
    pub cocycle: f64,
    pub recursion: f64,
    pub jacobi: f64,
}

impl IdentityCheck {
    pub fn passes(&self) -> bool {
        self.j_squared == 0.0
            && self.compatibility <= 1e-12
            && self.cocycle <= 1e-12
            && self.recursion == 0.0
            && self.jacobi <= 1e-14
    }
}

/// Checks `J^2 = -1`, compatibility, the cocycle identity for all `|m|,|n|,|p| <= N`,
/// the coefficient recursion and the Jacobi identity on basis triples below `N/3`.
pub fn check_identities(order: usize, alpha: f64) -> Result<IdentityCheck> {
    check_alpha(alpha)?;
    if order < 2 {
        return Err(LoewnerError::InvalidInput("order must be at least 2".into()));
    }
    let basis: Vec<CircleVectorField> = (2..=order)
        .flat_map(|n| {
            let re = CircleVectorField::mode(order, n);
            let mut im = CircleVectorField::zero(order);
            im.positive[n - 2] = I;
            im.negative[n - 2] = -I;
            [re, im]
        })
        .collect();
    let mut j_squared: f64 = 0.0;
    for v in &basis {
        let jj = hilbert_j(&hilbert_j(v));
        for n in 2..=order as i64 {
            j_squared = j_squared.max((jj.get(n) + v.get(n)).norm()).max((jj.get(-n) + v.get(-n)).norm());
        }
    }
    let mut compatibility: f64 = 0.0;
    for u in &basis {
        for v in &basis {
            let lhs = wp_symplectic(u, &hilbert_j(v), alpha)?;
            compatibility = compatibility.max((lhs - wp_inner(u, v, alpha)?).abs());
        }
    }
    let n = order as i64;
    let mut cocycle: f64 = 0.0;
    for m in -n..=n {
        for k in -n..=n {
            for p in -n..=n {
                cocycle = cocycle.max(cocycle_residual(m, k, p, alpha));
            }
        }
    }
    let recursion = (2..n).map(|m| recursion_residual(m, alpha)).fold(0.0, f64::max);
    let third = (n / 3).max(1);
    let mut jacobi: f64 = 0.0;
    for a in -third..=third {
        for b in -third..=third {
            for c in -third..=third {
                jacobi = jacobi.max(jacobi_residual(
                    &ComplexModeField::basis(order, a),
                    &ComplexModeField::basis(order, b),
                    &ComplexModeField::basis(order, c),
                )?);
            }
        }
    }
    Ok(IdentityCheck {
        order,
        alpha,
        j_squared,
        compatibility,
        cocycle,
        recursion,
        jacobi,
    })
}

/// `energy(g_eps) / eps^2` for the exterior map `g_eps(z) = z + eps u z^{1-k}`, `k >= 2`,
/// with the Grunsky determinant at order `order`.
pub fn second_variation_ratio(k: usize, direction: Complex64, eps: f64, order: usize) -> Result<f64> {
    if k < 2 {
        return Err(LoewnerError::InvalidInput("perturbation mode must be at least 2".into()));
    }
    let mut coeffs = vec![ZERO; order.max(k - 1)];
    coeffs[k - 2] = direction / direction.norm() * eps;
    let g = ExteriorMapSeries::new(Complex64::new(1.0, 0.0), ZERO, coeffs)?;
    Ok(energy_via_grunsky(&g, order)? / (eps * eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_product_examples() {
        let v = CircleVectorField::mode(4, 2);
        assert_eq!(wp_inner(&v, &v, 1.0).unwrap(), 6.0);
        let mut u = CircleVectorField::zero(4);
        u.positive[1] = I;
        u.negative[1] = -I;
        assert_eq!(wp_inner(&u, &u, 2.0).unwrap(), 48.0);
        assert_eq!(wp_inner(&u, &CircleVectorField::zero(4), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn symplectic_example() {
        let u = CircleVectorField::from_positive(vec![c(1.0, 0.0)]);
        let v = CircleVectorField::from_positive(vec![c(0.0, 1.0)]);
        assert_eq!(wp_symplectic(&u, &v, 1.0).unwrap(), 6.0);
        assert_eq!(wp_symplectic(&u, &u, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn hilbert_transform_of_mode_two() {
        let jv = hilbert_j(&CircleVectorField::mode(3, 2));
        assert_eq!(jv.get(2), I);
        assert_eq!(jv.get(-2), -I);
    }

    #[test]
    fn reality_is_checked() {
        assert!(CircleVectorField::new(vec![c(1.0, 1.0)], vec![c(1.0, 1.0)]).is_err());
        assert!(CircleVectorField::new(vec![c(1.0, 1.0)], vec![c(1.0, -1.0)]).is_ok());
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let u = CircleVectorField::zero(4);
        let v = CircleVectorField::zero(5);
        assert_eq!(wp_inner(&u, &v, 1.0), Err(LoewnerError::TruncationMismatch(4, 5)));
    }

    #[test]
    fn bracket_of_basis_vectors() {
        let b = lie_bracket(&ComplexModeField::basis(8, 2), &ComplexModeField::basis(8, 3)).unwrap();
        assert_eq!(b.field.get(5), I);
        assert!(!b.truncated);
        let b = lie_bracket(&ComplexModeField::basis(4, 2), &ComplexModeField::basis(4, 3)).unwrap();
        assert!(b.truncated && b.field.max_abs() == 0.0);
        let b = lie_bracket(&ComplexModeField::basis(8, 3), &ComplexModeField::basis(8, 3)).unwrap();
        assert_eq!(b.field.max_abs(), 0.0);
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(cocycle_residual(2, 3, -5, 1.0), 0.0);
        // a sign flip in one bracket leaves a nonzero integer
        let broken = |m: i64, n: i64, p: i64| {
            let omega = |j: i64, k: i64| if j + k == 0 { cocycle_coefficient(j, 1.0) } else { ZERO };
            let term = |a: i64, b: i64, c: i64| I * (b - a) as f64 * omega(a + b, c);
            (term(m, n, p) + term(n, p, m) - term(p, m, n)).norm()
        };
        assert!(broken(2, 3, -5) > 1.0);
        assert_eq!(cocycle_residual(2, 3, 4, 1.0), 0.0);
        for m in 2..64 {
            assert_eq!(recursion_residual(m, 1.7), 0.0);
        }
    }

    #[test]
    fn full_check_passes() {
        let check = check_identities(12, 1.0).unwrap();
        assert!(check.passes(), "{check:?}");
    }

    #[test]
    fn joukowski_second_variation() {
        // energy of z + eps/z is -12 sum log(1 - eps^2n), so the ratio tends to 12
        let r = second_variation_ratio(2, c(1.0, 0.0), 1e-3, 16).unwrap();
        assert!((r - 12.0).abs() < 1e-4, "{r}");
    }

    #[test]
    fn triples_round_trip() {
        let f = CircleVectorField::from_positive(vec![c(1.0, 2.0), c(0.0, -1.0)]);
        let back = CircleVectorField::from_triples(3, &f.to_triples()).unwrap();
        assert_eq!(f, back);
    }
}
