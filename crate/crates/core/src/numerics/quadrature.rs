//! Adaptive tensor Gauss-Kronrod (7/15) cubature on rectangles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{LoewnerError, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// 15 nodes on [-1, 1] with Kronrod weights and Gauss weights (0 off the Gauss subset).
fn rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for i in 0..7 {
        let wg = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        out[i] = (-XGK[i], WGK[i], wg);
        out[14 - i] = (XGK[i], WGK[i], wg);
    }
    out[7] = (0.0, WGK[7], WG[3]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self { x0, x1, y0, y1 }
    }

    fn quarters(&self) -> [Rect; 4] {
        let xm = 0.5 * (self.x0 + self.x1);
        let ym = 0.5 * (self.y0 + self.y1);
        [
            Rect::new(self.x0, xm, self.y0, ym),
            Rect::new(xm, self.x1, self.y0, ym),
            Rect::new(self.x0, xm, ym, self.y1),
            Rect::new(xm, self.x1, ym, self.y1),
        ]
    }
}

/// Kronrod estimate and `|Kronrod - Gauss|` over one rectangle.
pub fn gk_rect<F: Fn(f64, f64) -> f64 + Sync>(f: &F, r: &Rect) -> (f64, f64) {
    let nodes = rule();
    let (hx, cx) = (0.5 * (r.x1 - r.x0), 0.5 * (r.x1 + r.x0));
    let (hy, cy) = (0.5 * (r.y1 - r.y0), 0.5 * (r.y1 + r.y0));
    let (mut k, mut g) = (0.0, 0.0);
    for &(xi, wki, wgi) in &nodes {
        for &(yj, wkj, wgj) in &nodes {
            let v = f(cx + hx * xi, cy + hy * yj);
            k += wki * wkj * v;
            g += wgi * wgj * v;
        }
    }
    let area = hx * hy;
    (k * area, ((k - g) * area).abs())
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    rect: Rect,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubature {
    pub value: f64,
    pub error: f64,
    pub pieces: usize,
}

/// Integrate `f` over the union of `initial` until the summed error estimate
/// drops below `max(abs_tol, rel_tol |I|)`.
pub fn adaptive<F: Fn(f64, f64) -> f64 + Sync>(
    f: &F,
    initial: &[Rect],
    abs_tol: f64,
    rel_tol: f64,
    max_pieces: usize,
) -> Result<Cubature> {
    let eval = |rects: Vec<Rect>| -> Vec<Piece> {
        rects
            .into_par_iter()
            .map(|rect| {
                let (value, error) = gk_rect(f, &rect);
                Piece { rect, value, error }
            })
            .collect()
    };
    let mut heap: BinaryHeap<Piece> = eval(initial.to_vec()).into_iter().collect();
    loop {
        let (value, error) = totals(&heap);
        if !value.is_finite() || !error.is_finite() {
            return Err(LoewnerError::QuadratureNoConvergence(
                "integrand produced a non-finite value".into(),
            ));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Cubature {
                value,
                error,
                pieces: heap.len(),
            });
        }
        if heap.len() >= max_pieces {
            return Err(LoewnerError::QuadratureNoConvergence(format!(
                "error {error:.3e} after {} pieces (value {value:.6e})",
                heap.len()
            )));
        }
        // refine the worst few pieces together so their evaluation runs in parallel
        let batch = (heap.len() / 8).clamp(1, 16);
        let mut children = Vec::with_capacity(4 * batch);
        for _ in 0..batch {
            if let Some(p) = heap.pop() {
                children.extend_from_slice(&p.rect.quarters());
            }
        }
        heap.extend(eval(children));
    }
}

fn totals(heap: &BinaryHeap<Piece>) -> (f64, f64) {
    // sum in a fixed order so results do not depend on heap layout
    let mut pieces: Vec<&Piece> = heap.iter().collect();
    pieces.sort_by(|a, b| {
        (a.rect.x0, a.rect.y0)
            .partial_cmp(&(b.rect.x0, b.rect.y0))
            .unwrap_or(Ordering::Equal)
    });
    pieces
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}
