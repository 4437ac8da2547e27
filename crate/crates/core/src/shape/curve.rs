use serde::Serialize;

use super::quadrature::integrate_adaptive;
use crate::error::{Error, Result};
use crate::geometry::Polygon;

type P2 = [f64; 2];

/// Closed curve made of cubic Bézier segments; segment `j` ends where
/// segment `j + 1` starts, and the last ends where the first starts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedCurve {
    pub segments: Vec<[P2; 4]>,
}

fn lerp(a: P2, b: P2, s: f64) -> P2 {
    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
}

fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

impl ClosedCurve {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Position on segment `j` at `t` in `[0, 1]`.
    pub fn point(&self, j: usize, t: f64) -> P2 {
        let [p0, p1, p2, p3] = self.segments[j];
        let (a, b, c) = (lerp(p0, p1, t), lerp(p1, p2, t), lerp(p2, p3, t));
        lerp(lerp(a, b, t), lerp(b, c, t), t)
    }

    pub fn derivative(&self, j: usize, t: f64) -> P2 {
        let [p0, p1, p2, p3] = self.segments[j];
        let (d0, d1, d2) = (sub(p1, p0), sub(p2, p1), sub(p3, p2));
        let u = 1.0 - t;
        [0, 1].map(|k| 3.0 * (u * u * d0[k] + 2.0 * u * t * d1[k] + t * t * d2[k]))
    }

    pub fn second_derivative(&self, j: usize, t: f64) -> P2 {
        let [p0, p1, p2, p3] = self.segments[j];
        [0, 1].map(|k| 6.0 * ((1.0 - t) * (p2[k] - 2.0 * p1[k] + p0[k]) + t * (p3[k] - 2.0 * p2[k] + p1[k])))
    }

    /// Signed curvature on segment `j`.
    pub fn curvature(&self, j: usize, t: f64) -> f64 {
        let d = self.derivative(j, t);
        let dd = self.second_derivative(j, t);
        (d[0] * dd[1] - d[1] * dd[0]) / (d[0] * d[0] + d[1] * d[1]).powf(1.5)
    }

    /// A parameter in `[0, 1]` where segment `j` stops (zero velocity).
    pub fn stationary_point(&self, j: usize) -> Option<f64> {
        let [p0, p1, p2, p3] = self.segments[j];
        let (d0, d1, d2) = (sub(p1, p0), sub(p2, p1), sub(p3, p2));
        let size = [d0, d1, d2].iter().map(|d| d[0].hypot(d[1])).fold(0.0, f64::max);
        if size == 0.0 {
            return Some(0.0);
        }
        // r'(t) / 3 = c + b t + a t^2 per coordinate
        let coeffs = |k: usize| (d0[k] - 2.0 * d1[k] + d2[k], 2.0 * (d1[k] - d0[k]), d0[k]);
        let mut candidates = Vec::new();
        for k in 0..2 {
            let (a, b, c) = coeffs(k);
            candidates.extend(quadratic_roots(a, b, c, size));
        }
        candidates.extend([0.0, 1.0]);
        candidates.into_iter().filter(|t| (0.0..=1.0).contains(t)).find(|&t| {
            let d = self.derivative(j, t);
            d[0].hypot(d[1]) <= 1e-9 * size
        })
    }
}

/// Real roots of `a t^2 + b t + c`; a vanishing polynomial yields `0`.
fn quadratic_roots(a: f64, b: f64, c: f64, size: f64) -> Vec<f64> {
    let tiny = 1e-14 * size;
    if a.abs() <= tiny {
        if b.abs() <= tiny {
            return if c.abs() <= tiny { vec![0.0] } else { vec![] };
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -tiny * tiny {
        return vec![];
    }
    let r = disc.max(0.0).sqrt();
    vec![(-b - r) / (2.0 * a), (-b + r) / (2.0 * a)]
}

/// Solve a cyclic tridiagonal system: row `i` reads
/// `lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]`, indices mod n.
fn solve_cyclic(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // Sherman-Morrison: A = T + u v^T with the corners folded into u, v
    let gamma = -diag[0];
    let mut b = diag.to_vec();
    b[0] -= gamma;
    b[n - 1] -= upper[n - 1] * lower[0] / gamma;
    let thomas = |r: &[f64]| {
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        c[0] = upper[0] / b[0];
        d[0] = r[0] / b[0];
        for i in 1..n {
            let m = b[i] - lower[i] * c[i - 1];
            c[i] = upper[i] / m;
            d[i] = (r[i] - lower[i] * d[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    };
    let x = thomas(rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = upper[n - 1];
    let z = thomas(&u);
    let v0 = 1.0;
    let vn = lower[0] / gamma;
    let factor = (v0 * x[0] + vn * x[n - 1]) / (1.0 + v0 * z[0] + vn * z[n - 1]);
    x.iter().zip(&z).map(|(xi, zi)| xi - factor * zi).collect()
}

/// Periodic C² cubic spline through `vertices` (in order, closed), with
/// chord-length parameter spacing, as Bézier segments.
pub fn fit_closed_curve_through(vertices: &[P2]) -> Result<ClosedCurve> {
    let n = vertices.len();
    if n < 4 {
        return Err(Error::DegeneratePolygon(format!("{n} vertices, need at least 4")));
    }
    let h: Vec<f64> = (0..n)
        .map(|i| {
            let d = sub(vertices[(i + 1) % n], vertices[i]);
            d[0].hypot(d[1])
        })
        .collect();
    if h.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::DegeneratePolygon("repeated consecutive vertex".into()));
    }
    // node i joins segment i-1 (length a) and segment i (length b)
    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for i in 0..n {
        let a = h[(i + n - 1) % n];
        let b = h[i];
        lower[i] = b;
        diag[i] = 2.0 * (a + b);
        upper[i] = a;
    }
    let mut tangents = vec![[0.0; 2]; n];
    for k in 0..2 {
        let rhs: Vec<f64> = (0..n)
            .map(|i| {
                let a = h[(i + n - 1) % n];
                let b = h[i];
                let fwd = vertices[(i + 1) % n][k] - vertices[i][k];
                let back = vertices[i][k] - vertices[(i + n - 1) % n][k];
                3.0 * (a * fwd / b + b * back / a)
            })
            .collect();
        for (i, v) in solve_cyclic(&lower, &diag, &upper, &rhs).into_iter().enumerate() {
            tangents[i][k] = v;
        }
    }
    let segments = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let (p, q) = (vertices[i], vertices[j]);
            [
                p,
                [p[0] + h[i] * tangents[i][0] / 3.0, p[1] + h[i] * tangents[i][1] / 3.0],
                [q[0] - h[i] * tangents[j][0] / 3.0, q[1] - h[i] * tangents[j][1] / 3.0],
                q,
            ]
        })
        .collect();
    Ok(ClosedCurve { segments })
}

/// Fit a closed curve through the vertices of a boundary polygon.
pub fn fit_closed_curve(boundary: &Polygon, points: &[P2]) -> Result<ClosedCurve> {
    fit_closed_curve_through(&boundary.coords(points))
}

/// `∫ κ² ds` over the closed curve.
pub fn curve_bending_energy(curve: &ClosedCurve) -> Result<f64> {
    if curve.is_empty() {
        return Err(Error::DegeneratePolygon("empty curve".into()));
    }
    let mut total = 0.0;
    for j in 0..curve.len() {
        if let Some(t) = curve.stationary_point(j) {
            return Err(Error::SingularParametrization(format!(
                "zero speed on segment {j} at t = {t:.6}"
            )));
        }
        total += integrate_adaptive(0.0, 1.0, |t| {
            let d = curve.derivative(j, t);
            let dd = curve.second_derivative(j, t);
            let speed2 = d[0] * d[0] + d[1] * d[1];
            let cross = d[0] * dd[1] - d[1] * dd[0];
            Ok::<f64, Error>(cross * cross / speed2.powf(2.5))
        })?;
    }
    Ok(total)
}
