use std::io::Read;
use std::path::Path;

use super::quadrature::{gauss_legendre, TOLERANCE};
use crate::error::{Error, Result};

type P3 = [f64; 3];

const DEGREE: usize = 3;

/// Tensor-product cubic B-spline surface on `[0, 1]²` with clamped uniform
/// knots. `net[i][j]` is the control point `P_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePatch {
    net: Vec<Vec<P3>>,
    knots_u: Vec<f64>,
    knots_v: Vec<f64>,
}

fn clamped_knots(count: usize) -> Vec<f64> {
    let spans = count - DEGREE;
    let mut k = vec![0.0; DEGREE];
    k.extend((0..=spans).map(|i| i as f64 / spans as f64));
    k.extend(vec![1.0; DEGREE]);
    k
}

fn find_span(knots: &[f64], count: usize, t: f64) -> usize {
    if t >= knots[count] {
        return count - 1;
    }
    let mut span = DEGREE;
    while span + 1 < count && knots[span + 1] <= t {
        span += 1;
    }
    span
}

/// Nonzero basis functions at `t` and their first two derivatives.
fn basis_derivatives(knots: &[f64], span: usize, t: f64) -> [[f64; DEGREE + 1]; 3] {
    let p = DEGREE;
    let mut ndu = [[0.0; DEGREE + 1]; DEGREE + 1];
    let mut left = [0.0; DEGREE + 1];
    let mut right = [0.0; DEGREE + 1];
    ndu[0][0] = 1.0;
    for j in 1..=p {
        left[j] = t - knots[span + 1 - j];
        right[j] = knots[span + j] - t;
        let mut saved = 0.0;
        for r in 0..j {
            ndu[j][r] = right[r + 1] + left[j - r];
            let temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    let mut ders = [[0.0; DEGREE + 1]; 3];
    for j in 0..=p {
        ders[0][j] = ndu[j][p];
    }
    for r in 0..=p {
        let mut a = [[0.0; DEGREE + 1]; 2];
        let (mut s1, mut s2) = (0usize, 1usize);
        a[0][0] = 1.0;
        for k in 1..=2usize {
            let mut d = 0.0;
            let rk = r as isize - k as isize;
            let pk = p - k;
            if r >= k {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                d = a[s2][0] * ndu[rk as usize][pk];
            }
            let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
            let j2 = if (r as isize - 1) <= pk as isize { k - 1 } else { p - r };
            for j in j1..=j2 {
                let idx = (rk + j as isize) as usize;
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][idx];
                d += a[s2][j] * ndu[idx][pk];
            }
            if r <= pk {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::mem::swap(&mut s1, &mut s2);
        }
    }
    let mut factor = p as f64;
    for row in ders.iter_mut().skip(1) {
        for v in row.iter_mut() {
            *v *= factor;
        }
        factor *= (p - 1) as f64;
    }
    ders
}

/// Position and partial derivatives at one parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub s: P3,
    pub su: P3,
    pub sv: P3,
    pub suu: P3,
    pub suv: P3,
    pub svv: P3,
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl SurfacePatch {
    pub fn new(net: Vec<Vec<P3>>) -> Result<Self> {
        let rows = net.len();
        let cols = net.first().map_or(0, Vec::len);
        if rows < DEGREE + 1 || cols < DEGREE + 1 {
            return Err(Error::Config(format!(
                "control net is {rows}x{cols}, need at least 4x4"
            )));
        }
        if net.iter().any(|r| r.len() != cols) {
            return Err(Error::Config("control net rows differ in length".into()));
        }
        if net.iter().flatten().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Config("control net has non-finite coordinates".into()));
        }
        Ok(SurfacePatch {
            knots_u: clamped_knots(rows),
            knots_v: clamped_knots(cols),
            net,
        })
    }

    pub fn net(&self) -> &[Vec<P3>] {
        &self.net
    }

    /// Greville abscissae: parameters at which each control point has most
    /// influence. Interpolating data there gives a well-posed system.
    fn greville(knots: &[f64], count: usize) -> Vec<f64> {
        (0..count)
            .map(|i| knots[i + 1..=i + DEGREE].iter().sum::<f64>() / DEGREE as f64)
            .collect()
    }

    /// The patch that passes through `grid[i][j]` at the Greville parameters.
    pub fn interpolate(grid: &[Vec<P3>]) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        let shell = SurfacePatch::new(grid.to_vec())?;
        let collocation = |knots: &[f64], count: usize| {
            let params = Self::greville(knots, count);
            let mut m = vec![vec![0.0; count]; count];
            for (r, &t) in params.iter().enumerate() {
                let span = find_span(knots, count, t);
                let b = basis_derivatives(knots, span, t)[0];
                for (k, v) in b.iter().enumerate() {
                    m[r][span - DEGREE + k] = *v;
                }
            }
            m
        };
        let mu = collocation(&shell.knots_u, rows);
        let mv = collocation(&shell.knots_v, cols);
        // solve along v for every row, then along u for every column
        let mut tmp = vec![vec![[0.0; 3]; cols]; rows];
        for i in 0..rows {
            for k in 0..3 {
                let rhs: Vec<f64> = grid[i].iter().map(|p| p[k]).collect();
                for (j, v) in solve_dense(&mv, &rhs)?.into_iter().enumerate() {
                    tmp[i][j][k] = v;
                }
            }
        }
        let mut net = vec![vec![[0.0; 3]; cols]; rows];
        for j in 0..cols {
            for k in 0..3 {
                let rhs: Vec<f64> = (0..rows).map(|i| tmp[i][j][k]).collect();
                for (i, v) in solve_dense(&mu, &rhs)?.into_iter().enumerate() {
                    net[i][j][k] = v;
                }
            }
        }
        SurfacePatch::new(net)
    }

    /// Load a control net from CSV rows `i,j,x,y,z` (header optional).
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut entries = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if row == 0 && rec.get(0).is_some_and(|c| c.parse::<f64>().is_err()) {
                continue;
            }
            if rec.len() != 5 {
                return Err(Error::Csv {
                    row: row as u64 + 1,
                    column: rec.len().min(5),
                    message: "expected 5 columns: i, j, x, y, z".into(),
                });
            }
            let idx = |c: usize| {
                rec[c].parse::<usize>().map_err(|_| Error::Csv {
                    row: row as u64 + 1,
                    column: c + 1,
                    message: format!("'{}' is not an index", &rec[c]),
                })
            };
            let val = |c: usize| {
                rec[c].parse::<f64>().map_err(|_| Error::Csv {
                    row: row as u64 + 1,
                    column: c + 1,
                    message: format!("'{}' is not a number", &rec[c]),
                })
            };
            entries.push((idx(0)?, idx(1)?, [val(2)?, val(3)?, val(4)?]));
        }
        let rows = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let cols = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        let mut net = vec![vec![None; cols]; rows];
        for (i, j, p) in entries {
            if net[i][j].replace(p).is_some() {
                return Err(Error::Config(format!("control point ({i}, {j}) given twice")));
            }
        }
        let net = net
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, p)| p.ok_or_else(|| Error::Config(format!("control point ({i}, {j}) missing"))))
                    .collect::<Result<Vec<P3>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SurfacePatch::new(net)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::from(e).context(format!("opening {}", path.display())))?;
        Self::from_csv(f)
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        if !((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)) {
            return Err(Error::OutOfRange(format!("({u}, {v}) outside the unit square")));
        }
        let (rows, cols) = (self.net.len(), self.net[0].len());
        let su_span = find_span(&self.knots_u, rows, u);
        let sv_span = find_span(&self.knots_v, cols, v);
        let bu = basis_derivatives(&self.knots_u, su_span, u);
        let bv = basis_derivatives(&self.knots_v, sv_span, v);
        let mut out = [[0.0; 3]; 6];
        for a in 0..=DEGREE {
            for b in 0..=DEGREE {
                let p = self.net[su_span - DEGREE + a][sv_span - DEGREE + b];
                let w = [
                    bu[0][a] * bv[0][b],
                    bu[1][a] * bv[0][b],
                    bu[0][a] * bv[1][b],
                    bu[2][a] * bv[0][b],
                    bu[1][a] * bv[1][b],
                    bu[0][a] * bv[2][b],
                ];
                for (o, wk) in out.iter_mut().zip(w) {
                    for k in 0..3 {
                        o[k] += wk * p[k];
                    }
                }
            }
        }
        Ok(SurfaceJet {
            s: out[0],
            su: out[1],
            sv: out[2],
            suu: out[3],
            suv: out[4],
            svv: out[5],
        })
    }

    /// Gaussian and mean curvature from the fundamental forms, plus the area
    /// element `|S_u x S_v|`.
    pub fn curvatures(&self, u: f64, v: f64) -> Result<(f64, f64, f64)> {
        let j = self.jet(u, v)?;
        let e = dot(j.su, j.su);
        let f = dot(j.su, j.sv);
        let g = dot(j.sv, j.sv);
        let normal = cross(j.su, j.sv);
        let area = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        let det = e * g - f * f;
        if !(area > 0.0) || !(det > 0.0) {
            return Err(Error::SingularParametrization(format!(
                "degenerate tangent plane at ({u}, {v})"
            )));
        }
        let n = normal.map(|c| c / area);
        let l = dot(j.suu, n);
        let m = dot(j.suv, n);
        let nn = dot(j.svv, n);
        let k = (l * nn - m * m) / det;
        let h = (e * nn - 2.0 * f * m + g * l) / (2.0 * det);
        Ok((k, h, area))
    }
}

fn solve_dense(m: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(*b);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        if a[piv][col].abs() < 1e-14 {
            return Err(Error::Degenerate("singular interpolation system".into()));
        }
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let factor = a[r][col] / a[col][col];
                if factor != 0.0 {
                    for c in col..=n {
                        a[r][c] -= factor * a[col][c];
                    }
                }
            }
        }
    }
    Ok((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

/// `2H² - K`, half the sum of the squared principal curvatures.
pub fn surface_curvature_integrand(patch: &SurfacePatch, u: f64, v: f64) -> Result<f64> {
    let (k, h, _) = patch.curvatures(u, v)?;
    Ok(2.0 * h * h - k)
}

/// `∬ (2H² - K) dA` over the patch, by tensor Gauss-Legendre quadrature on
/// every knot cell, refined until successive estimates agree.
pub fn surface_shape_integral(patch: &SurfacePatch) -> Result<f64> {
    let (rows, cols) = (patch.net.len(), patch.net[0].len());
    let spans_u = rows - DEGREE;
    let spans_v = cols - DEGREE;
    let rule = gauss_legendre();
    let estimate = |split: usize| -> Result<f64> {
        let (nu, nv) = (spans_u * split, spans_v * split);
        let mut total = 0.0;
        for a in 0..nu {
            for b in 0..nv {
                let (u0, u1) = (a as f64 / nu as f64, (a + 1) as f64 / nu as f64);
                let (v0, v1) = (b as f64 / nv as f64, (b + 1) as f64 / nv as f64);
                let (hu, hv) = ((u1 - u0) / 2.0, (v1 - v0) / 2.0);
                for &(x, wx) in rule {
                    for &(y, wy) in rule {
                        let u = (u0 + u1) / 2.0 + hu * x;
                        let v = (v0 + v1) / 2.0 + hv * y;
                        let (k, h, area) = patch.curvatures(u, v)?;
                        total += wx * wy * hu * hv * (2.0 * h * h - k) * area;
                    }
                }
            }
        }
        Ok(total)
    };
    let mut prev = estimate(1)?;
    for split in [2, 4] {
        let next = estimate(split)?;
        if (next - prev).abs() <= TOLERANCE * next.abs() || (next - prev).abs() < 1e-300 {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn plane() -> SurfacePatch {
        let net = (0..5)
            .map(|i| {
                (0..6)
                    .map(|j| [i as f64, j as f64 * 0.5, 0.3 * i as f64 - 0.1 * j as f64])
                    .collect()
            })
            .collect();
        SurfacePatch::new(net).unwrap()
    }

    /// Six patches covering the unit sphere, one per cube face.
    fn sphere(r: f64, n: usize) -> Vec<SurfacePatch> {
        let faces: [(usize, f64); 6] = [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0), (2, 1.0), (2, -1.0)];
        faces
            .iter()
            .map(|&(axis, sign)| {
                // sample where each control point has most influence, so the
                // face coordinates stay proportional to the parameters
                let g = SurfacePatch::greville(&clamped_knots(n), n);
                let grid: Vec<Vec<P3>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let a = -1.0 + 2.0 * g[i];
                                let b = -1.0 + 2.0 * g[j];
                                let mut p = [0.0; 3];
                                p[axis] = sign;
                                // face orientation is irrelevant, the integrand is even in the normal
                                p[(axis + 1) % 3] = a;
                                p[(axis + 2) % 3] = b;
                                let len = dot(p, p).sqrt();
                                p.map(|c| r * c / len)
                            })
                            .collect()
                    })
                    .collect();
                SurfacePatch::interpolate(&grid).unwrap()
            })
            .collect()
    }

    #[test]
    fn knots_and_basis_partition_unity() {
        let k = clamped_knots(6);
        assert_eq!(k, vec![0.0, 0.0, 0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0, 1.0, 1.0]);
        for s in 0..=20 {
            let t = s as f64 / 20.0;
            let span = find_span(&k, 6, t);
            let d = basis_derivatives(&k, span, t);
            assert!((d[0].iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(d[1].iter().sum::<f64>().abs() < 1e-12);
            assert!(d[2].iter().sum::<f64>().abs() < 1e-10);
        }
    }

    #[test]
    fn basis_derivatives_match_finite_differences() {
        let k = clamped_knots(7);
        let h = 1e-6;
        for s in 1..40 {
            let t = s as f64 / 40.0 + 0.003;
            let span = find_span(&k, 7, t);
            let d = basis_derivatives(&k, span, t);
            let up = basis_derivatives(&k, span, t + h);
            let dn = basis_derivatives(&k, span, t - h);
            for i in 0..4 {
                assert!(((up[0][i] - dn[0][i]) / (2.0 * h) - d[1][i]).abs() < 1e-5);
                assert!(((up[1][i] - dn[1][i]) / (2.0 * h) - d[2][i]).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn plane_has_no_curvature() {
        let p = plane();
        for (u, v) in [(0.0, 0.0), (0.3, 0.7), (1.0, 0.5)] {
            assert!(surface_curvature_integrand(&p, u, v).unwrap().abs() < 1e-12);
        }
        assert!(surface_shape_integral(&p).unwrap().abs() < 1e-10);
        assert!(p.jet(1.2, 0.0).is_err());
    }

    #[test]
    fn sphere_integrand_and_integral() {
        let patches = sphere(1.0, 24);
        for p in &patches {
            for (u, v) in [(0.5, 0.5), (0.2, 0.8), (0.9, 0.1)] {
                let val = surface_curvature_integrand(p, u, v).unwrap();
                assert!((val - 1.0).abs() < 1e-2, "{val}");
            }
        }
        let total: f64 = patches.iter().map(|p| surface_shape_integral(p).unwrap()).sum();
        assert!((total - 4.0 * PI).abs() < 0.02 * 4.0 * PI, "{total}");
        // (2H² - K) dA is scale invariant on spheres
        let big: f64 = sphere(2.0, 24).iter().map(|p| surface_shape_integral(p).unwrap()).sum();
        assert!((big - total).abs() < 1e-6 * total);
    }

    #[test]
    fn interpolation_passes_through_data() {
        let grid: Vec<Vec<P3>> = (0..6)
            .map(|i| (0..5).map(|j| [i as f64, j as f64, ((i * j) as f64).sin()]).collect())
            .collect();
        let p = SurfacePatch::interpolate(&grid).unwrap();
        let gu = SurfacePatch::greville(&p.knots_u, 6);
        let gv = SurfacePatch::greville(&p.knots_v, 5);
        for i in 0..6 {
            for j in 0..5 {
                let s = p.jet(gu[i], gv[j]).unwrap().s;
                for k in 0..3 {
                    assert!((s[k] - grid[i][j][k]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn csv_net_round_trip() {
        let mut text = String::from("i,j,x,y,z\n");
        for i in 0..4 {
            for j in 0..4 {
                text.push_str(&format!("{i},{j},{i},{j},0\n"));
            }
        }
        let p = SurfacePatch::from_csv(text.as_bytes()).unwrap();
        assert_eq!(p.net()[2][3], [2.0, 3.0, 0.0]);
        let short = "0,0,1,2\n";
        assert!(matches!(
            SurfacePatch::from_csv(short.as_bytes()),
            Err(Error::Csv { row: 1, .. })
        ));
        assert!(SurfacePatch::from_csv("0,0,0,0,0\n".as_bytes()).is_err());
    }
}
