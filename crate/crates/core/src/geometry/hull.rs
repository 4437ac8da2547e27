use std::collections::HashMap;

use robust::{orient2d, orient3d, Coord, Coord3D};

use crate::error::{Error, Result};

fn c2(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

fn c3(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D {
        x: p[0],
        y: p[1],
        z: p[2],
    }
}

/// Positive when `a, b, c` turn counter-clockwise.
pub(crate) fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    orient2d(c2(a), c2(b), c2(c))
}

/// Hull vertex indices in counter-clockwise order, starting from the
/// lexicographically smallest point. Collinear and duplicate points are
/// dropped. Fewer than three distinct non-collinear points give the
/// extreme points only.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
            .then(a.cmp(&b))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() < 3 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0.0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        // all collinear: the two extremes
        return vec![order[0], *order.last().unwrap()];
    }
    hull
}

/// Signed shoelace area; positive for counter-clockwise vertex order.
pub fn polygon_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    s / 2.0
}

/// Triangular faces of the 3D hull, each ordered counter-clockwise when seen
/// from outside. Empty when the points are coplanar.
pub fn convex_hull_3d(points: &[[f64; 3]]) -> Vec<[usize; 3]> {
    let Some(seed) = initial_tetrahedron(points) else {
        return Vec::new();
    };
    let mut faces: Vec<Option<[usize; 3]>> = Vec::new();
    // directed edge -> face that owns it
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    let add = |faces: &mut Vec<Option<[usize; 3]>>, owner: &mut HashMap<(usize, usize), usize>, f: [usize; 3]| {
        let id = faces.len();
        for e in 0..3 {
            owner.insert((f[e], f[(e + 1) % 3]), id);
        }
        faces.push(Some(f));
    };
    let [a, b, c, d] = seed;
    let (b, c) = if orient3d(c3(points[a]), c3(points[b]), c3(points[c]), c3(points[d])) > 0.0 {
        (b, c)
    } else {
        (c, b)
    };
    for f in [[a, b, c], [a, d, b], [b, d, c], [c, d, a]] {
        add(&mut faces, &mut owner, f);
    }
    let visible =
        |f: [usize; 3], p: usize| orient3d(c3(points[f[0]]), c3(points[f[1]]), c3(points[f[2]]), c3(points[p])) < 0.0;

    for p in 0..points.len() {
        if seed.contains(&p) {
            continue;
        }
        let lit: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.filter(|&f| visible(f, p)).map(|_| i))
            .collect();
        if lit.is_empty() {
            continue;
        }
        let is_lit = |i: usize, lit: &[usize]| lit.binary_search(&i).is_ok();
        let mut horizon = Vec::new();
        for &i in &lit {
            let f = faces[i].unwrap();
            for e in 0..3 {
                let (u, v) = (f[e], f[(e + 1) % 3]);
                let twin = owner[&(v, u)];
                if !is_lit(twin, &lit) {
                    horizon.push((u, v));
                }
            }
        }
        for &i in &lit {
            let f = faces[i].take().unwrap();
            for e in 0..3 {
                let key = (f[e], f[(e + 1) % 3]);
                if owner.get(&key) == Some(&i) {
                    owner.remove(&key);
                }
            }
        }
        for (u, v) in horizon {
            add(&mut faces, &mut owner, [u, v, p]);
        }
    }
    faces.into_iter().flatten().collect()
}

fn initial_tetrahedron(points: &[[f64; 3]]) -> Option<[usize; 4]> {
    if points.len() < 4 {
        return None;
    }
    let d2 = |a: [f64; 3], b: [f64; 3]| (0..3).map(|j| (a[j] - b[j]).powi(2)).sum::<f64>();
    let argmax = |score: &dyn Fn(usize) -> f64| {
        (0..points.len())
            .map(|i| (score(i), i))
            .fold((0.0, usize::MAX), |best, cur| if cur.0 > best.0 { cur } else { best })
    };
    let p0 = (0..points.len())
        .min_by(|&a, &b| {
            points[a]
                .iter()
                .zip(&points[b])
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    let (w1, p1) = argmax(&|i| d2(points[p0], points[i]));
    if w1 == 0.0 {
        return None;
    }
    let cross_norm = |i: usize| {
        let (a, b, c) = (points[p0], points[p1], points[i]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let w = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        w.iter().map(|x| x * x).sum::<f64>()
    };
    let (_, p2) = argmax(&cross_norm);
    if p2 == usize::MAX || collinear3(points[p0], points[p1], points[p2]) {
        return None;
    }
    let (w3, p3) = argmax(&|i| orient3d(c3(points[p0]), c3(points[p1]), c3(points[p2]), c3(points[i])).abs());
    if w3 == 0.0 {
        return None;
    }
    Some([p0, p1, p2, p3])
}

fn collinear3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> bool {
    // collinear iff every coordinate projection is collinear
    let proj = |i: usize, j: usize| {
        orient2d(
            Coord { x: a[i], y: a[j] },
            Coord { x: b[i], y: b[j] },
            Coord { x: c[i], y: c[j] },
        ) == 0.0
    };
    proj(0, 1) && proj(1, 2) && proj(0, 2)
}

fn rows2(points: &[f64]) -> Vec<[f64; 2]> {
    points.chunks_exact(2).map(|p| [p[0], p[1]]).collect()
}

fn rows3(points: &[f64]) -> Vec<[f64; 3]> {
    points.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect()
}

/// Area (2D) or volume (3D) of the convex hull of row-major `points`.
/// Degenerate inputs measure 0.
pub fn convex_hull_measure(points: &[f64], dim: usize) -> Result<f64> {
    match dim {
        2 => {
            let p = rows2(points);
            let hull: Vec<[f64; 2]> = convex_hull_2d(&p).into_iter().map(|i| p[i]).collect();
            Ok(polygon_area(&hull).max(0.0))
        }
        3 => {
            let p = rows3(points);
            let faces = convex_hull_3d(&p);
            if faces.is_empty() {
                return Ok(0.0);
            }
            let o = faces[0].map(|i| p[i]);
            let o = [0, 1, 2].map(|j| (o[0][j] + o[1][j] + o[2][j]) / 3.0);
            let mut vol = 0.0;
            for f in &faces {
                let [a, b, c] = f.map(|i| [p[i][0] - o[0], p[i][1] - o[1], p[i][2] - o[2]]);
                vol += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]);
            }
            Ok((vol / 6.0).abs())
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Largest pairwise Euclidean distance among row-major `points`.
pub fn hull_diameter(points: &[f64], dim: usize) -> Result<f64> {
    if dim == 0 || points.len() % dim != 0 {
        return Err(Error::InvalidDataset("points do not form rows".into()));
    }
    let n = points.len() / dim;
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    // only hull vertices can realise the diameter
    let candidates: Vec<usize> = match dim {
        2 => convex_hull_2d(&rows2(points)),
        3 => {
            let faces = convex_hull_3d(&rows3(points));
            if faces.is_empty() {
                (0..n).collect()
            } else {
                let mut v: Vec<usize> = faces.iter().flatten().copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
        _ => (0..n).collect(),
    };
    let row = |i: usize| &points[i * dim..(i + 1) * dim];
    let mut best = 0.0f64;
    for (a, &i) in candidates.iter().enumerate() {
        for &j in &candidates[a + 1..] {
            let d2: f64 = row(i).iter().zip(row(j)).map(|(x, y)| (x - y) * (x - y)).sum();
            best = best.max(d2);
        }
    }
    Ok(best.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    #[test]
    fn unit_square_and_cube() {
        let sq = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.5, 0.5];
        assert_eq!(convex_hull_measure(&sq, 2).unwrap(), 1.0);
        let mut cube = Vec::new();
        for i in 0..8 {
            cube.extend([(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
        }
        cube.extend([0.5, 0.5, 0.5]);
        assert_abs_diff_eq!(convex_hull_measure(&cube, 3).unwrap(), 1.0, epsilon = 1e-12);
        assert!(matches!(
            convex_hull_measure(&[0.0; 4], 4),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn degenerate_inputs_measure_zero() {
        assert_eq!(convex_hull_measure(&[0.0, 0.0, 1.0, 1.0, 2.0, 2.0], 2).unwrap(), 0.0);
        let flat = [
            0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.3, 0.2, 0.0,
        ];
        assert_eq!(convex_hull_measure(&flat, 3).unwrap(), 0.0);
        assert_eq!(convex_hull_measure(&[1.0, 1.0], 2).unwrap(), 0.0);
    }

    #[test]
    fn hull_2d_is_ccw_and_drops_collinear() {
        let pts = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [2.0, 2.0], [0.0, 2.0], [1.0, 1.0]];
        assert_eq!(convex_hull_2d(&pts), vec![0, 1, 3, 4]);
    }

    #[test]
    fn diameter_examples() {
        let sq = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        assert_abs_diff_eq!(hull_diameter(&sq, 2).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        let line: Vec<f64> = (0..=10).map(f64::from).collect();
        assert_eq!(hull_diameter(&line, 1).unwrap(), 10.0);
        assert!(hull_diameter(&[1.0, 2.0], 2).is_err());

        let mut rng = crate::seed::rng(5);
        for dim in [2, 3, 4] {
            let pts: Vec<f64> = (0..60 * dim).map(|_| rng.random_range(-3.0..3.0)).collect();
            let mut brute = 0.0f64;
            for i in 0..60 {
                for j in 0..60 {
                    let d: f64 = (0..dim).map(|k| (pts[i * dim + k] - pts[j * dim + k]).powi(2)).sum();
                    brute = brute.max(d.sqrt());
                }
            }
            assert_eq!(hull_diameter(&pts, dim).unwrap(), brute);
        }
    }

    #[test]
    fn measure_is_rigid_and_scales() {
        let mut rng = crate::seed::rng(9);
        for dim in [2usize, 3] {
            for _ in 0..20 {
                let pts: Vec<f64> = (0..30 * dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let base = convex_hull_measure(&pts, dim).unwrap();
                let shifted: Vec<f64> = pts
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v + (i % dim) as f64 * 3.5)
                    .collect();
                assert_abs_diff_eq!(convex_hull_measure(&shifted, dim).unwrap(), base, epsilon = 1e-9);
                let scaled: Vec<f64> = pts.iter().map(|v| v * 2.5).collect();
                assert_abs_diff_eq!(
                    convex_hull_measure(&scaled, dim).unwrap(),
                    base * 2.5f64.powi(dim as i32),
                    epsilon = 1e-9
                );
                // rotation about the first two axes
                let (s, c) = 0.7f64.sin_cos();
                let rotated: Vec<f64> = pts
                    .chunks_exact(dim)
                    .flat_map(|p| {
                        let mut q = p.to_vec();
                        q[0] = c * p[0] - s * p[1];
                        q[1] = s * p[0] + c * p[1];
                        q
                    })
                    .collect();
                assert_abs_diff_eq!(convex_hull_measure(&rotated, dim).unwrap(), base, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn hull_3d_faces_enclose_every_point() {
        let mut rng = crate::seed::rng(21);
        for _ in 0..50 {
            let pts: Vec<[f64; 3]> = (0..40).map(|_| [0; 3].map(|_| rng.random_range(-1.0..1.0))).collect();
            let faces = convex_hull_3d(&pts);
            // closed 2-manifold: V - E + F = 2 with E = 3F/2
            let mut v: Vec<usize> = faces.iter().flatten().copied().collect();
            v.sort_unstable();
            v.dedup();
            assert_eq!(v.len() as i64 - (3 * faces.len() / 2) as i64 + faces.len() as i64, 2);
            for f in &faces {
                for p in &pts {
                    assert!(orient3d(c3(pts[f[0]]), c3(pts[f[1]]), c3(pts[f[2]]), c3(*p)) >= 0.0);
                }
            }
        }
    }
}
