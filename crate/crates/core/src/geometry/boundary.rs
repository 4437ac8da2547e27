use std::collections::{BinaryHeap, HashMap};

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use super::hull::orient;
use super::mst::mst;
use crate::error::{Error, Result};

/// Closed boundary walk, as indices into the input points, counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<usize>,
}

impl Polygon {
    pub fn new(vertices: Vec<usize>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn coords(&self, points: &[[f64; 2]]) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|&i| points[i]).collect()
    }

    pub fn area(&self, points: &[[f64; 2]]) -> f64 {
        super::polygon_area(&self.coords(points))
    }
}

struct Site {
    at: [f64; 2],
    index: usize,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        Point2::new(self.at[0], self.at[1])
    }
}

/// Triangles (counter-clockwise) of the Delaunay triangulation of the distinct
/// input points. Duplicates are represented by their smallest index.
fn delaunay(points: &[[f64; 2]]) -> Result<Vec<[usize; 3]>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
            .then(a.cmp(&b))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    let sites: Vec<Site> = order
        .iter()
        .map(|&i| Site {
            at: points[i],
            index: i,
        })
        .collect();
    let tri: DelaunayTriangulation<Site> =
        DelaunayTriangulation::bulk_load(sites).map_err(|e| Error::External(format!("triangulation: {e:?}")))?;
    Ok(tri
        .inner_faces()
        .map(|f| {
            let [a, b, c] = f.vertices().map(|v| v.data().index);
            if orient(points[a], points[b], points[c]) > 0.0 {
                [a, b, c]
            } else {
                [a, c, b]
            }
        })
        .collect())
}

fn length(points: &[[f64; 2]], a: usize, b: usize) -> f64 {
    (points[a][0] - points[b][0]).hypot(points[a][1] - points[b][1])
}

/// Default erosion threshold: twice the median Euclidean spanning-tree edge.
fn default_threshold(points: &[[f64; 2]]) -> f64 {
    let ids: Vec<usize> = (0..points.len()).collect();
    let mut w = mst(&ids, |a, b| length(points, a, b)).weights();
    w.sort_by(f64::total_cmp);
    let mid = w.len() / 2;
    let median = if w.len() % 2 == 1 {
        w[mid]
    } else {
        (w[mid - 1] + w[mid]) / 2.0
    };
    2.0 * median
}

/// Boundary polygon of a 2D point set with concave refinement at the
/// default threshold.
pub fn boundary_2d(points: &[[f64; 2]]) -> Result<Polygon> {
    if points.len() < 3 {
        return Err(Error::DegenerateBoundary(format!("{} points", points.len())));
    }
    boundary_2d_with_threshold(points, Some(default_threshold(points)))
}

/// Boundary of the Delaunay triangulation after eroding boundary triangles
/// whose exposed edge is longer than `threshold`. A triangle is only removed
/// when its third vertex is interior, so the region stays a simple polygon
/// containing every point. `None` keeps the full triangulation, whose
/// boundary is the convex hull.
pub fn boundary_2d_with_threshold(points: &[[f64; 2]], threshold: Option<f64>) -> Result<Polygon> {
    let degenerate = || Error::DegenerateBoundary("points are collinear or too few".into());
    if points.len() < 3 {
        return Err(degenerate());
    }
    let tris = delaunay(points)?;
    if tris.is_empty() {
        return Err(degenerate());
    }
    let mut alive = vec![true; tris.len()];
    let mut owner: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * tris.len());
    for (t, tri) in tris.iter().enumerate() {
        for e in 0..3 {
            owner.insert((tri[e], tri[(e + 1) % 3]), t);
        }
    }
    let is_boundary_edge = |owner: &HashMap<(usize, usize), usize>, alive: &[bool], u: usize, v: usize| {
        owner.get(&(u, v)).is_some_and(|&t| alive[t]) && !owner.get(&(v, u)).is_some_and(|&t| alive[t])
    };
    let mut on_boundary = vec![false; points.len()];
    for (&(u, v), _) in owner.iter() {
        if is_boundary_edge(&owner, &alive, u, v) {
            on_boundary[u] = true;
            on_boundary[v] = true;
        }
    }

    if let Some(tau) = threshold {
        #[derive(PartialEq)]
        struct Cand(f64, usize, usize);
        impl Eq for Cand {}
        impl PartialOrd for Cand {
            fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Cand {
            fn cmp(&self, o: &Self) -> std::cmp::Ordering {
                // longest first, then smallest endpoints for determinism
                self.0.total_cmp(&o.0).then(o.1.cmp(&self.1)).then(o.2.cmp(&self.2))
            }
        }
        let mut heap = BinaryHeap::new();
        for &(u, v) in owner.keys() {
            if is_boundary_edge(&owner, &alive, u, v) {
                heap.push(Cand(length(points, u, v), u, v));
            }
        }
        let mut remaining = tris.len();
        while let Some(Cand(len, u, v)) = heap.pop() {
            if len <= tau || remaining == 1 {
                break;
            }
            if !is_boundary_edge(&owner, &alive, u, v) {
                continue;
            }
            let t = owner[&(u, v)];
            let w = tris[t].into_iter().find(|&p| p != u && p != v).unwrap();
            if on_boundary[w] {
                continue;
            }
            alive[t] = false;
            remaining -= 1;
            on_boundary[w] = true;
            for (a, b) in [(u, w), (w, v)] {
                heap.push(Cand(length(points, a, b), a, b));
            }
        }
    }

    let mut next: HashMap<usize, usize> = HashMap::new();
    for (&(u, v), &t) in &owner {
        if alive[t] && is_boundary_edge(&owner, &alive, u, v) {
            next.insert(u, v);
        }
    }
    let start = *next.keys().min().ok_or_else(degenerate)?;
    let mut walk = vec![start];
    let mut cur = next[&start];
    while cur != start {
        if walk.len() > next.len() {
            return Err(Error::DegenerateBoundary("boundary walk does not close".into()));
        }
        walk.push(cur);
        cur = next[&cur];
    }
    Ok(Polygon::new(walk))
}
