use std::cmp::Ordering;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    fn key(&self) -> (f64, usize, usize) {
        (self.weight, self.u.min(self.v), self.u.max(self.v))
    }
}

/// Edges compare by weight, then by (smaller endpoint, larger endpoint).
/// This is a strict total order on distinct edges, so the spanning tree it
/// induces is unique and every correct algorithm returns the same one.
fn edge_cmp(a: (f64, usize, usize), b: (f64, usize, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
}

/// A spanning tree over point indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tree {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Tree {
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Edges in ascending (weight, min, max) order.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut e = self.edges.clone();
        e.sort_by(|a, b| edge_cmp(a.key(), b.key()));
        e
    }
}

/// Minimum spanning tree of the complete graph on `vertices` (dense Prim).
///
/// `weight(a, b)` receives positions into `vertices`; the returned edges
/// carry the vertex ids themselves.
pub fn mst(vertices: &[usize], weight: impl Fn(usize, usize) -> f64) -> Tree {
    let n = vertices.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        // best[p] = (weight, parent position)
        let mut best: Vec<(f64, usize)> = vec![(f64::INFINITY, usize::MAX); n];
        let key = |w: f64, a: usize, b: usize| {
            let (ia, ib) = (vertices[a], vertices[b]);
            (w, ia.min(ib), ia.max(ib))
        };
        let mut current = 0;
        in_tree[0] = true;
        for _ in 1..n {
            for p in 0..n {
                if in_tree[p] {
                    continue;
                }
                let w = weight(current, p);
                let (bw, bp) = best[p];
                if bp == usize::MAX || edge_cmp(key(w, current, p), key(bw, bp, p)) == Ordering::Less {
                    best[p] = (w, current);
                }
            }
            let mut next = usize::MAX;
            for p in 0..n {
                if in_tree[p] {
                    continue;
                }
                if next == usize::MAX
                    || edge_cmp(key(best[p].0, best[p].1, p), key(best[next].0, best[next].1, next)) == Ordering::Less
                {
                    next = p;
                }
            }
            in_tree[next] = true;
            let (w, parent) = best[next];
            edges.push(Edge {
                u: vertices[parent],
                v: vertices[next],
                weight: w,
            });
            current = next;
        }
    }
    Tree {
        vertices: vertices.to_vec(),
        edges,
    }
}

/// Kruskal over all pairs; the same tree as [`mst`], by a different route.
pub fn mst_kruskal(vertices: &[usize], weight: impl Fn(usize, usize) -> f64) -> Tree {
    let n = vertices.len();
    let mut all = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            all.push((a, b, weight(a, b)));
        }
    }
    let key = |&(a, b, w): &(usize, usize, f64)| {
        let (ia, ib) = (vertices[a], vertices[b]);
        (w, ia.min(ib), ia.max(ib))
    };
    all.sort_by(|x, y| edge_cmp(key(x), key(y)));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (a, b, w) in all {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.push(Edge {
                u: vertices[a],
                v: vertices[b],
                weight: w,
            });
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    Tree {
        vertices: vertices.to_vec(),
        edges,
    }
}
