use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::dist2;

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Density clustering. A point is core when at least `min_pts` points
/// (itself included) lie within `eps`. Core points within `eps` of each other
/// share a cluster; a border point joins its nearest core neighbour, ties
/// going to the lexicographically smaller core coordinates; everything else
/// is noise. None of these rules looks at input order, so a permuted dataset
/// gets the same partition. Clusters are numbered by first appearance.
pub fn dbscan(x: &Dataset, eps: f64, min_pts: usize) -> Result<Clustering> {
    if !(eps > 0.0 && eps.is_finite()) || min_pts == 0 {
        return Err(Error::Config("dbscan needs eps > 0 and min_pts >= 1".into()));
    }
    let n = x.len();
    let eps2 = eps * eps;
    let mut count = vec![1usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dist2(x.point(i), x.point(j)) <= eps2 {
                count[i] += 1;
                count[j] += 1;
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&i| count[i] >= min_pts).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (a, &i) in core.iter().enumerate() {
        for &j in &core[a + 1..] {
            if dist2(x.point(i), x.point(j)) <= eps2 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }

    let is_core: Vec<bool> = (0..n).map(|i| count[i] >= min_pts).collect();
    let mut raw = vec![-1i64; n];
    for &i in &core {
        raw[i] = find(&mut parent, i) as i64;
    }
    for i in (0..n).filter(|&i| !is_core[i]) {
        let mut best: Option<(f64, usize)> = None;
        for &j in &core {
            let d = dist2(x.point(i), x.point(j));
            if d > eps2 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bd, bj)) => d < bd || (d == bd && lex_less(x.point(j), x.point(bj))),
            };
            if better {
                best = Some((d, j));
            }
        }
        if let Some((_, j)) = best {
            raw[i] = raw[j];
        }
    }
    Ok(Clustering::from_first_appearance(&raw))
}
