use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};
use crate::geometry::{dist, mst};

/// One agglomeration step: the two merged groups (by smallest member index)
/// and the linkage height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub height: f64,
}

/// Merge sequence of single-linkage clustering, read off the Euclidean
/// spanning tree in ascending edge order.
pub fn single_linkage_merges(x: &Dataset) -> Vec<Merge> {
    let ids: Vec<usize> = (0..x.len()).collect();
    let tree = mst(&ids, |a, b| dist(x.point(a), x.point(b)));
    let mut rep: Vec<usize> = (0..x.len()).collect();
    fn find(rep: &mut [usize], mut i: usize) -> usize {
        while rep[i] != i {
            rep[i] = rep[rep[i]];
            i = rep[i];
        }
        i
    }
    tree.sorted_edges()
        .into_iter()
        .map(|e| {
            let (ru, rv) = (find(&mut rep, e.u), find(&mut rep, e.v));
            let (lo, hi) = (ru.min(rv), ru.max(rv));
            rep[hi] = lo;
            Merge {
                a: lo,
                b: hi,
                height: e.weight,
            }
        })
        .collect()
}

/// Cut the single-linkage dendrogram into `k` clusters.
pub fn single_linkage(x: &Dataset, k: usize) -> Result<Clustering> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::InvalidClustering(format!("k = {k} out of range for {n} points")));
    }
    let mut rep: Vec<usize> = (0..n).collect();
    for m in single_linkage_merges(x).into_iter().take(n - k) {
        rep[m.b] = m.a;
    }
    let root = |mut i: usize| {
        while rep[i] != i {
            i = rep[i];
        }
        i as i64
    };
    let raw: Vec<i64> = (0..n).map(root).collect();
    Ok(Clustering::from_first_appearance(&raw))
}
