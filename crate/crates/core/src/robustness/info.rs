use crate::error::{Error, Result};
use crate::matching::match_labels;
use crate::stats::Pmf;

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn entropy(p: &Pmf) -> f64 {
    -p.probs().iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// `sum p_i ln(p_i / q_i)` over the support of `p`.
pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let mut sum = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::OutOfRange("q vanishes where p does not; smooth q first".into()));
        }
        sum += pi * (pi / qi).ln();
    }
    // rounding can leave a tiny negative residue when p and q agree
    Ok(sum.max(0.0))
}

/// Cluster distributions of a reference labelling and a relabelled one,
/// over a shared support.
///
/// `reference` labels the first `reference.len()` points; `other` labels the
/// same points followed by any extras. `other`'s clusters are matched onto the
/// reference using the shared points only, unmatched ones receive fresh
/// slots. Both distributions get `smoothing` pseudo-counts in every slot.
/// Noise labels are ignored on both sides.
pub fn aligned_pmfs(
    reference: &[i32],
    m_reference: usize,
    other: &[i32],
    m_other: usize,
    smoothing: f64,
) -> Result<(Pmf, Pmf)> {
    if other.len() < reference.len() {
        return Err(Error::DimensionMismatch {
            expected: reference.len(),
            got: other.len(),
        });
    }
    if !(smoothing >= 0.0 && smoothing.is_finite()) {
        return Err(Error::Config("smoothing must be a non-negative number".into()));
    }
    let matching = match_labels(reference, m_reference, other, m_other);
    let slots = matching.support_len();
    let mut p = vec![smoothing; slots];
    let mut q = vec![smoothing; slots];
    for &l in reference {
        if l >= 0 {
            p[l as usize] += 1.0;
        }
    }
    for &l in other {
        if l >= 0 {
            q[matching.get(l as usize)] += 1.0;
        }
    }
    Ok((Pmf::from_weights(&p)?, Pmf::from_weights(&q)?))
}
