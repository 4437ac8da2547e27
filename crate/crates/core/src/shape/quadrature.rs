use std::sync::OnceLock;

pub const NODES: usize = 32;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre polynomial.
pub fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut rule = vec![(0.0, 0.0); n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule[i] = (-x, w);
            rule[n - 1 - i] = (x, w);
        }
        rule
    })
}

/// Fixed-order rule on `[a, b]`.
pub fn integrate<E>(a: f64, b: f64, f: &mut impl FnMut(f64) -> Result<f64, E>) -> Result<f64, E> {
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mut s = 0.0;
    for &(x, w) in gauss_legendre() {
        s += w * f(mid + half * x)?;
    }
    Ok(s * half)
}

/// Relative change between refinements at which integration stops.
pub const TOLERANCE: f64 = 1e-3;
const MAX_LEVEL: u32 = 10;

/// Composite rule on `[a, b]`, doubling the number of panels until two
/// successive estimates agree to [`TOLERANCE`].
pub fn integrate_adaptive<E>(a: f64, b: f64, mut f: impl FnMut(f64) -> Result<f64, E>) -> Result<f64, E> {
    let mut prev = integrate(a, b, &mut f)?;
    for level in 1..=MAX_LEVEL {
        let panels = 1usize << level;
        let h = (b - a) / panels as f64;
        let mut s = 0.0;
        for p in 0..panels {
            s += integrate(a + p as f64 * h, a + (p + 1) as f64 * h, &mut f)?;
        }
        if (s - prev).abs() <= TOLERANCE * s.abs() || (s - prev).abs() < 1e-300 {
            return Ok(s);
        }
        prev = s;
    }
    Ok(prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weights_sum_to_two_and_polynomials_are_exact() {
        let rule = gauss_legendre();
        assert_abs_diff_eq!(rule.iter().map(|r| r.1).sum::<f64>(), 2.0, epsilon = 1e-13);
        // exact up to degree 63
        let v = integrate::<()>(0.0, 1.0, &mut |x| Ok(x.powi(63))).unwrap();
        assert_abs_diff_eq!(v, 1.0 / 64.0, epsilon = 1e-14);
        let v = integrate::<()>(0.0, std::f64::consts::PI, &mut |x| Ok(x.sin())).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn adaptive_handles_sharp_peaks() {
        let v = integrate_adaptive::<()>(-1.0, 1.0, |x| Ok(1.0 / (1e-4 + x * x))).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!((v - exact).abs() / exact < 2e-3, "{v} vs {exact}");
    }
}
