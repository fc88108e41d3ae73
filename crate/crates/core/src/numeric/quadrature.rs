//! Fixed Gauss rules on `[0, 1]`.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes of the `n`-point Gauss-Chebyshev rule for the weight
/// `1 / sqrt(s (1 - s))` on `[0, 1]`; every weight equals `pi / n`.
pub fn gauss_chebyshev(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| {
            let t = (2 * k - 1) as f64 * PI / (2 * n) as f64;
            (1.0 + t.cos()) / 2.0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exact_for_polynomials() {
        let rule = gauss_legendre(8);
        let w: f64 = rule.iter().map(|r| r.1).sum();
        assert!((w - 1.0).abs() < 1e-15);
        let i: f64 = rule.iter().map(|&(x, w)| w * x.powi(15)).sum();
        assert!((i - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_weight() {
        // int_0^1 s / sqrt(s(1-s)) ds = pi / 2
        let n = 12;
        let i: f64 = gauss_chebyshev(n).iter().map(|s| s * PI / n as f64).sum();
        assert!((i - PI / 2.0).abs() < 1e-14);
    }
}
