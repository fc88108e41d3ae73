//! Complex roots of univariate polynomials.

use crate::poly::Poly;
use crate::scalar::C64;

/// All complex roots with multiplicity by Aberth iteration, each polished by
/// Newton steps on the original polynomial. The zero polynomial and constants
/// have no roots.
pub fn poly_roots(p: &Poly<C64>) -> Vec<C64> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading();
    let monic: Vec<C64> = p.coeffs().iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    // Initial guesses on a circle bounding all roots.
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            C64::from_polar(0.5 * radius, t)
        })
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        let mut v = C64::new(1.0, 0.0);
        let mut d = C64::new(0.0, 0.0);
        for c in monic[..n].iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let s: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| C64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    let dp = p.derivative();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = p.eval(zi) / d;
            if !step.is_finite() || step.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_roots() {
        let rs = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0].map(|v| C64::new(v, 0.0));
        let p = Poly::from_roots(C64::new(2.0, 0.0), &rs);
        let mut got = poly_roots(&p);
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (a, b) in got.iter().zip(rs.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
        let q = Poly::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let r = poly_roots(&q);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14));
    }
}
