//! Riemann theta functions with half-integer characteristics,
//!
//! ```text
//! theta[a; b](z, Omega) = sum_n exp(i pi (n+a)^T Omega (n+a) + 2 pi i (n+a)^T (z+b)).
//! ```
//!
//! Under `z -> z + n' + Omega m` this picks up
//! `exp(2 pi i a^T n') exp(-i pi m^T Omega m - 2 pi i m^T (z + b))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::periods::min_eig_sym2;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::C64;

/// A characteristic `[alpha; beta]` with entries in `{0, 1/2}`, stored as
/// numerators over 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaChar {
    pub alpha: [u8; 2],
    pub beta: [u8; 2],
}

impl ThetaChar {
    /// `alpha = a / 2`, `beta = b / 2`, reduced mod 1.
    pub fn new(a: [i64; 2], b: [i64; 2]) -> Self {
        let r = |v: i64| v.rem_euclid(2) as u8;
        ThetaChar { alpha: [r(a[0]), r(a[1])], beta: [r(b[0]), r(b[1])] }
    }

    pub fn zero() -> Self {
        ThetaChar::new([0, 0], [0, 0])
    }

    pub fn alpha(&self) -> [f64; 2] {
        self.alpha.map(|v| v as f64 / 2.0)
    }

    pub fn beta(&self) -> [f64; 2] {
        self.beta.map(|v| v as f64 / 2.0)
    }

    pub fn is_even(&self) -> bool {
        (self.alpha[0] * self.beta[0] + self.alpha[1] * self.beta[1]).is_multiple_of(2)
    }

    pub fn all() -> Vec<ThetaChar> {
        let mut out = Vec::with_capacity(16);
        for k in 0..16i64 {
            out.push(ThetaChar::new([k & 1, (k >> 1) & 1], [(k >> 2) & 1, (k >> 3) & 1]));
        }
        out
    }

    pub fn even() -> Vec<ThetaChar> {
        Self::all().into_iter().filter(|c| c.is_even()).collect()
    }
}

/// Second-order jet in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaJet {
    pub value: C64,
    pub grad: [C64; 2],
    pub hess: Mat2<C64>,
}

/// Theta series for a fixed Riemann matrix with a truncation radius chosen
/// per evaluation from an explicit tail bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSeries {
    omega: Mat2<C64>,
    lambda: f64,
    tol: f64,
}

impl ThetaSeries {
    pub fn new(omega: &Mat2<C64>, tol: f64) -> Result<Self> {
        let o = &omega.0;
        let asym = (o[0][1] - o[1][0]).norm();
        if asym > 1e-8 * omega.max_magnitude() {
            return Err(Error::NotRiemannMatrix(format!("asymmetry {asym:e}")));
        }
        let lambda = min_eig_sym2(o[0][0].im, (o[0][1].im + o[1][0].im) / 2.0, o[1][1].im);
        if !(lambda > 0.0) {
            return Err(Error::NotRiemannMatrix(format!(
                "Im Omega has eigenvalue {lambda:e}"
            )));
        }
        Ok(ThetaSeries { omega: omega.clone(), lambda, tol })
    }

    pub fn omega(&self) -> &Mat2<C64> {
        &self.omega
    }

    /// Smallest `R` such that the terms with `max |n_i| > R` sum to at most
    /// `tol` relative to the largest possible term. Shell `k` has `8k` points
    /// with `|n + alpha| >= k - 1/2` and `|n + alpha| <= sqrt(2) (k + 1/2)`;
    /// the derivative factor `(1 + 2 pi |v|)^2` is included.
    pub fn radius(&self, z: &[C64; 2]) -> usize {
        let y = z[0].im.hypot(z[1].im);
        let lam = self.lambda;
        let log_term = |k: f64| {
            let lo = k - 0.5;
            let hi = std::f64::consts::SQRT_2 * (k + 0.5);
            (8.0 * k).ln() + 2.0 * (1.0 + 2.0 * PI * hi).ln() - PI * lam * lo * lo
                + 2.0 * PI * y * hi
        };
        // Upper bound of the largest term, the reference scale.
        let peak = (PI * y * y / lam).max(0.0);
        let target = self.tol.ln() + peak;
        let tail_below = |r: usize| {
            let mut acc = f64::NEG_INFINITY;
            let mut k = r + 1;
            loop {
                let t = log_term(k as f64);
                acc = log_add(acc, t);
                // Once terms decrease, the remainder is dominated geometrically.
                if k > r + 1 && t < acc - 40.0 && log_term(k as f64 + 1.0) < t {
                    break;
                }
                k += 1;
                if k > r + 400 {
                    break;
                }
            }
            acc <= target
        };
        let mut r = 2;
        while r < 200 && !tail_below(r) {
            r += 1;
        }
        r
    }

    pub fn eval(&self, z: &[C64; 2], ch: ThetaChar) -> C64 {
        self.sum(z, ch, false).value
    }

    pub fn jet(&self, z: &[C64; 2], ch: ThetaChar) -> ThetaJet {
        self.sum(z, ch, true)
    }

    fn sum(&self, z: &[C64; 2], ch: ThetaChar, derivs: bool) -> ThetaJet {
        let r = self.radius(z) as i64;
        let al = ch.alpha();
        let be = ch.beta();
        let w = [z[0] + be[0], z[1] + be[1]];
        let o = &self.omega.0;
        let ipi = C64::new(0.0, PI);
        let two_pi_i = C64::new(0.0, 2.0 * PI);
        let mut value = C64::new(0.0, 0.0);
        let mut grad = [C64::new(0.0, 0.0); 2];
        let mut hess = [[C64::new(0.0, 0.0); 2]; 2];
        for n0 in -r..=r {
            for n1 in -r..=r {
                let v = [n0 as f64 + al[0], n1 as f64 + al[1]];
                let q = o[0][0] * v[0] * v[0] + (o[0][1] + o[1][0]) * v[0] * v[1] + o[1][1] * v[1] * v[1];
                let t = (ipi * q + two_pi_i * (w[0] * v[0] + w[1] * v[1])).exp();
                value += t;
                if derivs {
                    for i in 0..2 {
                        grad[i] += two_pi_i * v[i] * t;
                        for j in 0..2 {
                            hess[i][j] += two_pi_i * two_pi_i * v[i] * v[j] * t;
                        }
                    }
                }
            }
        }
        ThetaJet { value, grad, hess: Mat2::from_fn(|i, j| hess[i][j]) }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// One-off evaluation of `theta[ch](z, omega)`.
pub fn theta(z: &[C64; 2], omega: &Mat2<C64>, ch: ThetaChar, tol: f64) -> Result<C64> {
    Ok(ThetaSeries::new(omega, tol)?.eval(z, ch))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega() -> Mat2<C64> {
        Mat2::from_fn(|i, j| match (i, j) {
            (0, 0) => C64::new(0.3, 1.1),
            (1, 1) => C64::new(-0.2, 0.9),
            _ => C64::new(0.15, 0.35),
        })
    }

    #[test]
    fn characteristics() {
        assert_eq!(ThetaChar::all().len(), 16);
        assert_eq!(ThetaChar::even().len(), 10);
        assert_eq!(ThetaChar::new([3, -1], [2, 5]), ThetaChar::new([1, 1], [0, 1]));
    }

    #[test]
    fn evenness_and_quasi_periodicity() {
        let ts = ThetaSeries::new(&omega(), 1e-14).unwrap();
        let z = [C64::new(0.21, -0.13), C64::new(-0.07, 0.31)];
        let mz = [-z[0], -z[1]];
        let t0 = ThetaChar::zero();
        assert!((ts.eval(&z, t0) - ts.eval(&mz, t0)).norm() < 1e-13);
        let o = omega();
        for ch in ThetaChar::all() {
            let (np, m) = ([1.0, -2.0], [1.0, 1.0]);
            let om = o.mul_vec(&[C64::new(m[0], 0.0), C64::new(m[1], 0.0)]);
            let zs = [z[0] + np[0] + om[0], z[1] + np[1] + om[1]];
            let (al, be) = (ch.alpha(), ch.beta());
            let mom = m[0] * om[0] + m[1] * om[1];
            let mz = m[0] * (z[0] + be[0]) + m[1] * (z[1] + be[1]);
            let factor = (C64::new(0.0, 2.0 * PI) * (al[0] * np[0] + al[1] * np[1])
                - C64::new(0.0, PI) * mom
                - C64::new(0.0, 2.0 * PI) * mz)
                .exp();
            let lhs = ts.eval(&zs, ch);
            let rhs = factor * ts.eval(&z, ch);
            assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "{ch:?}");
        }
    }

    #[test]
    fn jet_matches_differences() {
        let ts = ThetaSeries::new(&omega(), 1e-15).unwrap();
        let ch = ThetaChar::new([1, 0], [0, 1]);
        let z = [C64::new(0.1, 0.05), C64::new(-0.2, 0.02)];
        let j = ts.jet(&z, ch);
        let h = 1e-5;
        let zp = [z[0] + h, z[1]];
        let zm = [z[0] - h, z[1]];
        let d = (ts.eval(&zp, ch) - ts.eval(&zm, ch)) / (2.0 * h);
        assert!((d - j.grad[0]).norm() < 1e-7 * j.grad[0].norm().max(1.0));
    }

    #[test]
    fn rejects_bad_matrix() {
        let bad = Mat2::from_fn(|i, j| if i == j { C64::new(0.0, -1.0) } else { C64::new(0.0, 0.0) });
        assert!(matches!(ThetaSeries::new(&bad, 1e-12), Err(Error::NotRiemannMatrix(_))));
    }
}
