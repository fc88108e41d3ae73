//! Small dense matrices over a [`Scalar`] field.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

pub type Vec4<T> = [T; 4];

/// Square `N x N` matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T, const N: usize>(pub [[T; N]; N]);

pub type Mat4<T> = Mat<T, 4>;
pub type Mat2<T> = Mat<T, 2>;

impl<T: Scalar, const N: usize> Mat<T, N> {
    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: &[T; N]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn from_columns(cols: &[[T; N]; N]) -> Self {
        Self::from_fn(|i, j| cols[j][i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    pub fn row(&self, i: usize) -> [T; N] {
        self.0[i].clone()
    }

    pub fn column(&self, j: usize) -> [T; N] {
        std::array::from_fn(|i| self.0[i][j].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..N).fold(T::zero(), |acc, k| acc + self.0[i][k].clone() * o.0[k][j].clone())
        })
    }

    pub fn mul_vec(&self, v: &[T; N]) -> [T; N] {
        std::array::from_fn(|i| {
            (0..N).fold(T::zero(), |acc, k| acc + self.0[i][k].clone() * v[k].clone())
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T; N]) -> [T; N] {
        std::array::from_fn(|j| {
            (0..N).fold(T::zero(), |acc, k| acc + v[k].clone() * self.0[k][j].clone())
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() * s.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() + o.0[i][j].clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() - o.0[i][j].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..N).all(|i| (0..i).all(|j| self.0[i][j] == self.0[j][i]))
    }

    /// `a^T M a`.
    pub fn quad_form(&self, a: &[T; N]) -> T {
        dot(a, &self.mul_vec(a))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U, N> {
        Mat::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn to_c64(&self) -> Mat<C64, N> {
        self.map(|v| v.to_c64())
    }

    /// Determinant by elimination with largest-magnitude pivoting.
    pub fn det(&self) -> T {
        let mut a = self.0.clone();
        let mut det = T::one();
        for k in 0..N {
            let Some(piv) = pivot(&a, k) else { return T::zero() };
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            let akk = a[k][k].clone();
            det = det * akk.clone();
            for i in k + 1..N {
                let f = a[i][k].clone() / akk.clone();
                for j in k..N {
                    a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let mut a = self.0.clone();
        let mut inv = Self::identity().0;
        let scale = self.max_magnitude();
        for k in 0..N {
            let piv = pivot(&a, k).ok_or(Error::SingularMatrix)?;
            if a[piv][k].is_negligible(scale, 1e-14) {
                return Err(Error::SingularMatrix);
            }
            a.swap(piv, k);
            inv.swap(piv, k);
            let akk = a[k][k].clone();
            for j in 0..N {
                a[k][j] = a[k][j].clone() / akk.clone();
                inv[k][j] = inv[k][j].clone() / akk.clone();
            }
            for i in 0..N {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..N {
                    a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[k][j].clone();
                }
            }
        }
        Ok(Mat(inv))
    }

    /// Rank by elimination; exact for exact fields, `tol`-relative otherwise.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.0.clone();
        let scale = self.max_magnitude();
        let mut rank = 0;
        for k in 0..N {
            let mut best: Option<usize> = None;
            for i in rank..N {
                if !a[i][k].is_negligible(scale, tol)
                    && best.is_none_or(|b| a[i][k].magnitude() > a[b][k].magnitude())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { continue };
            a.swap(b, rank);
            for i in rank + 1..N {
                let f = a[i][k].clone() / a[rank][k].clone();
                for j in k..N {
                    a[i][j] = a[i][j].clone() - f.clone() * a[rank][j].clone();
                }
            }
            rank += 1;
        }
        rank
    }
}

fn pivot<T: Scalar, const N: usize>(a: &[[T; N]; N], k: usize) -> Option<usize> {
    (k..N)
        .filter(|&i| !a[i][k].is_zero())
        .max_by(|&i, &j| a[i][k].magnitude().total_cmp(&a[j][k].magnitude()))
}

pub fn dot<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    (0..N).fold(T::zero(), |acc, k| acc + a[k].clone() * b[k].clone())
}

pub fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    let t = |i: usize, j: usize| m[i][j].clone();
    t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) - t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0))
        + t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0))
}

pub fn is_zero_vec<T: Scalar, const N: usize>(v: &[T; N]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn scale_vec<T: Scalar, const N: usize>(v: &[T; N], s: &T) -> [T; N] {
    std::array::from_fn(|i| v[i].clone() * s.clone())
}

/// Whether `a = lambda * b` for some nonzero `lambda`; exact comparison.
pub fn proportional<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N]) -> bool {
    if is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    (0..N).all(|i| (0..N).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()))
}

/// Whether `m = lambda * other` for some nonzero `lambda`; exact comparison.
pub fn proportional_mat<T: Scalar, const N: usize>(m: &Mat<T, N>, other: &Mat<T, N>) -> bool {
    let flat = |x: &Mat<T, N>| x.0.iter().flatten().cloned().collect::<Vec<_>>();
    let (a, b) = (flat(m), flat(other));
    if a.iter().all(|v| v.is_zero()) || b.iter().all(|v| v.is_zero()) {
        return false;
    }
    let k = a.iter().position(|v| !v.is_zero()).unwrap();
    if b[k].is_zero() {
        return false;
    }
    (0..a.len()).all(|i| a[i].clone() * b[k].clone() == b[i].clone() * a[k].clone())
}

/// Projective equality: exact proportionality for exact fields, otherwise the
/// max-modulus normalized coordinates agree to `tol`.
pub fn proj_eq<T: Scalar, const N: usize>(a: &[T; N], b: &[T; N], tol: f64) -> bool {
    if T::EXACT {
        return proportional(a, b);
    }
    let na = normalize_projective(&a.clone().map(|v| v.to_c64()));
    let nb = normalize_projective(&b.clone().map(|v| v.to_c64()));
    if na.iter().all(|v| v.norm() == 0.0) || nb.iter().all(|v| v.norm() == 0.0) {
        return false;
    }
    (0..N).all(|k| (na[k] - nb[k]).norm() <= tol)
}

/// Projective distance between two complex vectors: the relative residual of
/// the least-squares fit `a ~ lambda b`, normalized by `|a|`.
pub fn projective_distance<const N: usize>(a: &[C64; N], b: &[C64; N]) -> f64 {
    let na: f64 = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let bb: f64 = nb * nb;
    let ab: C64 = (0..N).map(|k| b[k].conj() * a[k]).sum();
    let lambda = ab / bb;
    let r: f64 = (0..N).map(|k| (a[k] - lambda * b[k]).norm_sqr()).sum::<f64>().sqrt();
    r / na
}

/// Normalizes so that the largest-modulus coordinate equals one.
pub fn normalize_projective<const N: usize>(a: &[C64; N]) -> [C64; N] {
    let k = (0..N).max_by(|&i, &j| a[i].norm().total_cmp(&a[j].norm())).unwrap_or(0);
    let s = a[k];
    if s == C64::new(0.0, 0.0) {
        return *a;
    }
    std::array::from_fn(|i| a[i] / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: [[i64; 4]; 4]) -> Mat4<Rational> {
        Mat::from_fn(|i, j| int(rows[i][j]))
    }

    #[test]
    fn inverse_and_det() {
        let a = m([[2, 1, 0, 3], [0, 1, 4, 1], [1, 0, 0, 2], [5, 2, 1, 0]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat4::identity());
        assert_eq!(a.det() * inv.det(), int(1));
        let s = m([[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(s.det(), int(0));
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        assert_eq!(s.rank(0.0), 3);
    }

    #[test]
    fn proportionality() {
        let a = [int(1), int(2), int(0), int(-1)];
        assert!(proportional(&a, &scale_vec(&a, &int(-3))));
        assert!(!proportional(&a, &[int(1), int(2), int(0), int(1)]));
        let c: [C64; 2] = [C64::new(1.0, 1.0), C64::new(0.0, 2.0)];
        let d = [c[0] * C64::new(0.0, 3.0), c[1] * C64::new(0.0, 3.0)];
        assert!(projective_distance(&c, &d) < 1e-15);
    }
}
