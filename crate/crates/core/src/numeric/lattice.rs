//! Period lattices, the Richelot sublattice and the adapted symplectic bases.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::abel::weierstrass_abel;
use super::periods::{compute_periods, standard_form, PeriodData};
use super::NumericConfig;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Mat2, Mat4};
use crate::richelot::FactoredSextic;
use crate::scalar::{int, Rational, Scalar, C64};

/// A lattice in `C^2` given by four generators.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeApprox {
    pub generators: [[C64; 2]; 4],
    pub tol: f64,
    /// Inverse of the real `4 x 4` matrix of generators.
    real_inv: Mat4<C64>,
    covolume: f64,
}

impl LatticeApprox {
    pub fn new(generators: [[C64; 2]; 4], tol: f64) -> Result<Self> {
        let m = Mat4::from_fn(|i, j| {
            let g = generators[j][i % 2];
            C64::new(if i < 2 { g.re } else { g.im }, 0.0)
        });
        let real_inv = m.inverse().map_err(|_| {
            Error::IllConditioned("lattice generators have real rank below 4".into())
        })?;
        let covolume = m.det().re.abs();
        Ok(LatticeApprox { generators, tol, real_inv, covolume })
    }

    /// Real coordinates of `z` in the generators.
    pub fn coordinates(&self, z: &[C64; 2]) -> [f64; 4] {
        let v = [z[0].re, z[1].re, z[0].im, z[1].im].map(|x| C64::new(x, 0.0));
        self.real_inv.mul_vec(&v).map(|c| c.re)
    }

    /// Nearest integer coordinates and the largest rounding distance.
    pub fn round(&self, z: &[C64; 2]) -> ([i64; 4], f64) {
        let c = self.coordinates(z);
        let n = c.map(|x| x.round() as i64);
        let err = (0..4).map(|k| (c[k] - n[k] as f64).abs()).fold(0.0, f64::max);
        (n, err)
    }

    pub fn contains(&self, z: &[C64; 2]) -> bool {
        self.round(z).1 <= self.tol
    }

    pub fn covolume(&self) -> f64 {
        self.covolume
    }
}

/// Whether `z` lies within tolerance of `L`, in lattice coordinates.
pub fn lattice_member(z: &[C64; 2], l: &LatticeApprox) -> bool {
    l.contains(z)
}

/// Symplectic bases `a_1, a_2, b_1, b_2` of `Per_f` with `a_i` in `Per_{f^}`,
/// and `a_1, a_2, 2b_1, 2b_2` of `Per_{f^}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBases {
    pub f: PeriodData,
    pub hat: PeriodData,
    /// Columns: coordinates of the basic cycles of `f^` in those of `f`.
    pub inclusion: [[i64; 4]; 4],
    /// Covolume ratio `[Per_f : Per_{f^}]`.
    pub index: f64,
}

impl AdaptedBases {
    pub fn lattice_f(&self, tol: f64) -> Result<LatticeApprox> {
        LatticeApprox::new(self.f.generators(), tol)
    }

    pub fn lattice_hat(&self, tol: f64) -> Result<LatticeApprox> {
        LatticeApprox::new(self.hat.generators(), tol)
    }
}

pub fn adapted_bases<T: Scalar>(fs: &FactoredSextic<T>, cfg: &NumericConfig) -> Result<AdaptedBases> {
    let fc = fs.to_c64();
    let raw_f = compute_periods(&fc.f, cfg)?;
    let raw_h = compute_periods(&fc.hat_f(), cfg)?;
    let hf = &raw_f.homology;
    let hh = &raw_h.homology;

    let cycles = LatticeApprox::new(hf.cycle_periods, cfg.lattice_tol)?;
    let mut inclusion = [[0i64; 4]; 4];
    for (k, col) in hh.cycle_periods.iter().enumerate() {
        let (n, err) = cycles.round(col);
        if err > cfg.lattice_tol {
            return Err(Error::BasisSearchFailed(format!(
                "cycle {k} of the Richelot curve is not a period ({err:e})"
            )));
        }
        inclusion[k] = n;
    }
    let m: Mat4<Rational> = Mat::from_fn(|i, j| int(inclusion[j][i]));
    if m.det().abs() != int(4) {
        return Err(Error::BasisSearchFailed("sublattice index is not 4".into()));
    }
    for i in 0..4 {
        for j in 0..4 {
            if hf.pairing(&inclusion[i], &inclusion[j]) != 2 * hh.intersection[i][j] {
                return Err(Error::BasisSearchFailed(
                    "intersection forms are not proportional".into(),
                ));
            }
        }
    }

    let basis = symplectic_adapted(&inclusion, &|u, v| hf.pairing(u, v))?;
    let f = raw_f.rebased(basis)?;

    let m_inv = m.inverse()?;
    let hat_vectors = [basis[0], basis[1], basis[2].map(|v| 2 * v), basis[3].map(|v| 2 * v)];
    let mut hat_basis = [[0i64; 4]; 4];
    for (k, v) in hat_vectors.iter().enumerate() {
        let c = m_inv.mul_vec(&v.map(int));
        if !c.iter().all(|x| x.is_integer()) {
            return Err(Error::BasisSearchFailed("vector outside the sublattice".into()));
        }
        hat_basis[k] = c.map(|x| x.to_integer().to_i64().expect("small"));
    }
    let hat = raw_h.rebased(hat_basis)?;
    let index = LatticeApprox::new(hat.generators(), cfg.lattice_tol)?.covolume()
        / LatticeApprox::new(f.generators(), cfg.lattice_tol)?.covolume();
    Ok(AdaptedBases { f, hat, inclusion, index })
}

/// Builds `a_1, a_2, b_1, b_2` for the unimodular form `pair` such that
/// `a_1, a_2` reduce mod 2 into the span `W` of the columns of `incl`.
///
/// `a_1` is a 0/1 lift of a nonzero element of `W`; `b_1` solves
/// `<a_1, b_1> = 1` by extended gcd. The projection
/// `P(y) = y - <y, b_1> a_1 + <y, a_1> b_1` onto the orthogonal complement
/// turns a second element of `W` into `a_2` after removing its content, and
/// `b_2` again comes from an extended gcd.
fn symplectic_adapted(
    incl: &[[i64; 4]; 4],
    pair: &dyn Fn(&[i64; 4], &[i64; 4]) -> i64,
) -> Result<[[i64; 4]; 4]> {
    let fail = |m: &str| Error::BasisSearchFailed(m.to_string());
    let mut w: Vec<[i64; 4]> = Vec::new();
    for c in incl {
        let r = c.map(|v| v.rem_euclid(2));
        if r.iter().all(|&v| v == 0) || w.contains(&r) {
            continue;
        }
        if w.len() < 2 {
            w.push(r);
        }
    }
    if w.len() < 2 {
        return Err(fail("sublattice is not of rank two mod 2"));
    }
    let unit = |i: usize| -> [i64; 4] { std::array::from_fn(|k| (k == i) as i64) };
    let a1 = w[0];
    let lin: Vec<i64> = (0..4).map(|i| pair(&a1, &unit(i))).collect();
    let (g, cs) = egcd_vec(&lin);
    if g != 1 {
        return Err(fail("first vector is not primitive for the pairing"));
    }
    let b1: [i64; 4] = std::array::from_fn(|i| cs[i]);
    let proj = |y: &[i64; 4]| -> [i64; 4] {
        let (s, t) = (pair(y, &b1), pair(y, &a1));
        std::array::from_fn(|k| y[k] - s * a1[k] + t * b1[k])
    };
    let x = proj(&w[1]);
    let content = x.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v));
    if content == 0 {
        return Err(fail("second vector is degenerate"));
    }
    let a2 = x.map(|v| v / content);
    let images: Vec<[i64; 4]> = (0..4).map(|i| proj(&unit(i))).collect();
    let vals: Vec<i64> = images.iter().map(|p| pair(&a2, p)).collect();
    let (g, cs) = egcd_vec(&vals);
    if g != 1 {
        return Err(fail("second vector has no dual"));
    }
    let b2: [i64; 4] = std::array::from_fn(|k| (0..4).map(|i| cs[i] * images[i][k]).sum());
    let basis = [a1, a2, b1, b2];
    for i in 0..4 {
        for j in 0..4 {
            if pair(&basis[i], &basis[j]) != standard_form(i, j) {
                return Err(fail("completed basis is not symplectic"));
            }
        }
    }
    Ok(basis)
}

/// Coefficients `c` with `sum c_i v_i = gcd(v)`, gcd taken nonnegative.
fn egcd_vec(vals: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut cs = vec![0i64; vals.len()];
    for (i, &v) in vals.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if g == 0 {
            g = v.abs();
            cs[i] = v.signum();
            continue;
        }
        let e = num_integer::Integer::extended_gcd(&g, &v);
        let (gg, x, y) = (e.gcd, e.x, e.y);
        for c in cs.iter_mut() {
            *c *= x;
        }
        cs[i] += y;
        g = gg;
        if g < 0 {
            g = -g;
            cs.iter_mut().for_each(|c| *c = -*c);
        }
    }
    (g, cs)
}

/// Numerical `H = (eta_A - 2 eta^_A) A^{-1}`.
pub fn numeric_h(ab: &AdaptedBases) -> Result<Mat2<C64>> {
    let d = ab.f.eta_a.sub(&ab.hat.eta_a.scale(&C64::new(2.0, 0.0)));
    Ok(d.mul(&ab.f.a.inverse()?))
}

/// Residuals of `eta^f(w) = 2 eta^{f^}(w) + H w` over the generators of
/// `Per_{f^}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaReport {
    /// Per generator `a_1, a_2, 2b_1, 2b_2`.
    pub residuals: [f64; 4],
    pub max: f64,
}

pub fn verify_eta_transform(ab: &AdaptedBases, h: &Mat2<C64>) -> EtaReport {
    let two = C64::new(2.0, 0.0);
    let etas_f = ab.f.generator_etas();
    let gens_f = ab.f.generators();
    let eta_f = [etas_f[0], etas_f[1], etas_f[2].map(|v| v * two), etas_f[3].map(|v| v * two)];
    let w = [gens_f[0], gens_f[1], gens_f[2].map(|v| v * two), gens_f[3].map(|v| v * two)];
    let eta_h = ab.hat.generator_etas();
    let scale = eta_f
        .iter()
        .map(|e| e[0].norm().hypot(e[1].norm()))
        .fold(f64::MIN_POSITIVE, f64::max);
    let residuals = std::array::from_fn(|k| {
        let hw = h.mul_vec(&w[k]);
        let r = [0, 1].map(|i| eta_f[k][i] - two * eta_h[k][i] - hw[i]);
        r[0].norm().hypot(r[1].norm()) / scale
    });
    let max = residuals.iter().copied().fold(0.0, f64::max);
    EtaReport { residuals, max }
}

/// One Weierstrass pair `(e_i) + (e_j)` of `f` and whether its Abel image
/// is a kernel half-period, i.e. twice it lies in `Per_{f^}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelPair {
    pub pair: (usize, usize),
    pub in_kernel: bool,
    /// Rounding distance of `2z` in `Per_{f^}` coordinates.
    pub distance: f64,
}

pub fn kernel_pairs(ab: &AdaptedBases, tol: f64) -> Result<Vec<KernelPair>> {
    let hat = ab.lattice_hat(tol)?;
    let mut out = Vec::with_capacity(15);
    for i in 0..6 {
        for j in i + 1..6 {
            let zi = weierstrass_abel(&ab.f, i);
            let zj = weierstrass_abel(&ab.f, j);
            let two_z = [0, 1].map(|k| 2.0 * (zi[k] + zj[k]));
            let (_, distance) = hat.round(&two_z);
            out.push(KernelPair { pair: (i, j), in_kernel: distance <= tol, distance });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_membership() {
        let g = [
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.3, 0.1), C64::new(1.0, 0.2)],
            [C64::new(0.2, 1.1), C64::new(0.4, 0.3)],
            [C64::new(0.1, 0.4), C64::new(0.2, 0.9)],
        ];
        let l = LatticeApprox::new(g, 1e-6).unwrap();
        assert!(lattice_member(&[C64::new(0.0, 0.0); 2], &l));
        let z = [0, 1].map(|k| g[0][k] + 3.0 * g[3][k]);
        assert!(lattice_member(&z, &l));
        let half = [0, 1].map(|k| g[0][k] / 2.0);
        assert!(!lattice_member(&half, &l));
    }

    #[test]
    fn egcd_combination() {
        let v = [6, -10, 15, 0];
        let (g, c) = egcd_vec(&v);
        assert_eq!(g, 1);
        assert_eq!(v.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>(), 1);
    }

    #[test]
    fn standard_fixture_bases() {
        let fs = FactoredSextic::<Rational>::from_i64([0, -1, 1], [6, -5, 1], [20, -9, 1]).unwrap();
        let ab = adapted_bases(&fs, &NumericConfig::default()).unwrap();
        assert!((ab.index - 4.0).abs() < 1e-8);
        assert!(ab.f.homology.basis_is_symplectic());
        assert!(ab.hat.homology.basis_is_symplectic());
        let h = fs.to_c64().matrix_h();
        let rep = verify_eta_transform(&ab, &h);
        assert!(rep.max < 1e-9, "{rep:?}");
        let hn = numeric_h(&ab).unwrap();
        assert!(hn.sub(&h).max_magnitude() < 1e-8);
        let ks = kernel_pairs(&ab, 1e-6).unwrap();
        let kernel: Vec<_> = ks.iter().filter(|k| k.in_kernel).map(|k| k.pair).collect();
        assert_eq!(kernel, vec![(0, 1), (2, 3), (4, 5)]);
    }
}
