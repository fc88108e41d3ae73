//! Periods of the first- and second-kind differentials
//!
//! ```text
//! omega_1 = dx / y,  omega_2 = x dx / y,
//! r_1 = (f3 x + 2 f4 x^2 + 3 f5 x^3 + 4 f6 x^4) dx / (4y),
//! r_2 = (f5 x^2 + 2 f6 x^3) dx / (4y).
//! ```
//!
//! Branch points are ordered by `(Re, Im)` into `e_1, ..., e_6`. The cycle
//! `c_k` encircles the segment `[e_k, e_{k+1}]`, so its period is twice the
//! integral along the segment on a branch of `y` that is continuous there.
//! The polyline `e_1 ... e_6` is monotone in the real part, hence simple, and
//! only consecutive cycles meet. Their intersection numbers are read off from
//! the local picture of the double cover at the shared branch point.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quadrature::gauss_chebyshev;
use super::roots::poly_roots;
use super::NumericConfig;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::poly::Sextic;
use crate::scalar::C64;

/// Evaluators of the four differentials at a point `(x, y)` per unit `dx`.
#[derive(Clone, Debug)]
pub struct Differentials {
    f: Sextic<C64>,
}

pub fn differentials(f: &Sextic<C64>) -> Differentials {
    Differentials { f: f.clone() }
}

impl Differentials {
    pub fn omega1(&self, _x: C64, y: C64) -> C64 {
        1.0 / y
    }

    pub fn omega2(&self, x: C64, y: C64) -> C64 {
        x / y
    }

    /// `f3 x + 2 f4 x^2 + 3 f5 x^3 + 4 f6 x^4`.
    pub fn r1_numerator(&self, x: C64) -> C64 {
        let c = |j: usize| *self.f.coeff(j);
        x * (c(3) + x * (2.0 * c(4) + x * (3.0 * c(5) + x * 4.0 * c(6))))
    }

    /// `f5 x^2 + 2 f6 x^3`.
    pub fn r2_numerator(&self, x: C64) -> C64 {
        let c = |j: usize| *self.f.coeff(j);
        x * x * (c(5) + 2.0 * c(6) * x)
    }

    pub fn r1(&self, x: C64, y: C64) -> C64 {
        self.r1_numerator(x) / (4.0 * y)
    }

    pub fn r2(&self, x: C64, y: C64) -> C64 {
        self.r2_numerator(x) / (4.0 * y)
    }

    /// Numerators of `(omega_1, omega_2, r_1, r_2)` over the common `y`.
    fn numerators(&self, x: C64) -> [C64; 4] {
        [
            C64::new(1.0, 0.0),
            x,
            self.r1_numerator(x) / 4.0,
            self.r2_numerator(x) / 4.0,
        ]
    }
}

/// Ordered roots of a degree-6 polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoints {
    pub lead: C64,
    pub e: [C64; 6],
}

impl BranchPoints {
    pub fn new(f: &Sextic<C64>, cfg: &NumericConfig) -> Result<Self> {
        if f.degree() != Some(6) {
            return Err(Error::UnsupportedDegree(format!(
                "numeric periods need degree 6, got {:?}",
                f.degree()
            )));
        }
        let mut r = poly_roots(&f.to_poly());
        let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
        // Snap real parts so that nearly vertical neighbours order by Im.
        let snap = 1e-9 * scale;
        r.sort_by(|a, b| {
            let ka = (a.re / snap).round();
            let kb = (b.re / snap).round();
            ka.total_cmp(&kb).then(a.im.total_cmp(&b.im))
        });
        let e: [C64; 6] = r.try_into().expect("six roots");
        let bp = BranchPoints { lead: *f.coeff(6), e };
        let sep = bp.min_separation();
        if sep < cfg.branch_separation * scale {
            return Err(Error::IllConditioned(format!(
                "branch points {sep:e} apart"
            )));
        }
        Ok(bp)
    }

    pub fn scale(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    pub fn min_separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..6 {
            for j in 0..i {
                m = m.min((self.e[i] - self.e[j]).norm());
            }
        }
        m
    }

    /// `lead * prod (x - e_j)`.
    pub fn eval(&self, x: C64) -> C64 {
        self.e.iter().fold(self.lead, |acc, e| acc * (x - e))
    }

    /// `f'(e_k)`.
    pub fn derivative_at(&self, k: usize) -> C64 {
        (0..6)
            .filter(|&j| j != k)
            .fold(self.lead, |acc, j| acc * (self.e[k] - self.e[j]))
    }
}

/// Square root whose cut is the ray in direction `phi + pi`.
pub(crate) fn csqrt_rot(w: C64, phi: f64) -> C64 {
    C64::from_polar(1.0, phi / 2.0) * (w * C64::from_polar(1.0, -phi)).sqrt()
}

/// A branch of `y` along `[a, b]` with both endpoints branch points. The
/// cuts of the remaining factors point away from the midpoint, so they never
/// meet the segment.
struct SegmentBranch {
    a: C64,
    d: C64,
    pre: C64,
    others: Vec<(C64, f64)>,
}

impl SegmentBranch {
    fn new(bp: &BranchPoints, k0: usize, k1: usize) -> Self {
        let (a, b) = (bp.e[k0], bp.e[k1]);
        let d = b - a;
        let mid = (a + b) / 2.0;
        let others = (0..6)
            .filter(|&j| j != k0 && j != k1)
            .map(|j| (bp.e[j], (mid - bp.e[j]).arg()))
            .collect();
        SegmentBranch {
            a,
            d,
            pre: bp.lead.sqrt() * d.sqrt() * (-d).sqrt(),
            others,
        }
    }

    /// `y / sqrt(s (1 - s))` where `x = a + s d`.
    fn reduced(&self, x: C64) -> C64 {
        self.others
            .iter()
            .fold(self.pre, |acc, &(e, phi)| acc * csqrt_rot(x - e, phi))
    }

    fn y(&self, x: C64) -> C64 {
        let s = (x - self.a) / self.d;
        self.reduced(x) * (s * (1.0 - s)).sqrt()
    }

    /// Integrals of the four differentials from `a` to `b`, Gauss-Chebyshev
    /// with doubling until two successive rules agree to `tol`.
    fn integrals(&self, diff: &Differentials, tol: f64) -> Result<[C64; 4]> {
        let rule = |n: usize| -> [C64; 4] {
            let mut acc = [C64::new(0.0, 0.0); 4];
            for s in gauss_chebyshev(n) {
                let x = self.a + self.d * s;
                let w = self.d / self.reduced(x);
                for (a, v) in acc.iter_mut().zip(diff.numerators(x)) {
                    *a += v * w;
                }
            }
            acc.map(|v| v * (PI / n as f64))
        };
        let mut n = 32;
        let mut prev = rule(n);
        while n < 1 << 20 {
            n *= 2;
            let cur = rule(n);
            let scale = cur.iter().map(|v| v.norm()).fold(f64::MIN_POSITIVE, f64::max);
            let err = (0..4).map(|k| (cur[k] - prev[k]).norm()).fold(0.0, f64::max);
            if err <= tol * scale {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::PrecisionLoss("segment quadrature did not converge".into()))
    }
}

/// Raw cycle data and the chosen symplectic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Homology {
    pub branch_points: BranchPoints,
    /// Periods of `(omega_1, omega_2)` over `c_1, ..., c_4`.
    pub cycle_periods: [[C64; 2]; 4],
    /// `eta = -int (r_1, r_2)` over `c_1, ..., c_4`.
    pub cycle_etas: [[C64; 2]; 4],
    /// `int_{e_1}^{e_j} (omega_1, omega_2)` along the polyline, one sheet
    /// per segment; well defined modulo periods.
    pub weierstrass: [[C64; 2]; 6],
    /// `c_i . c_j`.
    pub intersection: [[i64; 4]; 4],
    /// Coordinates of `a_1, a_2, b_1, b_2` in the cycles `c_k`.
    pub basis: [[i64; 4]; 4],
}

impl Homology {
    pub fn period(&self, v: &[i64; 4]) -> [C64; 2] {
        combine(&self.cycle_periods, v)
    }

    pub fn eta(&self, v: &[i64; 4]) -> [C64; 2] {
        combine(&self.cycle_etas, v)
    }

    pub fn pairing(&self, u: &[i64; 4], v: &[i64; 4]) -> i64 {
        let mut s = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += u[i] * self.intersection[i][j] * v[j];
            }
        }
        s
    }

    /// Whether `basis` is symplectic for `intersection`.
    pub fn basis_is_symplectic(&self) -> bool {
        let b = &self.basis;
        (0..4).all(|i| (0..4).all(|j| self.pairing(&b[i], &b[j]) == standard_form(i, j)))
    }
}

fn combine(cols: &[[C64; 2]; 4], v: &[i64; 4]) -> [C64; 2] {
    let mut out = [C64::new(0.0, 0.0); 2];
    for k in 0..4 {
        for (o, c) in out.iter_mut().zip(cols[k]) {
            *o += c * v[k] as f64;
        }
    }
    out
}

/// Entry `(i, j)` of `[[0, I], [-I, 0]]`.
pub(crate) fn standard_form(i: usize, j: usize) -> i64 {
    match (i, j) {
        (0, 2) | (1, 3) => 1,
        (2, 0) | (3, 1) => -1,
        _ => 0,
    }
}

/// Periods in a symplectic basis `a_1, a_2, b_1, b_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    pub f: Sextic<C64>,
    pub a: Mat2<C64>,
    pub b: Mat2<C64>,
    pub eta_a: Mat2<C64>,
    pub eta_b: Mat2<C64>,
    pub omega: Mat2<C64>,
    pub homology: Homology,
    pub precision_bits: u32,
}

/// Relative residuals of the Legendre relations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegendreResiduals {
    /// `B eta_A^T - A eta_B^T - 2 pi i I`.
    pub legendre: f64,
    /// Asymmetry of `eta_A eta_B^T`.
    pub eta_sym: f64,
    /// Asymmetry of `eta_A^T A`.
    pub eta_a_sym: f64,
    /// Asymmetry of `eta_B^T B`.
    pub eta_b_sym: f64,
}

impl LegendreResiduals {
    pub fn max(&self) -> f64 {
        self.legendre.max(self.eta_sym).max(self.eta_a_sym).max(self.eta_b_sym)
    }
}

fn asym(m: &Mat2<C64>) -> f64 {
    m.sub(&m.transpose()).max_magnitude() / m.max_magnitude().max(f64::MIN_POSITIVE)
}

impl PeriodData {
    pub fn from_homology(f: &Sextic<C64>, homology: Homology, precision_bits: u32) -> Result<Self> {
        if !homology.basis_is_symplectic() {
            return Err(Error::BasisSearchFailed("basis is not symplectic".into()));
        }
        let col = |v: [C64; 2], w: [C64; 2]| Mat2::from_columns(&[v, w]);
        let bs = &homology.basis;
        let a = col(homology.period(&bs[0]), homology.period(&bs[1]));
        let b = col(homology.period(&bs[2]), homology.period(&bs[3]));
        let eta_a = col(homology.eta(&bs[0]), homology.eta(&bs[1]));
        let eta_b = col(homology.eta(&bs[2]), homology.eta(&bs[3]));
        let omega = a.inverse()?.mul(&b);
        let pd = PeriodData { f: f.clone(), a, b, eta_a, eta_b, omega, homology, precision_bits };
        if asym(&pd.omega) > 1e-6 || pd.im_omega_min_eigenvalue() <= 0.0 {
            return Err(Error::IllConditioned(
                "period matrix fails the Riemann relations".into(),
            ));
        }
        Ok(pd)
    }

    /// The same periods in another symplectic basis.
    pub fn rebased(&self, basis: [[i64; 4]; 4]) -> Result<Self> {
        let h = Homology { basis, ..self.homology.clone() };
        Self::from_homology(&self.f, h, self.precision_bits)
    }

    /// Columns `a_1, a_2, b_1, b_2`.
    pub fn generators(&self) -> [[C64; 2]; 4] {
        [self.a.column(0), self.a.column(1), self.b.column(0), self.b.column(1)]
    }

    /// `eta` of the generators, in the same order.
    pub fn generator_etas(&self) -> [[C64; 2]; 4] {
        [
            self.eta_a.column(0),
            self.eta_a.column(1),
            self.eta_b.column(0),
            self.eta_b.column(1),
        ]
    }

    pub fn legendre_residuals(&self) -> LegendreResiduals {
        let two_pi_i = C64::new(0.0, 2.0 * PI);
        let l = self
            .b
            .mul(&self.eta_a.transpose())
            .sub(&self.a.mul(&self.eta_b.transpose()))
            .sub(&Mat2::identity().scale(&two_pi_i));
        LegendreResiduals {
            legendre: l.max_magnitude() / two_pi_i.norm(),
            eta_sym: asym(&self.eta_a.mul(&self.eta_b.transpose())),
            eta_a_sym: asym(&self.eta_a.transpose().mul(&self.a)),
            eta_b_sym: asym(&self.eta_b.transpose().mul(&self.b)),
        }
    }

    pub fn omega_asymmetry(&self) -> f64 {
        asym(&self.omega)
    }

    /// Smaller eigenvalue of the symmetrized `Im Omega`.
    pub fn im_omega_min_eigenvalue(&self) -> f64 {
        let m = |i: usize, j: usize| (self.omega.0[i][j].im + self.omega.0[j][i].im) / 2.0;
        min_eig_sym2(m(0, 0), m(0, 1), m(1, 1))
    }

    /// `eta_A A^{-1}`, symmetric for a genuine period matrix.
    pub fn kappa(&self) -> Result<Mat2<C64>> {
        Ok(self.eta_a.mul(&self.a.inverse()?))
    }
}

pub(crate) fn min_eig_sym2(a: f64, b: f64, c: f64) -> f64 {
    let m = (a + c) / 2.0;
    let r = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    m - r
}

/// Periods of `f` in the symplectic basis built from consecutive cycles.
pub fn compute_periods(f: &Sextic<C64>, cfg: &NumericConfig) -> Result<PeriodData> {
    let bp = BranchPoints::new(f, cfg)?;
    let diff = differentials(f);
    let tol = cfg.tol();
    let branches: Vec<SegmentBranch> = (0..5).map(|k| SegmentBranch::new(&bp, k, k + 1)).collect();
    let mut cycle_periods = [[C64::new(0.0, 0.0); 2]; 4];
    let mut cycle_etas = [[C64::new(0.0, 0.0); 2]; 4];
    let mut weierstrass = [[C64::new(0.0, 0.0); 2]; 6];
    for (k, br) in branches.iter().enumerate() {
        let i = br.integrals(&diff, tol)?;
        weierstrass[k + 1] = [weierstrass[k][0] + i[0], weierstrass[k][1] + i[1]];
        if k < 4 {
            cycle_periods[k] = [2.0 * i[0], 2.0 * i[1]];
            cycle_etas[k] = [-2.0 * i[2], -2.0 * i[3]];
        }
    }
    let intersection = intersection_matrix(&bp, &branches)?;
    let basis = tridiagonal_symplectic(&intersection)?;
    let homology = Homology {
        branch_points: bp,
        cycle_periods,
        cycle_etas,
        weierstrass,
        intersection,
        basis,
    };
    PeriodData::from_homology(f, homology, cfg.precision_bits)
}

/// Near the shared branch point `e`, `y = sqrt(f'(e)) t` with `t^2 = x - e`.
/// Each segment branch selects one determination of `t` along its incoming
/// or outgoing ray; the sign of the crossing follows from the angles of the
/// two lifted rays in the `t`-plane.
fn intersection_matrix(bp: &BranchPoints, br: &[SegmentBranch]) -> Result<[[i64; 4]; 4]> {
    let mut j = [[0i64; 4]; 4];
    for k in 0..3 {
        let ev = bp.e[k + 1];
        let c = bp.derivative_at(k + 1).sqrt();
        let (din, dout) = (bp.e[k] - ev, bp.e[k + 2] - ev);
        let dl = 1e-6 * din.norm().min(dout.norm());
        let lift = |branch: &SegmentBranch, dir: C64| -> Result<(f64, f64)> {
            let th = dir.arg();
            let x = ev + dir / dir.norm() * dl;
            let ratio = branch.y(x) / c / (C64::from_polar(dl.sqrt(), th / 2.0));
            if (ratio.norm() - 1.0).abs() > 1e-2 {
                return Err(Error::IllConditioned("local branch model failed".into()));
            }
            let sheet = if (ratio - 1.0).norm() < 0.1 { 0.0 } else { 1.0 };
            Ok((th, sheet))
        };
        let (th_in, sig) = lift(&br[k], din)?;
        let (th_out, tau) = lift(&br[k + 1], dout)?;
        let a = th_in / 2.0 + sig * PI + PI;
        let b = th_out / 2.0 + tau * PI;
        let s = (b - a).sin();
        if s.abs() < 1e-9 {
            return Err(Error::IllConditioned("tangent cycles".into()));
        }
        let s = s.signum() as i64;
        j[k][k + 1] = s;
        j[k + 1][k] = -s;
    }
    Ok(j)
}

/// For `J` tridiagonal with off-diagonal signs `a, b, c`:
/// `a_1 = c_1, b_1 = a c_2, a_2 = c_3 + ab c_1, b_2 = c c_4`.
fn tridiagonal_symplectic(j: &[[i64; 4]; 4]) -> Result<[[i64; 4]; 4]> {
    let (a, b, c) = (j[0][1], j[1][2], j[2][3]);
    let basis = [[1, 0, 0, 0], [a * b, 0, 1, 0], [0, a, 0, 0], [0, 0, 0, c]];
    let h = Homology {
        branch_points: BranchPoints { lead: C64::new(1.0, 0.0), e: [C64::new(0.0, 0.0); 6] },
        cycle_periods: [[C64::new(0.0, 0.0); 2]; 4],
        cycle_etas: [[C64::new(0.0, 0.0); 2]; 4],
        weierstrass: [[C64::new(0.0, 0.0); 2]; 6],
        intersection: *j,
        basis,
    };
    if h.basis_is_symplectic() {
        Ok(basis)
    } else {
        Err(Error::BasisSearchFailed("intersection matrix is not unimodular".into()))
    }
}
