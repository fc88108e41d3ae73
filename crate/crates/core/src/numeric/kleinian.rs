//! The normalized basis `S, S22, S12, S11` of weight-2 Kleinian functions.
//!
//! With `kappa = eta_A A^{-1}` the transform
//! `T(phi)(z) = exp(z^T kappa z) phi(A^{-1} z)` carries second-order theta
//! functions for `Omega = A^{-1} B` into the space of entire functions with
//! `F(z + w) = exp(2 eta(w)^T (z + w/2)) F(z)` for periods `w`. The basis
//! `psi_j(u) = theta[alpha_j; 0](2u, 2 Omega)`, `2 alpha_j` running over
//! `{0, 1}^2`, is transformed and then recombined so that
//!
//! ```text
//! S = z1^2 + ..., S22 = 2 z1 z2 + ..., S12 = -z2^2 + ..., S11 = 1 + ...
//! ```
//!
//! The second-order jets at the origin are computed from the differentiated
//! theta series, so no step sizes are involved.

use rand::Rng;
use serde::Serialize;

use super::abel::abel_pair;
use super::periods::PeriodData;
use super::theta::{ThetaChar, ThetaSeries};
use super::NumericConfig;
use crate::curve::{xi_coords, DivisorPair};
use crate::error::{Error, Result};
use crate::linalg::{projective_distance, Mat, Mat2, Mat4, Vec4};
use crate::richelot::{FactoredSextic, RichelotData};
use crate::scalar::C64;

fn alphas() -> [ThetaChar; 4] {
    [
        ThetaChar::new([0, 0], [0, 0]),
        ThetaChar::new([1, 0], [0, 0]),
        ThetaChar::new([0, 1], [0, 0]),
        ThetaChar::new([1, 1], [0, 0]),
    ]
}

fn quad_form(m: &Mat2<C64>, z: &[C64; 2]) -> C64 {
    let mz = m.mul_vec(z);
    z[0] * mz[0] + z[1] * mz[1]
}

/// `T(phi)` for the periods `pd`.
pub fn t_iso<F>(pd: &PeriodData, phi: F) -> Result<impl Fn(&[C64; 2]) -> C64>
where
    F: Fn(&[C64; 2]) -> C64,
{
    let a_inv = pd.a.inverse()?;
    let kappa = pd.eta_a.mul(&a_inv);
    Ok(move |z: &[C64; 2]| quad_form(&kappa, z).exp() * phi(&a_inv.mul_vec(z)))
}

/// Achieved accuracy of a basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Largest deviation of the second-order jets from the prescribed ones.
    pub taylor_residual: f64,
    /// Condition number of the jet matrix.
    pub condition: f64,
    /// Relative quasi-periodicity defect at a sample point, over the four
    /// generators.
    pub quasi_periodicity: f64,
    /// Asymmetry of `kappa`.
    pub kappa_asymmetry: f64,
}

/// Evaluator of `(S, S22, S12, S11)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SBasis {
    a_inv: Mat2<C64>,
    kappa: Mat2<C64>,
    series: ThetaSeries,
    /// Row `i` expresses the `i`-th function in the transformed `psi_j`.
    coeffs: Mat4<C64>,
    tol: f64,
    pub certificate: Certificate,
}

pub fn build_s_basis(pd: &PeriodData, cfg: &NumericConfig) -> Result<SBasis> {
    let tol = cfg.tol().min(1e-13);
    let a_inv = pd.a.inverse()?;
    let kappa = pd.eta_a.mul(&a_inv);
    let two_omega = pd.omega.scale(&C64::new(2.0, 0.0));
    let series = ThetaSeries::new(&two_omega, tol)?;

    // Jet rows: coefficients of (1, z1^2, z1 z2, z2^2) of exp(z^T kappa z) psi_j(z).
    let zero = [C64::new(0.0, 0.0); 2];
    let four = C64::new(4.0, 0.0);
    let rows: [[C64; 4]; 4] = alphas().map(|ch| {
        let j = series.jet(&zero, ch);
        let h = kappa
            .scale(&(2.0 * j.value))
            .add(&a_inv.transpose().mul(&j.hess).mul(&a_inv).scale(&four));
        [j.value, h.0[0][0] / 2.0, h.0[0][1], h.0[1][1] / 2.0]
    });
    let m: Mat4<C64> = Mat(rows);
    let target = target_jets();
    let m_inv = m.inverse().map_err(|_| Error::NormalizationSingular("jet matrix".into()))?;
    let condition = m.max_magnitude() * m_inv.max_magnitude();
    if condition > 1e12 {
        return Err(Error::NormalizationSingular(format!("condition {condition:e}")));
    }
    let coeffs = target.mul(&m_inv);
    let taylor_residual = coeffs.mul(&m).sub(&target).max_magnitude();
    let mut sb = SBasis {
        a_inv,
        kappa: kappa.clone(),
        series,
        coeffs,
        tol,
        certificate: Certificate {
            taylor_residual,
            condition,
            quasi_periodicity: f64::NAN,
            kappa_asymmetry: kappa.sub(&kappa.transpose()).max_magnitude()
                / kappa.max_magnitude().max(f64::MIN_POSITIVE),
        },
    };
    let z0 = sample_at(pd, [0.13, -0.21], [0.07, 0.05]).map(|v| v * 0.2);
    sb.certificate.quasi_periodicity = quasi_periodicity_residual(&sb, pd, &z0)?;
    Ok(sb)
}

/// Jets of `S, S22, S12, S11` in the monomials `(1, z1^2, z1 z2, z2^2)`.
fn target_jets() -> Mat4<C64> {
    let c = |v: f64| C64::new(v, 0.0);
    Mat([
        [c(0.0), c(1.0), c(0.0), c(0.0)],
        [c(0.0), c(0.0), c(2.0), c(0.0)],
        [c(0.0), c(0.0), c(0.0), c(-1.0)],
        [c(1.0), c(0.0), c(0.0), c(0.0)],
    ])
}

fn sample_at(pd: &PeriodData, u: [f64; 2], v: [f64; 2]) -> [C64; 2] {
    let c = |x: f64| C64::new(x, 0.0);
    let au = pd.a.mul_vec(&[c(u[0]), c(u[1])]);
    let bv = pd.b.mul_vec(&[c(v[0]), c(v[1])]);
    [au[0] + bv[0], au[1] + bv[1]]
}

impl SBasis {
    /// `psi_j(A^{-1} z)` for the four characteristics.
    fn psi(&self, z: &[C64; 2]) -> [C64; 4] {
        let u = self.a_inv.mul_vec(z);
        let u2 = [2.0 * u[0], 2.0 * u[1]];
        alphas().map(|ch| self.series.eval(&u2, ch))
    }

    /// `(S, S22, S12, S11)(z)`.
    pub fn eval(&self, z: &[C64; 2]) -> Result<Vec4<C64>> {
        let psi = self.psi(z);
        let e = quad_form(&self.kappa, z).exp();
        let v = self.coeffs.mul_vec(&psi).map(|c| c * e);
        let bound: f64 = 1e3
            * self.tol
            * e.norm()
            * (0..4)
                .map(|i| (0..4).map(|j| self.coeffs.0[i][j].norm() * psi[j].norm()).sum::<f64>())
                .fold(0.0, f64::max);
        if v.iter().all(|c| c.norm() <= bound) || v.iter().any(|c| !c.is_finite()) {
            return Err(Error::PrecisionLoss(
                "all four components below the error bound".into(),
            ));
        }
        Ok(v)
    }

    /// `(wp22, wp12, wp11) = (S22, S12, S11) / S`.
    pub fn wp(&self, z: &[C64; 2]) -> Result<[C64; 3]> {
        let s = self.eval(z)?;
        Ok([s[1] / s[0], s[2] / s[0], s[3] / s[0]])
    }

    pub fn kappa(&self) -> &Mat2<C64> {
        &self.kappa
    }
}

/// `(S, S22, S12, S11)(z)`.
pub fn eval_s_vec(sb: &SBasis, z: &[C64; 2]) -> Result<Vec4<C64>> {
    sb.eval(z)
}

/// `max_w |S(z + w) - exp(2 eta(w)^T (z + w/2)) S(z)| / |S(z + w)|` over the
/// generators, with `z = c - w/2` so that both arguments stay moderate.
pub fn quasi_periodicity_residual(sb: &SBasis, pd: &PeriodData, c: &[C64; 2]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (w, eta) in pd.generators().iter().zip(pd.generator_etas()) {
        let z = &[c[0] - w[0] / 2.0, c[1] - w[1] / 2.0];
        let s = sb.eval(z)?;
        let zw = [z[0] + w[0], z[1] + w[1]];
        let lhs = sb.eval(&zw)?;
        let mid = [z[0] + w[0] / 2.0, z[1] + w[1] / 2.0];
        let factor = (2.0 * (eta[0] * mid[0] + eta[1] * mid[1])).exp();
        let scale = lhs.iter().map(|c| c.norm()).fold(f64::MIN_POSITIVE, f64::max);
        let r = (0..4).map(|k| (lhs[k] - factor * s[k]).norm()).fold(0.0, f64::max);
        worst = worst.max(r / scale);
    }
    Ok(worst)
}

/// `n` points `A u + B v` with `u, v` uniform in `[-1/2, 1/2]^2`.
pub fn sample_points(pd: &PeriodData, n: usize, rng: &mut impl Rng) -> Vec<[C64; 2]> {
    (0..n)
        .map(|_| {
            let mut r = || rng.gen_range(-0.5..0.5);
            let u = [r(), r()];
            let v = [r(), r()];
            sample_at(pd, u, v)
        })
        .collect()
}

/// Both sides at one sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleResidual {
    pub z: [[f64; 2]; 2],
    pub lhs: [[f64; 2]; 4],
    pub rhs: [[f64; 2]; 4],
    /// `max_k |lhs_k - rhs_k| / max_k |lhs_k|`.
    pub residual: f64,
    pub projective: f64,
    /// Least-squares `lambda` in `lhs = lambda rhs`, as `|lambda - 1|`.
    pub scalar_discrepancy: f64,
}

fn to_pairs<const N: usize>(v: &[C64; N]) -> [[f64; 2]; N] {
    v.map(|c| [c.re, c.im])
}

fn compare(z: &[C64; 2], lhs: &Vec4<C64>, rhs: &Vec4<C64>) -> SampleResidual {
    let scale = lhs.iter().map(|c| c.norm()).fold(f64::MIN_POSITIVE, f64::max);
    let residual = (0..4).map(|k| (lhs[k] - rhs[k]).norm()).fold(0.0, f64::max) / scale;
    let rr: f64 = rhs.iter().map(|c| c.norm_sqr()).sum();
    let lambda: C64 = (0..4).map(|k| rhs[k].conj() * lhs[k]).sum::<C64>() / rr.max(f64::MIN_POSITIVE);
    SampleResidual {
        z: to_pairs(z),
        lhs: to_pairs(lhs),
        rhs: to_pairs(rhs),
        residual,
        projective: projective_distance(lhs, rhs),
        scalar_discrepancy: (lambda - 1.0).norm(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MainTheoremReport {
    pub samples: Vec<SampleResidual>,
    pub max_residual: f64,
    pub max_projective: f64,
}

/// Compares `S_f(z)` with `-exp(z^T H z) / (32 Delta^3) (s^T A_j s)_j`,
/// `s = S_{f^}(z)`, both bases built over the same `C^2`.
pub fn verify_main_theorem(
    rd: &RichelotData<C64>,
    sb_f: &SBasis,
    sb_hat: &SBasis,
    zs: &[[C64; 2]],
) -> Result<MainTheoremReport> {
    let d3 = rd.delta * rd.delta * rd.delta;
    let mut samples = Vec::with_capacity(zs.len());
    for z in zs {
        let lhs = sb_f.eval(z)?;
        let s = sb_hat.eval(z)?;
        let k = -quad_form(&rd.h, z).exp() / (32.0 * d3);
        let rhs = rd.apply_a(&s).map(|c| c * k);
        samples.push(compare(z, &lhs, &rhs));
    }
    Ok(MainTheoremReport {
        max_residual: samples.iter().map(|s| s.residual).fold(0.0, f64::max),
        max_projective: samples.iter().map(|s| s.projective).fold(0.0, f64::max),
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramReport {
    /// `lhs = S_f(A(D^))`, `rhs = richelot_map(xi(D^))`; only the projective
    /// distance is meaningful.
    pub samples: Vec<SampleResidual>,
    pub max_projective: f64,
}

/// Compares `S_f(A_{f^}(D^))` with the Richelot image of `xi_{f^}(D^)`.
pub fn verify_kummer_diagram(
    fs: &FactoredSextic<C64>,
    sb_f: &SBasis,
    pd_hat: &PeriodData,
    divisors: &[DivisorPair<C64>],
) -> Result<DiagramReport> {
    let mut samples = Vec::with_capacity(divisors.len());
    for d in divisors {
        let z = abel_pair(pd_hat, d)?;
        let lhs = sb_f.eval(&z)?;
        let rhs = fs.richelot_map(&xi_coords(&pd_hat.f, d)?)?;
        samples.push(compare(&z, &lhs, &rhs));
    }
    Ok(DiagramReport {
        max_projective: samples.iter().map(|s| s.projective).fold(0.0, f64::max),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{node_table, NodeLabel, RootedSextic};
    use crate::numeric::{adapted_bases, compute_periods, random_divisor};
    use crate::poly::{Poly, Sextic};
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn standard_pd() -> PeriodData {
        let p = Poly::<C64>::from_roots(C64::new(1.0, 0.0), &[0., 1., 2., 3., 4., 5.].map(|v| C64::new(v, 0.0)));
        compute_periods(&Sextic::from_poly(&p).unwrap(), &NumericConfig::default()).unwrap()
    }

    #[test]
    fn normalization_and_symmetry() {
        let pd = standard_pd();
        let sb = build_s_basis(&pd, &NumericConfig::default()).unwrap();
        assert!(sb.certificate.taylor_residual < 1e-10);
        assert!(sb.certificate.quasi_periodicity < 1e-8, "{:?}", sb.certificate);
        assert!(sb.certificate.kappa_asymmetry < 1e-9);
        let e = 1e-4;
        let z = [C64::new(e, 0.0), C64::new(2.0 * e, 0.0)];
        let s = sb.eval(&z).unwrap();
        let expect = [e * e, 2.0 * e * 2.0 * e, -4.0 * e * e, 1.0];
        for k in 0..4 {
            assert!((s[k] - expect[k]).norm() < 1e-10, "{k}: {:?}", s[k]);
        }
        let z = [C64::new(0.3, 0.1), C64::new(-0.2, 0.4)];
        let mz = [-z[0], -z[1]];
        assert!(projective_distance(&sb.eval(&z).unwrap(), &sb.eval(&mz).unwrap()) < 1e-12);
        let t = t_iso(&pd, |_| C64::new(0.0, 0.0)).unwrap();
        assert_eq!(t(&z), C64::new(0.0, 0.0));
    }

    #[test]
    fn wp_matches_xi() {
        let pd = standard_pd();
        let sb = build_s_basis(&pd, &NumericConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let d = random_divisor(&pd, &mut rng, 1.0).unwrap();
            let z = abel_pair(&pd, &d).unwrap();
            let xi = xi_coords(&pd.f, &d).unwrap();
            assert!(projective_distance(&sb.eval(&z).unwrap(), &xi) < 1e-8);
        }
    }

    #[test]
    fn main_theorem_standard() {
        let fs = FactoredSextic::<Rational>::from_i64([0, -1, 1], [6, -5, 1], [20, -9, 1]).unwrap();
        let cfg = NumericConfig::default();
        let ab = adapted_bases(&fs, &cfg).unwrap();
        let sb_f = build_s_basis(&ab.f, &cfg).unwrap();
        let sb_h = build_s_basis(&ab.hat, &cfg).unwrap();
        let rd = RichelotData::build(&fs.to_c64());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let zs = sample_points(&ab.f, 5, &mut rng);
        let rep = verify_main_theorem(&rd, &sb_f, &sb_h, &zs).unwrap();
        assert!(rep.max_residual < 1e-8, "{}", rep.max_residual);
        // The kernel half-period of p maps to the node of p.
        let z = super::super::abel::weierstrass_abel(&ab.f, 1);
        let rs = RootedSextic::from_sextic(&fs.f).unwrap();
        let nodes = node_table(&rs.to_c64()).unwrap();
        let np = nodes.get(NodeLabel::Pair(0, 1)).unwrap();
        assert!(projective_distance(&sb_f.eval(&z).unwrap(), np) < 1e-8);
    }
}
