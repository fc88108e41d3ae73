//! The Abel map on pairs of points, with base divisor `2 (e_1)`.
//!
//! Since `e_1` is a Weierstrass point, `2 (e_1)` lies in the canonical class,
//! so `D = (P) + (Q)` is sent to `int_{e_1}^P omega + int_{e_1}^Q omega`.
//! Paths are straight, or bent once when they pass too close to a branch
//! point. Along a path `y` is continued analytically piece by piece: each
//! piece is short compared with its distance to the branch points, so
//! `y(x) = y(x_0) sqrt(f(x) / f(x_0))` with the principal root is continuous
//! on it.

use rand::Rng;

use super::periods::PeriodData;
use super::quadrature::gauss_legendre;
use crate::curve::{CurvePoint, DivisorPair};
use crate::error::{Error, Result};
use crate::poly::Sextic;
use crate::scalar::C64;

const PIECE_NODES: usize = 16;
const MAX_PIECES: usize = 20_000;

/// Abel image of the Weierstrass point `e_j`, integrated along the
/// segments joining it to `e_1`.
pub fn weierstrass_abel(pd: &PeriodData, j: usize) -> [C64; 2] {
    pd.homology.weierstrass[j]
}

/// `int_{e_1}^{P} (omega_1, omega_2)` modulo periods.
pub fn abel_point(pd: &PeriodData, p: &CurvePoint<C64>) -> Result<[C64; 2]> {
    let CurvePoint::Affine { x, y } = *p else {
        return Err(Error::InfinitePoint);
    };
    let bp = &pd.homology.branch_points;
    let e = bp.e;
    let scale = bp.scale();
    let sep = bp.min_separation();
    let (jn, dn) = (0..6)
        .map(|j| (j, (x - e[j]).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("six branch points");
    if dn <= 1e-10 * scale {
        return Ok(weierstrass_abel(pd, jn));
    }
    if dn <= 1e-8 * scale {
        return Err(Error::PathDegeneracy(format!(
            "endpoint within {dn:e} of a branch point"
        )));
    }
    let path = choose_path(&e, x, 0.05 * sep)?;
    let (integral, y_end) = integrate_path(pd, &path)?;
    let sign = if (y_end - y).norm() <= (y_end + y).norm() { 1.0 } else { -1.0 };
    Ok(integral.map(|v| v * sign))
}

/// `A(D)` for `D = (P) + (Q)`.
pub fn abel_pair(pd: &PeriodData, d: &DivisorPair<C64>) -> Result<[C64; 2]> {
    let a = abel_point(pd, &d.first)?;
    let b = abel_point(pd, &d.second)?;
    Ok([a[0] + b[0], a[1] + b[1]])
}

/// Distance from `p` to the segment `[a, b]`.
fn seg_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

/// Polyline from `e_1` to `x` keeping clear of the other branch points.
fn choose_path(e: &[C64; 6], x: C64, clearance: f64) -> Result<Vec<C64>> {
    let start = e[0];
    let ok = |pts: &[C64]| {
        pts.windows(2).enumerate().all(|(leg, w)| {
            (0..6).all(|j| {
                if leg == 0 && j == 0 {
                    return true;
                }
                let need = clearance.min(0.5 * (x - e[j]).norm());
                seg_distance(e[j], w[0], w[1]) >= need
            })
        })
    };
    let straight = vec![start, x];
    if ok(&straight) {
        return Ok(straight);
    }
    let d = x - start;
    let mid = start + d / 2.0;
    for t in [0.5, -0.5, 1.0, -1.0, 0.25, -0.25, 2.0, -2.0] {
        let bent = vec![start, mid + C64::new(0.0, t) * d, x];
        if ok(&bent) {
            return Ok(bent);
        }
    }
    Err(Error::PathDegeneracy("no path clears the branch points".into()))
}

/// Integral of `(dx/y, x dx/y)` along the polyline, starting at the branch
/// point `path[0] = e_1` on an arbitrary sheet, with the final value of `y`.
fn integrate_path(pd: &PeriodData, path: &[C64]) -> Result<([C64; 2], C64)> {
    let bp = &pd.homology.branch_points;
    let e = bp.e;
    let rule = gauss_legendre(PIECE_NODES);
    let dist = |x: C64| e.iter().map(|ej| (x - ej).norm()).fold(f64::INFINITY, f64::min);
    let mut acc = [C64::new(0.0, 0.0); 2];

    // First piece out of e_1: x = e_1 + t^2 h, y = sqrt(lead) sqrt(h) t Q(x)
    // with Q^2 = prod_{j > 1} (x - e_j), so dx / y = 2 sqrt(h) dt / (sqrt(lead) Q).
    let e0 = e[0];
    let leg = path[1] - e0;
    let reach = 0.25 * (1..6).map(|j| (e[j] - e0).norm()).fold(f64::INFINITY, f64::min);
    let len0 = leg.norm().min(reach);
    let h = leg / leg.norm() * len0;
    let q0: C64 = (1..6).map(|j| e0 - e[j]).product();
    let sq0 = q0.sqrt();
    let q_branch = |x: C64| -> C64 {
        let q: C64 = (1..6).map(|j| x - e[j]).product();
        sq0 * (q / q0).sqrt()
    };
    let sl = bp.lead.sqrt();
    let sh = h.sqrt();
    for &(t, w) in &rule {
        let x = e0 + h * t * t;
        let g = 2.0 * sh / (sl * q_branch(x)) * w;
        acc[0] += g;
        acc[1] += g * x;
    }
    let mut xc = e0 + h;
    let mut yc = sl * sh * q_branch(xc);

    let mut pieces = 0;
    for target in &path[1..] {
        loop {
            let rem = *target - xc;
            if rem.norm() <= 1e-15 * bp.scale() {
                break;
            }
            let step = (0.25 * dist(xc)).min(rem.norm());
            let xn = xc + rem / rem.norm() * step;
            let d = xn - xc;
            let fc = bp.eval(xc);
            for &(s, w) in &rule {
                let x = xc + d * s;
                let y = yc * (bp.eval(x) / fc).sqrt();
                let g = d / y * w;
                acc[0] += g;
                acc[1] += g * x;
            }
            yc *= (bp.eval(xn) / fc).sqrt();
            xc = xn;
            pieces += 1;
            if pieces > MAX_PIECES {
                return Err(Error::PathDegeneracy("path needs too many pieces".into()));
            }
        }
    }
    Ok((acc, yc))
}

/// A random pair of affine points with `x` in the box spanned by the branch
/// points, enlarged by `margin` on every side.
pub fn random_divisor(pd: &PeriodData, rng: &mut impl Rng, margin: f64) -> Result<DivisorPair<C64>> {
    let f: &Sextic<C64> = &pd.f;
    let e = pd.homology.branch_points.e;
    let (mut lo, mut hi) = (e[0], e[0]);
    for z in e {
        lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let point = |rng: &mut dyn rand::RngCore| -> Result<CurvePoint<C64>> {
        let x = C64::new(
            rng.gen_range(lo.re - margin..hi.re + margin),
            rng.gen_range(lo.im - margin..hi.im + margin),
        );
        let y = f.eval(&x).sqrt() * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        CurvePoint::new(f, x, y)
    };
    Ok(DivisorPair::new(point(rng)?, point(rng)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{compute_periods, LatticeApprox, NumericConfig};
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pd() -> PeriodData {
        let p = Poly::<C64>::from_roots(C64::new(1.0, 0.0), &[0., 1., 2., 3., 4., 5.].map(|v| C64::new(v, 0.0)));
        compute_periods(&Sextic::from_poly(&p).unwrap(), &NumericConfig::default()).unwrap()
    }

    #[test]
    fn conjugate_pair_is_a_period() {
        let pd = pd();
        let l = LatticeApprox::new(pd.generators(), 1e-6).unwrap();
        let x = C64::new(2.3, 0.7);
        let y = pd.f.eval(&x).sqrt();
        let p = CurvePoint::new(&pd.f, x, y).unwrap();
        let z = abel_pair(&pd, &DivisorPair::new(p.clone(), p.involution())).unwrap();
        assert!(l.contains(&z));
    }

    #[test]
    fn weierstrass_pairs_are_half_periods() {
        let pd = pd();
        let l = LatticeApprox::new(pd.generators(), 1e-6).unwrap();
        for (i, j) in [(0, 3), (1, 2), (4, 5)] {
            let w = |k: usize| CurvePoint::Affine { x: C64::new(k as f64, 0.0), y: C64::new(0.0, 0.0) };
            let z = abel_pair(&pd, &DivisorPair::new(w(i), w(j))).unwrap();
            assert!(l.contains(&z.map(|v| 2.0 * v)));
            assert!(!l.contains(&z));
        }
    }

    #[test]
    fn path_independence() {
        // A point reached around a branch point on either side.
        let pd = pd();
        let l = LatticeApprox::new(pd.generators(), 1e-6).unwrap();
        let x = C64::new(2.5, 0.0);
        let y = pd.f.eval(&x).sqrt();
        let straight = integrate_path(&pd, &[C64::new(0.0, 0.0), x]);
        assert!(matches!(straight, Err(Error::PathDegeneracy(_))));
        let above = integrate_path(&pd, &[C64::new(0.0, 0.0), C64::new(1.2, 1.0), x]).unwrap();
        let below = integrate_path(&pd, &[C64::new(0.0, 0.0), C64::new(1.2, -1.0), x]).unwrap();
        let fix = |(z, ye): ([C64; 2], C64)| {
            let s = if (ye - y).norm() < (ye + y).norm() { 1.0 } else { -1.0 };
            z.map(|v| v * s)
        };
        let (a, b) = (fix(above), fix(below));
        assert!(l.contains(&[a[0] - b[0], a[1] - b[1]]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(random_divisor(&pd, &mut rng, 1.0).is_ok());
        assert!(matches!(
            abel_point(&pd, &CurvePoint::Infinity { branch: 1 }),
            Err(Error::InfinitePoint)
        ));
    }
}
