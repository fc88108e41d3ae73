//! Polynomials of degree at most two and the operations of the Richelot
//! construction on them.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// `p0 + p1 x + p2 x^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad<T> {
    c: [T; 3],
}

impl<T: Scalar> Quad<T> {
    pub fn new(p0: T, p1: T, p2: T) -> Self {
        Quad { c: [p0, p1, p2] }
    }

    pub fn from_i64(p0: i64, p1: i64, p2: i64) -> Self {
        Quad::new(T::from_i64(p0), T::from_i64(p1), T::from_i64(p2))
    }

    pub fn from_array(c: [T; 3]) -> Self {
        Quad { c }
    }

    /// `lead * (x - a) * (x - b)`.
    pub fn from_roots(lead: T, a: T, b: T) -> Self {
        Quad::new(
            lead.clone() * a.clone() * b.clone(),
            -(lead.clone() * (a + b)),
            lead,
        )
    }

    pub fn zero() -> Self {
        Quad::new(T::zero(), T::zero(), T::zero())
    }

    pub fn coeffs(&self) -> &[T; 3] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.c[j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        (0..3).rev().find(|&j| !self.c[j].is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        (self.c[2].clone() * x.clone() + self.c[1].clone()) * x.clone() + self.c[0].clone()
    }

    pub fn add(&self, o: &Self) -> Self {
        Quad { c: std::array::from_fn(|j| self.c[j].clone() + o.c[j].clone()) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quad { c: std::array::from_fn(|j| self.c[j].clone() - o.c[j].clone()) }
    }

    pub fn scale(&self, s: &T) -> Self {
        Quad { c: std::array::from_fn(|j| self.c[j].clone() * s.clone()) }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Quad<U> {
        Quad { c: std::array::from_fn(|j| f(&self.c[j])) }
    }

    pub fn to_c64(&self) -> Quad<C64> {
        self.map(|v| v.to_c64())
    }
}

/// `[p, q] = p' q - q' p`.
pub fn bracket<T: Scalar>(p: &Quad<T>, q: &Quad<T>) -> Quad<T> {
    let [p0, p1, p2] = p.c.clone();
    let [q0, q1, q2] = q.c.clone();
    let two = T::from_i64(2);
    Quad::new(
        p1.clone() * q0.clone() - q1.clone() * p0.clone(),
        two * (p2.clone() * q0 - q2.clone() * p0),
        p2 * q1 - q2 * p1,
    )
}

pub fn discr<T: Scalar>(p: &Quad<T>) -> T {
    let [p0, p1, p2] = p.c.clone();
    p1.clone() * p1 - T::from_i64(4) * p0 * p2
}

pub fn res<T: Scalar>(p: &Quad<T>, q: &Quad<T>) -> T {
    let [p0, p1, p2] = p.c.clone();
    let [q0, q1, q2] = q.c.clone();
    let a = p2.clone() * q0.clone() - p0.clone() * q2.clone();
    let b = p2 * q1.clone() - p1.clone() * q2;
    let c = p0 * q1 - p1 * q0;
    a.clone() * a + b * c
}

/// Determinant of the matrix with columns `p`, `q`, `r`.
pub fn delta<T: Scalar>(p: &Quad<T>, q: &Quad<T>, r: &Quad<T>) -> T {
    crate::linalg::det3(&[
        [p.c[0].clone(), q.c[0].clone(), r.c[0].clone()],
        [p.c[1].clone(), q.c[1].clone(), r.c[1].clone()],
        [p.c[2].clone(), q.c[2].clone(), r.c[2].clone()],
    ])
}

/// Element `g0 + g1 x` of degree at most one.
#[derive(Clone, Debug, PartialEq)]
pub struct LinFactor<T> {
    pub g0: T,
    pub g1: T,
}

impl<T: Scalar> LinFactor<T> {
    pub fn new(g0: T, g1: T) -> Result<Self> {
        if g0.is_zero() && g1.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(LinFactor { g0, g1 })
    }

    /// `x - e`.
    pub fn root(e: T) -> Self {
        LinFactor { g0: -e, g1: T::one() }
    }

    /// The constant `1`, whose only root is infinity.
    pub fn infinity() -> Self {
        LinFactor { g0: T::one(), g1: T::zero() }
    }

    pub fn mul(&self, o: &Self) -> Quad<T> {
        Quad::new(
            self.g0.clone() * o.g0.clone(),
            self.g0.clone() * o.g1.clone() + self.g1.clone() * o.g0.clone(),
            self.g1.clone() * o.g1.clone(),
        )
    }

    pub fn to_c64(&self) -> LinFactor<C64> {
        LinFactor { g0: self.g0.to_c64(), g1: self.g1.to_c64() }
    }
}

/// `det [[g0, h0], [g1, h1]]`.
pub fn res1<T: Scalar>(g: &LinFactor<T>, h: &LinFactor<T>) -> T {
    g.g0.clone() * h.g1.clone() - h.g0.clone() * g.g1.clone()
}

/// `x -> (a x + b) / (c x + d)` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Mobius<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        let scale = a.magnitude().max(b.magnitude()).max(c.magnitude()).max(d.magnitude());
        if !(det - T::one()).is_negligible(scale * scale, 1e-12) {
            return Err(Error::MobiusNotUnimodular);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    pub fn translation(t: T) -> Self {
        Mobius { a: T::one(), b: t, c: T::zero(), d: T::one() }
    }

    /// `x -> -1/x`.
    pub fn inversion() -> Self {
        Mobius { a: T::zero(), b: -T::one(), c: T::one(), d: T::zero() }
    }

    pub fn apply(&self, x: &T) -> Option<T> {
        let den = self.c.clone() * x.clone() + self.d.clone();
        if den.is_zero() {
            return None;
        }
        Some((self.a.clone() * x.clone() + self.b.clone()) / den)
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }
}

/// Coefficients of `(cx + d)^2 p((ax + b)/(cx + d))`.
pub fn mobius_act<T: Scalar>(s: &Mobius<T>, p: &Quad<T>) -> Quad<T> {
    let num = LinFactor { g0: s.b.clone(), g1: s.a.clone() };
    let den = LinFactor { g0: s.d.clone(), g1: s.c.clone() };
    den.mul(&den)
        .scale(&p.c[0])
        .add(&num.mul(&den).scale(&p.c[1]))
        .add(&num.mul(&num).scale(&p.c[2]))
}

/// A root on the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjRoot<T> {
    Finite(T),
    Infinity,
    /// `center + sign * sqrt(radicand)` for a radicand without square root
    /// in the field.
    Conjugate { center: T, radicand: T, sign: i8 },
}

impl<T: Scalar> ProjRoot<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjRoot::Infinity)
    }

    /// Complex value, `None` at infinity.
    pub fn to_c64(&self) -> Option<C64> {
        match self {
            ProjRoot::Finite(v) => Some(v.to_c64()),
            ProjRoot::Infinity => None,
            ProjRoot::Conjugate { center, radicand, sign } => {
                Some(center.to_c64() + radicand.to_c64().sqrt() * f64::from(*sign))
            }
        }
    }
}

/// Both roots with multiplicity; infinity fills in for a missing degree.
pub fn roots<T: Scalar>(p: &Quad<T>) -> Result<(ProjRoot<T>, ProjRoot<T>)> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok((ProjRoot::Infinity, ProjRoot::Infinity)),
        Some(1) => Ok((
            ProjRoot::Finite(-p.c[0].clone() / p.c[1].clone()),
            ProjRoot::Infinity,
        )),
        Some(_) => {
            let two_a = T::from_i64(2) * p.c[2].clone();
            let center = -p.c[1].clone() / two_a.clone();
            let radicand = discr(p) / (two_a.clone() * two_a);
            match radicand.try_sqrt() {
                Some(s) => Ok((
                    ProjRoot::Finite(center.clone() + s.clone()),
                    ProjRoot::Finite(center - s),
                )),
                None => Ok((
                    ProjRoot::Conjugate { center: center.clone(), radicand: radicand.clone(), sign: 1 },
                    ProjRoot::Conjugate { center, radicand, sign: -1 },
                )),
            }
        }
    }
}

/// Factors `p = g * h` with `res1(g, h) = delta`, given `delta^2 = discr(p)`.
/// Roots at infinity yield constant factors.
pub fn split_quad<T: Scalar>(p: &Quad<T>, delta: &T) -> Result<(LinFactor<T>, LinFactor<T>)> {
    let scale = p.c.iter().map(|v| v.magnitude()).fold(0.0, f64::max);
    let d = discr(p);
    if !(delta.clone() * delta.clone() - d).is_negligible(scale * scale, 1e-9) {
        return Err(Error::InvalidSigns("delta^2 differs from the discriminant".into()));
    }
    if delta.is_negligible(scale, 1e-12) {
        return Err(Error::InvalidSigns("repeated root".into()));
    }
    let [p0, p1, p2] = p.c.clone();
    let two = T::from_i64(2);
    if !p2.is_negligible(scale, 1e-14) {
        // Roots t = (-p1 -+ delta)/(2 p2); g = p2 (x - t1), h = x - t2 gives
        // res1(g, h) = p2 (t2 - t1).
        let t1 = (-p1.clone() - delta.clone()) / (two.clone() * p2.clone());
        let t2 = (-p1 + delta.clone()) / (two * p2.clone());
        let g = LinFactor { g0: -(p2.clone() * t1), g1: p2 };
        let h = LinFactor::root(t2);
        return Ok((g, h));
    }
    if !p1.is_negligible(scale, 1e-14) {
        // p = p1 x + p0 = (p0 + p1 x) * 1 and res1 = p1 * 0 - 1 * p1 = -p1.
        let lin = LinFactor { g0: p0, g1: p1.clone() };
        let one = LinFactor::infinity();
        if (p1.clone() + delta.clone()).is_negligible(scale, 1e-9) {
            return Ok((lin, one));
        }
        return Ok((one, lin));
    }
    Err(Error::InvalidSigns("repeated root at infinity".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn q(a: i64, b: i64, c: i64) -> Quad<Rational> {
        Quad::from_i64(a, b, c)
    }

    #[test]
    fn bracket_values() {
        assert_eq!(bracket(&q(-1, 0, 1), &q(-4, 0, 1)), q(0, -6, 0));
        assert_eq!(bracket(&q(6, -5, 1), &q(20, -9, 1)), q(-46, 28, -4));
        let p = q(3, -2, 7);
        assert!(bracket(&p, &p).is_zero());
    }

    #[test]
    fn discr_and_res_values() {
        assert_eq!(discr(&q(-1, 0, 1)), int(4));
        assert_eq!(discr(&q(0, 1, 0)), int(1));
        assert_eq!(discr(&Quad::from_roots(int(3), int(2), int(2))), int(0));
        assert_eq!(res(&q(-1, 0, 1), &q(-4, 0, 1)), int(9));
        assert_eq!(discr(&bracket(&q(-1, 0, 1), &q(-4, 0, 1))), int(36));
        let p = q(5, 1, -2);
        assert_eq!(res(&p, &p), int(0));
    }

    #[test]
    fn res1_values() {
        let g = LinFactor::root(int(1));
        let h = LinFactor::new(int(0), int(1)).unwrap();
        assert_eq!(res1(&g, &h), int(-1));
        assert_eq!(res1(&g, &g), int(0));
        let (a, b) = (LinFactor::root(int(2)), LinFactor::root(int(3)));
        assert_eq!(res1(&a, &b).pow(2), discr(&a.mul(&b)));
        assert!(LinFactor::new(int(0), int(0)).is_err());
    }

    #[test]
    fn delta_values() {
        let (p, qq, r) = (q(0, -1, 1), q(6, -5, 1), q(20, -9, 1));
        assert_eq!(delta(&p, &qq, &r), int(32));
        assert_eq!(delta(&p, &qq, &p), int(0));
        assert_eq!(delta(&q(1, 0, 0), &q(0, 1, 0), &q(0, 0, 1)), int(1));
    }

    #[test]
    fn mobius_values() {
        let p = q(3, -1, 4);
        assert_eq!(mobius_act(&Mobius::identity(), &p), p);
        assert_eq!(mobius_act(&Mobius::translation(int(1)), &q(0, 0, 1)), q(1, 2, 1));
        let s = Mobius::inversion();
        let (a, b) = (q(0, -1, 1), q(6, -5, 1));
        assert_eq!(
            mobius_act(&s, &bracket(&a, &b)),
            bracket(&mobius_act(&s, &a), &mobius_act(&s, &b))
        );
        assert!(Mobius::new(int(1), int(1), int(1), int(1)).is_err());
    }

    #[test]
    fn roots_values() {
        let (a, b) = roots(&q(-1, 0, 1)).unwrap();
        assert_eq!((a, b), (ProjRoot::Finite(int(1)), ProjRoot::Finite(int(-1))));
        let (a, b) = roots(&q(-3, 1, 0)).unwrap();
        assert_eq!((a, b), (ProjRoot::Finite(int(3)), ProjRoot::Infinity));
        let (a, b) = roots(&q(5, 0, 0)).unwrap();
        assert_eq!((a, b), (ProjRoot::Infinity, ProjRoot::Infinity));
        assert_eq!(roots(&Quad::<Rational>::zero()), Err(Error::ZeroPolynomial));
        let (a, _) = roots(&q(-2, 0, 1)).unwrap();
        assert!(matches!(a, ProjRoot::Conjugate { .. }));
        assert!((a.to_c64().unwrap().re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn split_matches_sign() {
        for p in [q(0, -1, 1), q(2, -5, 3), q(-3, 2, 0)] {
            for s in [1, -1] {
                let d = discr(&p).try_sqrt().unwrap() * int(s);
                let (g, h) = split_quad(&p, &d).unwrap();
                assert_eq!(g.mul(&h), p);
                assert_eq!(res1(&g, &h), d);
            }
        }
        assert!(split_quad(&q(0, -1, 1), &rat(1, 2)).is_err());
    }
}
