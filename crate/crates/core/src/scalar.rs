//! Coefficient fields shared by the exact and the approximate layers.
//!
//! Everything algebraic in this crate is generic over [`Scalar`]. Two fields
//! implement it: [`Rational`] (arbitrary precision, exact comparisons) and
//! [`C64`] (complex doubles, tolerance-based comparisons).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

pub type Rational = BigRational;
pub type C64 = Complex64;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for fields where equality is decided exactly.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Modulus as a double, used for pivoting and normalization.
    fn magnitude(&self) -> f64;

    /// `|self| <= tol * scale` for approximate fields, `self == 0` for exact ones.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    /// A square root inside the field, when one exists.
    fn try_sqrt(&self) -> Option<Self>;

    fn to_c64(&self) -> C64;

    /// Whether `p` has no repeated roots.
    fn squarefree(p: &Poly<Self>) -> bool;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = num_integer::Roots::sqrt(self.numer());
        let d = num_integer::Roots::sqrt(self.denom());
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn squarefree(p: &Poly<Self>) -> bool {
        p.gcd(&p.derivative()).degree() == Some(0)
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.norm() <= tol * scale.max(f64::MIN_POSITIVE)
    }

    fn try_sqrt(&self) -> Option<Self> {
        Some(self.sqrt())
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn squarefree(p: &Poly<Self>) -> bool {
        let r = crate::numeric::roots::poly_roots(p);
        let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
        r.iter()
            .enumerate()
            .all(|(i, a)| r[..i].iter().all(|b| (a - b).norm() > 1e-7 * scale))
    }
}

/// Default relative tolerance for comparisons in the approximate field.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational \"num/den\": {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical `"num/den"` form; the denominator is always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Best rational with denominator dividing `den` near the real number `x`.
pub(crate) fn round_to_denominator(x: f64, den: &BigInt) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let d = den.to_f64()?;
    let scaled = (x * d).round();
    if !scaled.is_finite() || scaled.abs() > 9.0e15 {
        return None;
    }
    Some(Rational::new(BigInt::from(scaled as i64), den.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let q = parse_rational("-10/4").unwrap();
        assert_eq!(q, rat(-5, 2));
        assert_eq!(format_rational(&q), "-5/2");
        assert_eq!(format_rational(&int(6)), "6/1");
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat(9, 4).try_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-4, 1).try_sqrt(), None);
        assert_eq!(int(0).try_sqrt(), Some(int(0)));
    }

    #[test]
    fn negligible() {
        assert!(!rat(1, 1_000_000_000).is_negligible(1.0, 1.0));
        assert!(C64::new(1e-12, 0.0).is_negligible(1.0, 1e-9));
        assert!(!C64::new(1e-6, 0.0).is_negligible(1.0, 1e-9));
    }
}
