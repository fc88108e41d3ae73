//! Dense univariate polynomials of small degree and the sextic curve model.

use crate::error::{Error, Result};
use crate::quad::Quad;
use num_traits::Zero;

use crate::scalar::{Rational, Scalar};

/// Dense polynomial, coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![T::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    /// Monic-free product `lead * prod (x - r)`.
    pub fn from_roots(lead: T, roots: &[T]) -> Self {
        let mut p = Poly::new(vec![lead]);
        for r in roots {
            p = p.mul(&Poly::new(vec![-r.clone(), T::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.clone() * T::from_i64(j as i64))
                .collect(),
        )
    }

    /// Euclidean division. Errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            // Exact cancellation of the leading term, also in floating point.
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient of an exact division. For approximate fields the remainder is
    /// compared against `tol` relative to the dividend.
    pub fn exact_div(&self, divisor: &Self, tol: f64) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        let scale = self.max_magnitude();
        if r.coeffs.iter().all(|c| c.is_negligible(scale, tol)) {
            Ok(q)
        } else {
            Err(Error::FactorMismatch(
                "divisor does not divide the polynomial".into(),
            ))
        }
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_c64(&self) -> Poly<crate::scalar::C64> {
        self.map(|c| c.to_c64())
    }
}

impl Poly<Rational> {
    /// Monic gcd over the rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(<Rational as num_traits::One>::one() / lead))
    }

    /// All rational roots with multiplicity, found from floating
    /// approximations and confirmed by exact deflation. Returns the deflated
    /// cofactor alongside.
    pub fn rational_roots(&self) -> (Vec<Rational>, Poly<Rational>) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut rest = self.clone();
        let mut found = Vec::new();
        loop {
            let Some(deg) = rest.degree() else { break };
            if deg == 0 {
                break;
            }
            // Clear denominators: an integer polynomial's rational root u/v
            // has v dividing the leading coefficient.
            let lcm = rest
                .coeffs
                .iter()
                .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
            let lead_int = (rest.leading() * Rational::from_integer(lcm)).to_integer();
            let approx = crate::numeric::roots::poly_roots(&rest.to_c64());
            let mut hit = None;
            for z in approx {
                if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                    continue;
                }
                if let Some(cand) = crate::scalar::round_to_denominator(z.re, &lead_int) {
                    if rest.eval(&cand).is_zero() {
                        hit = Some(cand);
                        break;
                    }
                }
            }
            match hit {
                Some(root) => {
                    let lin = Poly::new(vec![-root.clone(), <Rational as num_traits::One>::one()]);
                    rest = rest.div_rem(&lin).expect("nonzero").0;
                    found.push(root);
                }
                None => break,
            }
        }
        (found, rest)
    }
}

impl<T: Scalar> From<&Quad<T>> for Poly<T> {
    fn from(q: &Quad<T>) -> Self {
        Poly::new(q.coeffs().to_vec())
    }
}

/// Polynomial of degree at most six: the model `y^2 = f(x)` of the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Sextic<T> {
    coeffs: [T; 7],
}

impl<T: Scalar> Sextic<T> {
    pub fn new(coeffs: [T; 7]) -> Self {
        Sextic { coeffs }
    }

    pub fn from_poly(p: &Poly<T>) -> Result<Self> {
        if p.degree().is_some_and(|d| d > 6) {
            return Err(Error::NotAdmissible(format!(
                "degree {} exceeds 6",
                p.degree().unwrap()
            )));
        }
        Ok(Sextic {
            coeffs: std::array::from_fn(|j| p.coeff(j)),
        })
    }

    pub fn from_slice(c: &[T]) -> Result<Self> {
        Self::from_poly(&Poly::new(c.to_vec()))
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::from_poly(&Poly::from_i64(c))
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[T; 7] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<T> {
        Poly::new(self.coeffs.to_vec())
    }

    pub fn degree(&self) -> Option<usize> {
        self.to_poly().degree()
    }

    pub fn eval(&self, x: &T) -> T {
        self.to_poly().eval(x)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Sextic<U> {
        Sextic {
            coeffs: std::array::from_fn(|j| f(&self.coeffs[j])),
        }
    }

    pub fn to_c64(&self) -> Sextic<crate::scalar::C64> {
        self.map(|c| c.to_c64())
    }
}
