//! Standard and randomly generated inputs shared by tests, the CLI and the
//! benchmarks.

use rand::Rng;

use crate::curve::{RootedSextic, WPoint};
use crate::quad::{res1, LinFactor, Quad};
use crate::richelot::{FactoredSextic, SignChoice};
use crate::scalar::{int, rat, Rational};
use num_traits::Zero;

/// `p = x^2 - x`, `q = x^2 - 5x + 6`, `r = x^2 - 9x + 20`; roots `0..5` and
/// `Delta = 32`.
pub fn standard() -> FactoredSextic<Rational> {
    FactoredSextic::from_i64([0, -1, 1], [6, -5, 1], [20, -9, 1]).expect("standard fixture")
}

pub fn standard_rooted() -> RootedSextic<Rational> {
    RootedSextic::from_roots(int(1), std::array::from_fn(|k| WPoint::Finite(int(k as i64))))
        .expect("standard fixture")
}

/// `(x^2 - 1)(x^2 - 4)(x^2 - 9)`, which has a decomposition with `Delta = 0`.
pub fn even_roots() -> RootedSextic<Rational> {
    let roots = [-3, -2, -1, 1, 2, 3].map(|v| WPoint::Finite(int(v)));
    RootedSextic::from_roots(int(1), roots).expect("even-root fixture")
}

/// `n / d` with `|n| <= height` and `1 <= d <= height`.
pub fn random_rational(rng: &mut impl Rng, height: i64) -> Rational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height);
    rat(n, d)
}

pub fn random_quad(rng: &mut impl Rng, height: i64) -> Quad<Rational> {
    Quad::new(
        random_rational(rng, height),
        random_rational(rng, height),
        random_rational(rng, height),
    )
}

/// A random admissible triple with `Delta != 0`.
pub fn random_factored(rng: &mut impl Rng, height: i64) -> FactoredSextic<Rational> {
    loop {
        let (p, q, r) = (random_quad(rng, height), random_quad(rng, height), random_quad(rng, height));
        if let Ok(fs) = FactoredSextic::new(p, q, r) {
            return fs;
        }
    }
}

/// A nonzero linear form with coefficients of the given height.
pub fn random_linear(rng: &mut impl Rng, height: i64) -> LinFactor<Rational> {
    loop {
        if let Ok(l) = LinFactor::new(random_rational(rng, height), random_rational(rng, height)) {
            return l;
        }
    }
}

/// Six linear factors with `p = l_0 l_1`, `q = l_2 l_3`, `r = l_4 l_5`
/// forming an admissible triple.
#[derive(Clone, Debug)]
pub struct SplitFixture {
    pub factored: FactoredSextic<Rational>,
    pub linear: [LinFactor<Rational>; 6],
}

impl SplitFixture {
    /// `delta_p = res1(l_0, l_1)` and so on, so `delta_p^2 = Discr(p)`.
    pub fn signs(&self) -> SignChoice<Rational> {
        let l = &self.linear;
        SignChoice { dp: res1(&l[0], &l[1]), dq: res1(&l[2], &l[3]), dr: res1(&l[4], &l[5]) }
    }
}

/// A triple of products of random linear factors, so every discriminant is a
/// rational square.
pub fn random_split(rng: &mut impl Rng, height: i64) -> SplitFixture {
    loop {
        let linear: [LinFactor<Rational>; 6] = std::array::from_fn(|_| random_linear(rng, height));
        let p = linear[0].mul(&linear[1]);
        let q = linear[2].mul(&linear[3]);
        let r = linear[4].mul(&linear[5]);
        if let Ok(factored) = FactoredSextic::new(p, q, r) {
            return SplitFixture { factored, linear };
        }
    }
}

/// Real roots as `f64`, the usual input for numeric suites.
pub fn from_real_roots(lead: f64, roots: [f64; 6]) -> Option<FactoredSextic<crate::scalar::C64>> {
    let c = |v: f64| crate::scalar::C64::new(v, 0.0);
    let q = |a: f64, b: f64| Quad::from_roots(c(1.0), c(a), c(b));
    let p = Quad::from_roots(c(lead), c(roots[0]), c(roots[1]));
    FactoredSextic::new(p, q(roots[2], roots[3]), q(roots[4], roots[5])).ok()
}

/// Whether every coefficient of the triple is a rational of the given height.
pub fn within_height(fs: &FactoredSextic<Rational>, height: i64) -> bool {
    let h = num_bigint::BigInt::from(height);
    [&fs.p, &fs.q, &fs.r].iter().all(|g| {
        g.coeffs().iter().all(|c| c.numer().magnitude() <= h.magnitude() && *c.denom() <= h)
    }) && !fs.delta.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::discr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_values() {
        assert_eq!(standard().delta, int(32));
        assert_eq!(standard_rooted().f, standard().f);
    }

    #[test]
    fn random_fixtures_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            assert!(within_height(&random_factored(&mut rng, 100), 100));
            let s = random_split(&mut rng, 9);
            let fs = &s.factored;
            let sg = s.signs();
            assert_eq!(sg.dp.clone() * sg.dp.clone(), discr(&fs.p));
            assert!(SignChoice::new(fs, sg.dp, sg.dq, sg.dr).is_ok());
        }
    }
}
