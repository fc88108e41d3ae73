//! The curve `y^2 = f(x)` with the xi-functions of a pair of points. Nodes
//! and tropes of the Kummer surface use coordinates `(S : S22 : S12 : S11)`.

use crate::error::{Error, Result};
use crate::linalg::{dot, proj_eq, Vec4};
use crate::poly::{Poly, Sextic};
use crate::quad::{LinFactor, Quad};
use crate::scalar::{Rational, Scalar, C64, DEFAULT_REL_TOL};

/// Degree 5 or 6 and no repeated roots.
pub fn is_admissible<T: Scalar>(f: &Sextic<T>) -> bool {
    let p = f.to_poly();
    matches!(p.degree(), Some(5) | Some(6)) && T::squarefree(&p)
}

/// The symmetric biform `F_f(a, b)`.
pub fn f_pair<T: Scalar>(f: &Sextic<T>, a: &T, b: &T) -> T {
    let c = |j: usize| f.coeff(j).clone();
    let two = T::from_i64(2);
    let s = a.clone() + b.clone();
    let m = a.clone() * b.clone();
    let m2 = m.clone() * m.clone();
    two.clone() * c(0)
        + c(1) * s.clone()
        + two.clone() * c(2) * m.clone()
        + c(3) * m.clone() * s.clone()
        + two.clone() * c(4) * m2.clone()
        + c(5) * m2.clone() * s
        + two * c(6) * m2 * m
}

/// A point of the curve.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<T> {
    Affine { x: T, y: T },
    /// One of the points over `x = infinity`, distinguished by a sign.
    Infinity { branch: i8 },
}

impl<T: Scalar> CurvePoint<T> {
    /// Checks `y^2 = f(x)`, exactly or to the default relative tolerance.
    pub fn new(f: &Sextic<T>, x: T, y: T) -> Result<Self> {
        let lhs = y.clone() * y.clone();
        let rhs = f.eval(&x);
        let scale = lhs.magnitude().max(rhs.magnitude()).max(1.0);
        if !(lhs - rhs).is_negligible(scale, DEFAULT_REL_TOL) {
            return Err(Error::NotOnCurve);
        }
        Ok(CurvePoint::Affine { x, y })
    }

    /// The image under the hyperelliptic involution.
    pub fn involution(&self) -> Self {
        match self {
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y.clone() },
            CurvePoint::Infinity { branch } => CurvePoint::Infinity { branch: -branch },
        }
    }
}

/// An unordered pair of points; equality ignores the order.
#[derive(Clone, Debug)]
pub struct DivisorPair<T> {
    pub first: CurvePoint<T>,
    pub second: CurvePoint<T>,
}

impl<T: Scalar> DivisorPair<T> {
    pub fn new(first: CurvePoint<T>, second: CurvePoint<T>) -> Self {
        DivisorPair { first, second }
    }
}

impl<T: Scalar> PartialEq for DivisorPair<T> {
    fn eq(&self, o: &Self) -> bool {
        (self.first == o.first && self.second == o.second)
            || (self.first == o.second && self.second == o.first)
    }
}

/// `(1 : xi22 : xi12 : xi11)` of a pair of affine points with distinct `x`.
pub fn xi_coords<T: Scalar>(f: &Sextic<T>, d: &DivisorPair<T>) -> Result<Vec4<T>> {
    let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) =
        (&d.first, &d.second)
    else {
        return Err(Error::InfinitePoint);
    };
    let diff = x1.clone() - x2.clone();
    let scale = x1.magnitude().max(x2.magnitude()).max(1.0);
    if diff.is_negligible(scale, 1e-14) {
        return Err(Error::CoincidentX);
    }
    let xi11 = (f_pair(f, x1, x2) - T::from_i64(2) * y1.clone() * y2.clone())
        / (T::from_i64(4) * diff.clone() * diff);
    Ok([T::one(), x1.clone() + x2.clone(), -(x1.clone() * x2.clone()), xi11])
}

/// Node coordinates of the pair of Weierstrass points cut out by `p`, where
/// `f = p g`.
pub fn node<T: Scalar>(f: &Sextic<T>, p: &Quad<T>, g: &Poly<T>) -> Result<Vec4<T>> {
    let prod = Poly::from(p).mul(g);
    let scale = f.to_poly().max_magnitude();
    let diff = prod.sub(&f.to_poly());
    if prod.degree().is_some_and(|d| d > 6) || !diff.coeffs().iter().all(|c| c.is_negligible(scale, 1e-9)) {
        return Err(Error::FactorMismatch("p * g differs from f".into()));
    }
    let [p0, p1, p2] = p.coeffs().clone();
    let last = p2.clone() * p2.clone() * g.coeff(0)
        + p0.clone() * p2.clone() * g.coeff(2)
        + p0.clone() * p0.clone() * g.coeff(4);
    Ok([p2, -p1, -p0, -(last / T::from_i64(4))])
}

pub fn node_zero<T: Scalar>() -> Vec4<T> {
    [T::zero(), T::zero(), T::zero(), T::one()]
}

/// Trope of the Weierstrass point whose `x` is the root of `g0 + g1 x`.
pub fn trope_single<T: Scalar>(w: &LinFactor<T>) -> Vec4<T> {
    let (alpha, beta) = (w.g1.clone(), w.g0.clone());
    [
        beta.clone() * beta.clone(),
        alpha.clone() * beta,
        -(alpha.clone() * alpha),
        T::zero(),
    ]
}

/// Trope of the triple of Weierstrass points given by the roots of `g`, where
/// `f = g h` with both factors of degree at most three.
pub fn trope_triple<T: Scalar>(f: &Sextic<T>, g: &Poly<T>, h: &Poly<T>) -> Result<Vec4<T>> {
    if g.degree().is_some_and(|d| d > 3) || h.degree().is_some_and(|d| d > 3) {
        return Err(Error::FactorMismatch("trope factors must have degree at most 3".into()));
    }
    let scale = f.to_poly().max_magnitude();
    let diff = g.mul(h).sub(&f.to_poly());
    if !diff.coeffs().iter().all(|c| c.is_negligible(scale, 1e-9)) {
        return Err(Error::FactorMismatch("g * h differs from f".into()));
    }
    Ok(trope_triple_unchecked(g, h))
}

/// [`trope_triple`] without checking that `g h = f`.
pub fn trope_triple_unchecked<T: Scalar>(g: &Poly<T>, h: &Poly<T>) -> Vec4<T> {
    let (g0, g1, g2, g3) = (g.coeff(0), g.coeff(1), g.coeff(2), g.coeff(3));
    let (h0, h1, h2, h3) = (h.coeff(0), h.coeff(1), h.coeff(2), h.coeff(3));
    [
        g2 * h0.clone() + g0.clone() * h2,
        g3.clone() * h0 + g0 * h3.clone(),
        -(g3 * h1 + g1 * h3),
        T::from_i64(4),
    ]
}

/// A Weierstrass point by its `x`-coordinate on the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum WPoint<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> WPoint<T> {
    /// `x - e`, or the constant `1` at infinity.
    pub fn lin(&self) -> LinFactor<T> {
        match self {
            WPoint::Finite(e) => LinFactor::root(e.clone()),
            WPoint::Infinity => LinFactor::infinity(),
        }
    }

    pub fn to_c64(&self) -> WPoint<C64> {
        match self {
            WPoint::Finite(e) => WPoint::Finite(e.to_c64()),
            WPoint::Infinity => WPoint::Infinity,
        }
    }
}

/// A sextic with its six Weierstrass points, `f = lead * prod (x - e_i)`;
/// a degree-5 curve carries one point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedSextic<T> {
    pub f: Sextic<T>,
    pub lead: T,
    pub roots: [WPoint<T>; 6],
}

impl<T: Scalar> RootedSextic<T> {
    pub fn from_roots(lead: T, roots: [WPoint<T>; 6]) -> Result<Self> {
        let mut p = Poly::new(vec![lead.clone()]);
        for r in &roots {
            p = p.mul(&lin_poly(&r.lin()));
        }
        let f = Sextic::from_poly(&p)?;
        if !is_admissible(&f) {
            return Err(Error::NotAdmissible("roots must be distinct, at most one infinite".into()));
        }
        Ok(RootedSextic { f, lead, roots })
    }

    /// `lin_i * lin_j`, the quadratic vanishing at the pair.
    pub fn pair_quad(&self, i: usize, j: usize) -> Quad<T> {
        self.roots[i].lin().mul(&self.roots[j].lin())
    }

    /// `lead * prod_{k in idx} lin_k`.
    pub fn sub_product(&self, idx: &[usize], with_lead: bool) -> Poly<T> {
        let init = if with_lead { self.lead.clone() } else { T::one() };
        idx.iter()
            .fold(Poly::new(vec![init]), |acc, &k| acc.mul(&lin_poly(&self.roots[k].lin())))
    }

    pub fn node_of_pair(&self, i: usize, j: usize) -> Result<Vec4<T>> {
        let rest: Vec<usize> = (0..6).filter(|&k| k != i && k != j).collect();
        node(&self.f, &self.pair_quad(i, j), &self.sub_product(&rest, true))
    }

    pub fn to_c64(&self) -> RootedSextic<C64> {
        RootedSextic {
            f: self.f.to_c64(),
            lead: self.lead.to_c64(),
            roots: std::array::from_fn(|k| self.roots[k].to_c64()),
        }
    }
}

impl RootedSextic<Rational> {
    /// Splits an exact sextic whose roots are all rational.
    pub fn from_sextic(f: &Sextic<Rational>) -> Result<Self> {
        if !is_admissible(f) {
            return Err(Error::NotAdmissible("f is not admissible".into()));
        }
        let p = f.to_poly();
        let (mut found, _) = p.rational_roots();
        let need = p.degree().unwrap();
        if found.len() != need {
            return Err(Error::RootsUnavailable(format!(
                "{} of {} roots are rational",
                found.len(),
                need
            )));
        }
        found.sort();
        let mut roots: Vec<WPoint<Rational>> = found.into_iter().map(WPoint::Finite).collect();
        if need == 5 {
            roots.push(WPoint::Infinity);
        }
        Ok(RootedSextic {
            f: f.clone(),
            lead: p.leading(),
            roots: roots.try_into().expect("six roots"),
        })
    }
}

impl RootedSextic<C64> {
    /// Numerical roots sorted by real then imaginary part.
    pub fn from_sextic_numeric(f: &Sextic<C64>) -> Result<Self> {
        if !is_admissible(f) {
            return Err(Error::NotAdmissible("f is not admissible".into()));
        }
        let p = f.to_poly();
        let mut rs = crate::numeric::roots::poly_roots(&p);
        rs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut roots: Vec<WPoint<C64>> = rs.into_iter().map(WPoint::Finite).collect();
        if roots.len() == 5 {
            roots.push(WPoint::Infinity);
        }
        Ok(RootedSextic {
            f: f.clone(),
            lead: p.leading(),
            roots: roots.try_into().expect("six roots"),
        })
    }
}

fn lin_poly<T: Scalar>(l: &LinFactor<T>) -> Poly<T> {
    Poly::new(vec![l.g0.clone(), l.g1.clone()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    Zero,
    Pair(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TropeLabel {
    Single(usize),
    /// A triple containing root 0; it also names the complementary triple.
    Triple([usize; 3]),
}

impl TropeLabel {
    /// Whether the trope contains the node, by the combinatorial rule.
    pub fn contains(&self, n: NodeLabel) -> bool {
        match (self, n) {
            (_, NodeLabel::Zero) => matches!(self, TropeLabel::Single(_)),
            (TropeLabel::Single(k), NodeLabel::Pair(i, j)) => *k == i || *k == j,
            (TropeLabel::Triple(t), NodeLabel::Pair(i, j)) => t.contains(&i) == t.contains(&j),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeTable<T> {
    pub nodes: Vec<(NodeLabel, Vec4<T>)>,
}

impl<T: Scalar> NodeTable<T> {
    pub fn get(&self, label: NodeLabel) -> Option<&Vec4<T>> {
        self.nodes.iter().find(|(l, _)| *l == label).map(|(_, v)| v)
    }

    /// Label of the first node projectively equal to `a`.
    pub fn find(&self, a: &Vec4<T>, tol: f64) -> Option<NodeLabel> {
        self.nodes.iter().find(|(_, v)| proj_eq(v, a, tol)).map(|(l, _)| *l)
    }
}

/// `N0` followed by the 15 pair nodes in lexicographic order.
pub fn node_table<T: Scalar>(rs: &RootedSextic<T>) -> Result<NodeTable<T>> {
    let mut nodes = vec![(NodeLabel::Zero, node_zero())];
    for i in 0..6 {
        for j in i + 1..6 {
            nodes.push((NodeLabel::Pair(i, j), rs.node_of_pair(i, j)?));
        }
    }
    Ok(NodeTable { nodes })
}

/// The six single tropes followed by the ten triple tropes.
pub fn trope_table<T: Scalar>(rs: &RootedSextic<T>) -> Vec<(TropeLabel, Vec4<T>)> {
    let mut out: Vec<(TropeLabel, Vec4<T>)> = (0..6)
        .map(|k| (TropeLabel::Single(k), trope_single(&rs.roots[k].lin())))
        .collect();
    for j in 1..6 {
        for k in j + 1..6 {
            let t = [0, j, k];
            let rest: Vec<usize> = (0..6).filter(|m| !t.contains(m)).collect();
            let g = rs.sub_product(&t, true);
            let h = rs.sub_product(&rest, false);
            out.push((TropeLabel::Triple(t), trope_triple_unchecked(&g, &h)));
        }
    }
    out
}

/// `incidence[t][n]`: whether trope `t` contains node `n`, exactly or to
/// `tol` relative to the magnitudes of both vectors.
pub fn incidence<T: Scalar>(
    nodes: &NodeTable<T>,
    tropes: &[(TropeLabel, Vec4<T>)],
    tol: f64,
) -> Vec<Vec<bool>> {
    tropes
        .iter()
        .map(|(_, t)| {
            nodes
                .nodes
                .iter()
                .map(|(_, n)| {
                    let s = t.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
                        * n.iter().map(|v| v.magnitude()).fold(0.0, f64::max);
                    dot(t, n).is_negligible(s, tol)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::proportional;
    use crate::scalar::{int, rat};

    fn standard() -> RootedSextic<Rational> {
        RootedSextic::from_roots(int(1), std::array::from_fn(|k| WPoint::Finite(int(k as i64)))).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&standard().f));
        assert!(!is_admissible(&Sextic::<Rational>::from_i64(&[0, 0, 1, 0, 0, 0, 1]).unwrap()));
        assert!(!is_admissible(&Sextic::<Rational>::from_i64(&[1, 0, 0, 0, 1]).unwrap()));
        assert!(is_admissible(&standard().f.to_c64()));
    }

    #[test]
    fn f_pair_values() {
        let f = standard().f;
        let (a, b) = (int(-1), int(6));
        assert_eq!(f_pair(&f, &a, &b), f_pair(&f, &b, &a));
        assert_eq!(f_pair(&f, &a, &a), int(2) * f.eval(&a));
        assert_eq!(f_pair(&f, &a, &b), int(5850));
    }

    #[test]
    fn xi_matches_node() {
        let rs = standard();
        let d = DivisorPair::new(
            CurvePoint::new(&rs.f, int(0), int(0)).unwrap(),
            CurvePoint::new(&rs.f, int(1), int(0)).unwrap(),
        );
        let xi = xi_coords(&rs.f, &d).unwrap();
        assert!(proportional(&xi, &rs.node_of_pair(0, 1).unwrap()));
        let swapped = DivisorPair::new(d.second.clone(), d.first.clone());
        assert_eq!(xi_coords(&rs.f, &swapped).unwrap(), xi);
        assert_eq!(swapped, d);
        let p: Quad<Rational> = Quad::from_i64(0, -1, 1);
        assert_eq!(xi[..3], [int(1), int(1), int(0)]);
        assert_eq!(rs.node_of_pair(0, 1).unwrap()[..3], [p.coeff(2).clone(), -p.coeff(1).clone(), -p.coeff(0).clone()]);
        let bad = DivisorPair::new(d.first.clone(), d.first.clone());
        assert_eq!(xi_coords(&rs.f, &bad), Err(Error::CoincidentX));
        let inf = DivisorPair::new(d.first.clone(), CurvePoint::Infinity { branch: 1 });
        assert_eq!(xi_coords(&rs.f, &inf), Err(Error::InfinitePoint));
        assert_eq!(CurvePoint::new(&rs.f, int(6), int(1)), Err(Error::NotOnCurve));
    }

    #[test]
    fn node_factor_mismatch() {
        let rs = standard();
        let p = Quad::from_i64(0, -1, 1);
        assert!(matches!(node(&rs.f, &p, &Poly::one()), Err(Error::FactorMismatch(_))));
        assert_eq!(node_zero::<Rational>(), [int(0), int(0), int(0), int(1)]);
    }

    #[test]
    fn single_trope_through_zero_root() {
        let t = trope_single(&LinFactor::root(int(0)));
        assert_eq!(t, [int(0), int(0), int(-1), int(0)]);
        let n = standard().node_of_pair(0, 1).unwrap();
        assert_eq!(dot(&t, &n), int(0));
    }

    #[test]
    fn configuration_16_6() {
        let rs = standard();
        let nodes = node_table(&rs).unwrap();
        let tropes = trope_table(&rs);
        assert_eq!(tropes.len(), 16);
        for i in 0..16 {
            for j in 0..i {
                assert!(!proportional(&nodes.nodes[i].1, &nodes.nodes[j].1));
            }
        }
        let inc = incidence(&nodes, &tropes, 0.0);
        for (t, row) in tropes.iter().zip(&inc) {
            assert_eq!(row.iter().filter(|&&b| b).count(), 6);
            for (k, &b) in row.iter().enumerate() {
                assert_eq!(b, t.0.contains(nodes.nodes[k].0));
            }
        }
        for k in 0..16 {
            assert_eq!(inc.iter().filter(|r| r[k]).count(), 6);
        }
    }

    #[test]
    fn complementary_triple_same_trope() {
        let rs = standard();
        let g = rs.sub_product(&[0, 2, 4], true);
        let h = rs.sub_product(&[1, 3, 5], false);
        let a = trope_triple(&rs.f, &g, &h).unwrap();
        let b = trope_triple(&rs.f, &h, &g).unwrap();
        assert!(proportional(&a, &b));
        assert!(trope_triple(&rs.f, &g, &g).is_err());
    }

    #[test]
    fn quintic_has_node_at_infinity() {
        let roots = [WPoint::Finite(int(0)), WPoint::Finite(int(1)), WPoint::Finite(int(2)),
            WPoint::Finite(int(3)), WPoint::Finite(rat(1, 2)), WPoint::Infinity];
        let rs = RootedSextic::from_roots(int(2), roots).unwrap();
        assert_eq!(rs.f.degree(), Some(5));
        let nodes = node_table(&rs).unwrap();
        let inc = incidence(&nodes, &trope_table(&rs), 0.0);
        assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 6));
        let again = RootedSextic::from_sextic(&rs.f).unwrap();
        assert_eq!(again.roots[5], WPoint::Infinity);
    }

    #[test]
    fn irrational_roots_unavailable() {
        let f = Sextic::<Rational>::from_poly(
            &Poly::from_i64(&[-2, 0, 1]).mul(&Poly::from_i64(&[0, -1, 0, 1])).mul(&Poly::from_i64(&[-3, 1])),
        )
        .unwrap();
        assert!(matches!(RootedSextic::from_sextic(&f), Err(Error::RootsUnavailable(_))));
    }
}
