//! The Richelot construction and the explicit isogeny of Kummer surfaces.
//!
//! Given `f = p q r` with `Delta(p, q, r) != 0`, the dual curve is
//! `f^ = [q, r][r, p][p, q] / (4 Delta)`. The map of Kummer surfaces
//! `K_{f^} -> K_f` is `a -> D T(C^{-1} a)` in coordinates
//! `(S : S22 : S12 : S11)`, where the columns of `C` are the kernel nodes of
//! `K_{f^}`. Each component of the map is a quadratic form `a^T A_j a`.

use serde::{Deserialize, Serialize};

use crate::curve::{is_admissible, RootedSextic};
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, Mat, Mat2, Mat4, Vec4};
use crate::poly::{Poly, Sextic};
use crate::quad::{bracket, delta, discr, res, split_quad, LinFactor, Quad};
use crate::scalar::{Scalar, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorLabel {
    P,
    Q,
    R,
}

impl FactorLabel {
    pub const ALL: [FactorLabel; 3] = [FactorLabel::P, FactorLabel::Q, FactorLabel::R];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// `f = p q r` with `Delta(p, q, r) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredSextic<T> {
    pub p: Quad<T>,
    pub q: Quad<T>,
    pub r: Quad<T>,
    pub f: Sextic<T>,
    pub delta: T,
}

impl<T: Scalar> FactoredSextic<T> {
    pub fn new(p: Quad<T>, q: Quad<T>, r: Quad<T>) -> Result<Self> {
        let d = delta(&p, &q, &r);
        let scale = [&p, &q, &r]
            .iter()
            .flat_map(|v| v.coeffs().iter().map(|c| c.magnitude()))
            .fold(0.0, f64::max);
        if d.is_negligible(scale.powi(3), 1e-12) {
            return Err(Error::DegenerateDecomposition);
        }
        let prod = Poly::from(&p).mul(&Poly::from(&q)).mul(&Poly::from(&r));
        let f = Sextic::from_poly(&prod)?;
        if !is_admissible(&f) {
            return Err(Error::NotAdmissible("p q r has a repeated root or degree below 5".into()));
        }
        Ok(FactoredSextic { p, q, r, f, delta: d })
    }

    pub fn from_i64(p: [i64; 3], q: [i64; 3], r: [i64; 3]) -> Result<Self> {
        let mk = |c: [i64; 3]| Quad::from_i64(c[0], c[1], c[2]);
        Self::new(mk(p), mk(q), mk(r))
    }

    pub fn factor(&self, l: FactorLabel) -> &Quad<T> {
        match l {
            FactorLabel::P => &self.p,
            FactorLabel::Q => &self.q,
            FactorLabel::R => &self.r,
        }
    }

    /// The triple rotated so that `l` comes first, keeping cyclic order.
    pub fn rotated(&self, l: FactorLabel) -> FactoredSextic<T> {
        let (p, q, r) = match l {
            FactorLabel::P => (&self.p, &self.q, &self.r),
            FactorLabel::Q => (&self.q, &self.r, &self.p),
            FactorLabel::R => (&self.r, &self.p, &self.q),
        };
        FactoredSextic {
            p: p.clone(),
            q: q.clone(),
            r: r.clone(),
            f: self.f.clone(),
            delta: self.delta.clone(),
        }
    }

    pub fn to_c64(&self) -> FactoredSextic<C64> {
        FactoredSextic {
            p: self.p.to_c64(),
            q: self.q.to_c64(),
            r: self.r.to_c64(),
            f: self.f.to_c64(),
            delta: self.delta.to_c64(),
        }
    }

    /// `(p^, q^, r^) = ([q, r], [r, p], [p, q])`.
    pub fn hat_triple(&self) -> (Quad<T>, Quad<T>, Quad<T>) {
        (
            bracket(&self.q, &self.r),
            bracket(&self.r, &self.p),
            bracket(&self.p, &self.q),
        )
    }

    pub fn hat_f(&self) -> Sextic<T> {
        let (ph, qh, rh) = self.hat_triple();
        let prod = Poly::from(&ph).mul(&Poly::from(&qh)).mul(&Poly::from(&rh));
        let s = T::one() / (T::from_i64(4) * self.delta.clone());
        Sextic::from_poly(&prod.scale(&s)).expect("degree at most 6")
    }

    /// `mu_{jklm} = p^_j p_k p_l q_m r_m` plus its two cyclic shifts.
    pub fn mu(&self, j: usize, k: usize, l: usize, m: usize) -> Result<T> {
        if [j, k, l, m].iter().any(|&i| i > 2) {
            return Err(Error::IndexOutOfRange(format!("mu({j},{k},{l},{m})")));
        }
        Ok(self.mu_unchecked(j, k, l, m))
    }

    fn mu_unchecked(&self, j: usize, k: usize, l: usize, m: usize) -> T {
        let (ph, qh, rh) = self.hat_triple();
        let term = |h: &Quad<T>, a: &Quad<T>, b: &Quad<T>, c: &Quad<T>| {
            h.coeff(j).clone()
                * a.coeff(k).clone()
                * a.coeff(l).clone()
                * b.coeff(m).clone()
                * c.coeff(m).clone()
        };
        term(&ph, &self.p, &self.q, &self.r)
            + term(&qh, &self.q, &self.r, &self.p)
            + term(&rh, &self.r, &self.p, &self.q)
    }

    pub fn psi(&self) -> [T; 3] {
        let mu = |j, k, l, m| self.mu_unchecked(j, k, l, m);
        let (p1, q1, r1) = (self.p.coeff(1), self.q.coeff(1), self.r.coeff(1));
        let psi0 = T::from_i64(4) * mu(0, 0, 0, 2) + mu(2, 1, 1, 0) + mu(2, 0, 0, 1);
        let psi1 = -(self.delta.clone() / T::from_i64(2)) * p1.clone() * q1.clone() * r1.clone()
            - mu(1, 0, 2, 1);
        let psi2 = -(T::from_i64(4) * mu(2, 2, 2, 0)) - mu(0, 1, 1, 2) - mu(0, 2, 2, 1);
        [psi0, psi1, psi2]
    }

    fn hat_top_rows(&self) -> [[T; 4]; 3] {
        let (ph, qh, rh) = self.hat_triple();
        let z = T::zero;
        [
            [ph.coeff(2).clone(), qh.coeff(2).clone(), rh.coeff(2).clone(), z()],
            [-ph.coeff(1).clone(), -qh.coeff(1).clone(), -rh.coeff(1).clone(), z()],
            [-ph.coeff(0).clone(), -qh.coeff(0).clone(), -rh.coeff(0).clone(), z()],
        ]
    }

    /// Columns are the nodes `N^_p, N^_q, N^_r, N^_0` of `K_{f^}`.
    pub fn matrix_c(&self) -> Mat4<T> {
        let (ph, qh, rh) = self.hat_triple();
        let s = -(T::one() / (T::from_i64(16) * self.delta.clone()));
        let phi = |a: &Quad<T>, b: &Quad<T>, c: &Quad<T>| {
            let a = |i: usize| a.coeff(i).clone();
            let b = |i: usize| b.coeff(i).clone();
            let c = |i: usize| c.coeff(i).clone();
            s.clone()
                * (a(2) * a(2) * b(0) * c(0)
                    + a(2) * a(0) * (b(0) * c(2) + b(1) * c(1) + b(2) * c(0))
                    + a(0) * a(0) * b(2) * c(2))
        };
        let [r0, r1, r2] = self.hat_top_rows();
        Mat4::from_fn(|i, j| match i {
            0 => r0[j].clone(),
            1 => r1[j].clone(),
            2 => r2[j].clone(),
            _ => match j {
                0 => phi(&ph, &qh, &rh),
                1 => phi(&qh, &rh, &ph),
                2 => phi(&rh, &ph, &qh),
                _ => s.clone(),
            },
        })
    }

    /// Closed-form inverse of [`Self::matrix_c`].
    pub fn matrix_c_inv(&self) -> Mat4<T> {
        let d = self.delta.clone();
        let two = T::from_i64(2);
        let row = |g: &Quad<T>| {
            [
                -(g.coeff(0).clone() / d.clone()),
                -(g.coeff(1).clone() / (two.clone() * d.clone())),
                g.coeff(2).clone() / d.clone(),
                T::zero(),
            ]
        };
        let [psi0, psi1, psi2] = self.psi();
        Mat([
            row(&self.p),
            row(&self.q),
            row(&self.r),
            [psi0, psi1, psi2, -(T::from_i64(16) * d.clone())],
        ])
    }

    pub fn matrix_d(&self) -> Mat4<T> {
        let (ph, qh, rh) = self.hat_triple();
        let d = self.delta.clone();
        let eight = T::from_i64(8);
        let phi = |a: &Quad<T>, ah: &Quad<T>, b: &Quad<T>, c: &Quad<T>| {
            (d.clone() - a.coeff(1).clone() * ah.coeff(1).clone())
                * b.coeff(1).clone()
                * c.coeff(1).clone()
                / eight.clone()
        };
        let [r0, r1, r2] = self.hat_top_rows();
        Mat([
            r0,
            r1,
            r2,
            [
                phi(&self.p, &ph, &self.q, &self.r),
                phi(&self.q, &qh, &self.r, &self.p),
                phi(&self.r, &rh, &self.p, &self.q),
                -(d.clone() / eight.clone()),
            ],
        ])
    }

    /// The quadratic map `T_{p,q,r}`.
    pub fn map_t(&self, b: &Vec4<T>) -> Vec4<T> {
        let d2 = self.delta.clone() * self.delta.clone();
        let d4 = d2.clone() * d2.clone();
        let two = T::from_i64(2);
        let (dp, dq, dr) = (discr(&self.p), discr(&self.q), discr(&self.r));
        let [b0, b1, b2, b3] = b.clone();
        [
            two.clone() * d2.clone() * b0.clone() * b3.clone()
                + two.clone() * d4.clone() * dp.clone() * b1.clone() * b2.clone(),
            two.clone() * d2.clone() * b1.clone() * b3.clone()
                + two.clone() * d4.clone() * dq.clone() * b0.clone() * b2.clone(),
            two.clone() * d2 * b2.clone() * b3.clone() + two * d4.clone() * dr.clone() * b0.clone() * b1.clone(),
            d4 * (dq.clone() * dr.clone() * b0.clone() * b0
                + dp.clone() * dr * b1.clone() * b1
                + dp * dq * b2.clone() * b2)
                + b3.clone() * b3,
        ]
    }

    fn richelot_raw(&self, a: &Vec4<T>) -> Vec4<T> {
        self.matrix_d().mul_vec(&self.map_t(&self.matrix_c_inv().mul_vec(a)))
    }

    /// `a -> D T(C^{-1} a)`, the isogeny `K_{f^} -> K_f` in coordinates.
    pub fn richelot_map(&self, a: &Vec4<T>) -> Result<Vec4<T>> {
        if is_zero_vec(a) {
            return Err(Error::ZeroVector);
        }
        Ok(self.richelot_raw(a))
    }

    /// Symmetric matrices `A_j` with `a^T A_j a` the `j`-th component of the
    /// map, by polarization.
    pub fn extract_a_matrices(&self) -> [Mat4<T>; 4] {
        let (c_inv, d) = (self.matrix_c_inv(), self.matrix_d());
        let eval = |a: &Vec4<T>| d.mul_vec(&self.map_t(&c_inv.mul_vec(a)));
        let e = |k: usize| -> Vec4<T> { std::array::from_fn(|i| if i == k { T::one() } else { T::zero() }) };
        let diag: Vec<Vec4<T>> = (0..4).map(|k| eval(&e(k))).collect();
        let mut out: [Mat4<T>; 4] = std::array::from_fn(|_| Mat4::zero());
        let half = T::one() / T::from_i64(2);
        for k in 0..4 {
            for comp in 0..4 {
                out[comp].0[k][k] = diag[k][comp].clone();
            }
            for l in 0..k {
                let s: Vec4<T> = std::array::from_fn(|i| e(k)[i].clone() + e(l)[i].clone());
                let v = eval(&s);
                for comp in 0..4 {
                    let x = (v[comp].clone() - diag[k][comp].clone() - diag[l][comp].clone()) * half.clone();
                    out[comp].0[k][l] = x.clone();
                    out[comp].0[l][k] = x;
                }
            }
        }
        out
    }

    /// The closed form of the symmetric matrix relating the eta periods.
    pub fn matrix_h(&self) -> Mat2<T> {
        let d = self.delta.clone();
        let (p, q, r) = (&self.p, &self.q, &self.r);
        let c = |g: &Quad<T>, i: usize| g.coeff(i).clone();
        let [psi0, _, psi2] = self.psi();
        let mu1021 = self.mu_unchecked(1, 0, 2, 1);
        let h11 = c(p, 0) * c(q, 1) * c(r, 1) + c(p, 1) * c(q, 0) * c(r, 1) + c(p, 1) * c(q, 1) * c(r, 0)
            + psi0 / d.clone();
        let h12 = -(mu1021 / d.clone());
        let h22 = c(p, 2) * c(q, 1) * c(r, 1) + c(p, 1) * c(q, 2) * c(r, 1) + c(p, 1) * c(q, 1) * c(r, 2)
            - psi2 / d;
        let eight = T::from_i64(8);
        Mat([
            [h11 / eight.clone(), h12.clone() / eight.clone()],
            [h12 / eight.clone(), h22 / eight],
        ])
    }

    /// The constant `c = -16 Delta^3` of the last rows of the `A` matrices.
    pub fn last_row_constant(&self) -> T {
        -(T::from_i64(16) * self.delta.clone().pow(3))
    }

    /// Symmetry of `K_{f^}` induced by translation by the half-period of the
    /// kernel node `N^_l`, normalized with the entry `1` as in the
    /// anti-diagonal form.
    pub fn symmetry_x(&self, l: FactorLabel) -> Mat4<T> {
        let (ph, qh, rh) = self.hat_triple();
        let z = T::zero;
        let o = T::one;
        let m = match l {
            FactorLabel::P => {
                let (a, b) = (res(&ph, &rh), res(&ph, &qh));
                [[z(), z(), z(), o()], [z(), z(), a.clone(), z()], [z(), b.clone(), z(), z()], [a * b, z(), z(), z()]]
            }
            FactorLabel::Q => {
                let (a, b) = (res(&qh, &rh), res(&qh, &ph));
                [[z(), z(), a.clone(), z()], [z(), z(), z(), o()], [b.clone(), z(), z(), z()], [z(), b * a, z(), z()]]
            }
            FactorLabel::R => {
                let (a, b) = (res(&rh, &qh), res(&rh, &ph));
                [[z(), a.clone(), z(), z()], [b.clone(), z(), z(), z()], [z(), z(), z(), o()], [z(), z(), b * a, z()]]
            }
        };
        self.matrix_c().mul(&Mat(m)).mul(&self.matrix_c_inv())
    }

    /// `(Delta^2 d_q d_r, Delta^2 d_r d_p, Delta^2 d_p d_q, 1) C^{-1}`.
    pub fn hat_hyperplane_row(&self, s: &SignChoice<T>) -> Result<Vec4<T>> {
        s.validate(self)?;
        let d2 = self.delta.clone() * self.delta.clone();
        let v = [
            d2.clone() * s.dq.clone() * s.dr.clone(),
            d2.clone() * s.dr.clone() * s.dp.clone(),
            d2 * s.dp.clone() * s.dq.clone(),
            T::one(),
        ];
        Ok(self.matrix_c_inv().vec_mul(&v))
    }

    /// `D (d_p, d_q, d_r, d_p d_q d_r)^T`.
    pub fn trope_vector(&self, s: &SignChoice<T>) -> Result<Vec4<T>> {
        s.validate(self)?;
        let v = [s.dp.clone(), s.dq.clone(), s.dr.clone(), s.dp.clone() * s.dq.clone() * s.dr.clone()];
        Ok(self.matrix_d().mul_vec(&v))
    }

    /// The sign-pattern matrices `U` and `V` with `B^ = U C^{-1}` and
    /// `B^{-1} = D V`.
    pub fn matrices_u_v(&self, s: &SignChoice<T>) -> Result<(Mat4<T>, Mat4<T>)> {
        s.validate(self)?;
        let d2 = self.delta.clone() * self.delta.clone();
        let (dp, dq, dr) = (s.dp.clone(), s.dq.clone(), s.dr.clone());
        let a = d2.clone() * dq.clone() * dr.clone();
        let b = d2.clone() * dp.clone() * dr.clone();
        let c = d2 * dp.clone() * dq.clone();
        let o = T::one;
        let u = Mat([
            [a.clone(), b.clone(), c.clone(), o()],
            [-a.clone(), -b.clone(), c.clone(), o()],
            [-a.clone(), b.clone(), -c.clone(), o()],
            [a, -b, -c, o()],
        ]);
        let t = dp.clone() * dq.clone() * dr.clone();
        let v = Mat([
            [dp.clone(), -dp.clone(), -dp.clone(), dp],
            [dq.clone(), -dq.clone(), dq.clone(), -dq],
            [dr.clone(), dr.clone(), -dr.clone(), -dr],
            [t.clone(), t.clone(), t.clone(), t],
        ]);
        Ok((u, v))
    }

    /// Scalar `c` with `c B^{-1} - B^{-1}_hat diag(b)^{-1}` vanishing outside
    /// the last row, where `B^{-1} = D V`, `B^ = U C^{-1}` and `b` is the last
    /// column of `B^`. `None` if no such scalar exists.
    pub fn first_three_rows_constant(&self, s: &SignChoice<T>) -> Result<Option<T>> {
        let (u, v) = self.matrices_u_v(s)?;
        let b_inv = self.matrix_d().mul(&v);
        let b_hat = u.mul(&self.matrix_c_inv());
        let bv = b_hat.column(3);
        if bv.iter().any(|x| x.is_zero()) {
            return Ok(None);
        }
        let scale = Mat4::diag(&bv.clone().map(|x| T::one() / x));
        let rhs = b_hat.inverse()?.mul(&scale);
        let mut c: Option<T> = None;
        for i in 0..3 {
            for j in 0..4 {
                if !b_inv.0[i][j].is_zero() {
                    c = Some(rhs.0[i][j].clone() / b_inv.0[i][j].clone());
                    break;
                }
            }
            if c.is_some() {
                break;
            }
        }
        let Some(c) = c else { return Ok(None) };
        let tol_scale = rhs.max_magnitude();
        let ok = (0..3).all(|i| {
            (0..4).all(|j| (c.clone() * b_inv.0[i][j].clone() - rhs.0[i][j].clone()).is_negligible(tol_scale, 1e-9))
        });
        Ok(ok.then_some(c))
    }

    /// Incidence values of [`Self::trope_vector`] with the triple tropes
    /// `T_{P2 Q1 R1}`, `T_{P1 Q1 R2}`, `T_{P1 Q2 R1}` and `T_{P1 Q1 R1}`, where
    /// `P1, P2` are the roots of the ordered split of `p` and so on. The first
    /// three vanish; the last does not.
    pub fn trope_incidences(&self, s: &SignChoice<T>) -> Result<[T; 4]> {
        let v = self.trope_vector(s)?;
        let [(p1, p2), (q1, q2), (r1, r2)] = self.linear_splits(s)?;
        let lin = |l: &LinFactor<T>| Poly::new(vec![l.g0.clone(), l.g1.clone()]);
        let prod = |a: &LinFactor<T>, b: &LinFactor<T>, c: &LinFactor<T>| lin(a).mul(&lin(b)).mul(&lin(c));
        let check = |g: Poly<T>, h: Poly<T>| dot(&crate::curve::trope_triple_unchecked(&g, &h), &v);
        Ok([
            check(prod(&p2, &q1, &r1), prod(&p1, &q2, &r2)),
            check(prod(&p1, &q1, &r2), prod(&p2, &q2, &r1)),
            check(prod(&p1, &q2, &r1), prod(&p2, &q1, &r2)),
            check(prod(&p1, &q1, &r1), prod(&p2, &q2, &r2)),
        ])
    }

    /// Factors `p = p1 p2`, `q = q1 q2`, `r = r1 r2` with `res1` equal to the
    /// chosen square roots.
    pub fn linear_splits(&self, s: &SignChoice<T>) -> Result<[(LinFactor<T>, LinFactor<T>); 3]> {
        s.validate(self)?;
        Ok([
            split_quad(&self.p, &s.dp)?,
            split_quad(&self.q, &s.dq)?,
            split_quad(&self.r, &s.dr)?,
        ])
    }
}

/// Square roots `d_p, d_q, d_r` of the three discriminants.
#[derive(Clone, Debug, PartialEq)]
pub struct SignChoice<T> {
    pub dp: T,
    pub dq: T,
    pub dr: T,
}

impl<T: Scalar> SignChoice<T> {
    pub fn new(fs: &FactoredSextic<T>, dp: T, dq: T, dr: T) -> Result<Self> {
        let s = SignChoice { dp, dq, dr };
        s.validate(fs)?;
        Ok(s)
    }

    /// Square roots in the field, signs `(+, +, +)`.
    pub fn principal(fs: &FactoredSextic<T>) -> Result<Self> {
        let root = |g: &Quad<T>, name: &str| {
            discr(g)
                .try_sqrt()
                .ok_or_else(|| Error::InvalidSigns(format!("Discr({name}) has no square root in the field")))
        };
        Self::new(fs, root(&fs.p, "p")?, root(&fs.q, "q")?, root(&fs.r, "r")?)
    }

    /// Multiplies the roots by the given signs.
    pub fn with_signs(&self, sp: i64, sq: i64, sr: i64) -> Self {
        SignChoice {
            dp: self.dp.clone() * T::from_i64(sp),
            dq: self.dq.clone() * T::from_i64(sq),
            dr: self.dr.clone() * T::from_i64(sr),
        }
    }

    pub fn validate(&self, fs: &FactoredSextic<T>) -> Result<()> {
        for (d, g, name) in [(&self.dp, &fs.p, "p"), (&self.dq, &fs.q, "q"), (&self.dr, &fs.r, "r")] {
            let target = discr(g);
            let scale = target.magnitude().max(1.0);
            if !(d.clone() * d.clone() - target).is_negligible(scale, 1e-9) {
                return Err(Error::InvalidSigns(format!("delta_{name}^2 != Discr({name})")));
            }
        }
        Ok(())
    }
}

/// `V Sq(U a)`.
pub fn v_sq_u<T: Scalar>(u: &Mat4<T>, v: &Mat4<T>, a: &Vec4<T>) -> Vec4<T> {
    let ua = u.mul_vec(a);
    v.mul_vec(&ua.map(|x| x.clone() * x))
}

/// All matrices and derived polynomials of one Richelot step.
#[derive(Clone, Debug, PartialEq)]
pub struct RichelotData<T> {
    pub delta: T,
    pub hat_p: Quad<T>,
    pub hat_q: Quad<T>,
    pub hat_r: Quad<T>,
    pub hat_f: Sextic<T>,
    pub c: Mat4<T>,
    pub c_inv: Mat4<T>,
    pub d: Mat4<T>,
    /// `A, A22, A12, A11` in this order.
    pub a: [Mat4<T>; 4],
    pub h: Mat2<T>,
}

impl<T: Scalar> RichelotData<T> {
    pub fn build(fs: &FactoredSextic<T>) -> Self {
        let (hat_p, hat_q, hat_r) = fs.hat_triple();
        RichelotData {
            delta: fs.delta.clone(),
            hat_p,
            hat_q,
            hat_r,
            hat_f: fs.hat_f(),
            c: fs.matrix_c(),
            c_inv: fs.matrix_c_inv(),
            d: fs.matrix_d(),
            a: fs.extract_a_matrices(),
            h: fs.matrix_h(),
        }
    }

    /// `(a^T A a, a^T A22 a, a^T A12 a, a^T A11 a)`.
    pub fn apply_a(&self, a: &Vec4<T>) -> Vec4<T> {
        std::array::from_fn(|j| dot(a, &self.a[j].mul_vec(a)))
    }
}

/// One of the 15 ways of grouping the six roots into three pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub pairs: [(usize, usize); 3],
    pub p: Quad<T>,
    pub q: Quad<T>,
    pub r: Quad<T>,
    pub delta: T,
    /// `None` when `Delta = 0`.
    pub factored: Option<FactoredSextic<T>>,
}

impl<T: Scalar> Decomposition<T> {
    pub fn is_degenerate(&self) -> bool {
        self.factored.is_none()
    }
}

/// The 15 pairings; the leading coefficient of `f` is carried by `p`.
pub fn enumerate_decompositions<T: Scalar>(rs: &RootedSextic<T>) -> Vec<Decomposition<T>> {
    let mut out = Vec::with_capacity(15);
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&k| k != a).collect();
        for b in 1..4 {
            let first = (rest[0], rest[b]);
            let last: Vec<usize> = rest[1..].iter().copied().filter(|&k| k != rest[b]).collect();
            let pairs = [(0, a), first, (last[0], last[1])];
            let p = rs.pair_quad(0, a).scale(&rs.lead);
            let q = rs.pair_quad(first.0, first.1);
            let r = rs.pair_quad(last[0], last[1]);
            let d = delta(&p, &q, &r);
            let factored = FactoredSextic::new(p.clone(), q.clone(), r.clone()).ok();
            out.push(Decomposition { pairs, p, q, r, delta: d, factored });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::proportional;
    use crate::scalar::{int, rat, Rational};

    fn standard() -> FactoredSextic<Rational> {
        FactoredSextic::from_i64([0, -1, 1], [6, -5, 1], [20, -9, 1]).unwrap()
    }

    fn q(a: i64, b: i64, c: i64) -> Quad<Rational> {
        Quad::from_i64(a, b, c)
    }

    #[test]
    fn hat_triple_values() {
        let fs = standard();
        assert_eq!(fs.delta, int(32));
        let (ph, qh, rh) = fs.hat_triple();
        assert_eq!(ph, q(-46, 28, -4));
        assert_eq!(qh, q(20, -40, 8));
        assert_eq!(rh, q(-6, 12, -4));
        assert_eq!(delta(&ph, &qh, &rh), int(-2048));
        assert_eq!(res(&ph, &qh), int(1024));
    }

    #[test]
    fn hat_f_values() {
        let fs = standard();
        let hf = fs.hat_f();
        assert_eq!(hf.coeff(6), &int(1));
        assert_eq!(hf.coeff(0), &rat(345, 8));
        assert!(is_admissible(&hf));
        let scaled = FactoredSextic::new(fs.p.scale(&int(3)), fs.q.scale(&rat(1, 3)), fs.r.clone()).unwrap();
        assert_eq!(scaled.hat_f(), hf);
    }

    #[test]
    fn degenerate_rejected() {
        let r = FactoredSextic::<Rational>::from_i64([-1, 0, 1], [-4, 0, 1], [-9, 0, 1]);
        assert_eq!(r, Err(Error::DegenerateDecomposition));
    }

    #[test]
    fn mu_properties() {
        let fs = standard();
        assert!(fs.mu(3, 0, 0, 0).is_err());
        assert_eq!(fs.mu(1, 0, 2, 1).unwrap(), fs.mu(1, 2, 0, 1).unwrap());
        let rot = fs.rotated(FactorLabel::Q);
        assert_eq!(rot.mu(0, 0, 0, 2).unwrap(), fs.mu(0, 0, 0, 2).unwrap());
        assert_eq!(fs.mu(0, 0, 0, 2).unwrap(), int(-1680));
        assert_eq!(fs.mu(1, 0, 2, 1).unwrap(), int(-960));
    }

    #[test]
    fn matrix_values() {
        let fs = standard();
        let c = fs.matrix_c();
        let ci = fs.matrix_c_inv();
        assert_eq!(c.mul(&ci), Mat4::identity());
        assert_eq!(c.column(3), [int(0), int(0), int(0), rat(-1, 512)]);
        assert_eq!(ci.0[0][2], rat(1, 32));
        assert_eq!(ci.0[3][3], int(-512));
        let d = fs.matrix_d();
        assert_eq!(d.0[3][3], int(-4));
        assert_eq!(d.0[3][0], rat(60 * 45, 8));
        assert_ne!(d.det(), int(0));
    }

    #[test]
    fn map_t_values() {
        let fs = standard();
        let e = |k: usize| -> Vec4<Rational> { std::array::from_fn(|i| if i == k { int(1) } else { int(0) }) };
        assert_eq!(fs.map_t(&e(3)), e(3));
        assert_eq!(fs.map_t(&e(0)), [int(0), int(0), int(0), int(32).pow(4)]);
        let a = [int(1), int(-2), int(3), int(5)];
        let a3 = a.clone().map(|x| x * int(3));
        assert_eq!(fs.map_t(&a3), fs.map_t(&a).map(|x| x * int(9)));
    }

    #[test]
    fn kernel_nodes_collapse() {
        let fs = standard();
        let c = fs.matrix_c();
        for j in 0..4 {
            let img = fs.richelot_map(&c.column(j)).unwrap();
            assert!(img[..3].iter().all(|x| *x == int(0)) && img[3] != int(0));
        }
        assert_eq!(fs.richelot_map(&[int(0), int(0), int(0), int(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn a_matrices_and_h() {
        let fs = standard();
        let a = fs.extract_a_matrices();
        let cst = fs.last_row_constant();
        assert_eq!(cst, int(-524288));
        for (j, m) in a.iter().enumerate().take(3) {
            assert!(m.is_symmetric());
            let expect: Vec4<Rational> = std::array::from_fn(|i| if i == j { cst.clone() } else { int(0) });
            assert_eq!(m.row(3), expect);
        }
        let h = fs.matrix_h();
        assert_eq!(h, Mat([[int(-30), rat(15, 4)], [rat(15, 4), rat(-31, 4)]]));
        assert_eq!(a[3].row(3), [int(-15728640), int(1966080), int(4063232), int(-1048576)]);
        let v = [int(2), int(-1), int(7), int(3)];
        let data = RichelotData::build(&fs);
        assert_eq!(data.apply_a(&v), fs.richelot_map(&v).unwrap());
        assert_eq!(h.0[0][1], -(fs.mu(1, 0, 2, 1).unwrap() / (int(8) * fs.delta.clone())));
    }

    #[test]
    fn symmetries() {
        let fs = standard();
        let [xp, xq, xr] = FactorLabel::ALL.map(|l| fs.symmetry_x(l));
        for x in [&xp, &xq, &xr] {
            assert!(proportional_mat_id(&x.mul(x)));
        }
        assert!(crate::linalg::proportional_mat(&xp.mul(&xq), &xr));
        let c = fs.matrix_c();
        assert!(proportional(&xp.mul_vec(&c.column(0)), &c.column(3)));
        assert!(proportional(&xp.mul_vec(&c.column(3)), &c.column(0)));
    }

    fn proportional_mat_id(m: &Mat4<Rational>) -> bool {
        crate::linalg::proportional_mat(m, &Mat4::identity())
    }

    #[test]
    fn hyperplane_rows() {
        let fs = standard();
        let base = SignChoice::principal(&fs).unwrap();
        let d2 = fs.delta.clone() * fs.delta.clone();
        let xp = fs.symmetry_x(FactorLabel::P);
        let mut rows = Vec::new();
        for (a, b, c) in [(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)] {
            let s = base.with_signs(a, b, c);
            let row = fs.hat_hyperplane_row(&s).unwrap();
            let lam = d2.clone() * s.dq.clone() * s.dr.clone();
            assert_eq!(xp.vec_mul(&row), row.clone().map(|x| x * lam.clone()));
            rows.push(row);
        }
        let m = Mat(rows.try_into().unwrap());
        assert_eq!(m.rank(0.0), 4);
        let bad = SignChoice { dp: int(2), dq: int(1), dr: int(1) };
        assert!(matches!(fs.hat_hyperplane_row(&bad), Err(Error::InvalidSigns(_))));
    }

    #[test]
    fn trope_vector_on_three_tropes() {
        let fs = standard();
        let s = SignChoice::principal(&fs).unwrap();
        for (a, b, c) in [(1, 1, 1), (-1, 1, 1), (1, -1, -1), (-1, -1, -1)] {
            let inc = fs.trope_incidences(&s.with_signs(a, b, c)).unwrap();
            assert_eq!(inc[..3], [int(0), int(0), int(0)]);
            assert_ne!(inc[3], int(0));
        }
    }

    #[test]
    fn u_v_and_first_rows() {
        let fs = standard();
        let s = SignChoice::principal(&fs).unwrap().with_signs(1, -1, 1);
        let (u, v) = fs.matrices_u_v(&s).unwrap();
        let k = int(4) * s.dp.clone() * s.dq.clone() * s.dr.clone();
        let a = [int(3), int(-1), rat(1, 2), int(2)];
        assert_eq!(v_sq_u(&u, &v, &a), fs.map_t(&a).map(|x| x * k.clone()));
        let b_hat = u.mul(&fs.matrix_c_inv());
        assert!(b_hat.column(3).iter().all(|x| *x == int(-16) * fs.delta.clone()));
        let c = fs.first_three_rows_constant(&s).unwrap().unwrap();
        let expect = int(1) / (int(-64) * fs.delta.clone().pow(3) * s.dp.clone() * s.dq.clone() * s.dr.clone());
        assert_eq!(c, expect);
    }

    #[test]
    fn enumerate_standard() {
        let rs = RootedSextic::from_sextic(&standard().f).unwrap();
        let ds = enumerate_decompositions(&rs);
        assert_eq!(ds.len(), 15);
        let mut seen: Vec<[(usize, usize); 3]> = ds.iter().map(|d| d.pairs).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 15);
        let f = Poly::from(&q(-1, 0, 1)).mul(&Poly::from(&q(-4, 0, 1))).mul(&Poly::from(&q(-9, 0, 1)));
        let even = RootedSextic::from_sextic(&Sextic::from_poly(&f).unwrap()).unwrap();
        assert!(enumerate_decompositions(&even).iter().any(|d| d.is_degenerate()));
    }
}
