//! JSON encoding of exact and approximate data.
//!
//! Exact scalars are `"num/den"` strings, approximate ones `["re", "im"]`
//! pairs of decimal strings that round-trip to the same `f64`. Polynomials
//! are ascending coefficient arrays and matrices row-major nested arrays.

use serde_json::{json, Map, Value};

use crate::curve::{CurvePoint, DivisorPair};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Vec4};
use crate::numeric::PeriodData;
use crate::poly::{Poly, Sextic};
use crate::quad::Quad;
use crate::richelot::{FactoredSextic, RichelotData};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar, C64};

/// Conversion between a scalar and its JSON form.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    /// Accepts `"num/den"`, a bare integer string or a JSON integer.
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(crate::scalar::int(n.as_i64().unwrap())),
            _ => Err(Error::Parse(format!("expected a \"num/den\" string, got {v}"))),
        }
    }
}

impl JsonScalar for C64 {
    fn to_json(&self) -> Value {
        json!([format!("{:e}", self.re), format!("{:e}", self.im)])
    }

    /// Accepts `[re, im]` with strings or numbers, or a real number.
    fn from_json(v: &Value) -> Result<Self> {
        let part = |x: &Value| -> Result<f64> {
            match x {
                Value::String(s) => s
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not a decimal: {s:?}"))),
                Value::Number(n) => Ok(n.as_f64().unwrap()),
                _ => Err(Error::Parse(format!("expected a decimal, got {x}"))),
            }
        };
        match v {
            Value::Array(a) if a.len() == 2 => Ok(C64::new(part(&a[0])?, part(&a[1])?)),
            Value::String(s) if s.contains('/') => {
                let q = parse_rational(s)?;
                Ok(q.to_c64())
            }
            Value::String(_) | Value::Number(_) => Ok(C64::new(part(v)?, 0.0)),
            _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
        }
    }
}

fn array(v: &Value, len: Option<usize>, what: &str) -> Result<Vec<Value>> {
    match v {
        Value::Array(a) if len.is_none_or(|n| a.len() == n) => Ok(a.clone()),
        _ => Err(Error::Parse(match len {
            Some(n) => format!("{what}: expected an array of length {n}"),
            None => format!("{what}: expected an array"),
        })),
    }
}

pub fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn vec_to_json<T: JsonScalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}

pub fn vec_from_json<T: JsonScalar>(v: &Value, len: Option<usize>) -> Result<Vec<T>> {
    array(v, len, "vector")?.iter().map(T::from_json).collect()
}

pub fn vec4_from_json<T: JsonScalar>(v: &Value) -> Result<Vec4<T>> {
    let xs = vec_from_json(v, Some(4))?;
    Ok(xs.try_into().unwrap_or_else(|_| unreachable!()))
}

pub fn quad_to_json<T: JsonScalar + Scalar>(q: &Quad<T>) -> Value {
    vec_to_json(q.coeffs())
}

/// Up to three ascending coefficients.
pub fn quad_from_json<T: JsonScalar + Scalar>(v: &Value) -> Result<Quad<T>> {
    let c: Vec<T> = vec_from_json(v, None)?;
    if c.len() > 3 {
        return Err(Error::Parse("a quadratic has at most 3 coefficients".into()));
    }
    let get = |j: usize| c.get(j).cloned().unwrap_or_else(T::zero);
    Ok(Quad::new(get(0), get(1), get(2)))
}

pub fn poly_to_json<T: JsonScalar + Scalar>(p: &Poly<T>) -> Value {
    vec_to_json(p.coeffs())
}

pub fn sextic_to_json<T: JsonScalar + Scalar>(f: &Sextic<T>) -> Value {
    vec_to_json(f.coeffs())
}

/// Up to seven ascending coefficients.
pub fn sextic_from_json<T: JsonScalar + Scalar>(v: &Value) -> Result<Sextic<T>> {
    let c: Vec<T> = vec_from_json(v, None)?;
    if c.len() > 7 {
        return Err(Error::UnsupportedDegree(format!("{} coefficients", c.len())));
    }
    Sextic::from_slice(&c)
}

pub fn mat_to_json<T: JsonScalar, const N: usize>(m: &Mat<T, N>) -> Value {
    Value::Array(m.0.iter().map(|row| vec_to_json(row)).collect())
}

pub fn mat_from_json<T: JsonScalar, const N: usize>(v: &Value) -> Result<Mat<T, N>> {
    let rows = array(v, Some(N), "matrix")?;
    let mut out: Vec<[T; N]> = Vec::with_capacity(N);
    for r in &rows {
        let xs: Vec<T> = vec_from_json(r, Some(N))?;
        out.push(xs.try_into().unwrap_or_else(|_| unreachable!()));
    }
    Ok(Mat(out.try_into().unwrap_or_else(|_| unreachable!())))
}

pub fn factored_to_json<T: JsonScalar + Scalar>(fs: &FactoredSextic<T>) -> Value {
    json!({
        "p": quad_to_json(&fs.p),
        "q": quad_to_json(&fs.q),
        "r": quad_to_json(&fs.r),
    })
}

/// Reads `{"p": [...], "q": [...], "r": [...]}`.
pub fn factored_from_json<T: JsonScalar + Scalar>(v: &Value) -> Result<FactoredSextic<T>> {
    FactoredSextic::new(
        quad_from_json(field(v, "p")?)?,
        quad_from_json(field(v, "q")?)?,
        quad_from_json(field(v, "r")?)?,
    )
}

const A_NAMES: [&str; 4] = ["A", "A22", "A12", "A11"];

pub fn richelot_data_to_json<T: JsonScalar + Scalar>(d: &RichelotData<T>) -> Value {
    let mut a = Map::new();
    for (name, m) in A_NAMES.iter().zip(&d.a) {
        a.insert((*name).into(), mat_to_json(m));
    }
    json!({
        "delta": d.delta.to_json(),
        "hat_p": quad_to_json(&d.hat_p),
        "hat_q": quad_to_json(&d.hat_q),
        "hat_r": quad_to_json(&d.hat_r),
        "hat_f": sextic_to_json(&d.hat_f),
        "C": mat_to_json(&d.c),
        "C_inv": mat_to_json(&d.c_inv),
        "D": mat_to_json(&d.d),
        "A": Value::Object(a),
        "H": mat_to_json(&d.h),
    })
}

pub fn richelot_data_from_json<T: JsonScalar + Scalar>(v: &Value) -> Result<RichelotData<T>> {
    let a = field(v, "A")?;
    let mut mats = Vec::with_capacity(4);
    for name in A_NAMES {
        mats.push(mat_from_json(field(a, name)?)?);
    }
    Ok(RichelotData {
        delta: T::from_json(field(v, "delta")?)?,
        hat_p: quad_from_json(field(v, "hat_p")?)?,
        hat_q: quad_from_json(field(v, "hat_q")?)?,
        hat_r: quad_from_json(field(v, "hat_r")?)?,
        hat_f: sextic_from_json(field(v, "hat_f")?)?,
        c: mat_from_json(field(v, "C")?)?,
        c_inv: mat_from_json(field(v, "C_inv")?)?,
        d: mat_from_json(field(v, "D")?)?,
        a: mats.try_into().unwrap_or_else(|_| unreachable!()),
        h: mat_from_json(field(v, "H")?)?,
    })
}

/// `[[x1, y1], [x2, y2]]`.
pub fn divisor_from_json<T: JsonScalar + Scalar>(
    f: &Sextic<T>,
    v: &Value,
) -> Result<DivisorPair<T>> {
    let pts = array(v, Some(2), "divisor")?;
    let point = |p: &Value| -> Result<CurvePoint<T>> {
        let xy = array(p, Some(2), "point")?;
        CurvePoint::new(f, T::from_json(&xy[0])?, T::from_json(&xy[1])?)
    };
    Ok(DivisorPair::new(point(&pts[0])?, point(&pts[1])?))
}

pub fn period_data_to_json(pd: &PeriodData) -> Value {
    let c2 = |v: &[C64; 2]| vec_to_json(v);
    json!({
        "precision": format!("f64/{}bit", pd.precision_bits),
        "precision_bits": pd.precision_bits,
        "f": sextic_to_json(&pd.f),
        "branch_points": vec_to_json(&pd.homology.branch_points.e),
        "A": mat_to_json(&pd.a),
        "B": mat_to_json(&pd.b),
        "eta_A": mat_to_json(&pd.eta_a),
        "eta_B": mat_to_json(&pd.eta_b),
        "Omega": mat_to_json(&pd.omega),
        "basis": pd.homology.basis,
        "generators": pd.generators().iter().map(c2).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::standard;
    use crate::scalar::{int, rat};

    #[test]
    fn scalars() {
        assert_eq!(rat(-5, 2).to_json(), json!("-5/2"));
        assert_eq!(Rational::from_json(&json!(7)).unwrap(), int(7));
        assert!(Rational::from_json(&json!(1.5)).is_err());
        let z = C64::new(0.1, -3.25e-17);
        assert_eq!(C64::from_json(&z.to_json()).unwrap(), z);
        assert_eq!(C64::from_json(&json!("1/4")).unwrap(), C64::new(0.25, 0.0));
    }

    #[test]
    fn polynomial_layout() {
        let q = Quad::<Rational>::from_i64(6, -5, 1);
        assert_eq!(quad_to_json(&q), json!(["6/1", "-5/1", "1/1"]));
        assert_eq!(quad_from_json::<Rational>(&json!(["6", -5, "1/1"])).unwrap(), q);
        assert!(quad_from_json::<Rational>(&json!([1, 2, 3, 4])).is_err());
    }

    #[test]
    fn richelot_data_round_trip() {
        let d = RichelotData::build(&standard());
        let v = richelot_data_to_json(&d);
        assert_eq!(v["delta"], json!("32/1"));
        assert_eq!(v["hat_f"][6], json!("1/1"));
        let text = serde_json::to_string(&v).unwrap();
        let back: RichelotData<Rational> = richelot_data_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&richelot_data_to_json(&back)).unwrap(), text);
    }

    #[test]
    fn factored_input() {
        let fs = standard();
        let back: FactoredSextic<Rational> = factored_from_json(&factored_to_json(&fs)).unwrap();
        assert_eq!(back, fs);
        let bad = json!({"p": [-1, 0, 1], "q": [-4, 0, 1], "r": [-9, 0, 1]});
        assert_eq!(factored_from_json::<Rational>(&bad), Err(Error::DegenerateDecomposition));
    }
}
