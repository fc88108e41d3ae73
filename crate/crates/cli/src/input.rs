use std::path::Path;

use richelot_core::json::{factored_from_json, field, sextic_from_json, JsonScalar};
use richelot_core::{Error, FactoredSextic, Rational, Result, RootedSextic, Sextic, WPoint};
use serde_json::Value;

/// Reads the `--input` file, or the standard fixture when absent.
pub fn load(path: Option<&Path>) -> Result<Value> {
    match path {
        None => Ok(serde_json::json!({
            "p": ["0/1", "-1/1", "1/1"],
            "q": ["6/1", "-5/1", "1/1"],
            "r": ["20/1", "-9/1", "1/1"],
        })),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
    }
}

pub fn triple(v: &Value) -> Result<FactoredSextic<Rational>> {
    factored_from_json(v)
}

/// The curve, from coefficients `{"f": [...]}`, from roots, or from a
/// factored triple.
pub fn curve(v: &Value) -> Result<Sextic<Rational>> {
    if let Some(f) = v.get("f") {
        return sextic_from_json(f);
    }
    if v.get("roots").is_some() {
        return Ok(rooted(v)?.f);
    }
    Ok(triple(v)?.f)
}

/// The curve with its roots, which must be rational. `"roots"` may contain
/// `"inf"` for a degree-5 curve.
pub fn rooted(v: &Value) -> Result<RootedSextic<Rational>> {
    if let Some(rs) = v.get("roots") {
        let lead = match v.get("lead") {
            Some(l) => Rational::from_json(l)?,
            None => richelot_core::int(1),
        };
        let items = rs.as_array().filter(|a| a.len() == 6).ok_or_else(|| Error::Parse("\"roots\" needs 6 entries".into()))?;
        let mut roots = Vec::with_capacity(6);
        for r in items {
            roots.push(match r.as_str() {
                Some("inf") => WPoint::Infinity,
                _ => WPoint::Finite(Rational::from_json(r)?),
            });
        }
        return RootedSextic::from_roots(lead, roots.try_into().unwrap_or_else(|_| unreachable!()));
    }
    let _ = field(v, "f").or_else(|_| field(v, "p"))?;
    RootedSextic::from_sextic(&curve(v)?)
}
