//! `{"q":5, "prec":[P2,P1], "terms":[{"j":…, "i":…, "c":…}, …]}`.
//!
//! `"prec": null` (or a `null` entry) means exact. On output `P1` is the least
//! level precision, which only ever discards information.

use serde_json::{json, Value};

use super::{check_q, FieldError, ValuedField, EXACT, LS2};

fn prec_value(p: i64) -> Value {
    if p >= EXACT {
        Value::Null
    } else {
        json!(p)
    }
}

pub fn ls2_to_json(x: &LS2) -> Value {
    let terms: Vec<Value> = x.terms().into_iter().map(|(j, i, c)| json!({"j": j, "i": i, "c": c})).collect();
    let prec = if x.is_exact() { Value::Null } else { json!([prec_value(x.prec()), prec_value(x.prec1())]) };
    json!({"q": x.q(), "prec": prec, "terms": terms})
}

fn int(v: &Value, what: &str) -> Result<i64, FieldError> {
    v.as_i64().ok_or_else(|| FieldError::Malformed(format!("{what} must be an integer")))
}

fn prec_entry(v: &Value) -> Result<i64, FieldError> {
    if v.is_null() {
        Ok(EXACT)
    } else {
        int(v, "precision")
    }
}

/// Parses an element; `default_q` and `default_prec` fill absent fields.
pub fn ls2_from_json(v: &Value, default_q: u32, default_prec: (i64, i64)) -> Result<LS2, FieldError> {
    let o = v.as_object().ok_or_else(|| FieldError::Malformed("expected an object".into()))?;
    let q = match o.get("q") {
        Some(q) => u32::try_from(int(q, "q")?).map_err(|_| FieldError::Malformed("q out of range".into()))?,
        None => default_q,
    };
    check_q(q)?;
    let (p2, p1) = match o.get("prec") {
        None => default_prec,
        Some(Value::Null) => (EXACT, EXACT),
        Some(Value::Array(a)) if a.len() == 2 => (prec_entry(&a[0])?, prec_entry(&a[1])?),
        Some(_) => return Err(FieldError::Malformed("prec must be [P2, P1] or null".into())),
    };
    let raw = o.get("terms").and_then(Value::as_array).ok_or_else(|| FieldError::Malformed("missing terms".into()))?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let get = |k: &str| t.get(k).ok_or_else(|| FieldError::Malformed(format!("term missing {k}"))).and_then(|x| int(x, k));
        terms.push((get("j")?, get("i")?, get("c")?));
    }
    Ok(LS2::from_terms(q, &terms, p2, p1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hlf::Val2;

    #[test]
    fn round_trip() {
        let x = LS2::from_terms(5, &[(0, -1, 1), (1, 2, 3)], 6, 12);
        let v = ls2_to_json(&x);
        assert_eq!(v["prec"], json!([6, 12]));
        assert_eq!(ls2_from_json(&v, 5, (6, 12)).unwrap(), x);
        let m = LS2::t(5, -1, 0);
        assert_eq!(ls2_to_json(&m)["prec"], Value::Null);
        assert_eq!(ls2_from_json(&ls2_to_json(&m), 3, (1, 1)).unwrap(), m);
    }

    #[test]
    fn defaults_and_errors() {
        let v = json!({"terms":[{"j":0,"i":1,"c":2}]});
        let x = ls2_from_json(&v, 7, (6, 12)).unwrap();
        assert_eq!(x.val(), Ok(Val2::new(0, 1)));
        assert_eq!(x.q(), 7);
        assert!(ls2_from_json(&json!({"q":4,"terms":[]}), 5, (6, 12)).is_err());
        assert!(ls2_from_json(&json!([1, 2]), 5, (6, 12)).is_err());
        assert!(ls2_from_json(&json!({"terms":[{"j":0}]}), 5, (6, 12)).is_err());
    }
}
