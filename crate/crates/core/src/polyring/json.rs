//! JSON form `{"vars":[...],"terms":[[e₁,…,e_k,"coeff"],…]}` with terms in
//! descending graded-lex order.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::sparse::SparsePoly;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    vars: Vec<String>,
    terms: Vec<Vec<Value>>,
}

impl SparsePoly {
    fn to_wire(&self) -> Wire {
        let terms = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut row: Vec<Value> = m.0.iter().map(|&e| Value::from(e)).collect();
                row.push(Value::String(c.to_string()));
                row
            })
            .collect();
        Wire { vars: self.vars().to_vec(), terms }
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.to_wire()).expect("plain data")
    }

    /// Compact canonical encoding; `vars` precedes `terms`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<SparsePoly> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("polynomial JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    /// Decode and canonicalize: duplicate monomials are summed and zero
    /// coefficients dropped.
    pub fn from_json_value(v: &Value) -> Result<SparsePoly> {
        let bad = |m: String| Error::InvalidInput(format!("polynomial JSON: {m}"));
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
        for (i, name) in w.vars.iter().enumerate() {
            if name.is_empty() || w.vars[..i].contains(name) {
                return Err(bad(format!("invalid or repeated variable {name:?}")));
            }
        }
        let k = w.vars.len();
        let names: Vec<&str> = w.vars.iter().map(String::as_str).collect();
        let mut terms = Vec::with_capacity(w.terms.len());
        for row in &w.terms {
            if row.len() != k + 1 {
                return Err(bad(format!("term has {} entries, expected {}", row.len(), k + 1)));
            }
            let exps = row[..k]
                .iter()
                .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad(format!("bad exponent {e}"))))
                .collect::<Result<Vec<u32>>>()?;
            let c = match &row[k] {
                Value::String(s) => s.parse::<BigInt>().map_err(|_| bad(format!("bad coefficient {s:?}")))?,
                other => return Err(bad(format!("coefficient must be a decimal string, got {other}"))),
            };
            terms.push((exps, c));
        }
        Ok(SparsePoly::from_terms(&names, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let s = r#"{"vars":["x","z"],"terms":[[2,1,"1"],[2,0,"-1"],[0,1,"-4"],[0,0,"4"]]}"#;
        let p = SparsePoly::from_json(s).unwrap();
        assert_eq!(p.to_string(), "x^2*z - x^2 - 4*z + 4");
        assert_eq!(p.to_json(), s);
    }

    #[test]
    fn canonicalizes_and_rejects() {
        let p = SparsePoly::from_json(r#"{"vars":["z"],"terms":[[0,"1"],[1,"2"],[0,"-1"],[3,"0"]]}"#).unwrap();
        assert_eq!(p.to_json(), r#"{"vars":["z"],"terms":[[1,"2"]]}"#);
        for bad in [
            r#"{"vars":["z","z"],"terms":[]}"#,
            r#"{"vars":["z"],"terms":[[1,2,"1"]]}"#,
            r#"{"vars":["z"],"terms":[[-1,"1"]]}"#,
            r#"{"vars":["z"],"terms":[[1,1]]}"#,
            r#"{"vars":["z"],"terms":[[1,"1/2"]]}"#,
            r#"{"vars":["z"],"terms":[],"extra":1}"#,
            "[]",
        ] {
            assert!(SparsePoly::from_json(bad).is_err(), "{bad}");
        }
    }
}
