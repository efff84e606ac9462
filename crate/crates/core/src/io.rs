//! Reading supports and covectors from JSON or comma lists.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::tropical::{Covector, SupportSet};

/// A support with an optional covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub support: SupportSet,
    pub gamma: Option<Covector>,
}

impl Problem {
    pub fn require_gamma(&self) -> Result<&Covector> {
        self.gamma
            .as_ref()
            .ok_or_else(|| Error::Parse("this command needs a covector: pass {\"A\": [...], \"gamma\": [...]}".into()))
    }
}

/// Accepts `{"A": [...], "gamma": [...]}`, a JSON array of exponents, or `1,2,3,4`.
///
/// `gamma[i]` belongs to `A[i]` as written; pairs are sorted together.
/// Covector entries are integers or `"p/q"` strings; JSON floats are refused.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let text = text.trim();
    if text.starts_with('{') || text.starts_with('[') {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        return problem_from_json(&value);
    }
    let raw = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer exponent: {:?}", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Problem {
        support: SupportSet::new(&raw)?,
        gamma: None,
    })
}

pub fn problem_from_json(value: &Value) -> Result<Problem> {
    match value {
        Value::Array(_) => Ok(Problem {
            support: SupportSet::new(&exponents(value)?)?,
            gamma: None,
        }),
        Value::Object(map) => {
            let a = map
                .get("A")
                .ok_or_else(|| Error::Parse("missing key \"A\"".into()))?;
            let raw = exponents(a)?;
            let support = SupportSet::new(&raw)?;
            let gamma = match map.get("gamma") {
                None | Some(Value::Null) => None,
                Some(g) => Some(covector_from_json(&support, &raw, g)?),
            };
            Ok(Problem { support, gamma })
        }
        _ => Err(Error::Parse("expected a JSON object or array".into())),
    }
}

fn exponents(value: &Value) -> Result<Vec<i64>> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("\"A\" must be an array of integers".into()))?;
    arr.iter()
        .map(|v| {
            v.as_i64()
                .ok_or_else(|| Error::Parse(format!("exponent {v} is not an integer")))
        })
        .collect()
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::rational::int(i)),
            None => Err(Error::Parse(format!(
                "covector entry {n} is not an integer; write fractions as \"p/q\""
            ))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("covector entry {other} is not a number"))),
    }
}

fn covector_from_json(support: &SupportSet, raw: &[i64], value: &Value) -> Result<Covector> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("\"gamma\" must be an array".into()))?;
    if arr.len() != raw.len() {
        return Err(Error::CovectorLength {
            expected: raw.len(),
            got: arr.len(),
        });
    }
    let values = arr.iter().map(entry).collect::<Result<Vec<_>>>()?;
    let mut pairs: Vec<(i64, Rational)> = raw.iter().copied().zip(values).collect();
    pairs.sort_by_key(|p| p.0);
    Covector::new(support, pairs.into_iter().map(|p| p.1).collect())
}
