//! Batch verification instances, one JSON object per line:
//!
//! ```text
//! {"field":"3^1","sets":[[0,1,2],[0,1,2]],"degree":2,"expect":{"second_weight":4}}
//! {"field":"2^2","sets":"0,1,2;0,1,2,3","degree":4,"budget":100000000}
//! ```
//!
//! `sets` is either nested index lists or the CLI's `"a,b;c,d"` form.
//! `modulus`, `expect`, `budget` and `scalar_classes` are optional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::Expectations;
use crate::formulas::{CodeSpec, SpecError};
use crate::galois::{Field, ParseFieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid sets '{0}': expected comma-separated indices separated by ';'")]
    Sets(String),
    #[error(transparent)]
    Field(#[from] ParseFieldError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetsField {
    Lists(Vec<Vec<u64>>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepInstance {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub sets: SetsField,
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_classes: Option<bool>,
}

/// Parses `"0,1,2;0,1"` into index lists.
pub fn parse_sets(text: &str) -> Result<Vec<Vec<u64>>, SweepError> {
    let bad = || SweepError::Sets(text.to_string());
    if text.trim().is_empty() {
        return Err(bad());
    }
    text.split(';')
        .map(|set| {
            set.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

impl SweepInstance {
    pub fn new(field: &str, sets: Vec<Vec<u64>>, degree: u64) -> SweepInstance {
        SweepInstance {
            field: field.to_string(),
            modulus: None,
            sets: SetsField::Lists(sets),
            degree,
            expect: None,
            budget: None,
            scalar_classes: None,
        }
    }

    pub fn expecting(mut self, expect: Expectations) -> SweepInstance {
        self.expect = Some(expect);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> SweepInstance {
        self.budget = Some(budget);
        self
    }

    pub fn sets(&self) -> Result<Vec<Vec<u64>>, SweepError> {
        match &self.sets {
            SetsField::Lists(l) => Ok(l.clone()),
            SetsField::Text(t) => parse_sets(t),
        }
    }

    pub fn spec(&self) -> Result<CodeSpec, SweepError> {
        let field = Field::parse(&self.field, self.modulus.as_deref())?;
        Ok(CodeSpec::from_indices(&field, &self.sets()?, self.degree)?)
    }
}

/// Reads a sweep file; blank lines and lines starting with `#` are skipped.
pub fn parse_sweep(text: &str) -> Result<Vec<SweepInstance>, SweepError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| SweepError::Syntax { line: i + 1, message: e.to_string() })
        })
        .collect()
}

fn first(size: u64) -> Vec<u64> {
    (0..size).collect()
}

fn second(v: u64) -> Expectations {
    Expectations { second_weight: Some(v), ..Expectations::default() }
}

/// Enumerations beyond 10^7 codewords in the built-in sweep are the
/// full-space and near-full-space codes; they get an explicit budget.
const LARGE_BUDGET: u64 = 300_000_000;

/// The built-in sweep: minimum-distance instances over several fields and
/// every configuration with a known second or higher weight at desk scale.
pub fn default_sweep() -> Vec<SweepInstance> {
    let mut out = Vec::new();
    let mut push = |field: &str, sizes: &[u64], d: u64, expect: Option<Expectations>| {
        let mut inst = SweepInstance::new(field, sizes.iter().map(|&s| first(s)).collect(), d);
        inst.expect = expect;
        inst.budget = Some(LARGE_BUDGET);
        inst.scalar_classes = Some(true);
        out.push(inst);
    };
    for d in 1..=4 {
        push("3^1", &[3, 3], d, None);
    }
    for field in ["2^2", "5^1"] {
        for d in 1..=5 {
            push(field, &[3, 4], d, None);
        }
    }
    for d in 1..=2 {
        push("3^1", &[3, 3, 3], d, None);
    }
    for d in 1..=4 {
        push("5^1", &[2, 2, 3], d, None);
    }
    // all sizes equal
    push("3^1", &[3, 3], 2, Some(second(4)));
    push("3^1", &[3, 3, 3], 2, Some(second(12)));
    push("2^2", &[4, 4], 2, Some(second(9)));
    push("2^2", &[4, 4], 3, Some(second(6)));
    // two distinct sizes
    push("2^2", &[3, 4], 2, Some(second(6)));
    push("5^1", &[3, 5], 2, Some(second(8)));
    push("5^1", &[4, 5], 2, Some(second(12)));
    push("5^1", &[4, 5], 3, Some(second(8)));
    // top-coordinate range
    push(
        "2^2",
        &[3, 4],
        4,
        Some(Expectations { t_th_weights: Some(vec![2, 3, 4]), ..Expectations::default() }),
    );
    push("2^2", &[3, 4], 3, Some(second(4)));
    push("2^2", &[3, 4], 5, Some(second(2)));
    push("2^2", &[3, 4], 6, Some(second(2)));
    // mixed sizes, no second-weight closed form
    push("2^2", &[3, 3, 4], 2, None);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sets_text() {
        assert_eq!(parse_sets("0,1,2;0, 1").unwrap(), vec![vec![0, 1, 2], vec![0, 1]]);
        assert!(parse_sets("0,,1").is_err());
        assert!(parse_sets("").is_err());
    }

    #[test]
    fn sweep_lines() {
        let text = r#"
# comment
{"field":"3^1","sets":[[0,1,2],[0,1,2]],"degree":2,"expect":{"second_weight":4}}
{"field":"2^2","sets":"0,1,2;0,1,2,3","degree":4,"budget":100}
"#;
        let v = parse_sweep(text).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].expect.as_ref().unwrap().second_weight, Some(4));
        assert_eq!(v[1].spec().unwrap().sizes(), vec![3, 4]);
        assert_eq!(v[1].budget, Some(100));
        let err = parse_sweep("{\"field\":\"3^1\"}\n").unwrap_err();
        assert!(matches!(err, SweepError::Syntax { line: 1, .. }));
    }

    #[test]
    fn default_sweep_is_valid() {
        for inst in default_sweep() {
            let spec = inst.spec().unwrap();
            assert!(spec.sizes().iter().all(|&d| d <= spec.field().order()));
        }
    }
}
