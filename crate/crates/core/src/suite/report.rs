use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::rational::Rational;

use super::IdentityId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl ParamValue {
    fn to_json(&self) -> Value {
        match self {
            ParamValue::Int(v) => json!(v),
            ParamValue::Rat(r) => json!(r.to_string()),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rat(r) => write!(f, "{r}"),
        }
    }
}

/// A concrete grid point, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Params(pub Vec<(&'static str, ParamValue)>);

impl Params {
    pub fn int(&self, name: &str) -> i64 {
        self.0
            .iter()
            .find_map(|(k, v)| match v {
                ParamValue::Int(i) if *k == name => Some(*i),
                _ => None,
            })
            .unwrap_or_else(|| panic!("missing integer parameter {name}"))
    }

    pub fn usize(&self, name: &str) -> usize {
        usize::try_from(self.int(name)).expect("nonnegative parameter")
    }

    pub fn rat(&self, name: &str) -> Rational {
        self.0
            .iter()
            .find_map(|(k, v)| match v {
                ParamValue::Rat(r) if *k == name => Some(r.clone()),
                _ => None,
            })
            .unwrap_or_else(|| panic!("missing rational parameter {name}"))
    }

    pub fn has(&self, name: &str) -> bool {
        self.0.iter().any(|(k, _)| *k == name)
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.0 {
            m.insert((*k).to_string(), v.to_json());
        }
        Value::Object(m)
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity at one grid point. Failures carry both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub id: IdentityId,
    pub params: Params,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub ms: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id.as_str(),
            "params": self.params.to_json(),
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ms": self.ms,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub records: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| !r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total(),
            "failed": self.failed(),
            "records": self.records.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }

    /// One line per record and a summary footer.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            match r.status {
                Status::Pass => {
                    let _ = writeln!(out, "PASS {} {}", r.id.as_str(), r.params);
                }
                Status::Fail => {
                    let _ = writeln!(
                        out,
                        "FAIL {} {} lhs={} rhs={}",
                        r.id.as_str(),
                        r.params,
                        r.lhs.as_deref().unwrap_or(""),
                        r.rhs.as_deref().unwrap_or("")
                    );
                }
            }
        }
        let _ = writeln!(out, "total: {}, failed: {}", self.total(), self.failed());
        out
    }
}
