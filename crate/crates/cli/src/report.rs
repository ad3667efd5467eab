//! Report types shared by the text and JSON outputs.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::input::{deserialize_flat, serialize_flat, InputSpec};

/// Integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<&BigInt> for Int {
    fn from(x: &BigInt) -> Self {
        Int(x.clone())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Small(i64),
            Big(String),
        }
        match Raw::deserialize(d)? {
            Raw::Small(x) => Ok(Int(BigInt::from(x))),
            Raw::Big(s) => s
                .parse()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("{s:?} is not an integer"))),
        }
    }
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Vec<Int> {
    xs.into_iter().map(Int::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    pub set: Vec<usize>,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub free_rank: usize,
    pub torsion: Int,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityOutcome {
    pub max_degree: u64,
    pub points_checked: usize,
    pub violation: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    /// Sorted normalized support forms.
    pub forms: Vec<Vec<Int>>,
    /// Only set for polymatroid input.
    pub agrees_with_rank_path: Option<bool>,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(serialize_with = "serialize_flat", deserialize_with = "deserialize_flat")]
    pub input: InputSpec,
    /// Closed inseparable sets; absent for multicomplex input.
    pub family: Option<Vec<MemberReport>>,
    pub labels: Vec<String>,
    pub relation: Vec<Int>,
    pub class_group: GroupReport,
    pub canonical_class: Vec<Int>,
    pub gorenstein: bool,
    pub gorenstein_a: Option<Int>,
    pub cone: Option<ConeReport>,
    pub normality: Option<NormalityOutcome>,
    pub warnings: Vec<String>,
}

fn linear_combination(coeffs: &[Int], labels: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(labels)
        .filter(|(c, _)| c.0 != BigInt::from(0))
        .map(|(c, l)| format!("{c} {l}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn one_based(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {} on n = {}", self.input.kind(), self.input.n());
        if let Some(family) = &self.family {
            let _ = writeln!(out, "closed inseparable sets: {}", family.len());
            for m in family {
                let _ = writeln!(out, "  {} rank {}", one_based(&m.set), m.rank);
            }
        }
        let _ = writeln!(out, "class group: {}", self.class_group.display);
        let _ = writeln!(out, "relation: {} = 0", linear_combination(&self.relation, &self.labels));
        let _ = writeln!(
            out,
            "canonical class: {}",
            linear_combination(&self.canonical_class, &self.labels)
        );
        match &self.gorenstein_a {
            Some(a) => {
                let _ = writeln!(out, "gorenstein: yes (a = {a})");
            }
            None => {
                let _ = writeln!(out, "gorenstein: {}", if self.gorenstein { "yes" } else { "no" });
            }
        }
        if let Some(cone) = &self.cone {
            let _ = writeln!(out, "support forms: {}", cone.forms.len());
            for f in &cone.forms {
                let coeffs: Vec<String> = f.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  {}", coeffs.join(" "));
            }
            match cone.agrees_with_rank_path {
                Some(true) => {
                    let _ = writeln!(out, "cross-check: both paths agree");
                }
                Some(false) => {
                    let _ = writeln!(out, "cross-check: FAILED");
                    for m in &cone.mismatches {
                        let _ = writeln!(out, "  {m}");
                    }
                }
                None => {}
            }
        }
        if let Some(w) = &self.normality {
            match &w.violation {
                None => {
                    let _ = writeln!(
                        out,
                        "normality: no violation up to degree {} ({} points checked)",
                        w.max_degree, w.points_checked
                    );
                }
                Some(v) => {
                    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "normality: ({}) lies in the cone but is not a sum of generators",
                        coords.join(",")
                    );
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    pub fn compare(name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let ok = expected == actual;
        Check { name: name.into(), expected, actual, ok }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "serialize_flat", deserialize_with = "deserialize_flat")]
    pub input: InputSpec,
    pub checks: Vec<Check>,
    pub agree: bool,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn new(input: InputSpec, checks: Vec<Check>, warnings: Vec<String>) -> Self {
        let agree = checks.iter().all(|c| c.ok);
        VerifyReport { input, checks, agree, warnings }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {} on n = {}", self.input.kind(), self.input.n());
        for c in &self.checks {
            if c.ok {
                let _ = writeln!(out, "ok        {}: {}", c.name, c.actual);
            } else {
                let _ = writeln!(out, "MISMATCH  {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
        }
        let _ = writeln!(out, "{}", if self.agree { "all checks agree" } else { "checks disagree" });
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
