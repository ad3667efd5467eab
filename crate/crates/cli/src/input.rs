//! JSON input descriptions.
//!
//! Subsets are sorted arrays of 1-based labels. Rank tables are objects
//! keyed by such arrays written as strings, e.g. `{"[1]": 2, "[1,2]": 3}`;
//! the empty set may be omitted.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};
use toric_class::cone::MulticomplexInput;
use toric_class::foundation::all_subsets;
use toric_class::rank_engine::EAGER_TABLE_LIMIT;
use toric_class::{GroundSubset, LatticeVector, Polymatroid};

use crate::CliError;

/// One input description. On disk the variant name is the `kind` field of a
/// flat object; [`InputSpec::from_json`] and [`InputSpec::to_value`] convert.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InputSpec {
    RankTable { n: usize, table: BTreeMap<String, u64> },
    Transversal { n: usize, sets: Vec<Vec<usize>> },
    Veronese { n: usize, s: Vec<u64>, d: u64 },
    Box { n: usize, v: Vec<u64> },
    MatroidBases { n: usize, bases: Vec<Vec<usize>> },
    Points { n: usize, points: Vec<Vec<u64>> },
    Multicomplex {
        n: usize,
        facets: Vec<Vec<u64>>,
        #[serde(default)]
        generalized: bool,
    },
}

/// A parsed input, ready for analysis.
#[derive(Clone, Debug)]
pub enum Instance {
    Polymatroid(Polymatroid),
    Multicomplex(MulticomplexInput),
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, CliError> {
        let Value::Object(mut fields) = value else {
            return Err(CliError::Input("expected a JSON object".into()));
        };
        let kind = match fields.remove("kind") {
            Some(Value::String(kind)) => kind,
            Some(_) => return Err(CliError::Input("at `kind`: expected a string".into())),
            None => return Err(CliError::Input("missing field `kind`".into())),
        };
        let mut wrapped = Map::new();
        wrapped.insert(kind.clone(), Value::Object(fields));
        serde_path_to_error::deserialize(Value::Object(wrapped)).map_err(|e| {
            let path = e.path().to_string();
            let path = path.strip_prefix(&format!("{kind}.")).unwrap_or(&path).to_string();
            CliError::Input(format!("at `{path}`: {}", e.into_inner()))
        })
    }

    /// Flat JSON object with a `kind` field.
    pub fn to_value(&self) -> Value {
        let Ok(Value::Object(outer)) = serde_json::to_value(self) else {
            unreachable!("input descriptions serialize to objects");
        };
        let (kind, inner) = outer.into_iter().next().expect("one variant");
        let Value::Object(mut fields) = inner else {
            unreachable!("variants are structs");
        };
        fields.insert("kind".into(), Value::String(kind));
        Value::Object(fields)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn n(&self) -> usize {
        match self {
            InputSpec::RankTable { n, .. }
            | InputSpec::Transversal { n, .. }
            | InputSpec::Veronese { n, .. }
            | InputSpec::Box { n, .. }
            | InputSpec::MatroidBases { n, .. }
            | InputSpec::Points { n, .. }
            | InputSpec::Multicomplex { n, .. } => *n,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InputSpec::RankTable { .. } => "rank_table",
            InputSpec::Transversal { .. } => "transversal",
            InputSpec::Veronese { .. } => "veronese",
            InputSpec::Box { .. } => "box",
            InputSpec::MatroidBases { .. } => "matroid_bases",
            InputSpec::Points { .. } => "points",
            InputSpec::Multicomplex { .. } => "multicomplex",
        }
    }

    pub fn build(&self) -> Result<Instance, CliError> {
        let n = self.n();
        if n == 0 || n > toric_class::foundation::MAX_GROUND_SET {
            return Err(CliError::Input(format!("n = {n} is out of range")));
        }
        let vector = |field: &str, v: &[u64]| {
            if v.len() != n {
                return Err(CliError::Input(format!(
                    "`{field}` entry {v:?} has length {}, expected {n}",
                    v.len()
                )));
            }
            Ok(LatticeVector::new(v.to_vec()))
        };
        let same_length = |field: &str, len: usize| {
            if len != n {
                return Err(CliError::Input(format!("`{field}` has length {len}, expected {n}")));
            }
            Ok(())
        };
        let p = match self {
            InputSpec::RankTable { table, .. } => Polymatroid::rank_table(n, parse_table(n, table)?)?,
            InputSpec::Transversal { sets, .. } => Polymatroid::transversal(n, subsets("sets", sets, n)?)?,
            InputSpec::Veronese { s, d, .. } => {
                same_length("s", s.len())?;
                Polymatroid::veronese(s.clone(), *d)?
            }
            InputSpec::Box { v, .. } => {
                same_length("v", v.len())?;
                Polymatroid::boxed(v.clone())?
            }
            InputSpec::MatroidBases { bases, .. } => {
                Polymatroid::matroid_bases(n, subsets("bases", bases, n)?)?
            }
            InputSpec::Points { points, .. } => {
                let pts = points.iter().map(|p| vector("points", p)).collect::<Result<_, _>>()?;
                Polymatroid::point_set(n, pts)?
            }
            InputSpec::Multicomplex { facets, generalized, .. } => {
                let pts = facets.iter().map(|p| vector("facets", p)).collect::<Result<_, _>>()?;
                return Ok(Instance::Multicomplex(MulticomplexInput::new(n, pts, *generalized)?));
            }
        };
        Ok(Instance::Polymatroid(p))
    }
}

/// `serialize_with` helper writing the flat form.
pub fn serialize_flat<S: Serializer>(spec: &InputSpec, s: S) -> Result<S::Ok, S::Error> {
    spec.to_value().serialize(s)
}

/// `deserialize_with` helper reading the flat form.
pub fn deserialize_flat<'de, D: Deserializer<'de>>(d: D) -> Result<InputSpec, D::Error> {
    let value = Value::deserialize(d)?;
    InputSpec::from_value(value).map_err(serde::de::Error::custom)
}

fn subsets(field: &str, lists: &[Vec<usize>], n: usize) -> Result<Vec<GroundSubset>, CliError> {
    lists
        .iter()
        .enumerate()
        .map(|(k, labels)| {
            GroundSubset::from_one_based(labels, n)
                .map_err(|e| CliError::Input(format!("`{field}[{k}]`: {e}")))
        })
        .collect()
}

fn parse_table(n: usize, table: &BTreeMap<String, u64>) -> Result<Vec<u64>, CliError> {
    if n > EAGER_TABLE_LIMIT {
        return Err(CliError::Input(format!(
            "rank tables are limited to n <= {EAGER_TABLE_LIMIT}"
        )));
    }
    let mut values: Vec<Option<u64>> = vec![None; 1 << n];
    for (key, &value) in table {
        let labels: Vec<usize> = serde_json::from_str(key)
            .map_err(|_| CliError::Input(format!("`table` key {key:?} is not an index array")))?;
        let set = GroundSubset::from_one_based(&labels, n)
            .map_err(|e| CliError::Input(format!("`table` key {key:?}: {e}")))?;
        let slot = &mut values[set.bits() as usize];
        if slot.is_some() {
            return Err(CliError::Input(format!("`table` lists {set} twice")));
        }
        *slot = Some(value);
    }
    values[0].get_or_insert(0);
    all_subsets(n)
        .map(|a| {
            values[a.bits() as usize]
                .ok_or_else(|| CliError::Input(format!("`table` has no entry for {a}")))
        })
        .collect()
}

/// Rank table keyed the way [`InputSpec::RankTable`] expects.
pub fn table_to_json_map(n: usize, table: &[u64]) -> BTreeMap<String, u64> {
    all_subsets(n)
        .map(|a| {
            let labels: Vec<String> = a.to_one_based().iter().map(|x| x.to_string()).collect();
            (format!("[{}]", labels.join(",")), table[a.bits() as usize])
        })
        .collect()
}
