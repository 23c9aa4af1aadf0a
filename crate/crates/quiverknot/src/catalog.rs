//! Named knot diagrams. The defaults are embedded; a user JSON file with
//! the same schema is merged over them.

use std::collections::BTreeMap;
use std::path::Path;

use quiverknot_core::diagram::{build_diagram, parse_pd};
use quiverknot_core::{ColoringMatrix, Diagram};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

pub const CATALOG_ENV: &str = "QUIVERKNOT_CATALOG";

const DEFAULT_CATALOG: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    /// PD code; empty for the crossingless unknot.
    pub pd: String,
    /// `[k, i]`: corner `i` of crossing `k` lies in the unbounded face.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_infinity: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Checked against the coloring matrix at load time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u128>,
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub spec: EntrySpec,
    pub diagram: Diagram,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, Entry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_CATALOG).expect("embedded catalog is valid")
    }

    /// Defaults, with `path` (or else `$QUIVERKNOT_CATALOG`) merged over them.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut catalog = Self::builtin();
        let env = std::env::var_os(CATALOG_ENV).filter(|v| !v.is_empty());
        let user = path.map(Path::to_path_buf).or_else(|| env.map(Into::into));
        if let Some(p) = user {
            let text = std::fs::read_to_string(&p).map_err(|e| AppError::io(&p, e))?;
            let extra = Self::from_json(&text).map_err(|e| match e {
                AppError::Format { message, .. } => AppError::Format { path: p.clone(), message },
                other => other,
            })?;
            catalog.merge(extra);
        }
        Ok(catalog)
    }

    /// Parses and validates every entry.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)
            .map_err(|e| AppError::Format { path: "<catalog>".into(), message: e.to_string() })?;
        let mut entries = BTreeMap::new();
        for (name, value) in raw {
            let spec: EntrySpec = serde_json::from_value(value)
                .map_err(|e| AppError::Catalog { entry: name.clone(), message: e.to_string() })?;
            let diagram = validate(&spec).map_err(|message| AppError::Catalog { entry: name.clone(), message })?;
            entries.insert(name, Entry { spec, diagram });
        }
        Ok(Self { entries })
    }

    /// Entries of `other` replace same-named entries.
    pub fn merge(&mut self, other: Catalog) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn validate(spec: &EntrySpec) -> std::result::Result<Diagram, String> {
    let diagram = if spec.pd.trim().is_empty() {
        if spec.r_infinity.is_some() {
            return Err("r_infinity given for a crossingless diagram".into());
        }
        Diagram::unknot()
    } else {
        let pd = parse_pd(&spec.pd).map_err(|e| e.to_string())?;
        build_diagram(&pd, spec.r_infinity.map(|[k, i]| (k, i))).map_err(|e| e.to_string())?
    };
    if let Some(expected) = spec.determinant {
        let det = ColoringMatrix::new(&diagram)
            .and_then(|m| m.torsion_order())
            .map_err(|e| e.to_string())?;
        if det != expected {
            return Err(format!("determinant is {det}, recorded {expected}"));
        }
    }
    Ok(diagram)
}
