//! The subcommands, as library functions returning a [`RunResult`].

use std::collections::BTreeMap;
use std::time::Instant;

use quiverknot_core::cocycle::invariant_multiset;
use quiverknot_core::coloring::{count_colorings_dihedral, enumerate_colorings};
use quiverknot_core::diagram::parse_pd;
use quiverknot_core::iso::quiver_isomorphism;
use quiverknot_core::quiver::{cocycle_polynomial, coloring_quiver, shadow_cocycle_quiver, to_dot, to_dot_collapsed};
use quiverknot_core::{Diagram, Error as CoreError, FiniteQuandle, WeightedQuiver};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::error::{AppError, Result};
use crate::formats::{multiset_json, QuiverDoc};
use crate::spec::{parse_cocycle, parse_endos, parse_quandle};

/// Everything a command reports. Apart from `timing_ms`, identical
/// invocations give identical values.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub timing_ms: f64,
    /// DOT rendering for `--dot`; not part of the JSON.
    #[serde(skip)]
    pub dot: Option<String>,
}

impl RunResult {
    fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            outputs: BTreeMap::new(),
            timing_ms: 0.0,
            dot: None,
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.into(), json!(value));
        self
    }

    fn out(&mut self, key: &str, value: impl Serialize) {
        self.outputs.insert(key.into(), json!(value));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("RunResult serializes")
    }

    /// One `key: value` line per scalar output; bulky outputs are left out.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.outputs {
            match v {
                Value::Object(_) => continue,
                Value::Array(a) if a.len() > 32 => s.push_str(&format!("{k}: [{} items]\n", a.len())),
                Value::String(text) => s.push_str(&format!("{k}: {text}\n")),
                _ => s.push_str(&format!("{k}: {v}\n")),
            }
        }
        s
    }
}

/// A knot given by catalog name or as literal PD text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotArg {
    Name(String),
    Pd(String),
}

impl KnotArg {
    /// A catalog name if one exists, otherwise PD text.
    pub fn guess(text: &str, catalog: &Catalog) -> Self {
        if catalog.get(text).is_some() || !text.contains(['X', 'x', '[', '(']) {
            KnotArg::Name(text.into())
        } else {
            KnotArg::Pd(text.into())
        }
    }

    fn label(&self) -> &str {
        match self {
            KnotArg::Name(s) | KnotArg::Pd(s) => s,
        }
    }

    pub fn resolve(&self, catalog: &Catalog) -> Result<Diagram> {
        match self {
            KnotArg::Name(name) => catalog.get(name).map(|e| e.diagram.clone()).ok_or_else(|| {
                let known: Vec<&str> = catalog.names().collect();
                AppError::Usage(format!("unknown knot `{name}`; known: {}", known.join(", ")))
            }),
            KnotArg::Pd(text) if text.trim().is_empty() => Ok(Diagram::unknot()),
            KnotArg::Pd(text) => Ok(Diagram::from_pd(&parse_pd(text)?)?),
        }
    }
}

fn timed(f: impl FnOnce() -> Result<RunResult>) -> Result<RunResult> {
    let start = Instant::now();
    let mut r = f()?;
    r.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

fn check_base(base: usize, q: &FiniteQuandle) -> Result<()> {
    if base >= q.order() {
        return Err(AppError::Usage(format!("base {base} is not an element of a quandle of order {}", q.order())));
    }
    Ok(())
}

fn dot_of(q: &WeightedQuiver, collapse: bool) -> String {
    if collapse {
        to_dot_collapsed(q)
    } else {
        to_dot(q)
    }
}

pub fn colorings(catalog: &Catalog, knot: &KnotArg, quandle: &str, list: bool) -> Result<RunResult> {
    timed(|| {
        let d = knot.resolve(catalog)?;
        let q = parse_quandle(quandle)?;
        let mut r = RunResult::new("colorings")
            .param("knot", knot.label())
            .param("quandle", quandle)
            .param("mode", if list { "list" } else { "count" });
        let snf = match q.dihedral_order() {
            Some(n) => Some(count_colorings_dihedral(&d, n)?),
            None => None,
        };
        if list || snf.is_none() {
            let all = enumerate_colorings(&d, &q);
            let count = all.len() as u128;
            if snf.is_some_and(|s| s != count) {
                return Err(CoreError::Internal(format!("SNF count {snf:?} disagrees with enumeration {count}")).into());
            }
            r.out("count", count);
            r.out("method", if snf.is_some() { "snf+enumeration" } else { "enumeration" });
            if list {
                r.out("colorings", all.iter().map(|c| c.values()).collect::<Vec<_>>());
            }
        } else {
            r.out("count", snf);
            r.out("method", "snf");
        }
        Ok(r)
    })
}

pub fn quiver(catalog: &Catalog, knot: &KnotArg, quandle: &str, endos: &str, collapse: bool) -> Result<RunResult> {
    timed(|| {
        let d = knot.resolve(catalog)?;
        let q = parse_quandle(quandle)?;
        let s = parse_endos(endos, &q)?;
        let quiver = coloring_quiver(&d, &q, &s)?;
        let mut r = RunResult::new("quiver")
            .param("knot", knot.label())
            .param("quandle", quandle)
            .param("endos", endos);
        r.out("vertex_count", quiver.vertices().len());
        r.out("edge_count", quiver.edges().len());
        r.out("quiver", QuiverDoc::from_quiver(&quiver));
        r.dot = Some(dot_of(&quiver, collapse));
        Ok(r)
    })
}

pub struct ShadowArgs<'a> {
    pub quandle: &'a str,
    pub cocycle: &'a str,
    pub base: usize,
    pub endos: &'a str,
}

pub fn shadow(catalog: &Catalog, knot: &KnotArg, args: &ShadowArgs, collapse: bool) -> Result<RunResult> {
    timed(|| {
        let d = knot.resolve(catalog)?;
        let q = parse_quandle(args.quandle)?;
        check_base(args.base, &q)?;
        let theta = parse_cocycle(args.cocycle, &q)?;
        let s = parse_endos(args.endos, &q)?;
        let quiver = shadow_cocycle_quiver(&d, &q, &s, args.base, &theta)?;
        let mut r = RunResult::new("shadow")
            .param("knot", knot.label())
            .param("quandle", args.quandle)
            .param("cocycle", args.cocycle)
            .param("base", args.base)
            .param("endos", args.endos);
        r.out("vertex_count", quiver.vertices().len());
        r.out("edge_count", quiver.edges().len());
        r.out("weight_histogram", quiver.weight_histogram());
        r.out("polynomial", cocycle_polynomial(&quiver)?.to_string());
        r.out("quiver", QuiverDoc::from_quiver(&quiver));
        r.dot = Some(dot_of(&quiver, collapse));
        Ok(r)
    })
}

pub struct CompareArgs<'a> {
    pub quandle: &'a str,
    pub endos: &'a str,
    pub weighted: bool,
    pub cocycle: &'a str,
    pub base: usize,
}

pub fn compare(catalog: &Catalog, a: &KnotArg, b: &KnotArg, args: &CompareArgs) -> Result<RunResult> {
    timed(|| {
        let (da, db) = (a.resolve(catalog)?, b.resolve(catalog)?);
        let q = parse_quandle(args.quandle)?;
        let s = parse_endos(args.endos, &q)?;
        let mut r = RunResult::new("compare")
            .param("knot_a", a.label())
            .param("knot_b", b.label())
            .param("quandle", args.quandle)
            .param("endos", args.endos)
            .param("weighted", args.weighted);
        let (qa, qb) = if args.weighted {
            check_base(args.base, &q)?;
            let theta = parse_cocycle(args.cocycle, &q)?;
            r = r.param("cocycle", args.cocycle).param("base", args.base);
            let (qa, qb) = (
                shadow_cocycle_quiver(&da, &q, &s, args.base, &theta)?,
                shadow_cocycle_quiver(&db, &q, &s, args.base, &theta)?,
            );
            let (ma, mb) = (invariant_multiset(&da, &q, &theta)?, invariant_multiset(&db, &q, &theta)?);
            r.out("multiset_a", multiset_json(&ma));
            r.out("multiset_b", multiset_json(&mb));
            r.out("multisets_equal", ma == mb);
            r.out("polynomial_a", cocycle_polynomial(&qa)?.to_string());
            r.out("polynomial_b", cocycle_polynomial(&qb)?.to_string());
            (qa, qb)
        } else {
            (coloring_quiver(&da, &q, &s)?, coloring_quiver(&db, &q, &s)?)
        };
        r.out("count_a", qa.vertices().len());
        r.out("count_b", qb.vertices().len());
        let witness = quiver_isomorphism(&qa, &qb, args.weighted);
        r.out("isomorphic", witness.is_some());
        if let Some(map) = witness {
            r.out("witness", map);
        }
        Ok(r)
    })
}
