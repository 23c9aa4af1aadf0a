//! Text and JSON file formats.
//!
//! Quandle table: first line `n`, then `n` rows of `n` entries, row `x`
//! holding `x*0 .. x*(n-1)`. Cocycle table: header `n m`, then `n^2` lines
//! of `n` values; line `x*n + y` holds `θ(x, y, 0..n)`. Blank lines and
//! `#` comments are ignored in both.

use std::path::Path;

use quiverknot_core::quiver::{QuiverEdge, Vertex};
use quiverknot_core::{Cocycle3, Coloring, FiniteQuandle, Multiset, QuandleMap, WeightedQuiver};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_row(line: &str) -> std::result::Result<Vec<usize>, String> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("`{t}` is not a non-negative integer")))
        .collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

pub fn parse_quandle_table(text: &str) -> std::result::Result<FiniteQuandle, String> {
    let mut lines = data_lines(text);
    let n: usize = lines
        .next()
        .ok_or("empty quandle table")?
        .parse()
        .map_err(|_| "first line must be the order n")?;
    let rows = lines.map(parse_row).collect::<std::result::Result<Vec<_>, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(format!("expected {n} rows of {n} entries"));
    }
    FiniteQuandle::from_table(&rows).map_err(|e| e.to_string())
}

pub fn write_quandle_table(q: &FiniteQuandle) -> String {
    let mut out = format!("{}\n", q.order());
    for row in q.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn read_quandle_table(path: &Path) -> Result<FiniteQuandle> {
    parse_quandle_table(&read(path)?).map_err(|message| AppError::Format { path: path.into(), message })
}

pub fn parse_cocycle_table(text: &str) -> std::result::Result<Cocycle3, String> {
    let mut lines = data_lines(text);
    let header = parse_row(lines.next().ok_or("empty cocycle table")?)?;
    let [n, m] = header[..] else {
        return Err("header must be `n m`".into());
    };
    let mut values = Vec::with_capacity(n * n * n);
    let mut count = 0;
    for line in lines {
        let row = parse_row(line)?;
        if row.len() != n {
            return Err(format!("line {} has {} values, expected {n}", count + 2, row.len()));
        }
        values.extend(row);
        count += 1;
    }
    if count != n * n {
        return Err(format!("expected {} value lines, found {count}", n * n));
    }
    Cocycle3::from_table(n, m, values).map_err(|e| e.to_string())
}

pub fn write_cocycle_table(theta: &Cocycle3) -> String {
    let n = theta.order();
    let mut out = format!("{} {}\n", n, theta.modulus());
    for line in theta.table().chunks(n.max(1)) {
        out.push_str(&join(line));
        out.push('\n');
    }
    out
}

pub fn read_cocycle_table(path: &Path) -> Result<Cocycle3> {
    parse_cocycle_table(&read(path)?).map_err(|message| AppError::Format { path: path.into(), message })
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// `[[value, multiplicity], ...]` sorted by value.
pub fn multiset_json(m: &Multiset) -> Vec<[usize; 2]> {
    m.iter().map(|(v, k)| [v, k]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub coloring: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoDoc {
    pub image: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<[usize; 2]>,
}

/// Quiver JSON: `{vertices: [{id, coloring, weight?}], edges: [[src, dst, endo]], endos: [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<usize>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[usize; 3]>,
    pub endos: Vec<EndoDoc>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &WeightedQuiver) -> Self {
        Self {
            modulus: q.modulus(),
            vertices: q
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, v)| VertexDoc {
                    id,
                    coloring: v.coloring.values().to_vec(),
                    regions: v.regions.clone(),
                    weight: v.weight,
                })
                .collect(),
            edges: q.edges().iter().map(|e| [e.src, e.dst, e.endo]).collect(),
            endos: q
                .endos()
                .iter()
                .map(|f| EndoDoc { image: f.image().to_vec(), affine: f.affine_form().map(|(a, b)| [a, b]) })
                .collect(),
        }
    }

    /// Rebuilds the quiver, re-checking every endomorphism against `q`.
    pub fn to_quiver(&self, q: &FiniteQuandle) -> std::result::Result<WeightedQuiver, String> {
        if self.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err("vertex ids must be 0, 1, 2, ... in order".into());
        }
        let endos = self
            .endos
            .iter()
            .map(|f| QuandleMap::from_image(q, q, f.image.clone()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { coloring: Coloring::new(v.coloring.clone()), regions: v.regions.clone(), weight: v.weight })
            .collect();
        let edges = self.edges.iter().map(|&[src, dst, endo]| QuiverEdge { src, dst, endo }).collect();
        WeightedQuiver::from_parts(vertices, edges, endos, self.modulus).map_err(|e| e.to_string())
    }
}
