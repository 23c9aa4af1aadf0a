//! Quandle coloring quivers, shadow cocycle quivers and the quiver enhanced
//! shadow cocycle polynomial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::cocycle::{weight_sum, Cocycle3};
use crate::coloring::{apply_endo, enumerate_colorings, extend_shadow, Coloring};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::quandle::{FiniteQuandle, QuandleMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuiverEdge {
    pub src: usize,
    pub dst: usize,
    /// Index into [`WeightedQuiver::endos`].
    pub endo: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub coloring: Coloring,
    /// Region labels when the vertex is a shadow coloring.
    pub regions: Option<Vec<usize>>,
    pub weight: Option<usize>,
}

/// Vertices are colorings in enumeration order; each vertex has one
/// outgoing edge per endomorphism in `endos`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedQuiver {
    vertices: Vec<Vertex>,
    edges: Vec<QuiverEdge>,
    endos: Vec<QuandleMap>,
    /// Coefficient modulus of the weights, when weighted.
    modulus: Option<usize>,
}

impl WeightedQuiver {
    /// Assembles a quiver from parts, checking indices and weight presence.
    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: Vec<QuiverEdge>,
        endos: Vec<QuandleMap>,
        modulus: Option<usize>,
    ) -> Result<Self> {
        let n = vertices.len();
        if edges.iter().any(|e| e.src >= n || e.dst >= n || e.endo >= endos.len()) {
            return Err(Error::InvalidParameter("edge refers to a missing vertex or endomorphism".into()));
        }
        let weighted = modulus.is_some();
        if vertices.iter().any(|v| v.weight.is_some() != weighted) {
            return Err(Error::InvalidParameter("weights must be present on all vertices or none".into()));
        }
        Ok(Self { vertices, edges, endos, modulus })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[QuiverEdge] {
        &self.edges
    }

    pub fn endos(&self) -> &[QuandleMap] {
        &self.endos
    }

    pub fn modulus(&self) -> Option<usize> {
        self.modulus
    }

    pub fn is_weighted(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn weights(&self) -> Option<Vec<usize>> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.src] += 1;
        }
        deg
    }

    /// Same quiver with vertices renumbered: old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vertices.len();
        let mut seen = alloc::vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || core::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation of the vertices".into()));
        }
        let mut vertices = self.vertices.clone();
        for (old, v) in self.vertices.iter().enumerate() {
            vertices[perm[old]] = v.clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| QuiverEdge { src: perm[e.src], dst: perm[e.dst], endo: e.endo })
            .collect();
        Ok(Self { vertices, edges, endos: self.endos.clone(), modulus: self.modulus })
    }

    /// Weight histogram `(weight, count)` in increasing weight order.
    pub fn weight_histogram(&self) -> Option<Vec<(usize, usize)>> {
        let weights = self.weights()?;
        let mut h = BTreeMap::new();
        for w in weights {
            *h.entry(w).or_insert(0) += 1;
        }
        Some(h.into_iter().collect())
    }
}

fn check_endos(q: &FiniteQuandle, endos: &[QuandleMap]) -> Result<()> {
    for (i, f) in endos.iter().enumerate() {
        if f.source_order() != q.order() || f.target_order() != q.order() || !q.is_homomorphism(q, f.image()) {
            return Err(Error::InvalidParameter(format!("map #{i} is not an endomorphism of the quandle")));
        }
    }
    Ok(())
}

fn edges_for(colorings: &[Coloring], endos: &[QuandleMap]) -> Result<Vec<QuiverEdge>> {
    let index: BTreeMap<&Coloring, usize> = colorings.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = Vec::with_capacity(colorings.len() * endos.len());
    for (src, c) in colorings.iter().enumerate() {
        for (endo, f) in endos.iter().enumerate() {
            let image = apply_endo(f, c);
            let dst = *index
                .get(&image)
                .ok_or_else(|| Error::Internal("endomorphism image is not an enumerated coloring".into()))?;
            edges.push(QuiverEdge { src, dst, endo });
        }
    }
    Ok(edges)
}

/// `Q^S_X(D)`: one vertex per coloring, one edge `v -> f∘v` per `f` in `endos`.
pub fn coloring_quiver(d: &Diagram, q: &FiniteQuandle, endos: &[QuandleMap]) -> Result<WeightedQuiver> {
    check_endos(q, endos)?;
    let colorings = enumerate_colorings(d, q);
    let edges = edges_for(&colorings, endos)?;
    let vertices = colorings
        .into_iter()
        .map(|coloring| Vertex { coloring, regions: None, weight: None })
        .collect();
    Ok(WeightedQuiver { vertices, edges, endos: endos.to_vec(), modulus: None })
}

/// `SQ^{S,θ}_X(D, a)`: shadow colorings with `a` on the unbounded region,
/// weighted by their cocycle weight sums.
pub fn shadow_cocycle_quiver(
    d: &Diagram,
    q: &FiniteQuandle,
    endos: &[QuandleMap],
    a: usize,
    theta: &Cocycle3,
) -> Result<WeightedQuiver> {
    check_endos(q, endos)?;
    if theta.order() != q.order() {
        return Err(Error::InvalidParameter("cocycle and quandle orders differ".into()));
    }
    let colorings = enumerate_colorings(d, q);
    let edges = edges_for(&colorings, endos)?;
    let mut vertices = Vec::with_capacity(colorings.len());
    for coloring in colorings {
        let shadow = extend_shadow(d, q, &coloring, a)?;
        let weight = weight_sum(d, &shadow, theta).0;
        vertices.push(Vertex { coloring, regions: Some(shadow.regions().to_vec()), weight: Some(weight) });
    }
    Ok(WeightedQuiver { vertices, edges, endos: endos.to_vec(), modulus: Some(theta.modulus()) })
}

/// A polynomial in `s, t` with exponents in `Z_m` and natural coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial2 {
    terms: BTreeMap<(usize, usize), u64>,
}

impl Polynomial2 {
    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: u64) {
        if c > 0 {
            *self.terms.entry((i, j)).or_default() += c;
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: usize) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for Polynomial2 {
    /// Terms in `(i, j)` order joined by `" + "`, e.g. `5 + 10st + 10s^4t^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c != 1 || (i == 0 && j == 0) {
                write!(f, "{c}")?;
            }
            write_power(f, 's', i)?;
            write_power(f, 't', j)?;
        }
        Ok(())
    }
}

/// `Σ_{edges (v,w)} s^{ρ(v)} t^{ρ(w)}`.
pub fn cocycle_polynomial(quiver: &WeightedQuiver) -> Result<Polynomial2> {
    let weights = quiver
        .weights()
        .ok_or_else(|| Error::InvalidParameter("quiver has no vertex weights".into()))?;
    let mut p = Polynomial2::default();
    for e in &quiver.edges {
        p.add_term(weights[e.src], weights[e.dst], 1);
    }
    Ok(p)
}

fn vertex_label(v: &Vertex) -> String {
    let mut s = String::from("[");
    for (i, x) in v.coloring.values().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
    s.push(']');
    if let Some(w) = v.weight {
        let _ = write!(s, " w={w}");
    }
    s
}

/// DOT digraph, one line per vertex and per edge (parallel edges repeated).
pub fn to_dot(quiver: &WeightedQuiver) -> String {
    render_dot(quiver, false)
}

/// DOT with parallel edges merged into one line labeled by multiplicity.
/// For display only.
pub fn to_dot_collapsed(quiver: &WeightedQuiver) -> String {
    render_dot(quiver, true)
}

fn render_dot(quiver: &WeightedQuiver, collapse: bool) -> String {
    if quiver.vertices.is_empty() {
        return String::from("digraph { }\n");
    }
    let mut out = String::from("digraph {\n");
    for (i, v) in quiver.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{i}: {}\"];", vertex_label(v));
    }
    if collapse {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &quiver.edges {
            *counts.entry((e.src, e.dst)).or_default() += 1;
        }
        for ((src, dst), k) in counts {
            let _ = writeln!(out, "  v{src} -> v{dst} [label=\"x{k}\"];");
        }
    } else {
        for e in &quiver.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"f{}\"];", e.src, e.dst, e.endo);
        }
    }
    out.push_str("}\n");
    out
}
