//! Arc colorings, shadow colorings and their enumeration.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use crate::diagram::{Diagram, Relation};
use crate::error::{Error, Result};
use crate::modular::gcd;
use crate::quandle::{FiniteQuandle, QuandleMap};
use crate::snf::elementary_divisors;

const UNSET: usize = usize::MAX;

/// Quandle elements indexed by arc id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    pub fn trivial(arcs: usize, x: usize) -> Self {
        Self(alloc::vec![x; arcs])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_valid(&self, d: &Diagram, q: &FiniteQuandle) -> bool {
        self.0.len() == d.arc_count()
            && self.0.iter().all(|&v| v < q.order())
            && d.crossings().iter().all(|c| {
                let r = c.relation();
                q.op(self.0[r.source], self.0[r.over]) == self.0[r.target]
            })
    }
}

/// An arc coloring extended to the regions of the diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShadowColoring {
    arcs: Coloring,
    regions: Vec<usize>,
}

impl ShadowColoring {
    pub fn new(arcs: Coloring, regions: Vec<usize>) -> Self {
        Self { arcs, regions }
    }

    pub fn arcs(&self) -> &Coloring {
        &self.arcs
    }

    pub fn regions(&self) -> &[usize] {
        &self.regions
    }

    /// Checks the crossing relations and `region(left) = region(right) * arc`
    /// across every edge.
    pub fn is_valid(&self, d: &Diagram, q: &FiniteQuandle) -> bool {
        self.arcs.is_valid(d, q)
            && self.regions.len() == d.region_count()
            && self.regions.iter().all(|&v| v < q.order())
            && d.edges()
                .iter()
                .all(|e| q.op(self.regions[e.right], self.arcs.0[e.arc]) == self.regions[e.left])
    }
}

/// All colorings of `d` by `q`, sorted lexicographically.
pub fn enumerate_colorings(d: &Diagram, q: &FiniteQuandle) -> Vec<Coloring> {
    let relations: Vec<Relation> = d.crossings().iter().map(|c| c.relation()).collect();
    let mut out = Vec::new();
    let assign = alloc::vec![UNSET; d.arc_count()];
    search(assign, &relations, q, &mut out);
    out.sort_unstable();
    out
}

fn search(mut assign: Vec<usize>, relations: &[Relation], q: &FiniteQuandle, out: &mut Vec<Coloring>) {
    if !propagate(&mut assign, relations, q) {
        return;
    }
    match assign.iter().position(|&v| v == UNSET) {
        None => out.push(Coloring(assign)),
        Some(arc) => {
            for v in 0..q.order() {
                let mut next = assign.clone();
                next[arc] = v;
                search(next, relations, q, out);
            }
        }
    }
}

/// Forces labels through crossings with two known ends. Returns `false` on conflict.
fn propagate(assign: &mut [usize], relations: &[Relation], q: &FiniteQuandle) -> bool {
    loop {
        let mut changed = false;
        for r in relations {
            let (s, o, t) = (assign[r.source], assign[r.over], assign[r.target]);
            if s != UNSET && o != UNSET {
                let v = q.op(s, o);
                if t == UNSET {
                    assign[r.target] = v;
                    changed = true;
                } else if t != v {
                    return false;
                }
            } else if o != UNSET && t != UNSET {
                assign[r.source] = q.inv_op(t, o);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

/// The integer relation matrix of `R_n`-colorings and its elementary divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringMatrix {
    rows: Vec<Vec<i64>>,
    arcs: usize,
    divisors: Vec<u128>,
}

impl ColoringMatrix {
    /// One row `under_in - 2*over + under_out` per crossing.
    pub fn new(d: &Diagram) -> Result<Self> {
        let arcs = d.arc_count();
        let rows: Vec<Vec<i64>> = d
            .crossings()
            .iter()
            .map(|c| {
                let mut row = alloc::vec![0i64; arcs];
                row[c.under_in] += 1;
                row[c.under_out] += 1;
                row[c.over] -= 2;
                row
            })
            .collect();
        let divisors = elementary_divisors(&rows)?;
        Ok(Self { rows, arcs, divisors })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn elementary_divisors(&self) -> &[u128] {
        &self.divisors
    }

    /// Number of solutions over `Z_n`: `n^(arcs - r) * prod gcd(d_i, n)`.
    pub fn solution_count(&self, n: usize) -> Result<u128> {
        if n == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let n128 = n as u128;
        let free = (self.arcs - self.divisors.len()) as u32;
        let mut count = n128.checked_pow(free).ok_or(Error::Overflow)?;
        for &d in &self.divisors {
            let g = gcd((d % n128) as u64, n as u64) as u128;
            count = count.checked_mul(g).ok_or(Error::Overflow)?;
        }
        Ok(count)
    }

    /// Product of the nonzero elementary divisors (the knot determinant for knots).
    pub fn torsion_order(&self) -> Result<u128> {
        self.divisors.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d).ok_or(Error::Overflow))
    }
}

/// `|Col_{R_n}(d)|` from the Smith normal form of the relation matrix.
pub fn count_colorings_dihedral(d: &Diagram, n: usize) -> Result<u128> {
    ColoringMatrix::new(d)?.solution_count(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Breadth,
    Depth,
}

/// The unique shadow coloring extending `c` with `a` on the unbounded region.
pub fn extend_shadow(d: &Diagram, q: &FiniteQuandle, c: &Coloring, a: usize) -> Result<ShadowColoring> {
    extend_shadow_by(d, q, c, a, Traversal::Breadth)
}

pub fn extend_shadow_by(
    d: &Diagram,
    q: &FiniteQuandle,
    c: &Coloring,
    a: usize,
    order: Traversal,
) -> Result<ShadowColoring> {
    if a >= q.order() {
        return Err(Error::InvalidParameter(format!("{a} is not an element of a quandle of order {}", q.order())));
    }
    if c.0.len() != d.arc_count() {
        return Err(Error::InvalidParameter("coloring does not match the diagram".into()));
    }
    // (neighbor, arc, neighbor is on the left)
    let mut adjacent: Vec<Vec<(usize, usize, bool)>> = alloc::vec![Vec::new(); d.region_count()];
    for e in d.edges() {
        adjacent[e.right].push((e.left, e.arc, true));
        adjacent[e.left].push((e.right, e.arc, false));
    }
    let mut regions = alloc::vec![UNSET; d.region_count()];
    regions[d.unbounded_region()] = a;
    let mut frontier = VecDeque::from([d.unbounded_region()]);
    loop {
        let next = match order {
            Traversal::Breadth => frontier.pop_front(),
            Traversal::Depth => frontier.pop_back(),
        };
        let Some(r) = next else { break };
        for &(nb, arc, nb_is_left) in &adjacent[r] {
            if regions[nb] != UNSET {
                continue;
            }
            let x = c.0[arc];
            regions[nb] = if nb_is_left { q.op(regions[r], x) } else { q.inv_op(regions[r], x) };
            frontier.push_back(nb);
        }
    }
    let shadow = ShadowColoring { arcs: c.clone(), regions };
    if shadow.regions.contains(&UNSET) || !shadow.is_valid(d, q) {
        return Err(Error::Internal("shadow extension is inconsistent".into()));
    }
    Ok(shadow)
}

/// Every shadow coloring: each arc coloring with each unbounded-region label.
pub fn shadow_colorings(d: &Diagram, q: &FiniteQuandle) -> Result<Vec<ShadowColoring>> {
    let colorings = enumerate_colorings(d, q);
    let mut out = Vec::with_capacity(colorings.len() * q.order());
    for c in &colorings {
        for a in 0..q.order() {
            out.push(extend_shadow(d, q, c, a)?);
        }
    }
    Ok(out)
}

/// `f ∘ c`.
pub fn apply_endo(f: &QuandleMap, c: &Coloring) -> Coloring {
    Coloring(c.0.iter().map(|&x| f.apply(x)).collect())
}
