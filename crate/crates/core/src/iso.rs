//! Isomorphism of directed multigraphs with optional vertex weights.
//!
//! Each graph is first collapsed to its twin classes (vertices whose swap is
//! an automorphism); quivers of dihedral quandles have huge twin classes.
//! Colors are then refined jointly on both quotients (neighbor color
//! histograms with edge multiplicities) and the search individualizes one
//! class at a time when refinement stalls. Every bijection found is checked
//! edge by edge on the original graphs. Edge labels are ignored.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::quiver::WeightedQuiver;

/// Aggregated adjacency: `(neighbor, multiplicity)` sorted by neighbor.
struct Multigraph {
    out: Vec<Vec<(usize, u32)>>,
    inc: Vec<Vec<(usize, u32)>>,
    edge_count: usize,
}

impl Multigraph {
    fn new(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Self {
        let mut out_map: Vec<BTreeMap<usize, u32>> = alloc::vec![BTreeMap::new(); n];
        let mut in_map: Vec<BTreeMap<usize, u32>> = alloc::vec![BTreeMap::new(); n];
        let mut edge_count = 0;
        for (s, t) in edges {
            *out_map[s].entry(t).or_default() += 1;
            *in_map[t].entry(s).or_default() += 1;
            edge_count += 1;
        }
        let flatten = |m: Vec<BTreeMap<usize, u32>>| -> Vec<Vec<(usize, u32)>> {
            m.into_iter().map(|row| row.into_iter().collect()).collect()
        };
        Self { out: flatten(out_map), inc: flatten(in_map), edge_count }
    }

    /// From `(src, dst, multiplicity)` triples, each pair listed at most once.
    fn from_multiplicities(n: usize, triples: &[(usize, usize, u32)]) -> Self {
        let mut out = alloc::vec![Vec::new(); n];
        let mut inc = alloc::vec![Vec::new(); n];
        let mut edge_count = 0;
        for &(s, t, k) in triples {
            out[s].push((t, k));
            inc[t].push((s, k));
            edge_count += k as usize;
        }
        for row in out.iter_mut().chain(inc.iter_mut()) {
            row.sort_unstable();
        }
        Self { out, inc, edge_count }
    }

    fn len(&self) -> usize {
        self.out.len()
    }

    fn multiplicity(&self, s: usize, t: usize) -> u32 {
        match self.out[s].binary_search_by_key(&t, |&(v, _)| v) {
            Ok(i) => self.out[s][i].1,
            Err(_) => 0,
        }
    }
}

type Signature = (usize, Vec<(usize, u32)>, Vec<(usize, u32)>);

fn signature(g: &Multigraph, colors: &[usize], v: usize) -> Signature {
    let collect = |adj: &[(usize, u32)]| {
        let mut h: BTreeMap<usize, u32> = BTreeMap::new();
        for &(u, k) in adj {
            *h.entry(colors[u]).or_default() += k;
        }
        h.into_iter().collect::<Vec<_>>()
    };
    (colors[v], collect(&g.out[v]), collect(&g.inc[v]))
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

fn class_count(colors: &[usize]) -> usize {
    histogram(colors).len()
}

/// Refines both colorings to a common stable partition. `None` when the
/// color histograms diverge.
fn refine(g1: &Multigraph, g2: &Multigraph, c1: &mut Vec<usize>, c2: &mut Vec<usize>) -> Option<()> {
    loop {
        let before = class_count(c1);
        let s1: Vec<Signature> = (0..g1.len()).map(|v| signature(g1, c1, v)).collect();
        let s2: Vec<Signature> = (0..g2.len()).map(|v| signature(g2, c2, v)).collect();
        let mut all: Vec<&Signature> = s1.iter().chain(s2.iter()).collect();
        all.sort();
        all.dedup();
        let rank = |s: &Signature| all.binary_search(&s).expect("signature was collected");
        *c1 = s1.iter().map(rank).collect();
        *c2 = s2.iter().map(rank).collect();
        if histogram(c1) != histogram(c2) {
            return None;
        }
        if class_count(c1) == before {
            return Some(());
        }
    }
}

fn search(g1: &Multigraph, g2: &Multigraph, c1: Vec<usize>, c2: Vec<usize>) -> Option<Vec<usize>> {
    let hist = histogram(&c1);
    let target = hist.iter().filter(|(_, &k)| k > 1).min_by_key(|(&c, &k)| (k, c)).map(|(&c, _)| c);
    let Some(color) = target else {
        let mut by_color = BTreeMap::new();
        for (w, &c) in c2.iter().enumerate() {
            by_color.insert(c, w);
        }
        let map: Vec<usize> = c1.iter().map(|c| by_color[c]).collect();
        return verify(g1, g2, &map).then_some(map);
    };
    let fresh = c1.iter().chain(c2.iter()).max().map_or(0, |m| m + 1);
    let v = c1.iter().position(|&c| c == color).expect("color present");
    for w in (0..g2.len()).filter(|&w| c2[w] == color) {
        let (mut n1, mut n2) = (c1.clone(), c2.clone());
        n1[v] = fresh;
        n2[w] = fresh;
        if refine(g1, g2, &mut n1, &mut n2).is_some() {
            if let Some(map) = search(g1, g2, n1, n2) {
                return Some(map);
            }
        }
    }
    None
}

fn verify(g1: &Multigraph, g2: &Multigraph, map: &[usize]) -> bool {
    let mut hit = alloc::vec![false; g2.len()];
    if map.iter().any(|&w| core::mem::replace(&mut hit[w], true)) {
        return false;
    }
    g1.edge_count == g2.edge_count
        && (0..g1.len()).all(|s| g1.out[s].iter().all(|&(t, k)| g2.multiplicity(map[s], map[t]) == k))
}

fn same_except(a: &[(usize, u32)], b: &[(usize, u32)], u: usize, v: usize) -> bool {
    let keep = |&&(x, _): &&(usize, u32)| x != u && x != v;
    a.iter().filter(keep).eq(b.iter().filter(keep))
}

/// `u` and `v` can be swapped by an automorphism preserving `colors`.
fn are_twins(g: &Multigraph, colors: &[usize], u: usize, v: usize) -> bool {
    colors[u] == colors[v]
        && g.multiplicity(u, u) == g.multiplicity(v, v)
        && g.multiplicity(u, v) == g.multiplicity(v, u)
        && same_except(&g.out[u], &g.out[v], u, v)
        && same_except(&g.inc[u], &g.inc[v], u, v)
}

/// A graph collapsed to its twin classes. Twinship is an equivalence
/// relation (conjugating one transposition by another gives the third), and
/// all members of a class see every other class alike, so one
/// representative per class carries the edges.
struct Quotient {
    graph: Multigraph,
    members: Vec<Vec<usize>>,
    /// `(color, class size, loops per member, edges between two members)`
    labels: Vec<(usize, usize, u32, u32)>,
}

fn quotient(g: &Multigraph, colors: &[usize]) -> Quotient {
    let n = g.len();
    // cheap invariants first, so twin tests only run within buckets
    let key = |v: usize| (colors[v], g.multiplicity(v, v), g.out[v].len(), g.inc[v].len());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));

    let mut class = alloc::vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut bucket_start = 0;
    for i in 0..n {
        let v = order[i];
        if i > 0 && key(order[i - 1]) != key(v) {
            bucket_start = members.len();
        }
        let found = (bucket_start..members.len()).find(|&c| are_twins(g, colors, members[c][0], v));
        match found {
            Some(c) => {
                class[v] = c;
                members[c].push(v);
            }
            None => {
                class[v] = members.len();
                members.push(alloc::vec![v]);
            }
        }
    }

    let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
    let mut triples = Vec::new();
    for (a, &r) in reps.iter().enumerate() {
        for &(x, k) in &g.out[r] {
            let b = class[x];
            if b != a && x == reps[b] {
                triples.push((a, b, k));
            }
        }
    }
    let labels = members
        .iter()
        .map(|m| {
            let mutual = if m.len() > 1 { g.multiplicity(m[0], m[1]) } else { 0 };
            (colors[m[0]], m.len(), g.multiplicity(m[0], m[0]), mutual)
        })
        .collect();
    Quotient { graph: Multigraph::from_multiplicities(members.len(), &triples), members, labels }
}

/// Decides whether two quivers are isomorphic as directed multigraphs.
///
/// With `respect_weights`, the bijection must also preserve vertex weights
/// (both quivers must then carry weights). On success returns a verified
/// vertex bijection `map` with `a`'s vertex `v` sent to `b`'s vertex `map[v]`.
pub fn quiver_isomorphism(a: &WeightedQuiver, b: &WeightedQuiver, respect_weights: bool) -> Option<Vec<usize>> {
    let n = a.vertices().len();
    if n != b.vertices().len() || a.edges().len() != b.edges().len() {
        return None;
    }
    let g1 = Multigraph::new(n, a.edges().iter().map(|e| (e.src, e.dst)));
    let g2 = Multigraph::new(n, b.edges().iter().map(|e| (e.src, e.dst)));

    let (w1, w2) = if respect_weights {
        if a.modulus() != b.modulus() {
            return None;
        }
        (a.weights()?, b.weights()?)
    } else {
        (alloc::vec![0; n], alloc::vec![0; n])
    };
    let (q1, q2) = (quotient(&g1, &w1), quotient(&g2, &w2));
    if q1.members.len() != q2.members.len() {
        return None;
    }
    let mut all: Vec<_> = q1.labels.iter().chain(q2.labels.iter()).collect();
    all.sort();
    all.dedup();
    let rank = |l: &(usize, usize, u32, u32)| all.binary_search(&l).expect("label was collected");
    let mut c1: Vec<usize> = q1.labels.iter().map(rank).collect();
    let mut c2: Vec<usize> = q2.labels.iter().map(rank).collect();
    refine(&q1.graph, &q2.graph, &mut c1, &mut c2)?;
    let class_map = search(&q1.graph, &q2.graph, c1, c2)?;

    let mut map = alloc::vec![0; n];
    for (c, &d) in class_map.iter().enumerate() {
        for (&u, &w) in q1.members[c].iter().zip(&q2.members[d]) {
            map[u] = w;
        }
    }
    if !verify(&g1, &g2, &map) || (0..n).any(|v| w1[v] != w2[map[v]]) {
        return None;
    }
    Some(map)
}

pub fn quiver_isomorphic(a: &WeightedQuiver, b: &WeightedQuiver, respect_weights: bool) -> bool {
    quiver_isomorphism(a, b, respect_weights).is_some()
}
