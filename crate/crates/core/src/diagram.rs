//! Oriented link diagrams from PD codes.
//!
//! A PD quadruple `(a, b, c, d)` lists the four edge labels around a crossing
//! counterclockwise, starting from the incoming under-strand `a`; `c` is the
//! outgoing under-strand and `b`, `d` belong to the over-strand. Labels of a
//! component are consecutive integers increasing along its orientation.
//!
//! PD labels name *edges* of the 4-valent plane graph. Quandle arcs are the
//! classes of edges glued along over-strands (`b ~ d`).
//!
//! Corner `i` of a crossing is the quadrant between slots `i` and `i + 1`
//! (counterclockwise). With the under-strand drawn bottom to top, corner 0
//! is south-east, 1 north-east, 2 north-west and 3 south-west.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};

pub type ArcId = usize;
pub type RegionId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdForm {
    /// `X(1,4,2,5) X(3,6,4,1) ...`
    Terms,
    /// `[[1,4,2,5],[3,6,4,1],...]`
    Nested,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[usize; 4]>,
    /// Inclusive label range of each component, sorted by lower bound.
    components: Vec<(usize, usize)>,
    form: PdForm,
}

impl PdCode {
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn components(&self) -> &[(usize, usize)] {
        &self.components
    }

    pub fn form(&self) -> PdForm {
        self.form
    }

    fn component_of(&self, label: usize) -> (usize, usize) {
        *self
            .components
            .iter()
            .find(|&&(lo, hi)| lo <= label && label <= hi)
            .expect("validated labels lie in a component")
    }

    /// Successor of `label` along its component.
    pub fn next_label(&self, label: usize) -> usize {
        let (lo, hi) = self.component_of(label);
        if label == hi {
            lo
        } else {
            label + 1
        }
    }

    /// Renders the code in the form it was parsed from.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        match self.form {
            PdForm::Terms => {
                for (k, [a, b, c, d]) in self.crossings.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    let _ = write!(out, "X({a},{b},{c},{d})");
                }
            }
            PdForm::Nested => {
                out.push('[');
                for (k, [a, b, c, d]) in self.crossings.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "[{a},{b},{c},{d}]");
                }
                out.push(']');
            }
        }
        out
    }
}

/// Parses either `X(a,b,c,d) ...` terms (also `X[a,b,c,d]`) or nested
/// brackets `[[a,b,c,d],...]`, then validates label structure.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut lexer = Lexer { src: text.as_bytes(), pos: 0 };
    lexer.skip_ws();
    if lexer.at_end() {
        return Err(Error::Parse { position: 0, message: "no crossings".into() });
    }
    let (crossings, form) = if lexer.peek() == Some(b'[') {
        (lexer.nested()?, PdForm::Nested)
    } else {
        (lexer.terms()?, PdForm::Terms)
    };
    if crossings.is_empty() {
        return Err(Error::Parse { position: lexer.pos, message: "no crossings".into() });
    }
    validate(crossings, form)
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.err(format!("expected '{}', found '{}'", byte as char, c as char)),
                None => self.err(format!("expected '{}', found end of input", byte as char)),
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer label");
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse { position: start, message: "label too large".into() })
    }

    /// `a,b,c,d` followed by `close`; reports arity errors at the offending token.
    fn quadruple(&mut self, close: u8) -> Result<[usize; 4]> {
        let mut q = [0; 4];
        for (i, slot) in q.iter_mut().enumerate() {
            if i > 0 {
                self.skip_ws();
                if self.peek() == Some(close) {
                    return self.err(format!("crossing has {i} labels, expected 4"));
                }
                self.expect(b',')?;
            }
            *slot = self.number()?;
        }
        self.skip_ws();
        if self.peek() == Some(b',') {
            return self.err("crossing has more than 4 labels");
        }
        self.expect(close)?;
        Ok(q)
    }

    fn terms(&mut self) -> Result<Vec<[usize; 4]>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.at_end() {
                return Ok(out);
            }
            if !matches!(self.peek(), Some(b'X' | b'x')) {
                return self.err("expected a crossing term X(a,b,c,d)");
            }
            self.pos += 1;
            self.skip_ws();
            let close = match self.peek() {
                Some(b'(') => b')',
                Some(b'[') => b']',
                _ => return self.err("expected '(' after X"),
            };
            self.pos += 1;
            out.push(self.quadruple(close)?);
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            }
        }
    }

    fn nested(&mut self) -> Result<Vec<[usize; 4]>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
        } else {
            loop {
                self.expect(b'[')?;
                out.push(self.quadruple(b']')?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.err("expected ',' or ']'"),
                }
            }
        }
        self.skip_ws();
        if !self.at_end() {
            return self.err("trailing input after PD code");
        }
        Ok(out)
    }
}

fn validate(crossings: Vec<[usize; 4]>, form: PdForm) -> Result<PdCode> {
    let mut occurrences: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, quad) in crossings.iter().enumerate() {
        for (i, &label) in quad.iter().enumerate() {
            occurrences.entry(label).or_default().push((k, i));
        }
    }
    if let Some((label, occ)) = occurrences.iter().find(|(_, occ)| occ.len() != 2) {
        return Err(Error::Structural(format!(
            "label {label} appears {} times, expected exactly 2",
            occ.len()
        )));
    }

    // Strands pass straight through a crossing: a <-> c and b <-> d.
    let partner = |k: usize, i: usize| crossings[k][(i + 2) % 4];
    let mut components = Vec::new();
    let mut seen: BTreeMap<usize, ()> = BTreeMap::new();
    for &start in occurrences.keys() {
        if seen.contains_key(&start) {
            continue;
        }
        let mut members = Vec::new();
        let mut stack = alloc::vec![start];
        while let Some(label) = stack.pop() {
            if seen.insert(label, ()).is_some() {
                continue;
            }
            members.push(label);
            for &(k, i) in &occurrences[&label] {
                stack.push(partner(k, i));
            }
        }
        members.sort_unstable();
        let (lo, hi) = (members[0], members[members.len() - 1]);
        if hi - lo + 1 != members.len() {
            return Err(Error::Structural(format!(
                "component containing label {lo} is not numbered consecutively ({} labels spanning {lo}..={hi})",
                members.len()
            )));
        }
        components.push((lo, hi));
    }
    components.sort_unstable();

    let pd = PdCode { crossings, components, form };
    for (k, &[a, _, c, _]) in pd.crossings.iter().enumerate() {
        if pd.next_label(a) != c {
            return Err(Error::Structural(format!(
                "crossing {k}: under-strand {a} -> {c} does not follow the component numbering"
            )));
        }
    }
    for k in 0..pd.crossings.len() {
        over_direction(&pd, k)?;
    }
    Ok(pd)
}

/// `true` when the over-strand runs from slot 3 (`d`) to slot 1 (`b`).
fn over_direction(pd: &PdCode, k: usize) -> Result<bool> {
    let [_, b, _, d] = pd.crossings[k];
    let b_to_d = pd.next_label(b) == d;
    let d_to_b = pd.next_label(d) == b;
    match (b_to_d, d_to_b) {
        (true, false) => Ok(false),
        (false, true) => Ok(true),
        (true, true) => {
            // Two-edge component: look at how `b` meets its other end.
            let other = pd
                .crossings
                .iter()
                .enumerate()
                .flat_map(|(k2, q)| q.iter().enumerate().map(move |(i2, &l)| (k2, i2, l)))
                .find(|&(k2, i2, l)| l == b && (k2, i2) != (k, 1));
            match other {
                Some((_, 0, _)) => Ok(true),
                Some((_, 2, _)) => Ok(false),
                _ => Err(Error::Structural(format!(
                    "crossing {k}: cannot orient over-strand {b}/{d}"
                ))),
            }
        }
        (false, false) => Err(Error::Structural(format!(
            "crossing {k}: over-strand labels {b}, {d} are not consecutive"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub over: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
    /// Regions at corners 0..4.
    pub corners: [RegionId; 4],
}

impl Crossing {
    /// The coloring relation `source * over = target`.
    ///
    /// `source` is the under-arc on the right of the over-strand, so the
    /// relation reads `under_in * over = under_out` at positive crossings and
    /// `under_out * over = under_in` at negative ones. For involutory
    /// quandles such as `R_n` both readings coincide.
    pub fn relation(&self) -> Relation {
        match self.sign {
            Sign::Positive => Relation { source: self.under_in, over: self.over, target: self.under_out },
            Sign::Negative => Relation { source: self.under_out, over: self.over, target: self.under_in },
        }
    }

    /// The corner lying to the right of both strands.
    pub fn source_region(&self) -> RegionId {
        match self.sign {
            Sign::Positive => self.corners[0],
            Sign::Negative => self.corners[1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub source: ArcId,
    pub over: ArcId,
    pub target: ArcId,
}

/// An oriented edge of the diagram with the regions on either side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub label: usize,
    pub arc: ArcId,
    pub left: RegionId,
    pub right: RegionId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pd: Option<PdCode>,
    arc_count: usize,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    region_sizes: Vec<usize>,
    unbounded: RegionId,
}

impl Diagram {
    /// The crossingless circle: one arc, an outer and an inner region.
    pub fn unknot() -> Self {
        Self {
            pd: None,
            arc_count: 1,
            crossings: Vec::new(),
            edges: alloc::vec![Edge { label: 0, arc: 0, left: 1, right: 0 }],
            region_sizes: alloc::vec![0, 0],
            unbounded: 0,
        }
    }

    /// Builds with the default unbounded region (the face with most corners).
    pub fn from_pd(pd: &PdCode) -> Result<Self> {
        build_diagram(pd, None)
    }

    pub fn pd(&self) -> Option<&PdCode> {
        self.pd.as_ref()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn region_count(&self) -> usize {
        self.region_sizes.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn unbounded_region(&self) -> RegionId {
        self.unbounded
    }

    /// Number of crossing corners on each region's boundary.
    pub fn region_sizes(&self) -> &[usize] {
        &self.region_sizes
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// The arc carrying PD label `label`.
    pub fn arc_of_label(&self, label: usize) -> Option<ArcId> {
        self.edges.iter().find(|e| e.label == label).map(|e| e.arc)
    }

    /// `(under_in, over, under_out)` at crossing `k`.
    pub fn crossing_relation(&self, k: usize) -> (ArcId, ArcId, ArcId) {
        let c = &self.crossings[k];
        (c.under_in, c.over, c.under_out)
    }

    /// Same diagram with another face designated as unbounded.
    pub fn with_unbounded(&self, region: RegionId) -> Result<Self> {
        if region >= self.region_count() {
            return Err(Error::InvalidParameter(format!("no region {region}")));
        }
        let mut d = self.clone();
        d.unbounded = region;
        Ok(d)
    }

    pub fn emit_pd(&self) -> String {
        self.pd.as_ref().map(PdCode::emit).unwrap_or_default()
    }
}

/// Builds the diagram. `unbounded_corner = Some((k, i))` names corner `i` of
/// crossing `k` as lying in the unbounded face.
pub fn build_diagram(pd: &PdCode, unbounded_corner: Option<(usize, usize)>) -> Result<Diagram> {
    let quads = &pd.crossings;
    let n = quads.len();

    let mut slots_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, quad) in quads.iter().enumerate() {
        for (i, &label) in quad.iter().enumerate() {
            slots_of.entry(label).or_default().push(4 * k + i);
        }
    }
    let mut other_end = alloc::vec![0usize; 4 * n];
    for slots in slots_of.values() {
        other_end[slots[0]] = slots[1];
        other_end[slots[1]] = slots[0];
    }

    // connectivity of the crossing graph
    let mut reached = alloc::vec![false; n];
    let mut stack = alloc::vec![0usize];
    reached[0] = true;
    while let Some(k) = stack.pop() {
        for i in 0..4 {
            let k2 = other_end[4 * k + i] / 4;
            if !reached[k2] {
                reached[k2] = true;
                stack.push(k2);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(Error::Unsupported("split diagrams are not supported".into()));
    }

    // Faces: corner (k,i) continues at the corner (k',j) where (k',j) is the
    // far end of slot (k, i+1).
    let corner_next = |s: usize| {
        let (k, i) = (s / 4, s % 4);
        other_end[4 * k + (i + 1) % 4]
    };
    let mut region_of = alloc::vec![usize::MAX; 4 * n];
    let mut region_sizes = Vec::new();
    for start in 0..4 * n {
        if region_of[start] != usize::MAX {
            continue;
        }
        let id = region_sizes.len();
        let mut size = 0;
        let mut s = start;
        loop {
            if region_of[s] != usize::MAX {
                if s != start {
                    return Err(Error::Structural("face tracing did not close".into()));
                }
                break;
            }
            region_of[s] = id;
            size += 1;
            s = corner_next(s);
        }
        region_sizes.push(size);
    }
    if region_sizes.len() != n + 2 {
        return Err(Error::Structural(format!(
            "rotation system is not planar: {} faces for {n} crossings, expected {}",
            region_sizes.len(),
            n + 2
        )));
    }

    let unbounded = match unbounded_corner {
        Some((k, i)) => {
            if k >= n || i >= 4 {
                return Err(Error::InvalidParameter(format!("no corner {i} at crossing {k}")));
            }
            region_of[4 * k + i]
        }
        None => {
            let max = *region_sizes.iter().max().expect("at least one face");
            region_sizes.iter().position(|&s| s == max).expect("max exists")
        }
    };

    // arcs: union over-strand halves
    let labels: Vec<usize> = slots_of.keys().copied().collect();
    let index_of = |label: usize| labels.binary_search(&label).expect("known label");
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &[_, b, _, d] in quads {
        let (rb, rd) = (find(&mut parent, index_of(b)), find(&mut parent, index_of(d)));
        let (lo, hi) = if rb < rd { (rb, rd) } else { (rd, rb) };
        parent[hi] = lo;
    }
    let mut arc_ids = BTreeMap::new();
    let arc_of: Vec<usize> = (0..labels.len())
        .map(|idx| {
            let root = find(&mut parent, idx);
            let next = arc_ids.len();
            *arc_ids.entry(root).or_insert(next)
        })
        .collect();
    let arc_of_label = |label: usize| arc_of[index_of(label)];

    let mut crossings = Vec::with_capacity(n);
    // slot -> is the edge entering the crossing there
    let mut incoming = alloc::vec![false; 4 * n];
    for (k, &[a, b, c, _]) in quads.iter().enumerate() {
        let d_to_b = over_direction(pd, k)?;
        incoming[4 * k] = true;
        incoming[4 * k + if d_to_b { 3 } else { 1 }] = true;
        crossings.push(Crossing {
            over: arc_of_label(b),
            under_in: arc_of_label(a),
            under_out: arc_of_label(c),
            sign: if d_to_b { Sign::Positive } else { Sign::Negative },
            corners: [0, 1, 2, 3].map(|i| region_of[4 * k + i]),
        });
    }

    let mut edges = Vec::with_capacity(labels.len());
    for (&label, slots) in &slots_of {
        let (s0, s1) = (slots[0], slots[1]);
        if incoming[s0] == incoming[s1] {
            return Err(Error::Structural(format!("edge {label} is not consistently oriented")));
        }
        let head = if incoming[s0] { s0 } else { s1 };
        let (k, i) = (head / 4, head % 4);
        let right = region_of[4 * k + i];
        let left = region_of[4 * k + (i + 3) % 4];
        let tail = other_end[head];
        let (k2, j) = (tail / 4, tail % 4);
        if region_of[4 * k2 + j] != left || region_of[4 * k2 + (j + 3) % 4] != right {
            return Err(Error::Structural(format!("edge {label} has inconsistent sides")));
        }
        edges.push(Edge { label, arc: arc_of_label(label), left, right });
    }

    Ok(Diagram {
        pd: Some(pd.clone()),
        arc_count: arc_ids.len(),
        crossings,
        edges,
        region_sizes,
        unbounded,
    })
}

impl core::fmt::Display for Diagram {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.pd {
            Some(pd) => f.write_str(&pd.emit()),
            None => f.write_str("unknot"),
        }
    }
}

impl core::str::FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}
