//! Finite quandles backed by operation tables, and the maps between them.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Axiom, AxiomViolation, Error, Result};
use crate::modular::{gcd, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuandleKind {
    Dihedral(usize),
    Alexander { order: usize, t: usize },
    Table,
}

/// A quandle on `{0, .., n-1}`.
///
/// `op[x*n + y] = x*y` and `inv[z*n + y]` is the unique `x` with `x*y = z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    order: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
    kind: QuandleKind,
}

impl FiniteQuandle {
    /// The dihedral quandle `R_n`: `x*y = 2y - x (mod n)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dihedral quandle needs n >= 1".into()));
        }
        let op = table_from_fn(n, |x, y| reduce(2 * y as i64 - x as i64, n));
        Self::from_parts(n, op, QuandleKind::Dihedral(n))
    }

    /// The Alexander quandle on `Z_n`: `x*y = t*x + (1-t)*y (mod n)`.
    pub fn alexander(n: usize, t: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Alexander quandle needs n >= 1".into()));
        }
        let t = reduce(t, n);
        if gcd(t as u64, n as u64) != 1 {
            return Err(Error::InvalidParameter(format!(
                "t = {t} is not a unit mod {n}; right translations would not be bijective"
            )));
        }
        let ti = t as i64;
        let op = table_from_fn(n, |x, y| reduce(ti * x as i64 + (1 - ti) * y as i64, n));
        Self::from_parts(n, op, QuandleKind::Alexander { order: n, t })
    }

    /// Validates `rows` (row `x` holds `x*0 .. x*(n-1)`) against Q1, Q2, Q3.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty operation table".into()));
        }
        let mut op = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidParameter(format!(
                    "entry {bad} in row {x} is out of range 0..{n}"
                )));
            }
            op.extend_from_slice(row);
        }
        Self::from_parts(n, op, QuandleKind::Table)
    }

    fn from_parts(n: usize, op: Vec<usize>, kind: QuandleKind) -> Result<Self> {
        for x in 0..n {
            if op[x * n + x] != x {
                return Err(Error::Axiom(AxiomViolation { axiom: Axiom::Q1, x, y: None, z: None }));
            }
        }
        let mut inv = alloc::vec![usize::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let z = op[x * n + y];
                if inv[z * n + y] != usize::MAX {
                    return Err(Error::Axiom(AxiomViolation {
                        axiom: Axiom::Q2,
                        x,
                        y: Some(y),
                        z: None,
                    }));
                }
                inv[z * n + y] = x;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = op[x * n + y];
                for z in 0..n {
                    let lhs = op[xy * n + z];
                    let rhs = op[op[x * n + z] * n + op[y * n + z]];
                    if lhs != rhs {
                        return Err(Error::Axiom(AxiomViolation {
                            axiom: Axiom::Q3,
                            x,
                            y: Some(y),
                            z: Some(z),
                        }));
                    }
                }
            }
        }
        Ok(Self { order: n, op, inv, kind })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> QuandleKind {
        self.kind
    }

    /// `Some(n)` for `R_n`.
    pub fn dihedral_order(&self) -> Option<usize> {
        match self.kind {
            QuandleKind::Dihedral(n) => Some(n),
            _ => None,
        }
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.order + y]
    }

    /// The unique `x` with `x*y = z`.
    #[inline]
    pub fn inv_op(&self, z: usize, y: usize) -> usize {
        self.inv[z * self.order + y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.op.chunks(self.order)
    }

    /// `true` when `x*y*y = x` for all `x, y`.
    pub fn is_involutory(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.op(self.op(x, y), y) == x))
    }

    /// Re-checks all three axioms exhaustively.
    pub fn check_axioms(&self) -> core::result::Result<(), AxiomViolation> {
        match Self::from_parts(self.order, self.op.clone(), self.kind) {
            Ok(_) => Ok(()),
            Err(Error::Axiom(v)) => Err(v),
            Err(_) => unreachable!("from_parts only reports axiom violations"),
        }
    }

    pub fn is_homomorphism(&self, target: &FiniteQuandle, image: &[usize]) -> bool {
        image.len() == self.order
            && image.iter().all(|&v| v < target.order)
            && (0..self.order).all(|x| {
                (0..self.order).all(|y| image[self.op(x, y)] == target.op(image[x], image[y]))
            })
    }
}

fn table_from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut op = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            op.push(f(x, y));
        }
    }
    op
}

/// A map between finite quandles, stored by its image vector.
///
/// `affine` is `Some((a, b))` with `image[x] = a*x + b (mod n)` exactly when
/// both ends are dihedral quandles of the same order `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuandleMap {
    source_order: usize,
    target_order: usize,
    image: Vec<usize>,
    affine: Option<(usize, usize)>,
}

impl QuandleMap {
    pub fn identity(q: &FiniteQuandle) -> Self {
        let n = q.order();
        Self {
            source_order: n,
            target_order: n,
            image: (0..n).collect(),
            affine: q.dihedral_order().map(|_| (reduce(1, n), 0)),
        }
    }

    /// The constant map `source -> target` with value `b`.
    pub fn constant(source: &FiniteQuandle, target: &FiniteQuandle, b: usize) -> Result<Self> {
        let image = alloc::vec![b; source.order()];
        Self::from_image(source, target, image)
    }

    /// `x -> a*x + b` on `R_n`.
    pub fn affine(q: &FiniteQuandle, a: i64, b: i64) -> Result<Self> {
        let n = q
            .dihedral_order()
            .ok_or_else(|| Error::InvalidParameter("affine maps need a dihedral quandle".into()))?;
        let (a, b) = (reduce(a, n), reduce(b, n));
        let image = (0..n).map(|x| (a * x + b) % n).collect();
        let map = Self { source_order: n, target_order: n, image, affine: Some((a, b)) };
        if !q.is_homomorphism(q, &map.image) {
            return Err(Error::InvalidParameter(format!("x -> {a}x + {b} is not an endomorphism of R_{n}")));
        }
        Ok(map)
    }

    /// Checks the homomorphism property and attaches the affine form when it applies.
    pub fn from_image(source: &FiniteQuandle, target: &FiniteQuandle, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&v| v >= target.order()) {
            return Err(Error::InvalidParameter("image vector does not fit the quandle orders".into()));
        }
        if !source.is_homomorphism(target, &image) {
            return Err(Error::InvalidParameter("map is not a quandle homomorphism".into()));
        }
        Ok(Self::new_unchecked(source, target, image))
    }

    fn new_unchecked(source: &FiniteQuandle, target: &FiniteQuandle, image: Vec<usize>) -> Self {
        let affine = match (source.dihedral_order(), target.dihedral_order()) {
            (Some(n), Some(m)) if n == m => affine_form(&image, n),
            _ => None,
        };
        Self { source_order: source.order(), target_order: target.order(), image, affine }
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn affine_form(&self) -> Option<(usize, usize)> {
        self.affine
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source_order != self.target_order {
            return false;
        }
        let mut seen = alloc::vec![false; self.target_order];
        self.image.iter().all(|&v| !core::mem::replace(&mut seen[v], true))
    }

    pub fn is_constant(&self) -> bool {
        self.image.windows(2).all(|w| w[0] == w[1])
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &QuandleMap) -> Result<QuandleMap> {
        if g.target_order != self.source_order {
            return Err(Error::InvalidParameter(format!(
                "cannot compose: inner map lands in order {}, outer map starts at order {}",
                g.target_order, self.source_order
            )));
        }
        let image = g.image.iter().map(|&x| self.image[x]).collect();
        let affine = match (self.affine, g.affine) {
            (Some((a1, b1)), Some((a2, b2))) => {
                let n = self.target_order;
                Some((a1 * a2 % n, (a1 * b2 + b1) % n))
            }
            _ => None,
        };
        Ok(QuandleMap {
            source_order: g.source_order,
            target_order: self.target_order,
            image,
            affine,
        })
    }
}

fn affine_form(image: &[usize], n: usize) -> Option<(usize, usize)> {
    let b = image[0];
    let a = if n > 1 { (image[1] + n - b) % n } else { 0 };
    (0..n).all(|x| image[x] == (a * x + b) % n).then_some((a, b))
}

/// All homomorphisms `source -> target`, sorted by image vector.
pub fn enumerate_homs(source: &FiniteQuandle, target: &FiniteQuandle) -> Vec<QuandleMap> {
    match (source.dihedral_order(), target.dihedral_order()) {
        (Some(n), Some(m)) if n == m => affine_homs(source),
        _ => backtrack_homs(source, target),
    }
}

/// Bijective endomorphisms, sorted by image vector.
pub fn enumerate_autos(q: &FiniteQuandle) -> Vec<QuandleMap> {
    enumerate_homs(q, q).into_iter().filter(QuandleMap::is_bijective).collect()
}

fn affine_homs(q: &FiniteQuandle) -> Vec<QuandleMap> {
    let n = q.order();
    let mut out: Vec<QuandleMap> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            let image: Vec<usize> = (0..n).map(|x| (a * x + b) % n).collect();
            q.is_homomorphism(q, &image).then_some(QuandleMap {
                source_order: n,
                target_order: n,
                image,
                affine: Some((a, b)),
            })
        })
        .collect();
    out.sort_by(|f, g| f.image.cmp(&g.image));
    out.dedup_by(|f, g| f.image == g.image);
    out
}

fn backtrack_homs(source: &FiniteQuandle, target: &FiniteQuandle) -> Vec<QuandleMap> {
    let n = source.order();
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    extend_hom(source, target, &mut image, &mut out);
    out
}

fn extend_hom(source: &FiniteQuandle, target: &FiniteQuandle, image: &mut Vec<usize>, out: &mut Vec<QuandleMap>) {
    let x = image.len();
    if x == source.order() {
        out.push(QuandleMap::new_unchecked(source, target, image.clone()));
        return;
    }
    for v in 0..target.order() {
        image.push(v);
        if consistent_through(source, target, image, x) {
            extend_hom(source, target, image, out);
        }
        image.pop();
    }
}

/// Checks every relation `u*w = z` whose largest index is the newly assigned `x`.
fn consistent_through(source: &FiniteQuandle, target: &FiniteQuandle, image: &[usize], x: usize) -> bool {
    for u in 0..=x {
        for w in 0..=x {
            let z = source.op(u, w);
            if z > x || (u != x && w != x && z != x) {
                continue;
            }
            if image[z] != target.op(image[u], image[w]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_force_homs(source: &FiniteQuandle, target: &FiniteQuandle) -> Vec<Vec<usize>> {
        let (n, m) = (source.order(), target.order());
        let total = m.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut image = vec![0; n];
            for slot in image.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            if source.is_homomorphism(target, &image) {
                out.push(image);
            }
        }
        out
    }

    #[test]
    fn dihedral_values() {
        assert_eq!(FiniteQuandle::dihedral(3).unwrap().op(0, 1), 2);
        assert_eq!(FiniteQuandle::dihedral(5).unwrap().op(1, 3), 0);
        let r1 = FiniteQuandle::dihedral(1).unwrap();
        assert_eq!(r1.op(0, 0), 0);
        assert!(matches!(FiniteQuandle::dihedral(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn alexander_values() {
        assert_eq!(FiniteQuandle::alexander(5, 2).unwrap().op(1, 3), 4);
        let a = FiniteQuandle::alexander(5, 4).unwrap();
        let r = FiniteQuandle::dihedral(5).unwrap();
        assert!(a.rows().eq(r.rows()));
        assert!(matches!(FiniteQuandle::alexander(4, 2), Err(Error::InvalidParameter(_))));
        assert!(!FiniteQuandle::alexander(5, 2).unwrap().is_involutory());
    }

    #[test]
    fn table_validation() {
        let r3: Vec<Vec<usize>> = FiniteQuandle::dihedral(3).unwrap().rows().map(|r| r.to_vec()).collect();
        assert!(FiniteQuandle::from_table(&r3).is_ok());

        let mut bad = r3.clone();
        bad[0][0] = 1;
        assert_eq!(
            FiniteQuandle::from_table(&bad),
            Err(Error::Axiom(AxiomViolation { axiom: Axiom::Q1, x: 0, y: None, z: None }))
        );

        let trivial = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteQuandle::from_table(&trivial).is_ok());

        // idempotent, bijective columns, not self-distributive
        let q3_fail = vec![vec![0, 2, 1], vec![2, 1, 0], vec![0, 2, 2]];
        assert!(matches!(FiniteQuandle::from_table(&q3_fail), Err(Error::Axiom(_))));

        let q2_fail = vec![vec![0, 0, 0], vec![0, 1, 1], vec![2, 2, 2]];
        assert!(matches!(
            FiniteQuandle::from_table(&q2_fail),
            Err(Error::Axiom(AxiomViolation { axiom: Axiom::Q2, .. }))
        ));
        assert!(matches!(FiniteQuandle::from_table(&[vec![0, 2], vec![1, 1]]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn constructed_quandles_satisfy_axioms() {
        for n in 1..=30 {
            assert!(FiniteQuandle::dihedral(n).unwrap().check_axioms().is_ok());
            for t in 1..n as i64 {
                if let Ok(q) = FiniteQuandle::alexander(n, t) {
                    assert!(q.check_axioms().is_ok());
                }
            }
        }
    }

    #[test]
    fn endomorphism_counts_match_brute_force() {
        let r5 = FiniteQuandle::dihedral(5).unwrap();
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let r2 = FiniteQuandle::dihedral(2).unwrap();
        assert_eq!(brute_force_homs(&r5, &r5).len(), 25);
        assert_eq!(enumerate_homs(&r5, &r5).len(), 25);
        assert_eq!(brute_force_homs(&r3, &r3).len(), 9);
        assert_eq!(enumerate_homs(&r3, &r3).len(), 9);

        let hom23 = enumerate_homs(&r2, &r3);
        assert_eq!(hom23.len(), 3);
        assert!(hom23.iter().all(QuandleMap::is_constant));
        let images: Vec<Vec<usize>> = hom23.iter().map(|f| f.image().to_vec()).collect();
        assert_eq!(images, brute_force_homs(&r2, &r3));
    }

    #[test]
    fn affine_path_matches_brute_force() {
        for n in 2..=7 {
            let r = FiniteQuandle::dihedral(n).unwrap();
            let fast: Vec<Vec<usize>> = enumerate_homs(&r, &r).iter().map(|f| f.image().to_vec()).collect();
            assert_eq!(fast, brute_force_homs(&r, &r), "n = {n}");
        }
    }

    #[test]
    fn affine_path_matches_backtracking() {
        for n in 2..=12 {
            let r = FiniteQuandle::dihedral(n).unwrap();
            let table: Vec<Vec<usize>> = r.rows().map(|row| row.to_vec()).collect();
            let t = FiniteQuandle::from_table(&table).unwrap();
            let fast: Vec<Vec<usize>> = enumerate_homs(&r, &r).iter().map(|f| f.image().to_vec()).collect();
            let slow: Vec<Vec<usize>> = enumerate_homs(&t, &t).iter().map(|f| f.image().to_vec()).collect();
            assert_eq!(fast, slow, "n = {n}");
            assert!(enumerate_homs(&r, &r).iter().all(|f| r.is_homomorphism(&r, f.image())));
        }
    }

    #[test]
    fn automorphisms() {
        for (n, expected) in [(5, 20), (3, 6)] {
            let r = FiniteQuandle::dihedral(n).unwrap();
            let autos = enumerate_autos(&r);
            assert_eq!(autos.len(), expected);
            assert!(autos.iter().all(|f| gcd(f.affine_form().unwrap().0 as u64, n as u64) == 1));
        }
        let trivial = FiniteQuandle::from_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        let a5 = FiniteQuandle::alexander(5, 2).unwrap();
        for q in [FiniteQuandle::dihedral(4).unwrap(), trivial, a5] {
            assert!(enumerate_autos(&q).contains(&QuandleMap::identity(&q)));
        }
    }

    #[test]
    fn prime_endomorphisms_split_into_autos_and_constants() {
        for p in [3, 5, 7] {
            let r = FiniteQuandle::dihedral(p).unwrap();
            let ends = enumerate_homs(&r, &r);
            assert_eq!(ends.len(), p * p);
            let autos = ends.iter().filter(|f| f.is_bijective()).count();
            let consts = ends.iter().filter(|f| f.is_constant()).count();
            assert_eq!(autos + consts, ends.len());
            assert_eq!(consts, p);
        }
    }

    #[test]
    fn endomorphisms_have_unique_affine_form() {
        for n in 2..=12 {
            let r = FiniteQuandle::dihedral(n).unwrap();
            let table: Vec<Vec<usize>> = r.rows().map(|row| row.to_vec()).collect();
            let t = FiniteQuandle::from_table(&table).unwrap();
            for f in enumerate_homs(&t, &t) {
                let forms: Vec<(usize, usize)> = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .filter(|&(a, b)| (0..n).all(|x| f.apply(x) == (a * x + b) % n))
                    .collect();
                assert_eq!(forms.len(), 1, "n = {n}, image {:?}", f.image());
            }
        }
    }

    #[test]
    fn composition() {
        let r5 = FiniteQuandle::dihedral(5).unwrap();
        let id = QuandleMap::identity(&r5);
        let f = QuandleMap::affine(&r5, 2, 1).unwrap();
        let g = QuandleMap::affine(&r5, 3, 0).unwrap();
        assert_eq!(id.compose(&g).unwrap(), g);
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg, QuandleMap::affine(&r5, 1, 1).unwrap());
        assert_eq!(fg.affine_form(), Some((1, 1)));

        let c = QuandleMap::constant(&r5, &r5, 3).unwrap();
        assert_eq!(c.compose(&f).unwrap(), c);

        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert!(matches!(QuandleMap::identity(&r3).compose(&f), Err(Error::InvalidParameter(_))));

        let ends = enumerate_homs(&r5, &r5);
        for a in &ends {
            assert_eq!(a.compose(&id).unwrap(), *a);
            for b in &ends {
                let ab = a.compose(b).unwrap();
                assert!(r5.is_homomorphism(&r5, ab.image()));
                assert_eq!(affine_form(ab.image(), 5), ab.affine_form());
                for c in ends.iter().step_by(3) {
                    assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn affine_rejects_non_homomorphism_free_case() {
        // every affine map is an endomorphism of R_n
        let r4 = FiniteQuandle::dihedral(4).unwrap();
        assert!(QuandleMap::affine(&r4, 2, 0).is_ok());
        let a5 = FiniteQuandle::alexander(5, 2).unwrap();
        assert!(matches!(QuandleMap::affine(&a5, 1, 0), Err(Error::InvalidParameter(_))));
    }
}
