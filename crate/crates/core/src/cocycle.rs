//! Quandle 3-cocycles with coefficients in `Z_m`, crossing weights and the
//! shadow cocycle invariant.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{enumerate_colorings, extend_shadow, ShadowColoring};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::modular::{is_prime, pow_mod, reduce};
use crate::quandle::FiniteQuandle;

/// A table `theta(x, y, z)` on a quandle of order `n` with values in `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle3 {
    order: usize,
    modulus: usize,
    table: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `theta(x, x, y) != 0`
    DegenerateLeft { x: usize, y: usize },
    /// `theta(x, y, y) != 0`
    DegenerateRight { x: usize, y: usize },
    /// The four-variable identity fails at `(x, y, z, w)`.
    Identity { x: usize, y: usize, z: usize, w: usize },
}

impl Cocycle3 {
    pub fn zero(order: usize, modulus: usize) -> Result<Self> {
        Self::from_table(order, modulus, alloc::vec![0; order * order * order])
    }

    /// `values` is x-major, then y, then z. Only shape and range are checked;
    /// use [`verify_cocycle`] for the cocycle conditions.
    pub fn from_table(order: usize, modulus: usize, values: Vec<usize>) -> Result<Self> {
        if order == 0 || modulus == 0 {
            return Err(Error::InvalidParameter("cocycle needs positive order and modulus".into()));
        }
        if values.len() != order * order * order {
            return Err(Error::InvalidParameter(format!(
                "cocycle table has {} entries, expected {}",
                values.len(),
                order * order * order
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::InvalidParameter(format!("cocycle value {v} is not reduced mod {modulus}")));
        }
        Ok(Self { order, modulus, table: values })
    }

    /// Mochizuki's 3-cocycle on `R_p`:
    /// `theta(x, y, z) = (x - y) * ((2z - y)^p + y^p - 2 z^p) / p  (mod p)`.
    pub fn mochizuki(p: usize) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("Mochizuki's cocycle needs an odd prime, got {p}")));
        }
        let mut table = Vec::with_capacity(p * p * p);
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    table.push(mochizuki_value(p, x, y, z));
                }
            }
        }
        Ok(Self { order: p, modulus: p, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize, z: usize) -> usize {
        self.table[(x * self.order + y) * self.order + z]
    }
}

/// Evaluates with arbitrary integer representatives; the result only depends
/// on their classes mod `p`.
pub fn mochizuki_value(p: usize, x: usize, y: usize, z: usize) -> usize {
    let (x, y, z) = (x % p, y % p, z % p);
    let p2 = (p * p) as u64;
    let u = reduce(2 * z as i64 - y as i64, p) as u64;
    let pp = p as u64;
    let numerator = (pow_mod(u, pp, p2) + pow_mod(y as u64, pp, p2) + p2 * 2 - 2 * pow_mod(z as u64, pp, p2) % p2) % p2;
    debug_assert_eq!(numerator % pp, 0, "Fermat: numerator is divisible by p");
    let q = (numerator / pp) as usize;
    reduce(x as i64 - y as i64, p) * q % p
}

/// Checks `theta(x,x,y) = theta(x,y,y) = 0` and
/// `theta(x,y,z) + theta(x*z,y*z,w) + theta(x,z,w)
///   = theta(x*y,z,w) + theta(x,y,w) + theta(x*w,y*w,z*w)` exhaustively.
pub fn verify_cocycle(theta: &Cocycle3, q: &FiniteQuandle) -> core::result::Result<(), CocycleViolation> {
    assert_eq!(theta.order, q.order(), "cocycle and quandle orders differ");
    let n = q.order();
    let m = theta.modulus;
    for x in 0..n {
        for y in 0..n {
            if theta.value(x, x, y) != 0 {
                return Err(CocycleViolation::DegenerateLeft { x, y });
            }
            if theta.value(x, y, y) != 0 {
                return Err(CocycleViolation::DegenerateRight { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = theta.value(x, y, z)
                        + theta.value(q.op(x, z), q.op(y, z), w)
                        + theta.value(x, z, w);
                    let rhs = theta.value(q.op(x, y), z, w)
                        + theta.value(x, y, w)
                        + theta.value(q.op(x, w), q.op(y, w), q.op(z, w));
                    if lhs % m != rhs % m {
                        return Err(CocycleViolation::Identity { x, y, z, w });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A value of `Z_m`, reduced to `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightSum(pub usize);

impl fmt::Display for WeightSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sum over crossings of `sign * theta(source region, source arc, over arc)`.
///
/// The source region lies to the right of both strands and the source arc
/// is the under-arc on the right of the over-strand.
pub fn weight_sum(d: &Diagram, s: &ShadowColoring, theta: &Cocycle3) -> WeightSum {
    let m = theta.modulus as i64;
    let arcs = s.arcs().values();
    let total: i64 = d
        .crossings()
        .iter()
        .map(|c| {
            let r = c.relation();
            let w = theta.value(s.regions()[c.source_region()], arcs[r.source], arcs[r.over]) as i64;
            c.sign.value() * w
        })
        .sum();
    WeightSum(total.rem_euclid(m) as usize)
}

/// A multiset of weights, stored as value -> multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(BTreeMap<usize, usize>);

impl Multiset {
    pub fn insert(&mut self, value: WeightSum) {
        *self.0.entry(value.0).or_default() += 1;
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.0.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// `(value, multiplicity)` pairs in increasing value order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&v, &k)| (v, k))
    }

    /// Every multiplicity multiplied by `k`.
    pub fn scaled(&self, k: usize) -> Multiset {
        Multiset(self.0.iter().map(|(&v, &c)| (v, c * k)).collect())
    }

    pub fn merge(&mut self, other: &Multiset) {
        for (v, k) in other.iter() {
            *self.0.entry(v).or_default() += k;
        }
    }
}

impl FromIterator<WeightSum> for Multiset {
    fn from_iter<I: IntoIterator<Item = WeightSum>>(iter: I) -> Self {
        let mut m = Multiset::default();
        for w in iter {
            m.insert(w);
        }
        m
    }
}

fn check_compatible(q: &FiniteQuandle, theta: &Cocycle3) -> Result<()> {
    if theta.order != q.order() {
        return Err(Error::InvalidParameter(format!(
            "cocycle is defined on order {}, quandle has order {}",
            theta.order,
            q.order()
        )));
    }
    Ok(())
}

/// The weights of all shadow colorings with `a` on the unbounded region.
pub fn base_fixed_multiset(d: &Diagram, q: &FiniteQuandle, theta: &Cocycle3, a: usize) -> Result<Multiset> {
    check_compatible(q, theta)?;
    let mut out = Multiset::default();
    for c in enumerate_colorings(d, q) {
        out.insert(weight_sum(d, &extend_shadow(d, q, &c, a)?, theta));
    }
    Ok(out)
}

/// The weights of all shadow colorings of `d`.
pub fn invariant_multiset(d: &Diagram, q: &FiniteQuandle, theta: &Cocycle3) -> Result<Multiset> {
    check_compatible(q, theta)?;
    let mut out = Multiset::default();
    for a in 0..q.order() {
        out.merge(&base_fixed_multiset(d, q, theta, a)?);
    }
    Ok(out)
}
