//! Command-line spec strings for quandles, endomorphism sets and cocycles.

use std::path::Path;

use quiverknot_core::quandle::{enumerate_autos, enumerate_homs};
use quiverknot_core::{Cocycle3, FiniteQuandle, QuandleMap};

use crate::error::{AppError, Result};
use crate::formats;

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| usage(format!("{what}: expected an integer, got `{s}`")))
}

/// `dihedral:n` | `alexander:n:t` | `table:PATH`.
pub fn parse_quandle(spec: &str) -> Result<FiniteQuandle> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "dihedral" => Ok(FiniteQuandle::dihedral(number(rest, "dihedral order")?)?),
        "alexander" => {
            let (n, t) = rest
                .split_once(':')
                .ok_or_else(|| usage("alexander quandle spec is `alexander:n:t`"))?;
            Ok(FiniteQuandle::alexander(number(n, "alexander order")?, number(t, "alexander t")?)?)
        }
        "table" if !rest.is_empty() => formats::read_quandle_table(Path::new(rest)),
        _ => Err(usage(format!("unknown quandle spec `{spec}` (dihedral:n | alexander:n:t | table:PATH)"))),
    }
}

/// `all` | `auto` | `a,b;a,b;...` (affine maps `x -> ax + b`, dihedral only).
pub fn parse_endos(spec: &str, q: &FiniteQuandle) -> Result<Vec<QuandleMap>> {
    match spec.trim() {
        "all" => Ok(enumerate_homs(q, q)),
        "auto" => Ok(enumerate_autos(q)),
        list => {
            if q.dihedral_order().is_none() {
                return Err(usage("affine endomorphism lists need a dihedral quandle; use `all` or `auto`"));
            }
            let mut out = Vec::new();
            for pair in list.split(';').filter(|p| !p.trim().is_empty()) {
                let (a, b) = pair
                    .split_once(',')
                    .ok_or_else(|| usage(format!("endomorphism `{pair}` is not of the form a,b")))?;
                out.push(QuandleMap::affine(q, number(a, "endomorphism a")?, number(b, "endomorphism b")?)?);
            }
            if out.is_empty() {
                return Err(usage("empty endomorphism list"));
            }
            Ok(out)
        }
    }
}

/// `mochizuki` (on `R_p`) | `table:PATH`.
pub fn parse_cocycle(spec: &str, q: &FiniteQuandle) -> Result<Cocycle3> {
    match spec.split_once(':') {
        None if spec == "mochizuki" => {
            let p = q
                .dihedral_order()
                .ok_or_else(|| usage("the Mochizuki cocycle needs a dihedral quandle dihedral:p"))?;
            Ok(Cocycle3::mochizuki(p)?)
        }
        Some(("table", path)) if !path.is_empty() => {
            let theta = formats::read_cocycle_table(Path::new(path))?;
            if theta.order() != q.order() {
                return Err(usage(format!(
                    "cocycle table has order {}, quandle has order {}",
                    theta.order(),
                    q.order()
                )));
            }
            Ok(theta)
        }
        _ => Err(usage(format!("unknown cocycle spec `{spec}` (mochizuki | table:PATH)"))),
    }
}
