//! Quandle colorings, shadow cocycle invariants and quandle coloring quivers
//! of oriented link diagrams given as PD codes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the knot
//! catalog and the command-line frontend live in the `quiverknot` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cocycle;
pub mod coloring;
pub mod diagram;
mod error;
pub mod iso;
pub mod modular;
pub mod quandle;
pub mod quiver;
pub mod snf;

pub use cocycle::{Cocycle3, CocycleViolation, Multiset, WeightSum};
pub use coloring::{Coloring, ColoringMatrix, ShadowColoring};
pub use diagram::{Diagram, PdCode, Sign};
pub use error::{Axiom, AxiomViolation, Error, Result};
pub use quandle::{FiniteQuandle, QuandleKind, QuandleMap};
pub use quiver::{Polynomial2, WeightedQuiver};
