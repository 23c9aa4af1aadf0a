use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which quandle axiom a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `x*x = x`
    Q1,
    /// every right translation `x -> x*y` is a bijection
    Q2,
    /// `(x*y)*z = (x*z)*(y*z)`
    Q3,
}

/// A witness tuple for a failed axiom. Unused coordinates are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: usize,
    pub y: Option<usize>,
    pub z: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidParameter(String),
    Axiom(AxiomViolation),
    /// Malformed PD text; `position` is a byte offset into the input.
    Parse { position: usize, message: String },
    Structural(String),
    Unsupported(String),
    Overflow,
    Internal(String),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Q1 => f.write_str("Q1"),
            Axiom::Q2 => f.write_str("Q2"),
            Axiom::Q3 => f.write_str("Q3"),
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} fails at x={}", self.axiom, self.x)?;
        if let Some(y) = self.y {
            write!(f, ", y={y}")?;
        }
        if let Some(z) = self.z {
            write!(f, ", z={z}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Axiom(v) => write!(f, "not a quandle: {v}"),
            Error::Parse { position, message } => {
                write!(f, "parse error at offset {position}: {message}")
            }
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Overflow => f.write_str("integer overflow in exact arithmetic"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
