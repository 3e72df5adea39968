//! Ingestion and validation of knot data: Alexander polynomials, torus-knot
//! parameters, and explicit bifiltered model complexes from JSON files.

mod alexander;
mod cfk;

pub use alexander::{parse_alexander, torus_knot_alexander, AlexanderError, SymmetricLaurent};
pub use cfk::{BifilteredComplex, CfkError, Generator, SubComplex, SubquotientKind};

use thiserror::Error;

/// How a knot is described on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    /// The torus knot T(a, b), `2 <= a < b` coprime.
    Torus(u64, u64),
    /// An Alexander polynomial, to be realised as a staircase model.
    Alexander(SymmetricLaurent),
    /// An explicit bifiltered chain complex.
    Cfk(BifilteredComplex),
}

#[derive(Debug, Error)]
pub enum KnotSpecError {
    #[error("unknown knot spec `{0}`: expected torus:a,b | alex:POLY | cfk:PATH")]
    UnknownForm(String),
    #[error("bad torus parameters: {0}")]
    BadTorus(String),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Cfk(#[from] CfkError),
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: String },
}

impl KnotSpec {
    /// Parses the command-line form `torus:a,b`, `alex:POLY` or `cfk:PATH`.
    pub fn parse(text: &str) -> Result<Self, KnotSpecError> {
        if let Some(rest) = text.strip_prefix("torus:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| KnotSpecError::BadTorus(format!("`{rest}`: expected a,b")))?;
            let a: u64 = a
                .trim()
                .parse()
                .map_err(|_| KnotSpecError::BadTorus(format!("`{a}` is not an integer")))?;
            let b: u64 = b
                .trim()
                .parse()
                .map_err(|_| KnotSpecError::BadTorus(format!("`{b}` is not an integer")))?;
            Ok(KnotSpec::Torus(a, b))
        } else if let Some(rest) = text.strip_prefix("alex:") {
            Ok(KnotSpec::Alexander(parse_alexander(rest)?))
        } else if let Some(path) = text.strip_prefix("cfk:") {
            let data = std::fs::read_to_string(path).map_err(|e| KnotSpecError::Io {
                path: path.to_string(),
                err: e.to_string(),
            })?;
            Ok(KnotSpec::Cfk(BifilteredComplex::parse_json(&data)?))
        } else {
            Err(KnotSpecError::UnknownForm(text.to_string()))
        }
    }
}
