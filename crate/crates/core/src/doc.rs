//! JSON documents for complexes and chain maps.
//!
//! ```json
//! {"schema_version": "1", "modulus": 4, "lo": 0, "hi": 1,
//!  "ranks": {"0": 1, "1": 1},
//!  "boundaries": {"1": {"rows": 1, "cols": 1, "entries": [2]}}}
//! ```
//!
//! Matrices are row-major with explicit dimensions. Degrees missing from
//! `ranks` have rank zero; missing boundaries are zero matrices. Map
//! documents name their source and target either inline or as
//! `{"file": "path"}` relative to the map document.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ChainComplex, ChainMap, Violation};
use crate::error::Error as CoreError;
use crate::linalg::MatZn;
use crate::modulus::Modulus;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocError {
    #[error("unsupported schema version {0:?}")]
    SchemaVersion(String),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("validation failed: {0}")]
    Invalid(Violation),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<CoreError> for DocError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Invalid(v) => DocError::Invalid(v),
            other => DocError::Malformed(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl MatrixDoc {
    pub fn from_mat(m: &MatZn) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: m.entries().iter().map(|&x| x as i64).collect() }
    }

    pub fn to_mat(&self, modulus: &Modulus) -> Result<MatZn, DocError> {
        Ok(MatZn::from_signed(modulus, self.rows, self.cols, &self.entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub schema_version: String,
    pub modulus: u64,
    pub lo: i64,
    pub hi: i64,
    pub ranks: BTreeMap<i64, usize>,
    #[serde(default)]
    pub boundaries: BTreeMap<i64, MatrixDoc>,
}

fn check_version(v: &str) -> Result<(), DocError> {
    if v != SCHEMA_VERSION {
        return Err(DocError::SchemaVersion(v.to_string()));
    }
    Ok(())
}

impl ComplexDocument {
    pub fn from_complex(x: &ChainComplex) -> Self {
        let ranks = x.degrees().map(|i| (i, x.rank(i))).collect();
        let boundaries = x
            .degrees()
            .filter(|&i| x.rank(i) > 0 && x.rank(i - 1) > 0)
            .map(|i| (i, MatrixDoc::from_mat(&x.d(i))))
            .collect();
        ComplexDocument {
            schema_version: SCHEMA_VERSION.into(),
            modulus: x.modulus().get(),
            lo: x.lo(),
            hi: x.hi(),
            ranks,
            boundaries,
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplex, DocError> {
        check_version(&self.schema_version)?;
        let m = Modulus::new(self.modulus)?;
        if self.hi < self.lo {
            return Err(DocError::Malformed(format!("hi ({}) < lo ({})", self.hi, self.lo)));
        }
        if let Some(d) = self.ranks.keys().chain(self.boundaries.keys()).find(|&&d| d < self.lo || d > self.hi) {
            return Err(DocError::Malformed(format!("degree {d} outside [{}, {}]", self.lo, self.hi)));
        }
        let rank = |i: i64| self.ranks.get(&i).copied().unwrap_or(0);
        let ranks: Vec<usize> = (self.lo..=self.hi).map(rank).collect();
        let boundaries = (self.lo..=self.hi)
            .map(|i| match self.boundaries.get(&i) {
                Some(doc) => doc.to_mat(&m),
                None => Ok(MatZn::zeros(&m, if i > self.lo { rank(i - 1) } else { 0 }, rank(i))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplex::new(&m, self.lo, ranks, boundaries)?)
    }

    pub fn load(path: &Path) -> Result<ChainComplex, DocError> {
        let text = read(path)?;
        let doc: ComplexDocument = serde_json::from_str(&text)?;
        doc.to_complex()
    }
}

/// A complex given inline or as `{"file": "relative/path.json"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ComplexRef {
    File { file: String },
    Inline(ComplexDocument),
}

// Written by hand: serde's untagged buffering cannot parse the integer map
// keys of an inline document.
impl<'de> Deserialize<'de> for ComplexRef {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let value = serde_json::Value::deserialize(de)?;
        match value.get("file") {
            Some(serde_json::Value::String(file)) => Ok(ComplexRef::File { file: file.clone() }),
            Some(_) => Err(D::Error::custom("\"file\" must be a string")),
            None => serde_json::from_value(value).map(ComplexRef::Inline).map_err(D::Error::custom),
        }
    }
}

impl ComplexRef {
    fn resolve(&self, base: Option<&Path>) -> Result<ChainComplex, DocError> {
        match self {
            ComplexRef::Inline(doc) => doc.to_complex(),
            ComplexRef::File { file } => {
                let path = match base {
                    Some(dir) => dir.join(file),
                    None => PathBuf::from(file),
                };
                ComplexDocument::load(&path)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub schema_version: String,
    pub source: ComplexRef,
    pub target: ComplexRef,
    pub degree: i64,
    #[serde(default)]
    pub components: BTreeMap<i64, MatrixDoc>,
}

impl MapDocument {
    /// Document with inline source and target.
    pub fn from_map(f: &ChainMap) -> Self {
        let x = f.source();
        let components = x
            .degrees()
            .filter(|&i| x.rank(i) > 0 && f.target().rank(i + f.degree()) > 0)
            .map(|i| (i, MatrixDoc::from_mat(&f.component(i))))
            .collect();
        MapDocument {
            schema_version: SCHEMA_VERSION.into(),
            source: ComplexRef::Inline(ComplexDocument::from_complex(x)),
            target: ComplexRef::Inline(ComplexDocument::from_complex(f.target())),
            degree: f.degree(),
            components,
        }
    }

    /// Resolves file references relative to `base` (or the working
    /// directory) and validates the result.
    pub fn to_map(&self, base: Option<&Path>) -> Result<ChainMap, DocError> {
        check_version(&self.schema_version)?;
        let x = self.source.resolve(base)?;
        let y = self.target.resolve(base)?;
        if x.modulus() != y.modulus() {
            return Err(DocError::Malformed(format!(
                "source modulus {} differs from target modulus {}",
                x.modulus(),
                y.modulus()
            )));
        }
        if let Some(d) = self.components.keys().find(|d| !x.degrees().contains(d)) {
            return Err(DocError::Malformed(format!("component at degree {d} outside the source support")));
        }
        let k = self.degree;
        let comps = x
            .degrees()
            .map(|i| match self.components.get(&i) {
                Some(doc) => doc.to_mat(x.modulus()),
                None => Ok(MatZn::zeros(x.modulus(), y.rank(i + k), x.rank(i))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainMap::new(&x, &y, k, comps)?)
    }

    pub fn load(path: &Path) -> Result<ChainMap, DocError> {
        let text = read(path)?;
        let doc: MapDocument = serde_json::from_str(&text)?;
        doc.to_map(path.parent())
    }
}

fn read(path: &Path) -> Result<String, DocError> {
    std::fs::read_to_string(path).map_err(|source| DocError::Io { path: path.to_path_buf(), source })
}
