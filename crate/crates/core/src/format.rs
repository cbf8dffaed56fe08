//! JSON cover files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "base_genus": 0,
//!   "degree": 3,
//!   "characteristic": 0,
//!   "handles": [],
//!   "branch": [
//!     { "label": "x1", "perm": "(1 2)" },
//!     { "label": "x2", "perm": [2, 1, 3] }
//!   ]
//! }
//! ```
//!
//! Permutations are cycle-notation strings or 1-based image arrays.
//! `characteristic` defaults to 0 and `handles` to the empty list.
//! Handles are pairs `["(1 2 3)", "()"]`.

use serde::{Deserialize, Serialize};

use crate::cover::{BranchPoint, CoverDatum};
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const COVER_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermText {
    Cycles(String),
    Images(Vec<usize>),
}

impl PermText {
    pub fn to_perm(&self, degree: usize) -> Result<Perm> {
        match self {
            PermText::Cycles(s) => Perm::parse_cycles(degree, s).map_err(|e| match e {
                Error::InvalidPerm(m) => Error::Parse(m),
                other => other,
            }),
            PermText::Images(v) => {
                if v.len() != degree {
                    return Err(Error::Parse(format!(
                        "image array has length {}, expected degree {degree}",
                        v.len()
                    )));
                }
                Perm::from_images(v).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntry {
    pub label: String,
    pub perm: PermText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub version: u32,
    pub base_genus: usize,
    pub degree: usize,
    #[serde(default)]
    pub characteristic: u64,
    #[serde(default)]
    pub handles: Vec<(PermText, PermText)>,
    #[serde(default)]
    pub branch: Vec<BranchEntry>,
}

impl CoverFile {
    pub fn from_json(text: &str) -> Result<CoverFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Converts to a datum. Structural problems (bad permutations, wrong
    /// degrees, unknown version) are parse errors; the datum's own
    /// invariants are left to [`CoverDatum::validate`].
    pub fn to_datum(&self) -> Result<CoverDatum> {
        if self.version != COVER_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported cover file version {}",
                self.version
            )));
        }
        if self.degree == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        let n = self.degree;
        let handles = self
            .handles
            .iter()
            .map(|(a, b)| Ok((a.to_perm(n)?, b.to_perm(n)?)))
            .collect::<Result<Vec<_>>>()?;
        let branch = self
            .branch
            .iter()
            .map(|e| {
                Ok(BranchPoint {
                    label: e.label.clone(),
                    sigma: e.perm.to_perm(n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CoverDatum::new(self.base_genus, n, self.characteristic, handles, branch)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_datum(d: &CoverDatum) -> CoverFile {
        CoverFile {
            version: COVER_FORMAT_VERSION,
            base_genus: d.base_genus,
            degree: d.degree,
            characteristic: d.characteristic,
            handles: d
                .handles
                .iter()
                .map(|(a, b)| {
                    (
                        PermText::Cycles(a.to_string()),
                        PermText::Cycles(b.to_string()),
                    )
                })
                .collect(),
            branch: d
                .branch
                .iter()
                .map(|bp| BranchEntry {
                    label: bp.label.clone(),
                    perm: PermText::Cycles(bp.sigma.to_string()),
                })
                .collect(),
        }
    }
}

pub fn parse_cover(text: &str) -> Result<CoverDatum> {
    CoverFile::from_json(text)?.to_datum()
}

pub fn cover_to_json(d: &CoverDatum) -> String {
    serde_json::to_string_pretty(&CoverFile::from_datum(d)).expect("serializable")
}
