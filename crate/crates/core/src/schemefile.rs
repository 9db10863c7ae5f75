//! On-disk scheme format: JSON with one element residue vector per line.
//!
//! ```text
//! {
//!   "format": "amorphic-scheme/1",
//!   "group": [4,4,2,2,2,2],
//!   "provenance": {"construction":"lifted_four_class","parameters":{"ell":2}},
//!   "classes": [
//!     [
//!       [0,2,0,0,0,0],
//!       ...
//!     ],
//!     ...
//!   ]
//! }
//! ```
//!
//! Elements are residue vectors, never ranks, and appear in increasing rank
//! order, so writing what was read reproduces the file byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::constructions::Constructed;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, SubsetIndicator};
use crate::scheme::{check_partition, AxiomViolation, TranslationScheme};

pub const FORMAT_VERSION: &str = "amorphic-scheme/1";

/// A class list as stored; it need not satisfy the scheme axioms, so that a
/// damaged file can still be loaded and diagnosed.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeFile {
    pub group: GroupSpec,
    pub classes: Vec<SubsetIndicator>,
    pub provenance: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    format: String,
    group: Vec<u32>,
    #[serde(default)]
    provenance: Option<Value>,
    classes: Vec<Vec<Vec<u32>>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::SchemeFile(msg.into())
}

impl SchemeFile {
    pub fn from_scheme(scheme: &TranslationScheme, provenance: Option<Value>) -> Self {
        SchemeFile { group: scheme.group().clone(), classes: scheme.classes().to_vec(), provenance }
    }

    pub fn from_constructed(c: &Constructed) -> Self {
        let provenance = json!({
            "construction": c.descriptor.name,
            "parameters": c.descriptor.parameters,
        });
        Self::from_scheme(&c.scheme, Some(provenance))
    }

    /// The partition invariants, with a witness on failure.
    pub fn check(&self) -> std::result::Result<(), AxiomViolation> {
        check_partition(&self.group, &self.classes)
    }

    pub fn to_scheme(&self) -> Result<TranslationScheme> {
        TranslationScheme::assemble(self.group.clone(), self.classes.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        if raw.format != FORMAT_VERSION {
            return Err(bad(format!("unsupported format {:?}, expected {FORMAT_VERSION:?}", raw.format)));
        }
        let group = GroupSpec::new(raw.group).map_err(|e| bad(format!("group: {e}")))?;
        let mut classes = Vec::with_capacity(raw.classes.len());
        for (i, elements) in raw.classes.into_iter().enumerate() {
            let mut s = SubsetIndicator::empty(&group);
            for residues in elements {
                let g = GroupElement::new(residues);
                let r = group.rank(&g).map_err(|e| bad(format!("class {}: element {g}: {e}", i + 1)))?;
                if s.contains(r) {
                    return Err(bad(format!("class {}: element {g} listed twice", i + 1)));
                }
                s.insert(r);
            }
            classes.push(s);
        }
        Ok(SchemeFile { group, classes, provenance: raw.provenance })
    }

    pub fn render(&self) -> String {
        let list = |xs: &[u32]| {
            let mut s = String::from("[");
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write!(s, "{x}").expect("write to string");
            }
            s.push(']');
            s
        };
        let mut out = String::new();
        out.push_str("{\n");
        writeln!(out, "  \"format\": \"{FORMAT_VERSION}\",").expect("write to string");
        writeln!(out, "  \"group\": {},", list(self.group.factors())).expect("write to string");
        if let Some(p) = &self.provenance {
            writeln!(out, "  \"provenance\": {p},").expect("write to string");
        }
        out.push_str("  \"classes\": [");
        for (i, c) in self.classes.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            if c.is_empty() {
                out.push_str("    []");
                continue;
            }
            out.push_str("    [");
            for (j, r) in c.iter_ranks().enumerate() {
                out.push_str(if j == 0 { "\n" } else { ",\n" });
                let g = self.group.unrank(r).expect("rank in range");
                write!(out, "      {}", list(g.residues())).expect("write to string");
            }
            out.push_str("\n    ]");
        }
        if !self.classes.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.render()).map_err(|e| bad(format!("{}: {e}", path.display())))
    }
}
