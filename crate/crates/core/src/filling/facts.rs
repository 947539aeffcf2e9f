use serde::{Deserialize, Serialize};

use super::{FillError, Flag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    Open,
    Rt,
    Ct,
    Bar,
    /// The complement of the disconnecting-node divisor is known to be good.
    DnComplement,
}

impl FactKind {
    pub fn flag(self) -> Option<Flag> {
        match self {
            FactKind::Open => Some(Flag::Open),
            FactKind::Rt => Some(Flag::Rt),
            FactKind::Ct => Some(Flag::Ct),
            FactKind::Bar => Some(Flag::Bar),
            FactKind::DnComplement => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub kind: FactKind,
    pub g: u32,
    pub n: u32,
    pub cite: String,
}

/// A cell where the strongest statement is known to fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Negative {
    pub g: u32,
    pub n: u32,
    pub cite: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactFile {
    #[serde(default)]
    pub facts: Vec<Fact>,
    #[serde(default)]
    pub negatives: Vec<Negative>,
}

impl FactFile {
    pub fn from_json(text: &str) -> Result<Self, FillError> {
        let file: FactFile = serde_json::from_str(text).map_err(|e| FillError::Malformed(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, FillError> {
        let text = std::fs::read_to_string(path).map_err(|e| FillError::Malformed(format!("{}: {e}", path.display())))?;
        FactFile::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fact serialization is infallible")
    }

    /// Every fact and negative must carry a citation.
    pub fn validate(&self) -> Result<(), FillError> {
        for f in &self.facts {
            if f.cite.trim().is_empty() {
                return Err(FillError::MissingCitation { g: f.g, n: f.n });
            }
        }
        for f in &self.negatives {
            if f.cite.trim().is_empty() {
                return Err(FillError::MissingCitation { g: f.g, n: f.n });
            }
        }
        Ok(())
    }

    /// The copy of this file without `(kind, g, n)` facts.
    pub fn without(&self, kind: FactKind, g: u32, n: u32) -> FactFile {
        FactFile {
            facts: self.facts.iter().filter(|f| (f.kind, f.g, f.n) != (kind, g, n)).cloned().collect(),
            negatives: self.negatives.clone(),
        }
    }
}
