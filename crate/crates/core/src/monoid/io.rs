use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::FiniteMonoid;
use crate::error::Result;

/// On-disk form of a monoid: `{"names": [...], "identity": i, "table": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub names: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl MonoidFile {
    pub fn into_monoid(self) -> Result<FiniteMonoid> {
        FiniteMonoid::new(self.names, self.table, self.identity)
    }
}

impl From<&FiniteMonoid> for MonoidFile {
    fn from(m: &FiniteMonoid) -> Self {
        Self {
            names: m.names().to_vec(),
            identity: m.identity().0,
            table: m.table_rows(),
        }
    }
}

/// On-disk form of a homomorphism. `source` and `target` are paths to monoid
/// files, relative to the directory holding the hom file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub source: PathBuf,
    pub target: PathBuf,
    pub map: Vec<usize>,
}

impl HomFile {
    pub fn resolve(&self, base: &Path) -> (PathBuf, PathBuf) {
        (base.join(&self.source), base.join(&self.target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn json_shape() {
        let file = MonoidFile::from(&fixtures::one());
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(
            json,
            r#"{"names":["1","a","0"],"identity":0,"table":[[0,1,2],[1,2,2],[2,2,2]]}"#
        );
        let back: MonoidFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_monoid().unwrap(), fixtures::one());
    }

    #[test]
    fn malformed_table_is_a_validation_error() {
        let file: MonoidFile =
            serde_json::from_str(r#"{"names":["1","x"],"identity":0,"table":[[0,1]]}"#).unwrap();
        assert!(file.into_monoid().is_err());
    }
}
