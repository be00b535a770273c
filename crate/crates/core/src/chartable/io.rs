use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::error::{Error, Result};

/// Tables whose residual exceeds this are rejected on load.
pub const LOAD_RESIDUAL_LIMIT: f64 = 1e-6;

/// On-disk interchange form; characters are row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    pub group_label: String,
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub characters: Vec<Vec<[f64; 2]>>,
}

impl From<&CharacterTable> for TableFile {
    fn from(t: &CharacterTable) -> Self {
        TableFile {
            group_label: t.label().to_string(),
            order: t.order(),
            class_sizes: t.class_sizes().to_vec(),
            class_orders: t.class_orders().to_vec(),
            characters: t
                .values()
                .iter()
                .map(|row| row.iter().map(|v| [v.re, v.im]).collect())
                .collect(),
        }
    }
}

impl TableFile {
    /// Validates the schema and re-certifies orthogonality.
    pub fn into_table(self) -> Result<CharacterTable> {
        let k = self.class_sizes.len();
        if k == 0 {
            return Err(Error::Schema("no classes".into()));
        }
        if self.class_orders.len() != k {
            return Err(Error::Schema(format!(
                "{} class orders for {k} classes",
                self.class_orders.len()
            )));
        }
        if self.class_sizes.iter().sum::<usize>() != self.order {
            return Err(Error::Schema(format!(
                "class sizes sum to {} but order is {}",
                self.class_sizes.iter().sum::<usize>(),
                self.order
            )));
        }
        if self.characters.len() != k || self.characters.iter().any(|r| r.len() != k) {
            return Err(Error::Schema(format!("character matrix is not {k}×{k}")));
        }
        let values = self
            .characters
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let tab = CharacterTable::new(self.group_label, self.order, self.class_sizes, self.class_orders, values);
        if tab.residual() > LOAD_RESIDUAL_LIMIT {
            return Err(Error::Orthogonality {
                residual: tab.residual(),
                limit: LOAD_RESIDUAL_LIMIT,
            });
        }
        Ok(tab)
    }
}

pub fn save_table(tab: &CharacterTable, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&TableFile::from(tab)).map_err(|e| Error::Schema(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable> {
    let text = std::fs::read_to_string(path)?;
    let file: TableFile = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    file.into_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::tests::s3_table;

    #[test]
    fn hand_written_s3_file_is_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        std::fs::write(
            &path,
            r#"{"group_label":"S3","order":6,"class_sizes":[1,3,2],"class_orders":[1,2,3],
               "characters":[[[1,0],[1,0],[1,0]],[[1,0],[-1,0],[1,0]],[[2,0],[0,0],[-1,0]]]}"#,
        )
        .unwrap();
        let t = load_table(&path).unwrap();
        assert_eq!(t.residual(), 0.0);
        assert_eq!(t, s3_table());
    }

    #[test]
    fn wrong_class_size_sum() {
        let mut f = TableFile::from(&s3_table());
        f.class_sizes = vec![1, 3, 3];
        assert!(matches!(f.into_table(), Err(Error::Schema(_))));
    }

    #[test]
    fn ragged_or_malformed() {
        let mut f = TableFile::from(&s3_table());
        f.characters[1].pop();
        assert!(matches!(f.into_table(), Err(Error::Schema(_))));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\"order\": 6}").unwrap();
        assert!(matches!(load_table(&path), Err(Error::Schema(_))));
    }

    #[test]
    fn non_orthogonal_rejected() {
        let mut f = TableFile::from(&s3_table());
        f.characters[2][1] = [1.0, 0.0];
        assert!(matches!(f.into_table(), Err(Error::Orthogonality { .. })));
    }
}
