//! The JSON interchange format for algebras.
//!
//! ```json
//! { "size": 3, "bot": 0, "top": 2,
//!   "meet": [[0,0,0],[0,1,1],[0,1,1]], "join": [[1,1,2],[1,1,2],[2,2,2]],
//!   "neg": [1,0,0], "opp": [2,2,1], "labels": ["⊥","a","⊤"] }
//! ```
//!
//! Tables are row-major: `meet[x][y]` is `x ⊓ y`. `labels` is optional.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteDba};
use crate::error::{DbaError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub size: usize,
    pub bot: ElementId,
    pub top: ElementId,
    pub meet: Vec<Vec<ElementId>>,
    pub join: Vec<Vec<ElementId>>,
    pub neg: Vec<ElementId>,
    pub opp: Vec<ElementId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// An algebra together with optional display labels for its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDba {
    pub algebra: FiniteDba,
    pub labels: Option<Vec<String>>,
}

impl LabeledDba {
    pub fn label(&self, x: ElementId) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(x).cloned())
            .unwrap_or_else(|| x.to_string())
    }
}

impl AlgebraFile {
    pub fn from_dba(algebra: &FiniteDba, labels: Option<Vec<String>>) -> Self {
        AlgebraFile {
            size: algebra.size(),
            bot: algebra.bot(),
            top: algebra.top(),
            meet: algebra.meet_rows(),
            join: algebra.join_rows(),
            neg: algebra.neg_table().to_vec(),
            opp: algebra.opp_table().to_vec(),
            labels,
        }
    }

    pub fn into_dba(self) -> Result<LabeledDba> {
        let algebra = FiniteDba::from_tables(
            self.size, self.bot, self.top, &self.meet, &self.join, &self.neg, &self.opp,
        )?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.size {
                return Err(DbaError::Shape {
                    table: "labels",
                    expected: self.size.to_string(),
                    found: labels.len().to_string(),
                });
            }
        }
        Ok(LabeledDba {
            algebra,
            labels: self.labels,
        })
    }
}

pub fn parse_algebra(json: &str) -> Result<LabeledDba> {
    let file: AlgebraFile = serde_json::from_str(json)?;
    file.into_dba()
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<LabeledDba> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

/// Multi-line JSON with one field per line (used for files).
pub fn to_json_pretty(algebra: &FiniteDba, labels: Option<Vec<String>>) -> String {
    let file = AlgebraFile::from_dba(algebra, labels);
    let value = serde_json::to_value(&file).expect("algebra files always serialize");
    let fields: Vec<String> = ["size", "bot", "top", "meet", "join", "neg", "opp", "labels"]
        .iter()
        .filter_map(|&k| value.get(k).map(|v| format!("  \"{k}\": {v}")))
        .collect();
    format!("{{\n{}\n}}", fields.join(",\n"))
}

/// Single-line JSON (used for JSON-lines streams).
pub fn to_json_line(algebra: &FiniteDba) -> String {
    serde_json::to_string(&AlgebraFile::from_dba(algebra, None))
        .expect("algebra files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const D3I: &str = r#"{"size":3,"bot":0,"top":2,
        "meet":[[0,0,0],[0,1,1],[0,1,1]],"join":[[1,1,2],[1,1,2],[2,2,2]],
        "neg":[1,0,0],"opp":[2,2,1],"labels":["⊥","a","⊤"]}"#;

    #[test]
    fn parse_and_print() {
        let l = parse_algebra(D3I).unwrap();
        assert_eq!(l.label(1), "a");
        let again = parse_algebra(&to_json_pretty(&l.algebra, l.labels.clone())).unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn rejects_out_of_range_cell() {
        let bad = D3I.replace("[[0,0,0],[0,1,1]", "[[0,9,0],[0,1,1]");
        let err = parse_algebra(&bad).unwrap_err();
        assert_eq!(
            err.to_string(),
            "closure violation at meet[0][1]: 9 is not an element of a carrier of size 3"
        );
    }

    #[test]
    fn rejects_bad_labels_and_unknown_fields() {
        let bad = D3I.replace(r#"["⊥","a","⊤"]"#, r#"["⊥"]"#);
        assert!(matches!(
            parse_algebra(&bad),
            Err(DbaError::Shape {
                table: "labels",
                ..
            })
        ));
        let bad = D3I.replace(r#""size":3"#, r#""size":3,"extra":1"#);
        assert!(matches!(parse_algebra(&bad), Err(DbaError::Parse(_))));
    }
}
