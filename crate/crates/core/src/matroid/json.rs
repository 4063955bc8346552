//! JSON interchange formats.
//!
//! - flats: `{"ground_set": n | [labels], "flats": [[..], ..]}`
//! - graph: `{"vertices": n, "edges": [[u, v], ..]}`
//! - matrix: `{"rows": r, "cols": c, "entries": [..], "modulus": p | "rational"}`
//!   with `entries` either row-major flat or a list of rows.

use serde::{Deserialize, Serialize};

use super::{Field, GroundSet, Matroid};
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroundSpec {
    Size(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground_set: GroundSpec,
    pub flats: Vec<Vec<usize>>,
}

impl MatroidJson {
    pub fn into_matroid(self) -> Result<Matroid> {
        let ground = match self.ground_set {
            GroundSpec::Size(n) => GroundSet::new(n)?,
            GroundSpec::Labels(l) => GroundSet::labeled(l)?,
        };
        let n = ground.size();
        let flats = self
            .flats
            .into_iter()
            .map(|f| Subset::from_elements(n, f))
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_flats_in(ground, flats)
    }
}

impl Matroid {
    pub fn to_json_value(&self) -> MatroidJson {
        MatroidJson {
            ground_set: match self.ground().labels() {
                Some(l) => GroundSpec::Labels(l.to_vec()),
                None => GroundSpec::Size(self.n()),
            },
            flats: self
                .flats()
                .iter()
                .map(|f| f.members.iter().collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matroid JSON is always serialisable")
    }

    /// Parses and validates a matroid document.
    pub fn from_json(text: &str) -> Result<Matroid> {
        let doc: MatroidJson = serde_json::from_str(text)?;
        doc.into_matroid()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn into_matroid(self) -> Result<Matroid> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Matroid::from_graph(self.vertices, &edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Flat(Vec<i64>),
    Rows(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Modulus {
    Prime(u64),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Entries,
    pub modulus: Modulus,
}

impl MatrixJson {
    pub fn field(&self) -> Result<Field> {
        match &self.modulus {
            Modulus::Prime(p) => Ok(Field::Prime(*p)),
            Modulus::Named(s) if s == "rational" => Ok(Field::Rational),
            Modulus::Named(s) => Err(Error::Parse(format!(
                "modulus must be a prime or \"rational\", got `{s}`"
            ))),
        }
    }

    pub fn into_matroid(self) -> Result<Matroid> {
        let field = self.field()?;
        let entries = match self.entries {
            Entries::Flat(v) => v,
            Entries::Rows(rows) => {
                if rows.len() != self.rows || rows.iter().any(|r| r.len() != self.cols) {
                    return Err(Error::Parse(format!(
                        "entries do not form a {}x{} matrix",
                        self.rows, self.cols
                    )));
                }
                rows.concat()
            }
        };
        Matroid::from_matrix(self.rows, self.cols, &entries, field)
    }
}

impl Matroid {
    pub fn from_graph_json(text: &str) -> Result<Matroid> {
        serde_json::from_str::<GraphJson>(text)?.into_matroid()
    }

    pub fn from_matrix_json(text: &str) -> Result<Matroid> {
        serde_json::from_str::<MatrixJson>(text)?.into_matroid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = Matroid::from_uniform(2, 3).unwrap();
        let text = m.to_json();
        assert_eq!(
            text,
            r#"{"ground_set":3,"flats":[[],[0],[1],[2],[0,1,2]]}"#
        );
        assert_eq!(Matroid::from_json(&text).unwrap(), m);
    }

    #[test]
    fn labels_survive() {
        let text = r#"{"ground_set":["a","b"],"flats":[[],[0],[1],[0,1]]}"#;
        let m = Matroid::from_json(text).unwrap();
        assert_eq!(m.show(m.all()), "{a,b}");
        assert_eq!(m.to_json(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{"ground_set":3,"flats":[[],[0],[1],[0,1,2]]}"#;
        assert!(matches!(
            Matroid::from_json(bad),
            Err(Error::AxiomViolation(_))
        ));
        let out = r#"{"ground_set":2,"flats":[[],[0,5]]}"#;
        assert!(matches!(
            Matroid::from_json(out),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            Matroid::from_json(r#"{"ground_set":["a","a"],"flats":[[0,1]]}"#),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn graph_and_matrix_files() {
        let k3 = Matroid::from_graph_json(r#"{"vertices": 3, "edges": [[0,1],[1,2],[0,2]]}"#).unwrap();
        assert!(k3.same_lattice(&Matroid::from_uniform(2, 3).unwrap()));
        let flat = r#"{"rows": 2, "cols": 3, "entries": [1,0,1, 0,1,1], "modulus": 2}"#;
        let nested = r#"{"rows": 2, "cols": 3, "entries": [[1,0,1],[0,1,1]], "modulus": "rational"}"#;
        let a = Matroid::from_matrix_json(flat).unwrap();
        let b = Matroid::from_matrix_json(nested).unwrap();
        assert!(a.same_lattice(&b));
        assert!(Matroid::from_matrix_json(&flat.replace("2}", "\"reals\"}")).is_err());
    }
}
