//! Built-in matroids: Boolean and uniform families up to eight elements,
//! the graphic matroids of `K4` and `K5` minus an edge, and the Fano and
//! non-Fano matroids.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matroid::Matroid;

const INDEX: &str = include_str!("../data/catalog.json");

/// `(file name, contents)` of every shipped data file.
pub const FILES: &[(&str, &str)] = &[
    ("k4.json", include_str!("../data/k4.json")),
    ("k5_minus_edge.json", include_str!("../data/k5_minus_edge.json")),
    ("fano.json", include_str!("../data/fano.json")),
    ("non_fano.json", include_str!("../data/non_fano.json")),
];

#[derive(Deserialize)]
struct Index {
    families: Vec<Family>,
    files: Vec<FileEntry>,
}

#[derive(Deserialize)]
struct Family {
    kind: String,
    n: [usize; 2],
}

#[derive(Deserialize)]
struct FileEntry {
    name: String,
    kind: String,
    file: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogSource {
    Boolean(usize),
    /// `(rank, n)`.
    Uniform(usize, usize),
    Graph(&'static str),
    Matrix(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub source: CatalogSource,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Matroid> {
        match self.source {
            CatalogSource::Boolean(n) => Matroid::from_boolean(n),
            CatalogSource::Uniform(r, n) => Matroid::from_uniform(r, n),
            CatalogSource::Graph(text) => Matroid::from_graph_json(text),
            CatalogSource::Matrix(text) => Matroid::from_matrix_json(text),
        }
    }
}

fn file_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == name).map(|(_, t)| *t)
}

/// Every catalog entry, in index order. Uniform matroids `U_{r,n}` are
/// listed for `2 ≤ r < n`; `U_{n,n}` is the Boolean entry.
pub fn entries() -> Vec<CatalogEntry> {
    let index: Index = serde_json::from_str(INDEX).expect("the shipped index is valid");
    let mut out = Vec::new();
    for fam in &index.families {
        let [lo, hi] = fam.n;
        for n in lo..=hi {
            match fam.kind.as_str() {
                "boolean" => out.push(CatalogEntry {
                    name: format!("boolean_{n}"),
                    source: CatalogSource::Boolean(n),
                }),
                "uniform" => {
                    for r in 2..n {
                        out.push(CatalogEntry {
                            name: format!("uniform_{r}_{n}"),
                            source: CatalogSource::Uniform(r, n),
                        });
                    }
                }
                other => panic!("unknown family `{other}` in the shipped index"),
            }
        }
    }
    for f in &index.files {
        let text = file_text(&f.file).expect("indexed file is shipped");
        let source = match f.kind.as_str() {
            "graph" => CatalogSource::Graph(text),
            "matrix" => CatalogSource::Matrix(text),
            other => panic!("unknown kind `{other}` in the shipped index"),
        };
        out.push(CatalogEntry {
            name: f.name.clone(),
            source,
        });
    }
    out
}

pub fn names() -> Vec<String> {
    entries().into_iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let key = name.trim().to_ascii_lowercase().replace('-', "_");
    entries()
        .into_iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::invalid(format!("`{name}` is not in the catalog")))
}

pub fn load(name: &str) -> Result<Matroid> {
    lookup(name)?.build()
}

/// All catalog matroids with `rk(E) - 1 ≤ max_r`.
pub fn with_max_r(max_r: usize) -> Result<Vec<(String, Matroid)>> {
    let mut out = Vec::new();
    for e in entries() {
        let too_big = match e.source {
            CatalogSource::Boolean(n) => n - 1 > max_r,
            CatalogSource::Uniform(r, _) => r - 1 > max_r,
            _ => false,
        };
        if too_big {
            continue;
        }
        let m = e.build()?;
        if m.rank() - 1 <= max_r {
            out.push((e.name, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_build() {
        let names = names();
        assert!(names.contains(&"boolean_8".to_string()));
        assert!(names.contains(&"uniform_3_5".to_string()));
        assert_eq!(load("k4").unwrap().proper_flats().count(), 13);
        let k5e = load("K5-minus-edge").unwrap();
        assert_eq!((k5e.n(), k5e.rank()), (9, 4));
        let fano = load("fano").unwrap();
        assert_eq!(fano.flats_of_rank(2).count(), 7);
        assert_eq!(load("non_fano").unwrap().flats_of_rank(2).count(), 9);
        assert!(load("petersen").is_err());
    }

    #[test]
    fn rank_filter() {
        let small = with_max_r(2).unwrap();
        assert!(small.iter().all(|(_, m)| m.rank() <= 3));
        assert!(small.iter().any(|(n, _)| n == "fano"));
        assert!(small.iter().any(|(n, _)| n == "k4"));
        assert!(!small.iter().any(|(n, _)| n == "k5_minus_edge"));
    }
}
