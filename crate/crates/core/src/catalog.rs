//! Built-in algebras with golden invariants, optionally extended from the
//! directory named by `LIEWEIGHTS_CATALOG_DIR`.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::document::{AlgebraDocument, DocumentError};

pub const CATALOG_DIR_VAR: &str = "LIEWEIGHTS_CATALOG_DIR";

/// Expected invariants of a built-in entry. Subsets are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Golden {
    pub rank: usize,
    pub weights: &'static [&'static [i64]],
    pub two_step_subsets: &'static [&'static [usize]],
    pub full_torus_derived_length: usize,
}

struct Builtin {
    name: &'static str,
    aliases: &'static [&'static str],
    source: &'static str,
    golden: Golden,
}

const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "abelian2",
        aliases: &[],
        source: include_str!("../catalog/abelian2.json"),
        golden: Golden {
            rank: 2,
            weights: &[&[1, 0], &[0, 1]],
            two_step_subsets: &[&[1], &[2], &[1, 2]],
            full_torus_derived_length: 2,
        },
    },
    Builtin {
        name: "heisenberg3",
        aliases: &["h3"],
        source: include_str!("../catalog/heisenberg3.json"),
        golden: Golden {
            rank: 2,
            weights: &[&[1, 0], &[0, 1], &[1, 1]],
            two_step_subsets: &[&[1], &[2]],
            full_torus_derived_length: 3,
        },
    },
    Builtin {
        name: "heisenberg5",
        aliases: &["h5"],
        source: include_str!("../catalog/heisenberg5.json"),
        golden: Golden {
            rank: 3,
            weights: &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1], &[1, 1, 0]],
            two_step_subsets: &[&[1], &[2], &[3]],
            full_torus_derived_length: 3,
        },
    },
    Builtin {
        name: "filiform4",
        aliases: &[],
        source: include_str!("../catalog/filiform4.json"),
        golden: Golden {
            rank: 2,
            weights: &[&[1, 0], &[0, 1], &[1, 1], &[2, 1]],
            two_step_subsets: &[&[2]],
            full_torus_derived_length: 3,
        },
    },
    Builtin {
        name: "filiform5",
        aliases: &[],
        source: include_str!("../catalog/filiform5.json"),
        golden: Golden {
            rank: 2,
            weights: &[&[1, 0], &[0, 1], &[1, 1], &[2, 1], &[3, 1]],
            two_step_subsets: &[&[2]],
            full_torus_derived_length: 3,
        },
    },
    Builtin {
        name: "L6-paper-example",
        aliases: &["L6"],
        source: include_str!("../catalog/L6-paper-example.json"),
        golden: Golden {
            rank: 3,
            weights: &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[1, 1, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[1, 1, 1],
            ],
            two_step_subsets: &[&[1], &[2], &[3]],
            full_torus_derived_length: 3,
        },
    },
    Builtin {
        name: "free-nilpotent-3-2",
        aliases: &[],
        source: include_str!("../catalog/free-nilpotent-3-2.json"),
        golden: Golden {
            rank: 3,
            weights: &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
            ],
            two_step_subsets: &[&[1], &[2], &[3]],
            full_torus_derived_length: 3,
        },
    },
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("cannot read {}: {message}", .path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: {source}", .path.display())]
    Document {
        path: PathBuf,
        source: DocumentError,
    },
    #[error("duplicate catalog name {0:?}")]
    DuplicateName(String),
    #[error("no catalog entry named {0:?}")]
    NotFound(String),
    #[error("{name:?} is ambiguous: {}", .candidates.join(", "))]
    Ambiguous {
        name: String,
        candidates: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub document: AlgebraDocument,
    /// File contents as shipped or read.
    pub source: String,
    pub golden: Option<Golden>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        let entries = BUILTINS
            .iter()
            .map(|b| {
                let document = AlgebraDocument::parse(b.source).expect("built-in documents parse");
                assert_eq!(document.name, b.name);
                CatalogEntry {
                    name: b.name.to_string(),
                    aliases: b.aliases.iter().map(|a| a.to_string()).collect(),
                    document,
                    source: b.source.to_string(),
                    golden: Some(b.golden),
                }
            })
            .collect();
        Self { entries }
    }

    /// Built-in entries plus every `*.json` file in `$LIEWEIGHTS_CATALOG_DIR`.
    pub fn load() -> Result<Self, CatalogError> {
        let mut catalog = Self::builtin();
        if let Some(dir) = std::env::var_os(CATALOG_DIR_VAR) {
            catalog.extend_from_dir(Path::new(&dir))?;
        }
        Ok(catalog)
    }

    /// Adds the `*.json` files of `dir` in file-name order.
    pub fn extend_from_dir(&mut self, dir: &Path) -> Result<(), CatalogError> {
        let io = |path: &Path, e: std::io::Error| CatalogError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| io(dir, e))?
            .map(|entry| entry.map(|e| e.path()).map_err(|e| io(dir, e)))
            .collect::<Result<_, _>>()?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
        paths.sort();
        for path in paths {
            let source = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
            let document =
                AlgebraDocument::parse(&source).map_err(|source| CatalogError::Document {
                    path: path.clone(),
                    source,
                })?;
            if self
                .entries
                .iter()
                .any(|e| e.name == document.name || e.aliases.contains(&document.name))
            {
                return Err(CatalogError::DuplicateName(document.name));
            }
            self.entries.push(CatalogEntry {
                name: document.name.clone(),
                aliases: Vec::new(),
                document,
                source,
                golden: None,
            });
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Exact name or alias, or a prefix shared by exactly one entry.
    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        if let Some(e) = self
            .entries
            .iter()
            .find(|e| e.name == name || e.aliases.iter().any(|a| a == name))
        {
            return Ok(e);
        }
        let matches: Vec<&CatalogEntry> = self
            .entries
            .iter()
            .filter(|e| e.name.starts_with(name))
            .collect();
        match matches.as_slice() {
            [] => Err(CatalogError::NotFound(name.to_string())),
            [one] => Ok(one),
            many => Err(CatalogError::Ambiguous {
                name: name.to_string(),
                candidates: many.iter().map(|e| e.name.clone()).collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Weight;

    #[test]
    fn builtin_entries_match_golden_weights() {
        for entry in Catalog::builtin().entries() {
            let golden = entry.golden.unwrap();
            let ws = entry.document.weight_system().unwrap();
            assert_eq!(ws.rank(), golden.rank, "{}", entry.name);
            let expected: Vec<Weight> = golden
                .weights
                .iter()
                .map(|w| Weight::new(w.to_vec()))
                .collect();
            assert_eq!(ws.weights(), expected.as_slice(), "{}", entry.name);
        }
    }

    #[test]
    fn shipped_files_are_canonical() {
        for entry in Catalog::builtin().entries() {
            assert_eq!(entry.document.to_json(), entry.source, "{}", entry.name);
        }
    }

    #[test]
    fn lookup_by_prefix() {
        let c = Catalog::builtin();
        assert_eq!(c.get("L6").unwrap().name, "L6-paper-example");
        assert_eq!(c.get("heisenberg3").unwrap().name, "heisenberg3");
        assert_eq!(c.get("h3").unwrap().name, "heisenberg3");
        assert_eq!(
            c.get("filiform").unwrap_err(),
            CatalogError::Ambiguous {
                name: "filiform".into(),
                candidates: vec!["filiform4".into(), "filiform5".into()],
            }
        );
        assert!(matches!(
            c.get("heisenberg"),
            Err(CatalogError::Ambiguous { .. })
        ));
        assert!(matches!(c.get("sl2"), Err(CatalogError::NotFound(_))));
    }

    #[test]
    fn extends_from_directory() {
        let dir = std::env::temp_dir().join(format!("lieweights-catalog-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let doc = Catalog::builtin()
            .get("heisenberg3")
            .unwrap()
            .source
            .replace("heisenberg3", "h3-copy");
        std::fs::write(dir.join("h3.json"), &doc).unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let mut c = Catalog::builtin();
        c.extend_from_dir(&dir).unwrap();
        assert_eq!(c.entries().last().unwrap().name, "h3-copy");
        assert_eq!(c.entries().last().unwrap().golden, None);
        let mut again = c.clone();
        assert_eq!(
            again.extend_from_dir(&dir),
            Err(CatalogError::DuplicateName("h3-copy".into()))
        );
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
