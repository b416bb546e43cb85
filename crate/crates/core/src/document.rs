//! JSON input documents.
//!
//! ```json
//! {
//!   "name": "heisenberg3",
//!   "dim": 3,
//!   "brackets": [
//!     { "i": 1, "j": 2, "k": 3, "c": "1" }
//!   ]
//! }
//! ```
//!
//! Indices are 1-based and `i < j`. A document may instead carry a
//! `weight_system` (`rank` plus one integer vector per basis vector) and no
//! brackets, in which case only graph-level analysis is possible.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::torus::{diagonal_torus, weight_system, TorusError, Weight, WeightSystem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error in {field}: {message}")]
    Field { field: String, message: String },
    #[error("duplicate bracket entry ({i}, {j}, {k})")]
    DuplicateBracket { i: usize, j: usize, k: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// `[X_i, X_j] ∋ c X_k`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystemSpec {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<Bracket>,
    pub weight_system: Option<WeightSystemSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: String,
    dim: usize,
    brackets: Vec<RawBracket>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight_system: Option<RawWeightSystem>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeightSystem {
    rank: usize,
    weights: Vec<Vec<i64>>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawDocument) -> Result<Self, DocumentError> {
        if raw.dim == 0 {
            return Err(field_error("dim", "must be positive"));
        }
        let dim = raw.dim;
        let mut seen = BTreeSet::new();
        let mut brackets = Vec::with_capacity(raw.brackets.len());
        for (n, b) in raw.brackets.into_iter().enumerate() {
            let field = |name: &str| format!("brackets[{n}].{name}");
            for (name, value) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if value == 0 || value > dim {
                    return Err(field_error(
                        field(name),
                        format!("index {value} outside 1..={dim}"),
                    ));
                }
            }
            if b.i >= b.j {
                return Err(field_error(
                    field("j"),
                    format!("expected i < j, got i = {}, j = {}", b.i, b.j),
                ));
            }
            let c = parse_rational(&b.c).map_err(|e| field_error(field("c"), e.to_string()))?;
            if num_traits::Zero::is_zero(&c) {
                return Err(field_error(field("c"), "zero coefficient"));
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(DocumentError::DuplicateBracket {
                    i: b.i,
                    j: b.j,
                    k: b.k,
                });
            }
            brackets.push(Bracket {
                i: b.i,
                j: b.j,
                k: b.k,
                c,
            });
        }
        let weight_system = match raw.weight_system {
            None => None,
            Some(ws) => {
                if !brackets.is_empty() {
                    return Err(field_error(
                        "weight_system",
                        "a weight-system document must have no brackets",
                    ));
                }
                if ws.rank == 0 {
                    return Err(field_error("weight_system.rank", "must be positive"));
                }
                if ws.weights.len() != dim {
                    return Err(field_error(
                        "weight_system.weights",
                        format!("expected {dim} weights, got {}", ws.weights.len()),
                    ));
                }
                if let Some(n) = ws.weights.iter().position(|w| w.len() != ws.rank) {
                    return Err(field_error(
                        format!("weight_system.weights[{n}]"),
                        format!("expected {} coordinates", ws.rank),
                    ));
                }
                Some(WeightSystemSpec {
                    rank: ws.rank,
                    weights: ws.weights,
                })
            }
        };
        Ok(Self {
            name: raw.name,
            dim,
            brackets,
            weight_system,
        })
    }

    /// Canonical serialization: pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            name: self.name.clone(),
            dim: self.dim,
            brackets: self
                .brackets
                .iter()
                .map(|b| RawBracket {
                    i: b.i,
                    j: b.j,
                    k: b.k,
                    c: format_rational(&b.c),
                })
                .collect(),
            weight_system: self.weight_system.as_ref().map(|ws| RawWeightSystem {
                rank: ws.rank,
                weights: ws.weights.clone(),
            }),
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("documents always serialize");
        out.push('\n');
        out
    }

    pub fn from_algebra(name: &str, algebra: &LieAlgebra) -> Self {
        let brackets = algebra
            .constants()
            .map(|((i, j, k), c)| Bracket {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                c: c.clone(),
            })
            .collect();
        Self {
            name: name.to_string(),
            dim: algebra.dim(),
            brackets,
            weight_system: None,
        }
    }

    pub fn from_weight_system(name: &str, ws: &WeightSystem) -> Self {
        let spec = WeightSystemSpec {
            rank: ws.rank(),
            weights: ws.weights().iter().map(|w| w.coords().to_vec()).collect(),
        };
        Self {
            name: name.to_string(),
            dim: ws.len(),
            brackets: Vec::new(),
            weight_system: Some(spec),
        }
    }

    pub fn is_graph_only(&self) -> bool {
        self.weight_system.is_some()
    }

    /// The algebra, or `None` for weight-system documents.
    pub fn algebra(&self) -> Result<Option<LieAlgebra>, DocumentError> {
        if self.is_graph_only() {
            return Ok(None);
        }
        let entries = self
            .brackets
            .iter()
            .map(|b| ((b.i - 1, b.j - 1, b.k - 1), b.c.clone()));
        Ok(Some(LieAlgebra::new(self.dim, entries)?))
    }

    /// The given weight system, or the one computed from the diagonal torus.
    pub fn weight_system(&self) -> Result<WeightSystem, DocumentError> {
        match (&self.weight_system, self.algebra()?) {
            (Some(spec), _) => Ok(WeightSystem::new(
                spec.rank,
                spec.weights.iter().cloned().map(Weight::new).collect(),
            )?),
            (None, Some(algebra)) => Ok(weight_system(&algebra, &diagonal_torus(&algebra)?)?),
            (None, None) => unreachable!("documents carry brackets or a weight system"),
        }
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(pos) => message[..pos].to_string(),
        None => message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    const H3: &str = r#"{
  "name": "heisenberg3",
  "dim": 3,
  "brackets": [
    {
      "i": 1,
      "j": 2,
      "k": 3,
      "c": "1"
    }
  ]
}
"#;

    #[test]
    fn parses_h3() {
        let doc = AlgebraDocument::parse(H3).unwrap();
        assert_eq!(doc.dim, 3);
        assert_eq!(
            doc.brackets,
            vec![Bracket {
                i: 1,
                j: 2,
                k: 3,
                c: int(1)
            }]
        );
        let l = doc.algebra().unwrap().unwrap();
        assert_eq!(l.structure_constant(0, 1, 2), int(1));
        assert_eq!(doc.weight_system().unwrap().rank(), 2);
    }

    #[test]
    fn round_trips_byte_exact() {
        assert_eq!(AlgebraDocument::parse(H3).unwrap().to_json(), H3);
        let frac = H3.replace("\"1\"", "\"-3/4\"");
        assert_eq!(AlgebraDocument::parse(&frac).unwrap().to_json(), frac);
    }

    #[test]
    fn rejects_bad_coefficients() {
        let err = AlgebraDocument::parse(&H3.replace("\"1\"", "\"1/0\"")).unwrap_err();
        assert!(
            matches!(&err, DocumentError::Field { field, .. } if field == "brackets[0].c"),
            "{err}"
        );
        assert!(AlgebraDocument::parse(&H3.replace("\"1\"", "\"0\"")).is_err());
        assert!(AlgebraDocument::parse(&H3.replace("\"1\"", "\"x\"")).is_err());
    }

    #[test]
    fn rejects_bad_indices() {
        let swapped = H3
            .replace("\"i\": 1", "\"i\": 3")
            .replace("\"k\": 3", "\"k\": 1");
        assert!(matches!(
            AlgebraDocument::parse(&swapped),
            Err(DocumentError::Field { .. })
        ));
        let out_of_range = H3.replace("\"k\": 3", "\"k\": 4");
        assert!(matches!(
            AlgebraDocument::parse(&out_of_range),
            Err(DocumentError::Field { .. })
        ));
    }

    #[test]
    fn rejects_duplicates() {
        let doc = r#"{"name": "d", "dim": 3, "brackets": [
            {"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 1, "j": 2, "k": 3, "c": "2"}]}"#;
        assert_eq!(
            AlgebraDocument::parse(doc).unwrap_err(),
            DocumentError::DuplicateBracket { i: 1, j: 2, k: 3 }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = AlgebraDocument::parse("{\n  \"name\": \"x\",\n  \"dim\": }").unwrap_err();
        assert!(
            matches!(err, DocumentError::Syntax { line: 3, .. }),
            "{err:?}"
        );
        assert!(
            AlgebraDocument::parse(r#"{"name": "x", "dim": 1, "brackets": [], "extra": 1}"#)
                .is_err()
        );
    }

    #[test]
    fn jacobi_failures_surface() {
        let doc = r#"{"name": "bad", "dim": 3, "brackets": [
            {"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 1, "j": 3, "k": 1, "c": "1"}]}"#;
        let doc = AlgebraDocument::parse(doc).unwrap();
        assert!(matches!(
            doc.algebra(),
            Err(DocumentError::Lie(LieError::JacobiViolation { .. }))
        ));
    }

    #[test]
    fn weight_system_documents() {
        let text = r#"{"name": "w", "dim": 3, "brackets": [], "weight_system": {"rank": 2, "weights": [[1, 0], [0, 1], [2, 1]]}}"#;
        let doc = AlgebraDocument::parse(text).unwrap();
        assert!(doc.is_graph_only());
        assert_eq!(doc.algebra().unwrap(), None);
        let ws = doc.weight_system().unwrap();
        assert_eq!(ws.weight(2), &Weight::new(vec![2, 1]));
        let again = AlgebraDocument::from_weight_system("w", &ws);
        assert_eq!(AlgebraDocument::parse(&again.to_json()).unwrap(), again);

        let with_brackets = text.replace(
            "\"brackets\": []",
            "\"brackets\": [{\"i\": 1, \"j\": 2, \"k\": 3, \"c\": \"1\"}]",
        );
        assert!(AlgebraDocument::parse(&with_brackets).is_err());
        let short = text.replace("[2, 1]", "[2]");
        assert!(AlgebraDocument::parse(&short).is_err());
    }

    #[test]
    fn from_algebra_matches_constants() {
        let doc = AlgebraDocument::parse(H3).unwrap();
        let l = doc.algebra().unwrap().unwrap();
        assert_eq!(AlgebraDocument::from_algebra("heisenberg3", &l), doc);
    }
}
