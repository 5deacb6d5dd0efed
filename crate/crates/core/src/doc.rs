//! JSON algebra documents.
//!
//! ```json
//! {"name": "h(1)", "basis": ["P", "Q", "I"],
//!  "brackets": [{"a": "P", "b": "Q", "rhs": [{"gen": "I", "coef": "1"}]}]}
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub a: String,
    pub b: String,
    pub rhs: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub gen: String,
    pub coef: String,
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let basis = alg.basis().to_vec();
        let brackets = alg
            .constants()
            .map(|((a, b), v)| BracketDoc {
                a: basis[a].clone(),
                b: basis[b].clone(),
                rhs: v
                    .iter()
                    .map(|(c, x)| TermDoc {
                        gen: basis[c].clone(),
                        coef: x.to_string(),
                    })
                    .collect(),
            })
            .collect();
        AlgebraDoc {
            name: alg.name().to_string(),
            basis,
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let mut builder = LieAlgebra::builder(&self.name, self.basis.iter().cloned())?;
        let alg = builder.build();
        let lookup = |location: String, name: &str| {
            alg.index_of(name).ok_or_else(|| Error::UnknownGenerator {
                location,
                name: name.to_string(),
            })
        };
        let mut seen = BTreeSet::new();
        for (k, br) in self.brackets.iter().enumerate() {
            let a = lookup(format!("brackets[{k}].a"), &br.a)?;
            let b = lookup(format!("brackets[{k}].b"), &br.b)?;
            if a == b {
                return Err(Error::DiagonalBracket {
                    location: format!("brackets[{k}]"),
                    name: br.a.clone(),
                });
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateBracket {
                    location: format!("brackets[{k}]"),
                    a: br.a.clone(),
                    b: br.b.clone(),
                });
            }
            for (t, term) in br.rhs.iter().enumerate() {
                let c = lookup(format!("brackets[{k}].rhs[{t}].gen"), &term.gen)?;
                let coef: Scalar =
                    term.coef
                        .parse()
                        .map_err(|source| Error::MalformedCoefficient {
                            location: format!("brackets[{k}].rhs[{t}].coef"),
                            source,
                        })?;
                builder.add(a, b, c, coef);
            }
        }
        Ok(builder.build())
    }
}

/// Parses a JSON algebra document.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    doc.to_algebra()
}

/// Pretty-printed, byte-deterministic document for `alg`.
pub fn algebra_to_json(alg: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from_algebra(alg)).expect("document serializes")
}
