//! Built-in algebras.
//!
//! Rotation generators are `J{i}{j}` with `i < j` (1-based), vectors are
//! `G{i}`, `F{i}`, `P{i}`, `Q{i}`. Every vector transforms as
//! `[J_ij, X_k] = δ_jk X_i − δ_ik X_j`.

use crate::algebra::{AlgebraBuilder, LieAlgebra};
use crate::error::{Error, Result};
use crate::groups::{self, Family};

pub fn rotation_names(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(format!("J{i}{j}"));
        }
    }
    out
}

pub fn vector_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `J_ab` for any ordered pair, as `(name, sign)`; `None` on the diagonal.
fn rot(a: usize, b: usize) -> Option<(String, i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((format!("J{a}{b}"), 1)),
        std::cmp::Ordering::Greater => Some((format!("J{b}{a}"), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

fn add_rotations(b: &mut AlgebraBuilder, n: usize) {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            let lhs = (format!("J{i}{j}"), format!("J{k}{l}"));
            let terms = [
                (rot(j, k), delta(i, l)),
                (rot(i, l), delta(j, k)),
                (rot(i, k), -delta(j, l)),
                (rot(j, l), -delta(i, k)),
            ];
            for (r, d) in terms {
                if let (Some((name, s)), true) = (r, d != 0) {
                    b.rel(&lhs.0, &lhs.1, &name, s * d);
                }
            }
        }
    }
}

fn add_vector(b: &mut AlgebraBuilder, n: usize, x: &str) {
    for i in 1..=n {
        for j in i + 1..=n {
            let jij = format!("J{i}{j}");
            b.rel(&jij, &format!("{x}{j}"), &format!("{x}{i}"), 1);
            b.rel(&jij, &format!("{x}{i}"), &format!("{x}{j}"), -1);
        }
    }
}

fn add_diagonal(b: &mut AlgebraBuilder, n: usize, x: &str, y: &str, z: &str, coef: i64) {
    for i in 1..=n {
        b.rel(&format!("{x}{i}"), &format!("{y}{i}"), z, coef);
    }
}

fn basis(parts: &[Vec<String>]) -> Vec<String> {
    parts.concat()
}

fn one(s: &str) -> Vec<String> {
    vec![s.to_string()]
}

/// Special orthogonal algebra so(n).
pub fn so(n: usize) -> LieAlgebra {
    let mut b = LieAlgebra::builder(&format!("so({n})"), rotation_names(n)).expect("basis");
    add_rotations(&mut b, n);
    b.build()
}

/// Euclidean algebra e(n) = so(n) ⋉ t(n).
pub fn euclidean(n: usize) -> LieAlgebra {
    let mut b = LieAlgebra::builder(
        &format!("e({n})"),
        basis(&[rotation_names(n), vector_names("P", n)]),
    )
    .expect("basis");
    add_rotations(&mut b, n);
    add_vector(&mut b, n, "P");
    b.build()
}

/// Weyl-Heisenberg algebra h(n): `[P_i, Q_k] = δ_ik I`.
pub fn heisenberg(n: usize) -> LieAlgebra {
    let mut b = LieAlgebra::builder(
        &format!("h({n})"),
        basis(&[vector_names("P", n), vector_names("Q", n), one("I")]),
    )
    .expect("basis");
    add_diagonal(&mut b, n, "P", "Q", "I", 1);
    b.build()
}

/// Abelian translations T(m) with generators `X1..Xm`.
pub fn translations(m: usize) -> LieAlgebra {
    LieAlgebra::abelian(&format!("T({m})"), vector_names("X", m)).expect("basis")
}

fn hamilton_builder(name: &str, n: usize, extra: &[Vec<String>]) -> AlgebraBuilder {
    let mut parts = vec![
        rotation_names(n),
        vector_names("G", n),
        vector_names("F", n),
        one("R"),
    ];
    parts.extend_from_slice(extra);
    let mut b = LieAlgebra::builder(name, basis(&parts)).expect("basis");
    add_rotations(&mut b, n);
    add_vector(&mut b, n, "G");
    add_vector(&mut b, n, "F");
    add_diagonal(&mut b, n, "G", "F", "R", 1);
    b
}

/// Homogeneous Hamilton algebra Ha(n).
pub fn hamilton(n: usize) -> LieAlgebra {
    hamilton_builder(&format!("Ha({n})"), n, &[]).build()
}

fn add_hamilton_translations(b: &mut AlgebraBuilder, n: usize) {
    add_vector(b, n, "P");
    add_vector(b, n, "Q");
    add_diagonal(b, n, "G", "Q", "T", 1);
    add_diagonal(b, n, "F", "P", "T", 1);
    for i in 1..=n {
        b.rel("E", &format!("G{i}"), &format!("P{i}"), -1);
        b.rel("E", &format!("F{i}"), &format!("Q{i}"), 1);
    }
    b.rel("E", "R", "T", 2);
}

/// Inhomogeneous Hamilton algebra IHa(n).
pub fn inhomogeneous_hamilton(n: usize) -> LieAlgebra {
    let extra = [
        vector_names("P", n),
        vector_names("Q", n),
        one("E"),
        one("T"),
    ];
    let mut b = hamilton_builder(&format!("IHa({n})"), n, &extra);
    add_hamilton_translations(&mut b, n);
    b.build()
}

/// Normalization of the central generators of QHa(n).
///
/// Each field is the sign `s` in the central charge table
/// `[P_i, Q_k] = s_I δ_ik I`, `[E, T] = −s_I I`, `[G_i, P_k] = s_M δ_ik M`,
/// `[F_i, Q_k] = s_A δ_ik A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralSigns {
    pub i: i64,
    pub m: i64,
    pub a: i64,
}

impl CentralSigns {
    pub const UNIT: CentralSigns = CentralSigns { i: 1, m: 1, a: 1 };
}

/// Centrally extended inhomogeneous Hamilton algebra QHa(n).
pub fn quantum_hamilton(n: usize) -> LieAlgebra {
    quantum_hamilton_with(n, QHA_SIGNS)
}

/// Central normalization used by [`quantum_hamilton`].
pub const QHA_SIGNS: CentralSigns = CentralSigns { i: -1, m: 1, a: 1 };

pub fn quantum_hamilton_with(n: usize, s: CentralSigns) -> LieAlgebra {
    let extra = [
        vector_names("P", n),
        vector_names("Q", n),
        one("E"),
        one("T"),
        one("I"),
        one("M"),
        one("A"),
    ];
    let mut b = hamilton_builder(&format!("QHa({n})"), n, &extra);
    add_hamilton_translations(&mut b, n);
    add_diagonal(&mut b, n, "P", "Q", "I", s.i);
    b.rel("E", "T", "I", -s.i);
    add_diagonal(&mut b, n, "G", "P", "M", s.m);
    add_diagonal(&mut b, n, "F", "Q", "A", s.a);
    b.build()
}

fn euclidean_inhomogeneous_builder(name: &str, n: usize, extra: &[Vec<String>]) -> AlgebraBuilder {
    let mut parts = vec![
        rotation_names(n),
        vector_names("G", n),
        vector_names("P", n),
        one("E"),
    ];
    parts.extend_from_slice(extra);
    let mut b = LieAlgebra::builder(name, basis(&parts)).expect("basis");
    add_rotations(&mut b, n);
    add_vector(&mut b, n, "G");
    add_vector(&mut b, n, "P");
    for i in 1..=n {
        b.rel("E", &format!("G{i}"), &format!("P{i}"), -1);
    }
    b
}

/// Inhomogeneous Euclidean algebra IE(n), generated by J, G, P, E.
pub fn inhomogeneous_euclidean(n: usize) -> LieAlgebra {
    euclidean_inhomogeneous_builder(&format!("IE({n})"), n, &[]).build()
}

/// Galilei algebra: IE(n) extended by the mass `[G_i, P_k] = δ_ik M`.
pub fn galilei(n: usize) -> LieAlgebra {
    let mut b = euclidean_inhomogeneous_builder(&format!("Galilei({n})"), n, &[one("M")]);
    add_diagonal(&mut b, n, "G", "P", "M", 1);
    b.build()
}

/// One row of the catalog listing.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub display: &'static str,
    pub min_n: usize,
    pub max_n: usize,
    pub formula: &'static str,
    dim: fn(usize) -> usize,
}

impl CatalogEntry {
    pub fn dimension(&self, n: usize) -> usize {
        (self.dim)(n)
    }

    pub fn display_name(&self, n: usize) -> String {
        let arg = match self.key {
            "sp" | "hsp" => format!("{}", 2 * n),
            "isp" => format!("{}", 2 * n + 2),
            _ => n.to_string(),
        };
        format!("{}({arg})", self.display)
    }

    pub fn build(&self, n: usize) -> Result<LieAlgebra> {
        if n < self.min_n || n > self.max_n {
            return Err(Error::UnsupportedDimension {
                group: self.key.to_string(),
                n,
            });
        }
        let alg = match self.key {
            "h" => heisenberg(n),
            "ha" => hamilton(n),
            "hsp" => groups::structure_constants_from_matrices(Family::HSp, n)?,
            "ie" => inhomogeneous_euclidean(n),
            "iha" => inhomogeneous_hamilton(n),
            "isp" => groups::structure_constants_from_matrices(Family::ISp, n)?,
            "galilei" => galilei(n),
            "qha" => quantum_hamilton(n),
            "so" => so(n),
            "sp" => groups::symplectic_algebra(n),
            "e" => euclidean(n),
            "t" => translations(n),
            other => return Err(Error::UnknownGroup(other.to_string())),
        };
        Ok(alg.with_name(&self.display_name(n)))
    }
}

const MAX_N: usize = 9;

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        key: "h",
        display: "H",
        min_n: 1,
        max_n: MAX_N,
        formula: "2n+1",
        dim: |n| 2 * n + 1,
    },
    CatalogEntry {
        key: "ha",
        display: "Ha",
        min_n: 1,
        max_n: MAX_N,
        formula: "(n^2+3n+2)/2",
        dim: |n| (n * n + 3 * n + 2) / 2,
    },
    CatalogEntry {
        key: "hsp",
        display: "HSp",
        min_n: 1,
        max_n: 4,
        formula: "2n^2+3n+1",
        dim: |n| 2 * n * n + 3 * n + 1,
    },
    CatalogEntry {
        key: "ie",
        display: "IE",
        min_n: 1,
        max_n: MAX_N,
        formula: "(n^2+3n+2)/2",
        dim: |n| (n * n + 3 * n + 2) / 2,
    },
    CatalogEntry {
        key: "iha",
        display: "IHa",
        min_n: 1,
        max_n: MAX_N,
        formula: "(n^2+7n+6)/2",
        dim: |n| (n * n + 7 * n + 6) / 2,
    },
    CatalogEntry {
        key: "isp",
        display: "ISp",
        min_n: 1,
        max_n: 3,
        formula: "2n^2+7n+5",
        dim: |n| 2 * n * n + 7 * n + 5,
    },
    CatalogEntry {
        key: "galilei",
        display: "Galilei",
        min_n: 1,
        max_n: MAX_N,
        formula: "(n^2+3n+4)/2",
        dim: |n| (n * n + 3 * n + 4) / 2,
    },
    CatalogEntry {
        key: "qha",
        display: "QHa",
        min_n: 1,
        max_n: MAX_N,
        formula: "(n^2+7n+12)/2",
        dim: |n| (n * n + 7 * n + 12) / 2,
    },
    CatalogEntry {
        key: "so",
        display: "so",
        min_n: 2,
        max_n: MAX_N,
        formula: "n(n-1)/2",
        dim: |n| n * (n - 1) / 2,
    },
    CatalogEntry {
        key: "sp",
        display: "sp",
        min_n: 1,
        max_n: 4,
        formula: "n(2n+1)",
        dim: |n| n * (2 * n + 1),
    },
    CatalogEntry {
        key: "e",
        display: "e",
        min_n: 1,
        max_n: MAX_N,
        formula: "n(n+1)/2",
        dim: |n| n * (n + 1) / 2,
    },
    CatalogEntry {
        key: "t",
        display: "T",
        min_n: 1,
        max_n: 64,
        formula: "n",
        dim: |n| n,
    },
];

pub fn entry(key: &str) -> Result<&'static CatalogEntry> {
    let k = key.to_ascii_lowercase();
    CATALOG
        .iter()
        .find(|e| e.key == k)
        .ok_or(Error::UnknownGroup(key.to_string()))
}

/// Catalog algebra by key (`"galilei"`, `"qha"`, ...) and dimension parameter.
pub fn algebra(key: &str, n: usize) -> Result<LieAlgebra> {
    entry(key)?.build(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DEFAULT_SEED, DEFAULT_TRIALS};
    use crate::scalar::Scalar;

    #[test]
    fn catalog_dimensions_match_formulas() {
        for e in CATALOG {
            for n in e.min_n..=e.max_n.min(3) {
                let alg = e.build(n).unwrap();
                assert_eq!(alg.dim(), e.dimension(n), "{}", alg.name());
            }
        }
        assert_eq!(galilei(3).dim(), 11);
        assert_eq!(quantum_hamilton(3).dim(), 21);
        assert_eq!(translations(5).dim(), 5);
    }

    #[test]
    fn every_catalog_algebra_satisfies_jacobi() {
        for e in CATALOG {
            for n in e.min_n..=e.max_n.min(3) {
                let alg = e.build(n).unwrap();
                let rep = alg.jacobi_check();
                assert!(rep.passed(), "{}: {:?}", alg.name(), rep.violations.first());
            }
        }
    }

    #[test]
    fn sample_brackets() {
        let g = galilei(3);
        let e = g.generator("E").unwrap();
        let g1 = g.generator("G1").unwrap();
        let p1 = g.generator("P1").unwrap();
        assert_eq!(g.bracket(&e, &g1).unwrap(), p1.scale(&-Scalar::one()));
        let ha = hamilton(3);
        let r = ha.generator("R").unwrap();
        let br = ha
            .bracket(&ha.generator("G1").unwrap(), &ha.generator("F1").unwrap())
            .unwrap();
        assert_eq!(br, r);
    }

    #[test]
    fn corrupted_hamilton_fails_jacobi() {
        let ha = hamilton(3);
        let mut b = LieAlgebra::builder("bad", ha.basis().to_vec()).unwrap();
        for ((x, y), v) in ha.constants() {
            for (c, s) in v.iter() {
                b.add(x, y, c, s.clone());
            }
        }
        // [G1, F1] = R becomes [G1, F1] = G1
        b.rel("G1", "F1", "R", -1).rel("G1", "F1", "G1", 1);
        let bad = b.build();
        let rep = bad.jacobi_check();
        assert!(!rep.passed());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.triple.contains(&"G1".to_string()) && v.triple.contains(&"F1".to_string())));
    }

    #[test]
    fn casimir_counts_of_the_table() {
        let g: Vec<usize> = (1..=3)
            .map(|n| galilei(n).casimir_count(DEFAULT_SEED, DEFAULT_TRIALS))
            .collect();
        assert_eq!(g, vec![2, 3, 3]);
        let q: Vec<usize> = (1..=3)
            .map(|n| quantum_hamilton(n).casimir_count(DEFAULT_SEED, DEFAULT_TRIALS))
            .collect();
        assert_eq!(q, vec![4, 5, 5]);
        assert_eq!(galilei(3).generic_rank(DEFAULT_SEED, DEFAULT_TRIALS), 8);
        assert_eq!(
            quantum_hamilton(3).generic_rank(DEFAULT_SEED, DEFAULT_TRIALS),
            16
        );
    }
}
