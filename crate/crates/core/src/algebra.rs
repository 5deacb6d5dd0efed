//! Finite-dimensional Lie algebras given by exact structure constants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{SparseMatrix, SparseVec};

/// Seed used when callers do not pick one.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Rank trials used when callers do not pick a count.
pub const DEFAULT_TRIALS: usize = 5;
/// Random evaluation points for the generic rank are drawn from `[-R, R]`.
pub const DEFAULT_RANK_RANGE: i64 = 1_000_000;

/// Lie algebra with a named, ordered basis.
///
/// Only brackets `[Z_a, Z_b]` with `a < b` are stored.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    index: HashMap<String, usize>,
    constants: BTreeMap<(usize, usize), SparseVec>,
}

/// Linear combination of basis generators of a particular algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    dim: usize,
    coeffs: SparseVec,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            dim,
            coeffs: SparseVec::new(),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "generator index {i} out of range {dim}");
        AlgebraElement {
            dim,
            coeffs: SparseVec::unit(i),
        }
    }

    pub fn from_sparse(dim: usize, coeffs: SparseVec) -> Self {
        assert!(
            coeffs.entries().last().is_none_or(|(i, _)| *i < dim),
            "coefficient index out of range"
        );
        AlgebraElement { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim, other.dim);
        AlgebraElement {
            dim: self.dim,
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim, other.dim);
        AlgebraElement {
            dim: self.dim,
            coeffs: self.coeffs.sub(&other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            dim: self.dim,
            coeffs: self.coeffs.scale(c),
        }
    }
}

/// A generator triple whose Jacobi sum does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [String; 3],
    pub residual: AlgebraElement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Accumulates structure constants by generator name.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    alg: LieAlgebra,
}

impl AlgebraBuilder {
    /// Adds `coef * Z_c` to `[Z_a, Z_b]`.
    pub fn add(&mut self, a: usize, b: usize, c: usize, coef: Scalar) -> &mut Self {
        let n = self.alg.dim();
        assert!(a < n && b < n && c < n, "generator index out of range");
        if a == b || coef.is_zero() {
            return self;
        }
        let (key, coef) = if a < b {
            ((a, b), coef)
        } else {
            ((b, a), -coef)
        };
        let entry = self.alg.constants.entry(key).or_default();
        *entry = entry.add(&SparseVec::from_pairs([(c, coef)]));
        if entry.is_zero() {
            self.alg.constants.remove(&key);
        }
        self
    }

    /// Name-based [`add`](Self::add) with an integer coefficient; panics on
    /// unknown names, so it is meant for hard-coded tables.
    pub fn rel(&mut self, a: &str, b: &str, c: &str, coef: i64) -> &mut Self {
        let (a, b, c) = (self.idx(a), self.idx(b), self.idx(c));
        self.add(a, b, c, Scalar::from_int(coef))
    }

    pub fn idx(&self, name: &str) -> usize {
        self.alg
            .index_of(name)
            .unwrap_or_else(|| panic!("generator {name:?} not in basis"))
    }

    pub fn has(&self, name: &str) -> bool {
        self.alg.index_of(name).is_some()
    }

    pub fn build(&self) -> LieAlgebra {
        self.alg.clone()
    }
}

impl LieAlgebra {
    /// Abelian algebra on the given basis.
    pub fn abelian<S: Into<String>>(
        name: &str,
        basis: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(basis.len());
        for (i, g) in basis.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator {
                    location: format!("basis[{i}]"),
                    name: g.clone(),
                });
            }
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            basis,
            index,
            constants: BTreeMap::new(),
        })
    }

    pub fn builder<S: Into<String>>(
        name: &str,
        basis: impl IntoIterator<Item = S>,
    ) -> Result<AlgebraBuilder> {
        Ok(AlgebraBuilder {
            alg: LieAlgebra::abelian(name, basis)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    /// Stored brackets `((a, b), [Z_a, Z_b])` with `a < b`, sorted by `(a, b)`.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> {
        self.constants.iter().map(|(k, v)| (*k, v))
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.bracket_basis(a, b).get(c).cloned().unwrap_or_default()
    }

    /// `[Z_a, Z_b]` as a sparse vector over the basis.
    pub fn bracket_basis(&self, a: usize, b: usize) -> SparseVec {
        if a < b {
            self.constants.get(&(a, b)).cloned().unwrap_or_default()
        } else if b < a {
            self.constants
                .get(&(b, a))
                .map(|v| v.scale(&-Scalar::one()))
                .unwrap_or_default()
        } else {
            SparseVec::new()
        }
    }

    /// True when `Z_a` brackets to zero with every generator.
    pub fn is_central(&self, a: usize) -> bool {
        !self.constants.keys().any(|&(x, y)| x == a || y == a)
    }

    pub fn generator(&self, name: &str) -> Option<AlgebraElement> {
        self.index_of(name)
            .map(|i| AlgebraElement::basis(self.dim(), i))
    }

    /// Element from `(name, coefficient)` pairs.
    pub fn element<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a str, Scalar)>,
    ) -> Result<AlgebraElement> {
        let mut pairs = Vec::new();
        for (name, c) in terms {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownGenerator {
                location: "element".into(),
                name: name.to_string(),
            })?;
            pairs.push((i, c));
        }
        Ok(AlgebraElement::from_sparse(
            self.dim(),
            SparseVec::from_pairs(pairs),
        ))
    }

    fn check_dim(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim != self.dim() {
            return Err(Error::IndexMismatch {
                expected: self.dim(),
                found: x.dim,
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(AlgebraElement {
            dim: self.dim(),
            coeffs: self.bracket_vec(&x.coeffs, &y.coeffs),
        })
    }

    fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                if a == b {
                    continue;
                }
                let br = self.bracket_basis(a, b);
                if !br.is_zero() {
                    acc = acc.axpy(&(xa * yb), &br);
                }
            }
        }
        acc
    }

    /// Human-readable element, e.g. `2*G1 - 1/2*P3`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        format_combination(x.coeffs.iter().map(|(i, c)| (self.basis[i].as_str(), c)))
    }

    /// Evaluates the Jacobi sum on every triple `a < b < c`.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.bracket_basis(a, b);
                for c in b + 1..n {
                    let bc = self.bracket_basis(b, c);
                    let ca = self.bracket_basis(c, a);
                    let res = self
                        .bracket_vec(&ab, &SparseVec::unit(c))
                        .add(&self.bracket_vec(&bc, &SparseVec::unit(a)))
                        .add(&self.bracket_vec(&ca, &SparseVec::unit(b)));
                    if !res.is_zero() {
                        violations.push(JacobiViolation {
                            triple: [
                                self.basis[a].clone(),
                                self.basis[b].clone(),
                                self.basis[c].clone(),
                            ],
                            residual: AlgebraElement {
                                dim: n,
                                coeffs: res,
                            },
                        });
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Matrix of `ad_z`: entry `(C, B)` is `sum_A z^A c^C_{A,B}`.
    pub fn adjoint_matrix(&self, z: &AlgebraElement) -> Result<Vec<Vec<Scalar>>> {
        self.check_dim(z)?;
        let n = self.dim();
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for (b, col) in self.adjoint_columns(&z.coeffs).into_iter().enumerate() {
            for (c, v) in col.iter() {
                m[c][b] = v.clone();
            }
        }
        Ok(m)
    }

    fn adjoint_columns(&self, z: &SparseVec) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|b| self.bracket_vec(z, &SparseVec::unit(b)))
            .collect()
    }

    /// The antisymmetric form `B_ab = Σ_c x_c c^c_ab`, one sparse row per `a`.
    pub fn coadjoint_form(&self, x: &SparseVec) -> Vec<SparseVec> {
        let n = self.dim();
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for ((a, b), v) in self.constants() {
            let s: Scalar = v
                .iter()
                .filter_map(|(c, k)| x.get(c).map(|xc| xc * k))
                .sum();
            if !s.is_zero() {
                rows[b].push((a, -&s));
                rows[a].push((b, s));
            }
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    /// Generic rank of the coadjoint form, maximized over `trials` random
    /// integer points.
    pub fn generic_rank(&self, seed: u64, trials: usize) -> usize {
        self.generic_rank_in_range(seed, trials, DEFAULT_RANK_RANGE)
    }

    pub fn generic_rank_in_range(&self, seed: u64, trials: usize, range: i64) -> usize {
        self.max_random_rank(seed, trials, range, |x| self.coadjoint_form(x))
    }

    /// Generic rank of `ad_z` itself.
    pub fn generic_adjoint_rank(&self, seed: u64, trials: usize) -> usize {
        self.max_random_rank(seed, trials, DEFAULT_RANK_RANGE, |z| {
            self.adjoint_columns(z)
        })
    }

    fn max_random_rank(
        &self,
        seed: u64,
        trials: usize,
        range: i64,
        matrix: impl Fn(&SparseVec) -> Vec<SparseVec>,
    ) -> usize {
        assert!(trials >= 1, "at least one rank trial is required");
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        for _ in 0..trials {
            let z = SparseVec::from_pairs(
                (0..n).map(|i| (i, Scalar::from_int(rng.gen_range(-range..=range)))),
            );
            best = best.max(SparseMatrix::from_rows(n, matrix(&z)).rank());
        }
        best
    }

    /// Number of independent Casimirs predicted by the generic rank.
    pub fn casimir_count(&self, seed: u64, trials: usize) -> usize {
        self.dim() - self.generic_rank(seed, trials)
    }

    /// The span of the listed generators, as an algebra in the listed order.
    pub fn subalgebra(&self, gens: &[usize]) -> Result<LieAlgebra> {
        let pos: HashMap<usize, usize> = gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let names: Vec<String> = gens.iter().map(|&g| self.basis[g].clone()).collect();
        let mut b = LieAlgebra::builder(&format!("{}|sub", self.name), names.clone())?;
        for (i, &gi) in gens.iter().enumerate() {
            for &gj in &gens[i + 1..] {
                for (c, v) in self.bracket_basis(gi, gj).iter() {
                    match pos.get(&c) {
                        Some(&k) => {
                            b.add(pos[&gi], pos[&gj], k, v.clone());
                        }
                        None => return Err(Error::SubsetNotClosed { subset: names }),
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// Same basis names in the same order and identical constants.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.basis == other.basis && self.constants == other.constants
    }

    /// Index-based description independent of generator names.
    pub fn fingerprint(&self) -> String {
        let mut s = format!("{};", self.dim());
        for ((a, b), v) in &self.constants {
            s.push_str(&format!("{a},{b}:"));
            for (c, x) in v.iter() {
                s.push_str(&format!("{c}={x} "));
            }
            s.push(';');
        }
        s
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {})", self.name, self.dim())?;
        for ((a, b), v) in &self.constants {
            let rhs = format_combination(v.iter().map(|(i, c)| (self.basis[i].as_str(), c)));
            writeln!(f, "  [{}, {}] = {}", self.basis[*a], self.basis[*b], rhs)?;
        }
        Ok(())
    }
}

/// Formats `sum c_k * x_k` with unit coefficients suppressed.
pub fn format_combination<'a>(terms: impl Iterator<Item = (&'a str, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h1() -> LieAlgebra {
        let mut b = LieAlgebra::builder("h(1)", ["P", "Q", "I"]).unwrap();
        b.rel("P", "Q", "I", 1);
        b.build()
    }

    fn so3() -> LieAlgebra {
        let mut b = LieAlgebra::builder("so(3)", ["J12", "J13", "J23"]).unwrap();
        b.rel("J12", "J13", "J23", -1)
            .rel("J12", "J23", "J13", 1)
            .rel("J13", "J23", "J12", -1);
        b.build()
    }

    #[test]
    fn reversed_insertion_is_stored_antisymmetric() {
        let mut b = LieAlgebra::builder("x", ["A", "B"]).unwrap();
        b.rel("B", "A", "A", 1);
        let alg = b.build();
        assert_eq!(alg.structure_constant(0, 1, 0), Scalar::from_int(-1));
        assert_eq!(alg.structure_constant(1, 0, 0), Scalar::from_int(1));
    }

    #[test]
    fn duplicate_basis_rejected() {
        assert!(matches!(
            LieAlgebra::abelian("x", ["A", "A"]),
            Err(Error::DuplicateGenerator { .. })
        ));
    }

    #[test]
    fn bracket_of_element_with_itself_vanishes() {
        let alg = so3();
        let x = alg
            .element([("J12", Scalar::from_int(2)), ("J23", Scalar::ratio(-1, 3))])
            .unwrap();
        assert!(alg.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn index_mismatch_is_an_error() {
        let alg = so3();
        let x = AlgebraElement::basis(4, 0);
        assert!(matches!(
            alg.bracket(&x, &x),
            Err(Error::IndexMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn adjoint_of_p_in_heisenberg() {
        let alg = h1();
        let m = alg.adjoint_matrix(&alg.generator("P").unwrap()).unwrap();
        for (c, row) in m.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if (c, b) == (2, 1) {
                    assert_eq!(*x, Scalar::one());
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn adjoint_of_rotation_has_rank_two() {
        let alg = so3();
        let m = alg.adjoint_matrix(&alg.generator("J12").unwrap()).unwrap();
        let rows: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
        assert_eq!(SparseMatrix::from_rows(3, rows).rank(), 2);
        assert_eq!(alg.generic_rank(1, 3), 2);
        assert_eq!(alg.casimir_count(1, 3), 1);
    }

    #[test]
    fn abelian_rank_is_zero() {
        let alg = LieAlgebra::abelian("T(5)", ["X1", "X2", "X3", "X4", "X5"]).unwrap();
        assert_eq!(alg.generic_rank(DEFAULT_SEED, DEFAULT_TRIALS), 0);
        assert!(alg.jacobi_check().passed());
        let z = alg.generator("X2").unwrap();
        assert!(alg
            .adjoint_matrix(&z)
            .unwrap()
            .iter()
            .flatten()
            .all(Scalar::is_zero));
    }

    #[test]
    fn subalgebra_closure() {
        let alg = h1();
        assert!(alg.subalgebra(&[0, 2]).is_ok());
        assert!(matches!(
            alg.subalgebra(&[0, 1]),
            Err(Error::SubsetNotClosed { .. })
        ));
    }

    #[test]
    fn format_element_signs() {
        let alg = h1();
        let x = alg
            .element([("P", Scalar::from_int(-1)), ("I", Scalar::ratio(3, 2))])
            .unwrap();
        assert_eq!(alg.format_element(&x), "-P + 3/2*I");
    }
}
