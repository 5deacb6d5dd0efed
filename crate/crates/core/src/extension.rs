//! Algebraic central extensions.
//!
//! Every pair `a < b` gets an unknown central charge `M_ab`. The Jacobi
//! identity of the deformed bracket is linear in the charges; its solution
//! space modulo the coboundaries `M_ab = c^γ_ab` is the extension space.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{Span, SparseMatrix, SparseVec};

/// Column of the unknown `M_ab` (`a < b`) in lexicographic order.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CocycleAnsatz {
    algebra: LieAlgebra,
    pairs: Vec<(usize, usize)>,
    /// Column → name of the subalgebra that forced it to zero.
    pruned: BTreeMap<usize, String>,
}

impl CocycleAnsatz {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// All unknowns `(a, b)` in column order, pruned or not.
    pub fn unknowns(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn unknown_names(&self) -> Vec<(String, String)> {
        let b = self.algebra.basis();
        self.pairs
            .iter()
            .map(|&(x, y)| (b[x].clone(), b[y].clone()))
            .collect()
    }

    pub fn is_pruned(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.pruned
            .contains_key(&pair_index(self.algebra.dim(), a, b))
    }

    /// `((a, b), provenance)` for every unknown fixed to zero.
    pub fn pruned(&self) -> Vec<((usize, usize), &str)> {
        self.pruned
            .iter()
            .map(|(&c, s)| (self.pairs[c], s.as_str()))
            .collect()
    }

    pub fn free_count(&self) -> usize {
        self.pairs.len() - self.pruned.len()
    }
}

/// One unknown per unordered generator pair.
pub fn build_ansatz(alg: &LieAlgebra) -> CocycleAnsatz {
    CocycleAnsatz {
        algebra: alg.clone(),
        pairs: all_pairs(alg.dim()),
        pruned: BTreeMap::new(),
    }
}

/// Algebras verified to have no central extension, keyed by an index-based
/// fingerprint of their structure constants.
#[derive(Clone, Debug, Default)]
pub struct ExtensionFreeRegistry {
    verified: HashMap<String, String>,
    rejected: HashMap<String, usize>,
}

impl ExtensionFreeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry seeded by solving so(n) for n ≤ 4, sp(2n) for n ≤ 2 (standard
    /// and extended metric bases) and e(n) for n ≤ 4 without pruning; only
    /// those with no extension are kept.
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        for n in 2..=4 {
            reg.verify(&crate::catalog::so(n));
        }
        for n in 1..=2 {
            reg.verify(&crate::groups::symplectic_algebra(n));
        }
        reg.verify(&crate::groups::extended_symplectic_algebra(1).with_name("sp(4)'"));
        for n in 1..=4 {
            reg.verify(&crate::catalog::euclidean(n));
        }
        reg
    }

    /// Solves `alg` without pruning and records the outcome; returns whether
    /// it is extension-free.
    pub fn verify(&mut self, alg: &LieAlgebra) -> bool {
        let key = alg.fingerprint();
        if self.verified.contains_key(&key) {
            return true;
        }
        if self.rejected.contains_key(&key) {
            return false;
        }
        let ne = solve_central_extension(alg).dimension;
        if ne == 0 {
            self.verified.insert(key, alg.name().to_string());
            true
        } else {
            self.rejected.insert(key, ne);
            false
        }
    }

    /// Name of the verified algebra with the same structure, if any.
    pub fn lookup(&self, alg: &LieAlgebra) -> Option<&str> {
        self.verified.get(&alg.fingerprint()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.verified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verified.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.verified.values().map(String::as_str).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneReport {
    /// Subsets used, with the registry entry they matched.
    pub applied: Vec<(Vec<String>, String)>,
    /// Closed subsets whose algebra is not in the registry.
    pub skipped: Vec<Vec<String>>,
}

/// Fixes intra-subset charges to zero for subsets whose algebra is in the
/// registry. Subsets must be closed under the bracket.
pub fn prune_by_subalgebras(
    ansatz: &CocycleAnsatz,
    subsets: &[Vec<String>],
    registry: &ExtensionFreeRegistry,
) -> Result<(CocycleAnsatz, PruneReport)> {
    let alg = &ansatz.algebra;
    let mut out = ansatz.clone();
    let mut report = PruneReport::default();
    for subset in subsets {
        let mut idx = Vec::with_capacity(subset.len());
        for (k, name) in subset.iter().enumerate() {
            idx.push(alg.index_of(name).ok_or_else(|| Error::UnknownGenerator {
                location: format!("subset[{k}]"),
                name: name.clone(),
            })?);
        }
        let sub = alg.subalgebra(&idx)?;
        match registry.lookup(&sub) {
            Some(label) => {
                let note = format!(
                    "extension-free subalgebra {label} on {{{}}}",
                    subset.join(",")
                );
                for (i, &a) in idx.iter().enumerate() {
                    for &b in &idx[i + 1..] {
                        let c = pair_index(alg.dim(), a.min(b), a.max(b));
                        out.pruned.entry(c).or_insert_with(|| note.clone());
                    }
                }
                report.applied.push((subset.clone(), label.to_string()));
            }
            None => report.skipped.push(subset.clone()),
        }
    }
    Ok((out, report))
}

/// Rotation-plus-vector and symplectic-block subsets detected by name:
/// `{J.., X1..Xn}` for each vector family `X`, and the `W..` block.
pub fn standard_blocking_subsets(alg: &LieAlgebra) -> Vec<Vec<String>> {
    let basis = alg.basis();
    let is_family = |g: &str, p: char| {
        g.starts_with(p) && g.len() > 1 && g[1..].bytes().all(|c| c.is_ascii_digit())
    };
    let js: Vec<String> = basis
        .iter()
        .filter(|g| is_family(g, 'J'))
        .cloned()
        .collect();
    let mut out = Vec::new();
    if !js.is_empty() {
        for p in ['G', 'F', 'P', 'Q'] {
            let xs: Vec<String> = basis.iter().filter(|g| is_family(g, p)).cloned().collect();
            if !xs.is_empty() {
                out.push([js.clone(), xs].concat());
            }
        }
    }
    let ws: Vec<String> = basis
        .iter()
        .filter(|g| is_family(g, 'W'))
        .cloned()
        .collect();
    if !ws.is_empty() {
        out.push(ws);
    }
    let idx =
        |s: &Vec<String>| -> Vec<usize> { s.iter().map(|g| alg.index_of(g).unwrap()).collect() };
    out.retain(|s| alg.subalgebra(&idx(s)).is_ok());
    out
}

/// The Jacobi constraints on the free unknowns.
#[derive(Clone, Debug)]
pub struct JacobiSystem {
    /// Pair index of each column.
    pub columns: Vec<usize>,
    pub matrix: SparseMatrix,
    /// Generator triple that first produced each row.
    pub origins: Vec<(usize, usize, usize)>,
}

/// For each triple `a < b < c`:
/// `M([a,b],c) + M([b,c],a) + M([c,a],b) = 0`, rows normalized and deduplicated.
pub fn jacobi_system(ansatz: &CocycleAnsatz) -> JacobiSystem {
    let alg = &ansatz.algebra;
    let n = alg.dim();
    let mut col_of = vec![None; ansatz.pairs.len()];
    let mut columns = Vec::new();
    for (c, slot) in col_of.iter_mut().enumerate() {
        if !ansatz.pruned.contains_key(&c) {
            *slot = Some(columns.len());
            columns.push(c);
        }
    }
    let charge = |v: &SparseVec, e: usize, out: &mut Vec<(usize, Scalar)>| {
        for (d, coef) in v.iter() {
            if d == e {
                continue;
            }
            let (p, sign) = if d < e {
                (pair_index(n, d, e), coef.clone())
            } else {
                (pair_index(n, e, d), -coef)
            };
            if let Some(col) = col_of[p] {
                out.push((col, sign));
            }
        }
    };
    let mut seen: HashSet<SparseVec> = HashSet::new();
    let mut matrix = SparseMatrix::new(columns.len());
    let mut origins = Vec::new();
    let mut buf = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let ab = alg.bracket_basis(a, b);
            for c in b + 1..n {
                buf.clear();
                charge(&ab, c, &mut buf);
                charge(&alg.bracket_basis(b, c), a, &mut buf);
                charge(&alg.bracket_basis(c, a), b, &mut buf);
                let row = SparseVec::from_pairs(buf.drain(..)).normalized();
                if !row.is_zero() && seen.insert(row.clone()) {
                    matrix.push_row(row);
                    origins.push((a, b, c));
                }
            }
        }
    }
    JacobiSystem {
        columns,
        matrix,
        origins,
    }
}

/// `(a, b) ↦ c^γ_ab` for every generator `γ`, as vectors over all unknowns.
pub fn coboundary_space(alg: &LieAlgebra) -> Vec<SparseVec> {
    let n = alg.dim();
    let mut per_gen: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
    for ((a, b), v) in alg.constants() {
        for (g, coef) in v.iter() {
            per_gen[g].push((pair_index(n, a, b), coef.clone()));
        }
    }
    per_gen.into_iter().map(SparseVec::from_pairs).collect()
}

/// One nontrivial class: `[Z_a, Z_b] += coef · K` for each listed charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub central_name: String,
    pub charges: Vec<(usize, usize, Scalar)>,
}

impl Cocycle {
    pub fn vector(&self, n: usize) -> SparseVec {
        SparseVec::from_pairs(
            self.charges
                .iter()
                .map(|(a, b, c)| (pair_index(n, *a, *b), c.clone())),
        )
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub algebra: LieAlgebra,
    pub dimension: usize,
    pub cocycles: Vec<Cocycle>,
    pub extended: LieAlgebra,
    /// Dimension of the cocycle space that was solved for (after pruning).
    pub cocycle_space_dim: usize,
    pub equations: usize,
    pub unknowns: usize,
}

impl ExtensionResult {
    /// Span of the class representatives together with all coboundaries.
    pub fn class_span(&self) -> Span {
        let n = self.algebra.dim();
        let mut span = Span::from_vectors(&coboundary_space(&self.algebra));
        for c in &self.cocycles {
            span.insert(&c.vector(n));
        }
        span
    }
}

/// Unpruned solve.
pub fn solve_central_extension(alg: &LieAlgebra) -> ExtensionResult {
    solve_ansatz(&build_ansatz(alg), None)
}

/// Solve with the given ansatz; `names` overrides the default central
/// generator names `K1, K2, ...`.
pub fn solve_ansatz(ansatz: &CocycleAnsatz, names: Option<&[&str]>) -> ExtensionResult {
    let alg = &ansatz.algebra;
    let n = alg.dim();
    let system = jacobi_system(ansatz);
    let null = system.matrix.nullspace();
    let embedded: Vec<SparseVec> = null
        .iter()
        .map(|v| v.remap(|c| Some(system.columns[c])))
        .collect();
    let boundaries = Span::from_vectors(&coboundary_space(alg));
    let reduced: Vec<SparseVec> = embedded.iter().map(|z| boundaries.reduce(z)).collect();
    let classes = Span::from_vectors(&reduced).rows();

    let pairs = &ansatz.pairs;
    let mut used: HashSet<String> = alg.basis().iter().cloned().collect();
    let mut next = 1;
    let mut cocycles = Vec::with_capacity(classes.len());
    for (k, v) in classes.iter().enumerate() {
        let name = match names.and_then(|ns| ns.get(k)) {
            Some(s) => s.to_string(),
            None => loop {
                let cand = format!("K{next}");
                next += 1;
                if !used.contains(&cand) {
                    break cand;
                }
            },
        };
        used.insert(name.clone());
        cocycles.push(Cocycle {
            central_name: name,
            charges: v
                .iter()
                .map(|(c, x)| (pairs[c].0, pairs[c].1, x.clone()))
                .collect(),
        });
    }

    let mut basis = alg.basis().to_vec();
    basis.extend(cocycles.iter().map(|c| c.central_name.clone()));
    let mut b =
        LieAlgebra::builder(&format!("{}^", alg.name()), basis).expect("central names are fresh");
    for ((x, y), v) in alg.constants() {
        for (c, s) in v.iter() {
            b.add(x, y, c, s.clone());
        }
    }
    for (k, cc) in cocycles.iter().enumerate() {
        for (x, y, s) in &cc.charges {
            b.add(*x, *y, n + k, s.clone());
        }
    }

    ExtensionResult {
        algebra: alg.clone(),
        dimension: cocycles.len(),
        cocycles,
        extended: b.build(),
        cocycle_space_dim: null.len(),
        equations: system.matrix.nrows(),
        unknowns: system.columns.len(),
    }
}
