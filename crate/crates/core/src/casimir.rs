//! Enveloping-algebra arithmetic in the PBW basis and Casimir invariants.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::algebra::LieAlgebra;
use crate::catalog;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::{Span, SparseMatrix, SparseVec};

pub const DEFAULT_CEILING: usize = 50_000;

/// Ordered product of generators, stored as a non-decreasing index word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    word: Vec<usize>,
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PbwMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self { word: vec![i] }
    }

    /// Sorts the factors; only meaningful for commuting factors.
    pub fn from_exponents(exps: &[(usize, u32)]) -> Self {
        let mut word = Vec::new();
        for &(i, e) in exps {
            word.extend(std::iter::repeat_n(i, e as usize));
        }
        word.sort_unstable();
        Self { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn exponents(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &i in &self.word {
            match out.last_mut() {
                Some((j, e)) if *j == i => *e += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }

    fn push(&self, g: usize) -> Self {
        let mut word = self.word.clone();
        word.push(g);
        Self { word }
    }

    fn pop(&self) -> (Self, usize) {
        let mut word = self.word.clone();
        let last = word.pop().expect("nonempty monomial");
        (Self { word }, last)
    }

    pub fn format(&self, alg: &LieAlgebra) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.exponents()
            .iter()
            .map(|&(i, e)| match e {
                1 => alg.generator_name(i).to_string(),
                _ => format!("{}^{e}", alg.generator_name(i)),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Element of the universal enveloping algebra in PBW normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvelopingPoly {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl EnvelopingPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::one(), Scalar::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(PbwMonomial::generator(i), Scalar::one())
    }

    pub fn monomial(m: PbwMonomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest monomial degree; 0 for constants and for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, PbwMonomial::degree)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &EnvelopingPoly) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn add(&self, other: &EnvelopingPoly) -> EnvelopingPoly {
        let mut r = self.clone();
        r.add_scaled(&Scalar::one(), other);
        r
    }

    pub fn sub(&self, other: &EnvelopingPoly) -> EnvelopingPoly {
        let mut r = self.clone();
        r.add_scaled(&-Scalar::one(), other);
        r
    }

    pub fn scale(&self, c: &Scalar) -> EnvelopingPoly {
        let mut r = Self::zero();
        r.add_scaled(c, self);
        r
    }

    pub fn format(&self, alg: &LieAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if m.is_one() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&m.format(alg));
            } else {
                let _ = write!(s, "{abs} {}", m.format(alg));
            }
        }
        s
    }
}

/// Multiplication context over one algebra; memoizes monomial products.
pub struct Enveloping<'a> {
    alg: &'a LieAlgebra,
    brackets: Vec<Vec<SparseVec>>,
    right: RefCell<HashMap<(PbwMonomial, usize), EnvelopingPoly>>,
    comm: RefCell<HashMap<(PbwMonomial, usize), EnvelopingPoly>>,
}

impl<'a> Enveloping<'a> {
    pub fn new(alg: &'a LieAlgebra) -> Self {
        let n = alg.dim();
        let brackets = (0..n)
            .map(|a| (0..n).map(|b| alg.bracket_basis(a, b)).collect())
            .collect();
        Self {
            alg,
            brackets,
            right: RefCell::default(),
            comm: RefCell::default(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    /// `m · Z_g` in normal form.
    fn mono_times_gen(&self, m: &PbwMonomial, g: usize) -> EnvelopingPoly {
        match m.word.last() {
            None => return EnvelopingPoly::generator(g),
            Some(&z) if z <= g => return EnvelopingPoly::monomial(m.push(g), Scalar::one()),
            _ => {}
        }
        let key = (m.clone(), g);
        if let Some(p) = self.right.borrow().get(&key) {
            return p.clone();
        }
        // m' z g = (m' g) z + m' [z, g]
        let (head, z) = m.pop();
        let mut out = EnvelopingPoly::zero();
        for (t, c) in self.mono_times_gen(&head, g).terms {
            out.add_scaled(&c, &self.mono_times_gen(&t, z));
        }
        for (k, c) in self.brackets[z][g].iter() {
            out.add_scaled(c, &self.mono_times_gen(&head, k));
        }
        self.right.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn times_generator(&self, p: &EnvelopingPoly, g: usize) -> EnvelopingPoly {
        let mut out = EnvelopingPoly::zero();
        for (m, c) in &p.terms {
            out.add_scaled(c, &self.mono_times_gen(m, g));
        }
        out
    }

    fn times_word(&self, p: &EnvelopingPoly, word: &[usize]) -> EnvelopingPoly {
        word.iter()
            .fold(p.clone(), |acc, &g| self.times_generator(&acc, g))
    }

    /// Normal form of the product `Z_{w1} Z_{w2} ...`.
    pub fn normal_order(&self, word: &[usize]) -> EnvelopingPoly {
        self.times_word(&EnvelopingPoly::one(), word)
    }

    pub fn mul(&self, p: &EnvelopingPoly, q: &EnvelopingPoly) -> EnvelopingPoly {
        let mut out = EnvelopingPoly::zero();
        for (m, c) in &q.terms {
            out.add_scaled(c, &self.times_word(p, &m.word));
        }
        out
    }

    /// `[m, Z_a]` by the derivation rule.
    fn mono_commutator(&self, m: &PbwMonomial, a: usize) -> EnvelopingPoly {
        let key = (m.clone(), a);
        if let Some(p) = self.comm.borrow().get(&key) {
            return p.clone();
        }
        let mut out = EnvelopingPoly::zero();
        for k in 0..m.word.len() {
            let br = &self.brackets[m.word[k]][a];
            if br.is_zero() {
                continue;
            }
            let prefix = PbwMonomial {
                word: m.word[..k].to_vec(),
            };
            let mut mid = EnvelopingPoly::zero();
            for (c, x) in br.iter() {
                mid.add_scaled(x, &self.mono_times_gen(&prefix, c));
            }
            out = out.add(&self.times_word(&mid, &m.word[k + 1..]));
        }
        self.comm.borrow_mut().insert(key, out.clone());
        out
    }

    /// `[p, Z_a]`.
    pub fn commutator_with(&self, p: &EnvelopingPoly, a: usize) -> EnvelopingPoly {
        let mut out = EnvelopingPoly::zero();
        for (m, c) in &p.terms {
            out.add_scaled(c, &self.mono_commutator(m, a));
        }
        out
    }

    pub fn commutator(&self, p: &EnvelopingPoly, q: &EnvelopingPoly) -> EnvelopingPoly {
        self.mul(p, q).sub(&self.mul(q, p))
    }

    /// First generator whose commutator with `p` is nonzero, with the residual.
    pub fn verify(&self, p: &EnvelopingPoly) -> CasimirCheck {
        for a in 0..self.alg.dim() {
            let r = self.commutator_with(p, a);
            if !r.is_zero() {
                return CasimirCheck {
                    commutes: false,
                    residual: Some((self.alg.generator_name(a).to_string(), r)),
                };
            }
        }
        CasimirCheck {
            commutes: true,
            residual: None,
        }
    }

    /// Normal form of a product written with generator names.
    pub fn word(&self, names: &[&str]) -> Result<EnvelopingPoly> {
        let idx = names
            .iter()
            .enumerate()
            .map(|(k, g)| {
                self.alg.index_of(g).ok_or_else(|| Error::UnknownGenerator {
                    location: format!("word[{k}]"),
                    name: g.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normal_order(&idx))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirCheck {
    pub commutes: bool,
    /// Generator name and the nonzero commutator.
    pub residual: Option<(String, EnvelopingPoly)>,
}

pub fn pbw_normal_order(word: &[usize], alg: &LieAlgebra) -> EnvelopingPoly {
    Enveloping::new(alg).normal_order(word)
}

pub fn env_commutator(p: &EnvelopingPoly, a: usize, alg: &LieAlgebra) -> EnvelopingPoly {
    Enveloping::new(alg).commutator_with(p, a)
}

pub fn verify_casimir(p: &EnvelopingPoly, alg: &LieAlgebra) -> CasimirCheck {
    Enveloping::new(alg).verify(p)
}

/// Normal ordering by adjacent swaps `Z_b Z_a → Z_a Z_b + [Z_b, Z_a]`,
/// with `pick(k)` choosing among `k` options at every step.
pub fn normal_order_by_swaps(
    word: &[usize],
    alg: &LieAlgebra,
    mut pick: impl FnMut(usize) -> usize,
) -> EnvelopingPoly {
    let mut pending: Vec<(Vec<usize>, Scalar)> = vec![(word.to_vec(), Scalar::one())];
    let mut out = EnvelopingPoly::zero();
    while !pending.is_empty() {
        let k = pick(pending.len()) % pending.len();
        let (w, c) = pending.swap_remove(k);
        let bad: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] > w[i + 1])
            .collect();
        if bad.is_empty() {
            out.add_term(PbwMonomial { word: w }, c);
            continue;
        }
        let i = bad[pick(bad.len()) % bad.len()];
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        pending.push((swapped, c.clone()));
        for (g, x) in alg.bracket_basis(w[i], w[i + 1]).iter() {
            let mut nw = w[..i].to_vec();
            nw.push(g);
            nw.extend_from_slice(&w[i + 2..]);
            pending.push((nw, &c * x));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Casimir {
    pub label: String,
    pub poly: EnvelopingPoly,
}

impl Casimir {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

#[derive(Clone, Debug)]
pub struct CasimirSet {
    pub algebra: LieAlgebra,
    pub elements: Vec<Casimir>,
    pub max_degree_searched: usize,
}

impl CasimirSet {
    pub fn empty(alg: &LieAlgebra) -> Self {
        Self {
            algebra: alg.clone(),
            elements: Vec::new(),
            max_degree_searched: 0,
        }
    }

    /// Fails if any element does not commute with every generator.
    pub fn new(
        alg: &LieAlgebra,
        elements: Vec<Casimir>,
        max_degree_searched: usize,
    ) -> Result<Self> {
        let env = Enveloping::new(alg);
        for c in &elements {
            if let Some((g, _)) = env.verify(&c.poly).residual {
                return Err(Error::NotCasimir {
                    label: c.label.clone(),
                    generator: g,
                });
            }
        }
        Ok(Self {
            algebra: alg.clone(),
            elements,
            max_degree_searched,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polys(&self) -> Vec<EnvelopingPoly> {
        self.elements.iter().map(|c| c.poly.clone()).collect()
    }
}

/// Number of PBW monomials of degree 1..=d in `n` generators.
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut c: u128 = 1;
    for k in 1..=d as u128 {
        c = c * (n as u128 + k) / k;
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    (c - 1) as usize
}

fn monomials_up_to(n: usize, d: usize) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    let mut layer = vec![PbwMonomial::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.word.last().copied().unwrap_or(0);
            for g in start..n {
                next.push(m.push(g));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct Columns {
    monomials: Vec<PbwMonomial>,
    index: HashMap<PbwMonomial, usize>,
}

impl Columns {
    /// Highest monomial first, so pivots sit at the top-degree part.
    fn new(n: usize, d: usize) -> Self {
        let mut monomials = monomials_up_to(n, d);
        monomials.sort_unstable_by(|a, b| b.cmp(a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Self { monomials, index }
    }

    fn vector(&self, p: &EnvelopingPoly) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            pairs.push((*self.index.get(m)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }

    fn poly(&self, v: &SparseVec) -> EnvelopingPoly {
        let mut p = EnvelopingPoly::zero();
        for (k, c) in v.iter() {
            p.add_term(self.monomials[k].clone(), c.clone());
        }
        p
    }
}

/// Span of all products (one or more factors) of `elems` whose degree fits.
fn product_span(env: &Enveloping, cols: &Columns, elems: &[EnvelopingPoly], d: usize) -> Span {
    let mut span = Span::new();
    let degs: Vec<usize> = elems.iter().map(EnvelopingPoly::degree).collect();
    // multisets of element indices, non-decreasing, total degree <= d
    let mut stack: Vec<(usize, usize, EnvelopingPoly)> = elems
        .iter()
        .enumerate()
        .filter(|(i, _)| degs[*i] >= 1 && degs[*i] <= d)
        .map(|(i, p)| (i, degs[i], p.clone()))
        .collect();
    while let Some((last, deg, p)) = stack.pop() {
        if let Some(v) = cols.vector(&p) {
            span.insert(&v);
        }
        for j in last..elems.len() {
            if degs[j] >= 1 && deg + degs[j] <= d {
                stack.push((j, deg + degs[j], env.mul(&p, &elems[j])));
            }
        }
    }
    span
}

/// Keeps the elements of `found` that are independent of products of
/// `prior` and of each other, processed in order of increasing degree.
pub fn primitive_reduce(found: &[EnvelopingPoly], prior: &CasimirSet) -> Vec<EnvelopingPoly> {
    let alg = &prior.algebra;
    let d = found
        .iter()
        .chain(prior.elements.iter().map(|c| &c.poly))
        .map(EnvelopingPoly::degree)
        .max()
        .unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    let env = Enveloping::new(alg);
    let cols = Columns::new(alg.dim(), d);
    let vectors: Vec<SparseVec> = found.iter().filter_map(|p| cols.vector(p)).collect();
    reduce_by_degree(&env, &cols, &vectors, &prior.polys(), d)
}

fn reduce_by_degree(
    env: &Enveloping,
    cols: &Columns,
    candidates: &[SparseVec],
    prior: &[EnvelopingPoly],
    d: usize,
) -> Vec<EnvelopingPoly> {
    let mut accepted: Vec<EnvelopingPoly> = prior.to_vec();
    let mut fresh = Vec::new();
    let cand_span = Span::from_vectors(candidates).rows();
    for k in 1..=d {
        let layer: Vec<&SparseVec> = cand_span
            .iter()
            .filter(|v| v.leading().map(|(c, _)| cols.monomials[c].degree()) == Some(k))
            .collect();
        if layer.is_empty() {
            continue;
        }
        let products = product_span(env, cols, &accepted, d);
        let reduced: Vec<SparseVec> = layer.iter().map(|v| products.reduce(v)).collect();
        for v in Span::from_vectors(&reduced).rows() {
            let p = cols.poly(&v);
            accepted.push(p.clone());
            fresh.push(p);
        }
    }
    fresh
}

/// Casimirs up to `max_degree` by an exact nullspace computation, reduced
/// to primitives not generated by `prior`.
pub fn search_casimirs(
    alg: &LieAlgebra,
    max_degree: usize,
    prior: &CasimirSet,
    ceiling: usize,
) -> Result<CasimirSet> {
    let n = alg.dim();
    let count = monomial_count(n, max_degree);
    if count > ceiling {
        return Err(Error::CeilingExceeded {
            monomials: count,
            degree: max_degree,
            ceiling,
        });
    }
    let env = Enveloping::new(alg);
    let cols = Columns::new(n, max_degree);
    let mut rows: HashMap<(usize, PbwMonomial), Vec<(usize, Scalar)>> = HashMap::new();
    for (j, m) in cols.monomials.iter().enumerate() {
        for a in 0..n {
            for (t, c) in env.mono_commutator(m, a).terms {
                rows.entry((a, t)).or_default().push((j, c));
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort_unstable();
    let matrix = SparseMatrix::from_rows(
        cols.monomials.len(),
        keys.into_iter()
            .map(|k| SparseVec::from_pairs(rows.remove(&k).unwrap_or_default()))
            .collect(),
    );
    let null = matrix.nullspace();
    let fresh = reduce_by_degree(&env, &cols, &null, &prior.polys(), max_degree);

    let mut elements = prior.elements.clone();
    let offset = elements.len();
    for (k, p) in fresh.into_iter().enumerate() {
        elements.push(Casimir {
            label: format!("C{}", offset + k + 1),
            poly: p,
        });
    }
    Ok(CasimirSet {
        algebra: alg.clone(),
        elements,
        max_degree_searched: max_degree.max(prior.max_degree_searched),
    })
}

/// Families with closed-form Casimir lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasimirFamily {
    Galilei,
    QuantumHamilton,
}

impl CasimirFamily {
    pub fn algebra(self, n: usize) -> LieAlgebra {
        match self {
            CasimirFamily::Galilei => catalog::galilei(n),
            CasimirFamily::QuantumHamilton => catalog::quantum_hamilton(n),
        }
    }
}

struct Builder<'e, 'a> {
    env: &'e Enveloping<'a>,
}

impl Builder<'_, '_> {
    fn w(&self, names: &[&str]) -> EnvelopingPoly {
        self.env.word(names).expect("catalog generator")
    }

    fn sum(&self, parts: &[(i64, EnvelopingPoly)]) -> EnvelopingPoly {
        let mut out = EnvelopingPoly::zero();
        for (c, p) in parts {
            out.add_scaled(&Scalar::from(*c), p);
        }
        out
    }

    /// `x_j y_i − x_i y_j` as written.
    fn anti(&self, x: &str, y: &str, i: usize, j: usize, swap: bool) -> EnvelopingPoly {
        let (xi, xj, yi, yj) = (
            format!("{x}{i}"),
            format!("{x}{j}"),
            format!("{y}{i}"),
            format!("{y}{j}"),
        );
        if swap {
            self.w(&[&xi, &yj]).sub(&self.w(&[&xj, &yi]))
        } else {
            self.w(&[&xj, &yi]).sub(&self.w(&[&xi, &yj]))
        }
    }

    fn square(&self, p: &EnvelopingPoly) -> EnvelopingPoly {
        self.env.mul(p, p)
    }
}

/// The closed-form invariants, including those that vanish identically for
/// small `n`. Galilei: `C1..C3`; QHa: `C1..C5`.
pub fn closed_form_casimirs(family: CasimirFamily, n: usize) -> Vec<Casimir> {
    let alg = family.algebra(n);
    closed_forms_in(&Enveloping::new(&alg), family, n)
}

fn closed_forms_in(env: &Enveloping, family: CasimirFamily, n: usize) -> Vec<Casimir> {
    let b = Builder { env };
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let label = |k: usize, poly| Casimir {
        label: format!("C{k}"),
        poly,
    };
    match family {
        CasimirFamily::Galilei => {
            let m = b.w(&["M"]);
            let mut c2 = b.sum(&[(2, b.w(&["M", "E"]))]);
            for i in 1..=n {
                let p = format!("P{i}");
                c2 = c2.sub(&b.w(&[&p, &p]));
            }
            let mut c3 = EnvelopingPoly::zero();
            for &(i, j) in &pairs {
                // M S_ij = M J_ij − (G_j P_i − G_i P_j)
                let s = b
                    .w(&["M", &format!("J{i}{j}")])
                    .sub(&b.anti("G", "P", i, j, false));
                c3 = c3.add(&b.square(&s));
            }
            vec![label(1, m), label(2, c2), label(3, c3)]
        }
        CasimirFamily::QuantumHamilton => {
            let c4 = b.w(&["T", "T"]).sub(&b.w(&["I", "R"]));
            let c = hamilton_c(&b);
            let mut c5 = EnvelopingPoly::zero();
            for &(i, j) in &pairs {
                let jij = format!("J{i}{j}");
                let d = b.sum(&[
                    (1, env.mul(&b.w(&["A"]), &b.anti("G", "P", i, j, false))),
                    (1, env.mul(&b.w(&["M"]), &b.anti("F", "Q", i, j, false))),
                    (1, env.mul(&b.w(&["R"]), &b.anti("P", "Q", i, j, true))),
                    (1, env.mul(&b.w(&["I"]), &b.anti("F", "G", i, j, true))),
                    (
                        1,
                        env.mul(
                            &b.w(&["T"]),
                            &b.anti("F", "P", i, j, true)
                                .add(&b.anti("G", "Q", i, j, true)),
                        ),
                    ),
                ]);
                let term = env.mul(&c, &b.w(&[&jij])).add(&d);
                c5 = c5.add(&b.square(&term));
            }
            vec![
                label(1, b.w(&["I"])),
                label(2, b.w(&["M"])),
                label(3, b.w(&["A"])),
                label(4, c4),
                label(5, c5),
            ]
        }
    }
}

/// `C = −A M + T T − I R` in QHa.
fn hamilton_c(b: &Builder) -> EnvelopingPoly {
    b.sum(&[
        (-1, b.w(&["A", "M"])),
        (1, b.w(&["T", "T"])),
        (-1, b.w(&["I", "R"])),
    ])
}

/// `C = −A M + T T − I R` in QHa(n).
pub fn hamilton_combined_invariant(n: usize) -> EnvelopingPoly {
    let alg = catalog::quantum_hamilton(n);
    let env = Enveloping::new(&alg);
    hamilton_c(&Builder { env: &env })
}

/// Nonzero closed-form invariants, each verified to commute with every
/// generator.
pub fn build_closed_form_casimirs(family: CasimirFamily, n: usize) -> Result<CasimirSet> {
    let alg = family.algebra(n);
    let elems: Vec<Casimir> = closed_form_casimirs(family, n)
        .into_iter()
        .filter(|c| !c.poly.is_zero())
        .collect();
    CasimirSet::new(&alg, elems, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(alg: &LieAlgebra, names: &[&str]) -> Vec<usize> {
        names.iter().map(|g| alg.index_of(g).unwrap()).collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(3, 2), 9);
        assert_eq!(monomials_up_to(3, 2).len(), 9);
        assert_eq!(monomial_count(11, 4), monomials_up_to(11, 4).len());
    }

    #[test]
    fn ordered_word_is_one_monomial() {
        let alg = catalog::heisenberg(1);
        let p = pbw_normal_order(&[0, 1, 2], &alg);
        assert_eq!(p.len(), 1);
        assert_eq!(
            p.coeff(&PbwMonomial {
                word: vec![0, 1, 2]
            }),
            Scalar::one()
        );
    }

    #[test]
    fn heisenberg_swap() {
        let alg = catalog::heisenberg(1);
        let env = Enveloping::new(&alg);
        let expected = env
            .word(&["P1", "Q1"])
            .unwrap()
            .sub(&env.word(&["I"]).unwrap());
        assert_eq!(pbw_normal_order(&idx(&alg, &["Q1", "P1"]), &alg), expected);
    }

    #[test]
    fn formatting() {
        let alg = catalog::heisenberg(1);
        let p = pbw_normal_order(&idx(&alg, &["Q1", "P1", "P1"]), &alg);
        assert_eq!(p.format(&alg), "P1^2 Q1 - 2 P1 I");
    }

    #[test]
    fn central_generator_commutes() {
        let alg = catalog::quantum_hamilton(2);
        let i = EnvelopingPoly::generator(alg.index_of("I").unwrap());
        for a in 0..alg.dim() {
            assert!(env_commutator(&i, a, &alg).is_zero());
        }
    }

    #[test]
    fn energy_is_not_casimir() {
        let alg = catalog::galilei(3);
        let e = EnvelopingPoly::generator(alg.index_of("E").unwrap());
        let check = verify_casimir(&e, &alg);
        assert!(!check.commutes);
        assert_eq!(check.residual.unwrap().0, "G1");
    }

    #[test]
    fn ceiling_is_enforced() {
        let alg = catalog::quantum_hamilton(3);
        let err = search_casimirs(&alg, 6, &CasimirSet::empty(&alg), DEFAULT_CEILING).unwrap_err();
        assert!(matches!(err, Error::CeilingExceeded { degree: 6, .. }));
    }

    #[test]
    fn only_one_central_normalization_fits_the_closed_forms() {
        use crate::catalog::{quantum_hamilton_with, CentralSigns};
        let mut fits = Vec::new();
        for i in [1, -1] {
            for m in [1, -1] {
                for a in [1, -1] {
                    let signs = CentralSigns { i, m, a };
                    let alg = quantum_hamilton_with(2, signs);
                    let env = Enveloping::new(&alg);
                    let ok = closed_forms_in(&env, CasimirFamily::QuantumHamilton, 2)
                        .iter()
                        .all(|c| env.verify(&c.poly).commutes);
                    if ok {
                        fits.push(signs);
                    }
                }
            }
        }
        assert_eq!(fits, vec![catalog::QHA_SIGNS]);
    }
}
