//! The acceptance suite: one record per criterion, each pass, fail or
//! discrepancy-noted.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{LieAlgebra, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::casimir::{
    closed_form_casimirs, normal_order_by_swaps, primitive_reduce, search_casimirs, Casimir,
    CasimirFamily, CasimirSet, Enveloping, EnvelopingPoly, DEFAULT_CEILING,
};
use crate::catalog::{self, CATALOG};
use crate::error::{Error, Result};
use crate::extension::{
    build_ansatz, coboundary_space, pair_index, prune_by_subalgebras, solve_ansatz,
    solve_central_extension, standard_blocking_subsets, ExtensionFreeRegistry, ExtensionResult,
};
use crate::groups::{
    self, bilinear, build_element, check_symplectic, check_time_invariance, conjugate_generator,
    identify, mat_vec, random_element, structure_constants_from_matrices, time_generator, Family,
    Param, Params, ParamsExt, SymplecticMetric,
};
use crate::scalar::Scalar;
use crate::sparse::{Span, SparseVec};

const DRAWS: usize = 100;
const CONFLUENCE_WORDS: usize = 500;
const DERIVATION_PAIRS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    DiscrepancyNoted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DiscrepancyNoted => "discrepancy-noted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub criterion: usize,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptanceReport {
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl AcceptanceReport {
    /// No record failed; discrepancy-noted records do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Folds an externally run check into the record for `criterion`.
    pub fn amend(&mut self, criterion: usize, ok: bool, note: &str) {
        if let Some(rec) = self.checks.iter_mut().find(|c| c.criterion == criterion) {
            rec.amend(ok, note);
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for c in &self.checks {
            out.push_str(&format!(
                "{:>2}  {:<18} {:<17} {}\n      expected: {}\n",
                c.criterion, c.id, c.status, c.computed, c.expected
            ));
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

impl CheckRecord {
    pub fn amend(&mut self, ok: bool, note: &str) {
        self.computed = format!("{}; {note}", self.computed);
        if !ok {
            self.status = Status::Fail;
        }
    }
}

/// Criterion number, id and expected outcome.
pub const CRITERIA: [(usize, &str, &str); 11] = [
    (
        1,
        "dimension-table",
        "Galilei dim (n^2+3n+4)/2 with N_c = 2,3,3; QHa dim (n^2+7n+12)/2 with N_c = 4,5,5 (n = 1,2,3)",
    ),
    (2, "ie3-extension", "IE(3): N_e = 1, charges [G_i,P_k] = delta_ik M"),
    (
        3,
        "iha3-extension",
        "IHa(3): N_e = 3 spanning the I, M, A charge patterns, with [E,T] = -I",
    ),
    (
        4,
        "isp4-extension",
        "ISp(4): N_e = 1 proportional to the symplectic form on the translations; translation block is Weyl-Heisenberg",
    ),
    (5, "extension-free", "so(3), sp(2), e(3): N_e = 0"),
    (
        6,
        "galilei-casimirs",
        "Galilei(3): M, 2ME - P.P and the polynomialized spin invariant commute; degree <= 4 search finds 3 primitives generating the same invariants",
    ),
    (
        7,
        "hamilton-casimirs",
        "QHa(3): degree <= 2 search finds exactly {I, M, A, TT - IR}; the degree-6 C5 commutes",
    ),
    (
        8,
        "degenerate-n",
        "Galilei(1) C3 = 0; QHa(1) C5 = 0; QHa(1) degree <= 2 search finds 4 = N_c primitives",
    ),
    (
        9,
        "matrix-layer",
        "matrix-derived H, Ha, IHa, IE equal the catalog (n = 1,2,3); Weyl-Heisenberg law and automorphism conjugation exact on 100 draws; HSp elements fix T and are recovered",
    ),
    (
        10,
        "property-suites",
        "PBW confluence (500 words), derivation rule (200 pairs), prune consistency (Galilei, IHa), rank stable across two seeds, CLI byte-determinism",
    ),
    (11, "ie2-discrepancy", "IE(2): N_e computed and reported; a value other than 1 is noted, not failed"),
];

/// Suite parameters and injected replacements for catalog algebras.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub ceiling: usize,
    overrides: BTreeMap<String, LieAlgebra>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::new(DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_CEILING)
    }
}

/// Catalog algebra names the suite reads (every catalog entry up to n = 3).
pub fn suite_algebra_names() -> Vec<String> {
    CATALOG
        .iter()
        .flat_map(|e| (e.min_n..=e.max_n.min(3)).map(move |n| e.display_name(n)))
        .collect()
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize, ceiling: usize) -> Self {
        SuiteConfig {
            seed,
            trials,
            ceiling,
            overrides: BTreeMap::new(),
        }
    }

    /// Replaces the catalog algebra of the same name wherever the suite uses it.
    pub fn with_override(mut self, alg: LieAlgebra) -> Result<Self> {
        if !suite_algebra_names().iter().any(|n| n == alg.name()) {
            return Err(Error::UnknownGroup(alg.name().to_string()));
        }
        self.overrides.insert(alg.name().to_string(), alg);
        Ok(self)
    }

    fn catalog(&self, key: &str, n: usize) -> Result<LieAlgebra, String> {
        let entry = catalog::entry(key).map_err(|e| e.to_string())?;
        let name = entry.display_name(n);
        match self.overrides.get(&name) {
            None => entry.build(n).map_err(|e| e.to_string()),
            Some(alg) => {
                let report = alg.jacobi_check();
                match report.violations.first() {
                    None => Ok(alg.clone()),
                    Some(v) => Err(format!(
                        "{name}: Jacobi identity fails on ({})",
                        v.triple.join(", ")
                    )),
                }
            }
        }
    }

    /// A casimir-family algebra whose basis lines up with the closed forms.
    fn casimir_algebra(&self, family: CasimirFamily, n: usize) -> Result<LieAlgebra, String> {
        let key = match family {
            CasimirFamily::Galilei => "galilei",
            CasimirFamily::QuantumHamilton => "qha",
        };
        let alg = self.catalog(key, n)?;
        if alg.basis() != family.algebra(n).basis() {
            return Err(format!("{}: basis differs from the catalog", alg.name()));
        }
        Ok(alg)
    }
}

/// Accumulates sub-check outcomes into one record.
struct Tally {
    ok: bool,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        self.ok &= ok;
        let note = note.into();
        self.notes
            .push(if ok { note } else { format!("FAILED {note}") });
    }

    fn finish(self) -> (Status, String) {
        let status = if self.ok { Status::Pass } else { Status::Fail };
        (status, self.notes.join("; "))
    }
}

type Outcome = Result<(Status, String), String>;

pub fn run_check(criterion: usize, cfg: &SuiteConfig) -> CheckRecord {
    let &(criterion, id, expected) = CRITERIA
        .iter()
        .find(|c| c.0 == criterion)
        .expect("criterion in 1..=11");
    let outcome = match criterion {
        1 => dimension_table(cfg),
        2 => ie3_extension(cfg),
        3 => iha3_extension(cfg),
        4 => isp4_extension(cfg),
        5 => extension_free(cfg),
        6 => galilei_casimirs(cfg),
        7 => hamilton_casimirs(cfg),
        8 => degenerate_n(cfg),
        9 => matrix_layer(cfg),
        10 => property_suites(cfg),
        _ => ie2_discrepancy(cfg),
    };
    let (status, computed) = outcome.unwrap_or_else(|e| (Status::Fail, e));
    CheckRecord {
        id,
        criterion,
        expected: expected.to_string(),
        computed,
        status,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> AcceptanceReport {
    AcceptanceReport {
        seed: cfg.seed,
        checks: CRITERIA.iter().map(|c| run_check(c.0, cfg)).collect(),
    }
}

fn dimension_table(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    for (key, dim, counts) in [
        (
            "galilei",
            (|n| (n * n + 3 * n + 4) / 2) as fn(usize) -> usize,
            [2, 3, 3],
        ),
        ("qha", |n| (n * n + 7 * n + 12) / 2, [4, 5, 5]),
    ] {
        for n in 1..=3 {
            let alg = cfg.catalog(key, n)?;
            let nc = alg.casimir_count(cfg.seed, cfg.trials);
            t.check(
                alg.dim() == dim(n) && nc == counts[n - 1],
                format!("{}: N_g = {}, N_c = {nc}", alg.name(), alg.dim()),
            );
        }
    }
    Ok(t.finish())
}

fn charge_pattern(
    alg: &LieAlgebra,
    charges: &[(String, String, i64)],
) -> Result<SparseVec, String> {
    let n = alg.dim();
    let idx = |g: &str| {
        alg.index_of(g)
            .ok_or_else(|| format!("{}: no generator {g}", alg.name()))
    };
    let mut pairs = Vec::new();
    for (a, b, c) in charges {
        let (i, j) = (idx(a)?, idx(b)?);
        let (lo, hi, s) = if i < j { (i, j, *c) } else { (j, i, -*c) };
        pairs.push((pair_index(n, lo, hi), Scalar::from(s)));
    }
    Ok(SparseVec::from_pairs(pairs))
}

fn diagonal(x: &str, y: &str, n: usize, c: i64) -> Vec<(String, String, i64)> {
    (1..=n)
        .map(|i| (format!("{x}{i}"), format!("{y}{i}"), c))
        .collect()
}

/// Coboundaries plus the given charge patterns.
fn class_span_of(alg: &LieAlgebra, patterns: &[SparseVec]) -> Span {
    let mut span = Span::from_vectors(&coboundary_space(alg));
    for p in patterns {
        span.insert(p);
    }
    span
}

fn ie3_extension(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.catalog("ie", 3)?;
    let res = solve_central_extension(&alg);
    let mass = charge_pattern(&alg, &diagonal("G", "P", 3, 1))?;
    let mut t = Tally::new();
    t.check(res.dimension == 1, format!("N_e = {}", res.dimension));
    t.check(
        res.class_span().same_as(&class_span_of(&alg, &[mass])),
        "class span = mass pattern",
    );
    t.check(
        res.extended.jacobi_check().passed(),
        "extension satisfies Jacobi",
    );
    Ok(t.finish())
}

fn iha3_extension(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.catalog("iha", 3)?;
    let res = solve_central_extension(&alg);
    let mut i = diagonal("P", "Q", 3, 1);
    i.push(("E".into(), "T".into(), -1));
    let patterns = [
        charge_pattern(&alg, &i)?,
        charge_pattern(&alg, &diagonal("G", "P", 3, 1))?,
        charge_pattern(&alg, &diagonal("F", "Q", 3, 1))?,
    ];
    let ima = class_span_of(&alg, &patterns);
    let span = res.class_span();
    let mut t = Tally::new();
    t.check(res.dimension == 3, format!("N_e = {}", res.dimension));
    t.check(
        span.contains_span(&ima),
        "I, M, A patterns are nontrivial classes",
    );
    t.check(
        span.same_as(&ima),
        format!(
            "class span = I, M, A patterns ({} more)",
            span.dim() - ima.dim()
        ),
    );
    t.check(
        res.extended.jacobi_check().passed(),
        "extension satisfies Jacobi",
    );
    Ok(t.finish())
}

/// Generators whose matrices are pure translations, with their vectors.
fn translation_vectors(family: Family, n: usize) -> Vec<(String, Vec<Scalar>)> {
    let gens = groups::derive_generators(family, n);
    let size = gens[0].matrix.rows();
    let last = size - 1;
    gens.iter()
        .filter(|g| (0..size).all(|r| (0..size).all(|c| c == last || g.matrix.get(r, c).is_zero())))
        .map(|g| {
            let y = (0..last).map(|r| g.matrix.get(r, last).clone()).collect();
            (g.name.clone(), y)
        })
        .collect()
}

fn isp4_extension(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.catalog("isp", 1)?;
    let res = solve_central_extension(&alg);
    let mut t = Tally::new();
    t.check(res.dimension == 1, format!("N_e = {}", res.dimension));
    if res.dimension != 1 {
        return Ok(t.finish());
    }
    let zeta = SymplecticMetric::extended(1).matrix;
    let ys = translation_vectors(Family::ISp, 1);
    let mut idx = Vec::new();
    for (name, _) in &ys {
        idx.push(
            alg.index_of(name)
                .ok_or_else(|| format!("{}: no generator {name}", alg.name()))?,
        );
    }
    let n = alg.dim();
    let mut form = Vec::new();
    for x in 0..ys.len() {
        for y in x + 1..ys.len() {
            let (a, b) = (idx[x], idx[y]);
            let v = bilinear(&ys[x].1, &zeta, &ys[y].1);
            let (lo, hi, v) = if a < b { (a, b, v) } else { (b, a, -v) };
            form.push((pair_index(n, lo, hi), v));
        }
    }
    let form = SparseVec::from_pairs(form);
    t.check(
        !form.is_zero() && res.cocycles[0].vector(n).is_proportional_to(&form),
        "charges proportional to the symplectic form",
    );
    let mut block = idx.clone();
    block.push(n);
    let wh = res.extended.subalgebra(&block).map_err(|e| e.to_string())?;
    let k = idx.len();
    let heisenberg = wh.dim() == k + 1
        && wh.is_central(k)
        && (0..k).all(|a| !wh.is_central(a))
        && (0..k).all(|a| (a + 1..k).all(|b| wh.bracket_basis(a, b).iter().all(|(c, _)| c == k)));
    t.check(
        heisenberg,
        format!(
            "translation block: {} generators closing on the central charge",
            k
        ),
    );
    Ok(t.finish())
}

fn extension_free(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    for (key, n) in [("so", 3), ("sp", 1), ("e", 3)] {
        let alg = cfg.catalog(key, n)?;
        let d = solve_central_extension(&alg).dimension;
        t.check(d == 0, format!("{}: N_e = {d}", alg.name()));
    }
    Ok(t.finish())
}

fn as_set(alg: &LieAlgebra, polys: &[EnvelopingPoly]) -> Option<CasimirSet> {
    let elems = polys
        .iter()
        .enumerate()
        .map(|(k, p)| Casimir {
            label: format!("X{k}"),
            poly: p.clone(),
        })
        .collect();
    CasimirSet::new(alg, elems, 0).ok()
}

/// Every element of `a` is a polynomial in the elements of `b`.
fn generated_by(alg: &LieAlgebra, a: &[EnvelopingPoly], b: &[EnvelopingPoly]) -> bool {
    as_set(alg, b).is_some_and(|set| primitive_reduce(a, &set).is_empty())
}

fn proportional(p: &EnvelopingPoly, q: &EnvelopingPoly) -> bool {
    let Some((m, c)) = q.terms().next() else {
        return p.is_zero();
    };
    let r = p.coeff(m) / c.clone();
    !r.is_zero() && p.sub(&q.scale(&r)).is_zero()
}

fn verify_forms(t: &mut Tally, alg: &LieAlgebra, forms: &[Casimir]) {
    let env = Enveloping::new(alg);
    for c in forms {
        let check = env.verify(&c.poly);
        let note = match &check.residual {
            None => format!("{} (degree {}) commutes", c.label, c.poly.degree()),
            Some((g, _)) => format!("{} does not commute with {g}", c.label),
        };
        t.check(check.commutes, note);
    }
}

fn search(cfg: &SuiteConfig, alg: &LieAlgebra, degree: usize) -> Result<CasimirSet, String> {
    search_casimirs(alg, degree, &CasimirSet::empty(alg), cfg.ceiling).map_err(|e| e.to_string())
}

fn galilei_casimirs(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.casimir_algebra(CasimirFamily::Galilei, 3)?;
    let forms = closed_form_casimirs(CasimirFamily::Galilei, 3);
    let mut t = Tally::new();
    verify_forms(&mut t, &alg, &forms);
    let found = search(cfg, &alg, 4)?;
    t.check(
        found.len() == 3,
        format!("search to degree 4: {} primitives", found.len()),
    );
    let closed: Vec<EnvelopingPoly> = forms.into_iter().map(|c| c.poly).collect();
    t.check(
        generated_by(&alg, &closed, &found.polys()) && generated_by(&alg, &found.polys(), &closed),
        "found and closed forms generate each other",
    );
    Ok(t.finish())
}

fn hamilton_casimirs(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.casimir_algebra(CasimirFamily::QuantumHamilton, 3)?;
    let forms = closed_form_casimirs(CasimirFamily::QuantumHamilton, 3);
    let mut t = Tally::new();
    let found = search(cfg, &alg, 2)?;
    let matched = found
        .elements
        .iter()
        .filter(|c| forms[..4].iter().any(|f| proportional(&c.poly, &f.poly)))
        .count();
    let covered = forms[..4]
        .iter()
        .filter(|f| {
            found
                .elements
                .iter()
                .any(|c| proportional(&c.poly, &f.poly))
        })
        .count();
    t.check(
        found.len() == 4 && matched == 4 && covered == 4,
        format!(
            "search to degree 2: {} primitives, {covered} of I, M, A, TT - IR matched",
            found.len()
        ),
    );
    verify_forms(&mut t, &alg, &forms[4..]);
    Ok(t.finish())
}

fn degenerate_n(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let g1 = closed_form_casimirs(CasimirFamily::Galilei, 1);
    t.check(g1[2].poly.is_zero(), "Galilei(1) C3 = 0");
    let q1 = closed_form_casimirs(CasimirFamily::QuantumHamilton, 1);
    t.check(q1[4].poly.is_zero(), "QHa(1) C5 = 0");
    let alg = cfg.casimir_algebra(CasimirFamily::QuantumHamilton, 1)?;
    let found = search(cfg, &alg, 2)?;
    let nc = alg.casimir_count(cfg.seed, cfg.trials);
    t.check(
        found.len() == 4 && nc == 4,
        format!(
            "QHa(1) search to degree 2: {} primitives, N_c = {nc}",
            found.len()
        ),
    );
    Ok(t.finish())
}

fn upsilon(n: usize, w: Vec<Scalar>, iota: Scalar) -> Result<Params, String> {
    let mut p = Params::new();
    p.insert("w".into(), Param::Vector(w));
    p.insert("iota".into(), Param::Scalar(iota));
    build_element(Family::H, n, p)
        .map(|g| g.params)
        .map_err(|e| e.to_string())
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vscale(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

fn matrix_layer(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let mut mismatched = Vec::new();
    for n in 1..=3 {
        for (family, key) in [
            (Family::H, "h"),
            (Family::Ha, "ha"),
            (Family::IHa, "iha"),
            (Family::IE, "ie"),
        ] {
            let hand = cfg.catalog(key, n)?;
            let derived =
                structure_constants_from_matrices(family, n).map_err(|e| e.to_string())?;
            if !derived.same_structure(&hand) {
                mismatched.push(hand.name().to_string());
            }
        }
    }
    t.check(
        mismatched.is_empty(),
        if mismatched.is_empty() {
            "matrix-derived constants equal the catalog".to_string()
        } else {
            format!(
                "matrix-derived constants differ for {}",
                mismatched.join(", ")
            )
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut law = true;
    for n in 1..=3 {
        let zeta = SymplecticMetric::standard(n).matrix;
        for _ in 0..DRAWS {
            let g = random_element(Family::H, n, &mut rng);
            let h = random_element(Family::H, n, &mut rng);
            let (w, iota) = (g.params.vector("w"), g.params.scalar("iota"));
            let (w2, iota2) = (h.params.vector("w"), h.params.scalar("iota"));
            let prod =
                identify(Family::H, n, &h.matrix.mul(&g.matrix)).map_err(|e| e.to_string())?;
            let expect = upsilon(
                n,
                vadd(&w, &w2),
                &(&iota + &iota2) + &bilinear(&w, &zeta, &w2),
            )?;
            law &= prod.params == expect;
        }
    }
    t.check(law, format!("Weyl-Heisenberg law on {} draws per n", DRAWS));

    let mut conj = true;
    for n in 1..=2 {
        let zeta = SymplecticMetric::standard(n).matrix;
        for _ in 0..DRAWS {
            let om = random_element(Family::AutH, n, &mut rng);
            let ups = random_element(Family::H, n, &mut rng);
            let (e, a, aa, u) = (
                om.params.scalar("eps"),
                om.params.scalar("a"),
                om.params.matrix("A"),
                om.params.vector("w"),
            );
            let (w, iota) = (ups.params.vector("w"), ups.params.scalar("iota"));
            let out = conjugate_generator(&om, &ups.matrix).map_err(|e| e.to_string())?;
            let Ok(got) = identify(Family::H, n, &out) else {
                conj = false;
                continue;
            };
            let aw = mat_vec(&aa, &w);
            let iota2 = &(&a.pow(2) * &iota) - &(&a * &bilinear(&u, &zeta.mul(&aa), &w))
                + &a * &bilinear(&aw, &zeta, &u);
            conj &= got.params == upsilon(n, vscale(&aw, &(&e * &a)), iota2)?;
        }
    }
    t.check(
        conj,
        format!("automorphism conjugation on {} draws per n", DRAWS),
    );

    let mut time = true;
    for n in 1..=3 {
        let tg = time_generator(n);
        let metric = SymplecticMetric::extended(n);
        for _ in 0..DRAWS {
            let g = random_element(Family::HSp, n, &mut rng);
            let ti = check_time_invariance(&g.matrix);
            time &= check_symplectic(&g.matrix, &metric)
                && conjugate_generator(&g, &tg).map_err(|e| e.to_string())? == tg
                && ti.invariant
                && ti.params.as_ref() == Some(&g.params);
        }
    }
    t.check(
        time,
        "HSp elements fix T and their parameters are recovered",
    );
    Ok(t.finish())
}

fn random_poly(env: &Enveloping, rng: &mut ChaCha8Rng) -> EnvelopingPoly {
    let dim = env.algebra().dim();
    let mut p = EnvelopingPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=2);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
        p.add_scaled(
            &Scalar::from(rng.gen_range(-3i64..=3)),
            &env.normal_order(&word),
        );
    }
    p
}

fn prune_consistent(alg: &LieAlgebra, reg: &ExtensionFreeRegistry) -> Result<bool, String> {
    let full: ExtensionResult = solve_central_extension(alg);
    let subsets = standard_blocking_subsets(alg);
    let (ansatz, _) =
        prune_by_subalgebras(&build_ansatz(alg), &subsets, reg).map_err(|e| e.to_string())?;
    let pruned = solve_ansatz(&ansatz, None);
    Ok(pruned.dimension == full.dimension && pruned.class_span().same_as(&full.class_span()))
}

fn property_suites(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let algs = [cfg.catalog("qha", 2)?, cfg.catalog("galilei", 3)?];

    let mut confluent = 0;
    for k in 0..CONFLUENCE_WORDS {
        let alg = &algs[k % 2];
        let len = rng.gen_range(0..=5);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..alg.dim())).collect();
        let a = normal_order_by_swaps(&word, alg, |m| rng.gen_range(0..m));
        let b = normal_order_by_swaps(&word, alg, |_| 0);
        confluent += usize::from(a == b);
    }
    t.check(
        confluent == CONFLUENCE_WORDS,
        format!("PBW confluence {confluent}/{CONFLUENCE_WORDS}"),
    );

    let env = Enveloping::new(&algs[0]);
    let mut derivations = 0;
    for _ in 0..DERIVATION_PAIRS {
        let (p, q) = (random_poly(&env, &mut rng), random_poly(&env, &mut rng));
        let a = rng.gen_range(0..algs[0].dim());
        let lhs = env.commutator_with(&env.mul(&p, &q), a);
        let rhs = env
            .mul(&env.commutator_with(&p, a), &q)
            .add(&env.mul(&p, &env.commutator_with(&q, a)));
        derivations += usize::from(lhs == rhs);
    }
    t.check(
        derivations == DERIVATION_PAIRS,
        format!("derivation rule {derivations}/{DERIVATION_PAIRS}"),
    );

    let reg = ExtensionFreeRegistry::with_builtins();
    let mut inconsistent = Vec::new();
    for key in ["galilei", "iha"] {
        for n in 1..=3 {
            let alg = cfg.catalog(key, n)?;
            if !prune_consistent(&alg, &reg)? {
                inconsistent.push(alg.name().to_string());
            }
        }
    }
    t.check(
        inconsistent.is_empty(),
        if inconsistent.is_empty() {
            "pruning preserves Galilei(1..3), IHa(1..3)".to_string()
        } else {
            format!("pruning changes {}", inconsistent.join(", "))
        },
    );

    let mut unstable = Vec::new();
    let mut checked = 0;
    for e in CATALOG {
        for n in e.min_n..=e.max_n.min(3) {
            let alg = cfg.catalog(e.key, n)?;
            checked += 1;
            let other = cfg.seed.wrapping_add(1);
            if alg.generic_rank(cfg.seed, cfg.trials) != alg.generic_rank(other, cfg.trials) {
                unstable.push(alg.name().to_string());
            }
        }
    }
    t.check(
        unstable.is_empty(),
        if unstable.is_empty() {
            format!("rank stable across two seeds on {checked} algebras")
        } else {
            format!("rank differs across seeds for {}", unstable.join(", "))
        },
    );
    Ok(t.finish())
}

fn ie2_discrepancy(cfg: &SuiteConfig) -> Outcome {
    let alg = cfg.catalog("ie", 2)?;
    let d = solve_central_extension(&alg).dimension;
    let status = if d == 1 {
        Status::Pass
    } else {
        Status::DiscrepancyNoted
    };
    Ok((status, format!("N_e = {d}")))
}
