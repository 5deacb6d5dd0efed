//! Command-line front end. [`run`] executes one invocation in-process and
//! returns the exit code with everything that would be printed.

use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use centrex::algebra::{DEFAULT_SEED, DEFAULT_TRIALS};
use centrex::casimir::{search_casimirs, CasimirSet, Enveloping, DEFAULT_CEILING};
use centrex::catalog::{self, CATALOG};
use centrex::doc::{parse_algebra, AlgebraDoc};
use centrex::extension::solve_central_extension;
use centrex::groups::{
    compose, identify, inverse, random_element, structure_constants_from_matrices, Family,
    GroupElement,
};
use centrex::verify::{run_suite, AcceptanceReport, SuiteConfig};
use centrex::{Error, LieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "centrex",
    version,
    about = "Central extensions and Casimir invariants of Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Catalog family key (see `catalog`).
    #[arg(long, global = true)]
    pub group: Option<String>,

    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Algebra document (JSON) instead of a catalog family.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<String>,

    #[arg(long, global = true, default_value_t = 2)]
    pub max_degree: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,

    /// Largest monomial basis a Casimir search may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    pub ceiling: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// List the catalog families with their dimensions.
    Catalog,
    /// Print an algebra document with its generic rank and Casimir count.
    Algebra,
    /// Check the Jacobi identity on every generator triple.
    Jacobi,
    /// Solve for the nontrivial central extensions.
    Extend,
    /// Search for primitive Casimir invariants up to --max-degree.
    Casimir,
    /// Check a matrix group family against its algebra and its group law.
    MatrixCheck,
    /// Run the acceptance suite.
    VerifyPaper,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure classes mapped onto exit codes 1 and 2.
enum Failure {
    /// A verification found a violation; the report is still printed.
    Violation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorDetail<'a>,
}

#[derive(Serialize)]
struct ErrorDetail<'a> {
    kind: &'a str,
    message: &'a str,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Output {
    let result = match cli.command {
        Command::Catalog => cmd_catalog(cli),
        Command::Algebra => cmd_algebra(cli),
        Command::Jacobi => cmd_jacobi(cli),
        Command::Extend => cmd_extend(cli),
        Command::Casimir => cmd_casimir(cli),
        Command::MatrixCheck => cmd_matrix_check(cli),
        Command::VerifyPaper => cmd_verify(cli),
    };
    match result {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((stdout, Failure::Violation(msg))) => Output {
            code: 1,
            stdout,
            stderr: format!("verification failed: {msg}\n"),
        },
        Err((_, Failure::Usage(msg))) => match cli.format {
            Format::Json => Output {
                code: 2,
                stdout: json(&ErrorBody {
                    error: ErrorDetail {
                        kind: "usage",
                        message: &msg,
                    },
                }),
                stderr: String::new(),
            },
            Format::Text => Output {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            },
        },
    }
}

type CmdResult = Result<String, (String, Failure)>;

fn usage<T>(e: impl Into<Failure>) -> Result<T, (String, Failure)> {
    Err((String::new(), e.into()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn read_algebra(path: &str) -> Result<LieAlgebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    parse_algebra(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

/// The algebra named by `--input` or by `--group`/`--n`.
fn target_algebra(cli: &Cli) -> Result<LieAlgebra, Failure> {
    match (&cli.input, &cli.group) {
        (Some(path), None) => read_algebra(path),
        (None, Some(group)) => {
            let entry = catalog::entry(group)?;
            let n = cli.n.unwrap_or(entry.min_n);
            Ok(entry.build(n)?)
        }
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--input and --group are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "one of --input or --group is required".into(),
        )),
    }
}

#[derive(Serialize)]
struct CatalogRow {
    key: &'static str,
    name: String,
    min_n: usize,
    max_n: usize,
    dimension_formula: &'static str,
    dimensions: Vec<DimensionOut>,
}

#[derive(Serialize)]
struct DimensionOut {
    n: usize,
    name: String,
    dimension: usize,
}

fn cmd_catalog(cli: &Cli) -> CmdResult {
    let entries: Vec<_> = match &cli.group {
        Some(g) => vec![catalog::entry(g).or_else(usage)?],
        None => CATALOG.iter().collect(),
    };
    let mut rows = Vec::new();
    for e in entries {
        let ns: Vec<usize> = match cli.n {
            Some(n) if n < e.min_n || n > e.max_n => {
                return usage(Error::UnsupportedDimension {
                    group: e.key.into(),
                    n,
                })
            }
            Some(n) => vec![n],
            None => (e.min_n..=e.max_n.min(e.min_n + 4)).collect(),
        };
        rows.push(CatalogRow {
            key: e.key,
            name: e.display.to_string(),
            min_n: e.min_n,
            max_n: e.max_n,
            dimension_formula: e.formula,
            dimensions: ns
                .iter()
                .map(|&n| DimensionOut {
                    n,
                    name: e.display_name(n),
                    dimension: e.dimension(n),
                })
                .collect(),
        });
    }
    Ok(match cli.format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = format!(
                "{:<8} {:<8} {:<6} {:<14} dimensions\n",
                "key", "family", "n", "formula"
            );
            for r in &rows {
                let dims: Vec<String> = r
                    .dimensions
                    .iter()
                    .map(|d| format!("{}={}", d.name, d.dimension))
                    .collect();
                out.push_str(&format!(
                    "{:<8} {:<8} {:<6} {:<14} {}\n",
                    r.key,
                    r.name,
                    format!("{}..{}", r.min_n, r.max_n),
                    r.dimension_formula,
                    dims.join(" ")
                ));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct AlgebraOut {
    name: String,
    dimension: usize,
    generic_rank: usize,
    casimir_count: usize,
    seed: u64,
    trials: usize,
    document: AlgebraDoc,
}

fn cmd_algebra(cli: &Cli) -> CmdResult {
    let alg = target_algebra(cli).or_else(usage)?;
    let rank = alg.generic_rank(cli.seed, cli.trials);
    let out = AlgebraOut {
        name: alg.name().to_string(),
        dimension: alg.dim(),
        generic_rank: rank,
        casimir_count: alg.dim() - rank,
        seed: cli.seed,
        trials: cli.trials,
        document: AlgebraDoc::from_algebra(&alg),
    };
    Ok(match cli.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!(
                "{}: dimension {}, generic rank {}, {} Casimir invariants expected\n",
                out.name, out.dimension, out.generic_rank, out.casimir_count
            );
            s.push_str(&format!("basis: {}\n", alg.basis().join(" ")));
            for ((a, b), v) in alg.constants() {
                s.push_str(&format!(
                    "[{}, {}] = {}\n",
                    alg.generator_name(a),
                    alg.generator_name(b),
                    centrex::algebra::format_combination(
                        v.iter().map(|(c, x)| (alg.generator_name(c), x))
                    )
                ));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct JacobiOut {
    algebra: String,
    passed: bool,
    violations: Vec<ViolationOut>,
}

#[derive(Serialize)]
struct ViolationOut {
    triple: [String; 3],
    residual: String,
}

fn cmd_jacobi(cli: &Cli) -> CmdResult {
    let alg = target_algebra(cli).or_else(usage)?;
    let report = alg.jacobi_check();
    let out = JacobiOut {
        algebra: alg.name().to_string(),
        passed: report.passed(),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationOut {
                triple: v.triple.clone(),
                residual: alg.format_element(&v.residual),
            })
            .collect(),
    };
    let text = match cli.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!(
                "{}: Jacobi identity {} ({} violating triples)\n",
                out.algebra,
                if out.passed { "holds" } else { "fails" },
                out.violations.len()
            );
            for v in &out.violations {
                s.push_str(&format!("({}) -> {}\n", v.triple.join(", "), v.residual));
            }
            s
        }
    };
    match out.violations.first() {
        None => Ok(text),
        Some(v) => Err((
            text,
            Failure::Violation(format!(
                "Jacobi identity fails on ({})",
                v.triple.join(", ")
            )),
        )),
    }
}

#[derive(Serialize)]
struct ChargeOut {
    a: String,
    b: String,
    coef: String,
}

#[derive(Serialize)]
struct CocycleOut {
    charges: Vec<ChargeOut>,
    central_name: String,
}

#[derive(Serialize)]
struct ExtendOut {
    algebra: String,
    #[serde(rename = "N_e")]
    n_e: usize,
    cocycles: Vec<CocycleOut>,
    extended_algebra: AlgebraDoc,
}

fn cmd_extend(cli: &Cli) -> CmdResult {
    let alg = target_algebra(cli).or_else(usage)?;
    if let Some(v) = alg.jacobi_check().violations.first() {
        return usage(Failure::Usage(format!(
            "{} is not a Lie algebra: Jacobi identity fails on ({})",
            alg.name(),
            v.triple.join(", ")
        )));
    }
    let res = solve_central_extension(&alg);
    let out = ExtendOut {
        algebra: alg.name().to_string(),
        n_e: res.dimension,
        cocycles: res
            .cocycles
            .iter()
            .map(|c| CocycleOut {
                charges: c
                    .charges
                    .iter()
                    .map(|(a, b, x)| ChargeOut {
                        a: alg.generator_name(*a).to_string(),
                        b: alg.generator_name(*b).to_string(),
                        coef: x.to_string(),
                    })
                    .collect(),
                central_name: c.central_name.clone(),
            })
            .collect(),
        extended_algebra: AlgebraDoc::from_algebra(&res.extended),
    };
    Ok(match cli.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!(
                "{}: N_e = {} ({} unknowns, {} equations)\n",
                out.algebra, out.n_e, res.unknowns, res.equations
            );
            for c in &out.cocycles {
                let parts: Vec<String> = c
                    .charges
                    .iter()
                    .map(|q| format!("[{},{}] += {} {}", q.a, q.b, q.coef, c.central_name))
                    .collect();
                s.push_str(&format!("{}: {}\n", c.central_name, parts.join(", ")));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct TermOut {
    monomial: Vec<(String, u32)>,
    coef: String,
}

#[derive(Serialize)]
struct CasimirOut {
    label: String,
    degree: usize,
    terms: Vec<TermOut>,
    verified: bool,
}

#[derive(Serialize)]
struct CasimirsOut {
    algebra: String,
    count: usize,
    searched_degree: usize,
    casimirs: Vec<CasimirOut>,
}

fn cmd_casimir(cli: &Cli) -> CmdResult {
    let alg = target_algebra(cli).or_else(usage)?;
    if let Some(v) = alg.jacobi_check().violations.first() {
        return usage(Failure::Usage(format!(
            "{} is not a Lie algebra: Jacobi identity fails on ({})",
            alg.name(),
            v.triple.join(", ")
        )));
    }
    let set = search_casimirs(&alg, cli.max_degree, &CasimirSet::empty(&alg), cli.ceiling)
        .or_else(usage)?;
    let env = Enveloping::new(&alg);
    let casimirs: Vec<CasimirOut> = set
        .elements
        .iter()
        .map(|c| CasimirOut {
            label: c.label.clone(),
            degree: c.degree(),
            terms: c
                .poly
                .terms()
                .map(|(m, x)| TermOut {
                    monomial: m
                        .exponents()
                        .into_iter()
                        .map(|(g, e)| (alg.generator_name(g).to_string(), e))
                        .collect(),
                    coef: x.to_string(),
                })
                .collect(),
            verified: env.verify(&c.poly).commutes,
        })
        .collect();
    let unverified = casimirs
        .iter()
        .find(|c| !c.verified)
        .map(|c| c.label.clone());
    let out = CasimirsOut {
        algebra: alg.name().to_string(),
        count: casimirs.len(),
        searched_degree: set.max_degree_searched,
        casimirs,
    };
    let text = match cli.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!(
                "{}: {} primitive Casimir invariants up to degree {}\n",
                out.algebra, out.count, out.searched_degree
            );
            for c in &set.elements {
                s.push_str(&format!("{} = {}\n", c.label, c.poly.format(&alg)));
            }
            s
        }
    };
    match unverified {
        None => Ok(text),
        Some(label) => Err((
            text,
            Failure::Violation(format!("{label} does not commute")),
        )),
    }
}

#[derive(Serialize)]
struct MatrixCheckOut {
    family: String,
    n: usize,
    algebra: String,
    dimension: usize,
    jacobi: bool,
    matches_catalog: Option<bool>,
    draws: usize,
    group_law: bool,
    sample: GroupElement,
}

const MATRIX_DRAWS: usize = 100;

fn catalog_key(family: Family) -> Option<&'static str> {
    match family {
        Family::H => Some("h"),
        Family::Ha => Some("ha"),
        Family::HSp => Some("hsp"),
        Family::IHa => Some("iha"),
        Family::IE => Some("ie"),
        Family::T => Some("t"),
        Family::ISp => Some("isp"),
        Family::IHSp | Family::AutH => None,
    }
}

fn matrix_check(family: Family, n: usize, seed: u64) -> Result<MatrixCheckOut, Failure> {
    let alg = structure_constants_from_matrices(family, n)?;
    let matches_catalog = match catalog_key(family) {
        Some(key) => Some(catalog::algebra(key, n)?.same_structure(&alg)),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut law = true;
    for _ in 0..MATRIX_DRAWS {
        let g = random_element(family, n, &mut rng);
        let h = random_element(family, n, &mut rng);
        law &= compose(&g, &h).is_ok_and(|gh| gh.matrix == g.matrix.mul(&h.matrix))
            && inverse(&g).is_ok_and(|i| i.matrix.mul(&g.matrix).is_identity())
            && identify(family, n, &g.matrix).is_ok_and(|r| r.matrix == g.matrix);
    }
    Ok(MatrixCheckOut {
        family: family.to_string(),
        n,
        algebra: alg.name().to_string(),
        dimension: alg.dim(),
        jacobi: alg.jacobi_check().passed(),
        matches_catalog,
        draws: MATRIX_DRAWS,
        group_law: law,
        sample: random_element(family, n, &mut rng),
    })
}

fn cmd_matrix_check(cli: &Cli) -> CmdResult {
    let families: Vec<Family> = match &cli.group {
        Some(g) => vec![Family::parse(g).or_else(usage)?],
        None => Family::ALL.to_vec(),
    };
    let ns: Vec<usize> = match cli.n {
        Some(0) => return usage(Failure::Usage("--n must be at least 1".into())),
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let mut rows = Vec::new();
    for f in families {
        for &n in &ns {
            rows.push(matrix_check(f, n, cli.seed).or_else(usage)?);
        }
    }
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.jacobi || !r.group_law || r.matches_catalog == Some(false))
        .map(|r| format!("{}({})", r.family, r.n))
        .collect();
    let text = match cli.format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let cat = match r.matches_catalog {
                    Some(true) => "matches catalog",
                    Some(false) => "DIFFERS from catalog",
                    None => "no catalog entry",
                };
                s.push_str(&format!(
                    "{}({}): algebra {} dim {}, Jacobi {}, {cat}, group law {} on {} draws\n",
                    r.family,
                    r.n,
                    r.algebra,
                    r.dimension,
                    if r.jacobi { "ok" } else { "FAILS" },
                    if r.group_law { "ok" } else { "FAILS" },
                    r.draws
                ));
            }
            s
        }
    };
    if bad.is_empty() {
        Ok(text)
    } else {
        Err((
            text,
            Failure::Violation(format!("matrix checks fail for {}", bad.join(", "))),
        ))
    }
}

/// Subcommands that must print byte-identical output on repeated runs.
pub const DETERMINISM_PROBES: &[&[&str]] = &[
    &["catalog"],
    &["catalog", "--format", "json"],
    &["algebra", "--group", "qha", "--n", "2", "--format", "json"],
    &["jacobi", "--group", "iha", "--n", "2"],
    &["extend", "--group", "ie", "--n", "3", "--format", "json"],
    &[
        "casimir",
        "--group",
        "galilei",
        "--n",
        "2",
        "--max-degree",
        "2",
        "--format",
        "json",
    ],
    &[
        "matrix-check",
        "--group",
        "hsp",
        "--n",
        "1",
        "--format",
        "json",
    ],
];

/// Runs every probe twice in-process; returns the probes whose output differed.
pub fn determinism_failures() -> Vec<String> {
    DETERMINISM_PROBES
        .iter()
        .filter(|args| {
            let argv = || std::iter::once("centrex").chain(args.iter().copied());
            run(argv()) != run(argv())
        })
        .map(|args| args.join(" "))
        .collect()
}

fn cmd_verify(cli: &Cli) -> CmdResult {
    let mut cfg = SuiteConfig::new(cli.seed, cli.trials, cli.ceiling);
    if let Some(path) = &cli.input {
        let alg = read_algebra(path).or_else(usage)?;
        cfg = cfg.with_override(alg).or_else(|e| {
            usage(Failure::Usage(format!(
                "{path}: the suite uses no algebra named {e}",
                e = match e {
                    Error::UnknownGroup(name) => name,
                    other => other.to_string(),
                }
            )))
        })?;
    }
    let mut report: AcceptanceReport = run_suite(&cfg);
    let diffs = determinism_failures();
    let note = if diffs.is_empty() {
        format!(
            "CLI output byte-identical on {} probes",
            DETERMINISM_PROBES.len()
        )
    } else {
        format!("CLI output differs for {}", diffs.join(" | "))
    };
    report.amend(10, diffs.is_empty(), &note);
    let text = match cli.format {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
    };
    let failed: Vec<String> = report
        .failures()
        .map(|c| format!("{} ({})", c.criterion, c.id))
        .collect();
    if failed.is_empty() {
        Ok(text)
    } else {
        Err((
            text,
            Failure::Violation(format!("failing checks: {}", failed.join(", "))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn call(args: &[&str]) -> Output {
        run(std::iter::once("centrex").chain(args.iter().copied()))
    }

    fn call_json(args: &[&str]) -> (i32, Value) {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        let out = call(&argv);
        let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {out:?}"));
        (out.code, v)
    }

    fn temp_file(name: &str, text: &str) -> String {
        let path = std::env::temp_dir().join(format!("centrex-{}-{name}", std::process::id()));
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn corrupted_ha3() -> String {
        let (_, v) = call_json(&["algebra", "--group", "ha", "--n", "3"]);
        let mut doc = v["document"].clone();
        for b in doc["brackets"].as_array_mut().unwrap() {
            if b["a"] == "G1" && b["b"] == "F1" {
                b["rhs"] = serde_json::json!([{"gen": "G2", "coef": "1"}]);
            }
        }
        serde_json::to_string(&doc).unwrap()
    }

    #[test]
    fn catalog_dimensions() {
        let (code, v) = call_json(&["catalog"]);
        assert_eq!(code, 0);
        let dim = |key: &str, n: u64| {
            let row = v
                .as_array()
                .unwrap()
                .iter()
                .find(|r| r["key"] == key)
                .unwrap();
            let d = row["dimensions"]
                .as_array()
                .unwrap()
                .iter()
                .find(|d| d["n"] == n)
                .unwrap();
            d["dimension"].as_u64().unwrap()
        };
        assert_eq!(dim("galilei", 3), 11);
        assert_eq!(dim("qha", 3), 21);
        assert_eq!(dim("t", 5), 5);
        let (_, one) = call_json(&["catalog", "--group", "galilei", "--n", "3"]);
        assert_eq!(one[0]["dimensions"][0]["name"], "Galilei(3)");
    }

    #[test]
    fn extend_ie3() {
        let (code, v) = call_json(&["extend", "--group", "ie", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["algebra"], "IE(3)");
        assert_eq!(v["N_e"], 1);
        let charges = v["cocycles"][0]["charges"].as_array().unwrap();
        assert_eq!(charges.len(), 3);
        assert!(charges.iter().all(|c| c["coef"].is_string()));
        assert_eq!(v["extended_algebra"]["basis"].as_array().unwrap().len(), 11);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
    }

    #[test]
    fn casimir_galilei3() {
        let (code, v) = call_json(&[
            "casimir",
            "--group",
            "galilei",
            "--n",
            "3",
            "--max-degree",
            "4",
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["count"], 3);
        assert_eq!(v["searched_degree"], 4);
        let first = &v["casimirs"][0];
        assert_eq!(first["label"], "C1");
        assert_eq!(first["terms"][0]["monomial"], serde_json::json!([["M", 1]]));
        assert_eq!(first["terms"][0]["coef"], "1");
        assert!(v["casimirs"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["verified"] == true));
    }

    #[test]
    fn casimir_ceiling_is_a_usage_error() {
        let (code, v) = call_json(&["casimir", "--group", "qha", "--n", "3", "--max-degree", "6"]);
        assert_eq!(code, 2);
        assert!(v["error"]["message"].as_str().unwrap().contains("ceiling"));
    }

    #[test]
    fn jacobi_reports_the_violating_triple() {
        let path = temp_file("bad-ha3.json", &corrupted_ha3());
        let out = call(&["jacobi", "--input", &path]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("(J12, G1, F1)"), "{}", out.stdout);
        assert!(out.stderr.contains("J12, G1, F1"));
        let (code, v) = call_json(&["jacobi", "--group", "ha", "--n", "3"]);
        assert_eq!((code, v["passed"].as_bool()), (0, Some(true)));
    }

    #[test]
    fn usage_errors_exit_2_with_an_error_object() {
        for args in [
            &["extend", "--group", "nope"][..],
            &["extend"][..],
            &["algebra", "--input", "/nonexistent/alg.json"][..],
            &["catalog", "--group", "so", "--n", "1"][..],
            &["matrix-check", "--group", "nope"][..],
        ] {
            let (code, v) = call_json(args);
            assert_eq!(code, 2, "{args:?}");
            assert_eq!(v["error"]["kind"], "usage");
            assert!(v.get("N_e").is_none());
        }
        assert_eq!(call(&["frobnicate"]).code, 2);
        assert_eq!(call(&["catalog", "--format", "yaml"]).code, 2);
        let text = call(&["extend", "--group", "nope"]);
        assert!(text.stdout.is_empty() && text.stderr.starts_with("error:"));
    }

    #[test]
    fn malformed_documents_are_usage_errors() {
        let path = temp_file(
            "bad-coef.json",
            r#"{"name":"x","basis":["P","Q","I"],
            "brackets":[{"a":"P","b":"Q","rhs":[{"gen":"I","coef":"1/0"}]}]}"#,
        );
        let (code, v) = call_json(&["algebra", "--input", &path]);
        assert_eq!(code, 2);
        assert!(v["error"]["message"]
            .as_str()
            .unwrap()
            .contains("brackets[0].rhs[0].coef"));
    }

    #[test]
    fn matrix_check_passes_for_every_family() {
        let (code, v) = call_json(&["matrix-check", "--n", "1"]);
        assert_eq!(code, 0);
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), Family::ALL.len());
        let hsp = rows.iter().find(|r| r["family"] == "HSp").unwrap();
        assert_eq!(hsp["matches_catalog"], true);
        assert_eq!(hsp["sample"]["family"], "HSp");
        assert!(hsp["sample"]["matrix"][0][0].is_string());
    }

    #[test]
    fn probes_are_deterministic() {
        assert!(determinism_failures().is_empty());
    }

    #[test]
    fn verify_formats_agree_and_injection_names_the_check() {
        let (code, v) = call_json(&["verify-paper"]);
        let text = call(&["verify-paper"]);
        assert_eq!(code, text.code);
        for rec in v["checks"].as_array().unwrap() {
            let line = format!(
                "{:>2}  {:<18} {:<17}",
                rec["criterion"].as_u64().unwrap(),
                rec["id"].as_str().unwrap(),
                rec["status"].as_str().unwrap()
            );
            assert!(text.stdout.contains(&line), "{line}");
        }
        assert_eq!(v["checks"][10]["status"], "discrepancy-noted");

        let path = temp_file("inject-ha3.json", &corrupted_ha3());
        let (code, v) = call_json(&["verify-paper", "--input", &path]);
        assert_eq!(code, 1);
        let rec = &v["checks"][8];
        assert_eq!(
            (rec["id"].as_str(), rec["status"].as_str()),
            (Some("matrix-layer"), Some("fail"))
        );
        assert!(rec["computed"].as_str().unwrap().contains("Ha(3)"));

        let stray = temp_file(
            "stray.json",
            r#"{"name":"Zz(1)","basis":["x"],"brackets":[]}"#,
        );
        assert_eq!(call(&["verify-paper", "--input", &stray]).code, 2);
    }
}
