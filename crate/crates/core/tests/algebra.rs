use centrex::algebra::{AlgebraElement, DEFAULT_SEED, DEFAULT_TRIALS};
use centrex::catalog::{self, CATALOG};
use centrex::doc::{algebra_to_json, parse_algebra};
use centrex::sparse::{SparseMatrix, SparseVec};
use centrex::{Error, LieAlgebra, Scalar};
use proptest::prelude::*;

const H1: &str = r#"{
  "name": "h(1)",
  "basis": ["P", "Q", "I"],
  "brackets": [{"a": "P", "b": "Q", "rhs": [{"gen": "I", "coef": "1"}]}]
}"#;

fn el(alg: &LieAlgebra, terms: &[(&str, i64)]) -> AlgebraElement {
    alg.element(terms.iter().map(|&(g, c)| (g, Scalar::from(c))))
        .unwrap()
}

#[test]
fn parse_heisenberg_document() {
    let alg = parse_algebra(H1).unwrap();
    assert_eq!(alg.basis(), ["P", "Q", "I"]);
    assert_eq!(alg.structure_constant(0, 1, 2), Scalar::one());
    assert_eq!(alg.structure_constant(1, 0, 2), -Scalar::one());
    assert!(alg.same_structure(&parse_algebra(&algebra_to_json(&alg)).unwrap()));
}

#[test]
fn parse_abelian_document() {
    let alg =
        parse_algebra(r#"{"name":"T(5)","basis":["a","b","c","d","e"],"brackets":[]}"#).unwrap();
    assert_eq!(alg.dim(), 5);
    assert_eq!(alg.constants().count(), 0);
}

#[test]
fn parse_errors_carry_locations() {
    let unknown = H1.replace(r#""b": "Q""#, r#""b": "X""#);
    match parse_algebra(&unknown) {
        Err(Error::UnknownGenerator { location, name }) => {
            assert_eq!(name, "X");
            assert_eq!(location, "brackets[0].b");
        }
        other => panic!("{other:?}"),
    }

    let bad = H1.replace(r#""coef": "1""#, r#""coef": "1/0""#);
    let err = parse_algebra(&bad).unwrap_err();
    assert!(matches!(err, Error::MalformedCoefficient { .. }));
    assert!(err.to_string().starts_with("brackets[0].rhs[0].coef"));

    let dup = r#"{"name":"x","basis":["P","Q","I"],"brackets":[
        {"a":"P","b":"Q","rhs":[{"gen":"I","coef":"1"}]},
        {"a":"Q","b":"P","rhs":[{"gen":"I","coef":"-1"}]}]}"#;
    assert!(matches!(
        parse_algebra(dup),
        Err(Error::DuplicateBracket { .. })
    ));

    let diag = r#"{"name":"x","basis":["P"],"brackets":[{"a":"P","b":"P","rhs":[]}]}"#;
    assert!(matches!(
        parse_algebra(diag),
        Err(Error::DiagonalBracket { .. })
    ));
}

#[test]
fn serialization_is_canonical() {
    for e in CATALOG {
        let alg = e.build(e.min_n.max(2).min(e.max_n)).unwrap();
        let text = algebra_to_json(&alg);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(algebra_to_json(&back), text, "{}", alg.name());
    }
}

#[test]
fn bracket_examples() {
    let g = catalog::galilei(3);
    let e_g1 = g
        .bracket(&el(&g, &[("E", 1)]), &el(&g, &[("G1", 1)]))
        .unwrap();
    assert_eq!(e_g1, el(&g, &[("P1", -1)]));

    let ha = catalog::hamilton(3);
    let x = el(&ha, &[("G1", 2), ("F2", -3), ("J12", 1)]);
    assert!(ha.bracket(&x, &x).unwrap().is_zero());
    let gf = ha
        .bracket(&el(&ha, &[("G1", 1)]), &el(&ha, &[("F1", 1)]))
        .unwrap();
    assert_eq!(gf, el(&ha, &[("R", 1)]));

    let other = AlgebraElement::basis(4, 0);
    assert!(matches!(
        ha.bracket(&x, &other),
        Err(Error::IndexMismatch { .. })
    ));
}

#[test]
fn jacobi_examples() {
    assert!(catalog::hamilton(3).jacobi_check().passed());
    assert!(catalog::translations(7).jacobi_check().passed());

    let good = catalog::inhomogeneous_hamilton(3);
    let mut b = LieAlgebra::builder("bad", good.basis().to_vec()).unwrap();
    for ((x, y), v) in good.constants() {
        for (c, s) in v.iter() {
            b.add(x, y, c, s.clone());
        }
    }
    b.rel("G1", "F1", "R", -1);
    b.rel("G1", "F1", "Q1", 1);
    let report = b.build().jacobi_check();
    assert!(!report.passed());
    for v in &report.violations {
        assert!(
            v.triple.iter().any(|g| g == "G1" || g == "F1"),
            "{:?}",
            v.triple
        );
    }
    assert!(report
        .violations
        .iter()
        .any(|v| v.triple.contains(&"E".to_string())));
}

#[test]
fn adjoint_examples() {
    let t = catalog::translations(3);
    let m = t.adjoint_matrix(&el(&t, &[("X1", 5), ("X3", -2)])).unwrap();
    assert!(m.iter().flatten().all(Scalar::is_zero));

    let h = catalog::heisenberg(1);
    let m = h.adjoint_matrix(&el(&h, &[("P1", 1)])).unwrap();
    let nonzero: Vec<(usize, usize)> = (0..3)
        .flat_map(|r| (0..3).map(move |c| (r, c)))
        .filter(|&(r, c)| !m[r][c].is_zero())
        .collect();
    assert_eq!(nonzero, vec![(2, 1)]);
    assert_eq!(m[2][1], Scalar::one());

    let so3 = catalog::so(3);
    let m = so3.adjoint_matrix(&el(&so3, &[("J12", 1)])).unwrap();
    let rows: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
    assert_eq!(SparseMatrix::from_rows(3, rows).rank(), 2);
}

#[test]
fn rank_and_count_examples() {
    assert_eq!(
        catalog::translations(5).generic_rank(DEFAULT_SEED, DEFAULT_TRIALS),
        0
    );
    let g3 = catalog::galilei(3);
    assert_eq!(g3.generic_rank(DEFAULT_SEED, DEFAULT_TRIALS), 8);
    assert_eq!(g3.casimir_count(DEFAULT_SEED, DEFAULT_TRIALS), 3);
    let q3 = catalog::quantum_hamilton(3);
    assert_eq!(q3.generic_rank(DEFAULT_SEED, DEFAULT_TRIALS), 16);
    assert_eq!(q3.casimir_count(DEFAULT_SEED, DEFAULT_TRIALS), 5);
    assert_eq!(
        catalog::galilei(1).casimir_count(DEFAULT_SEED, DEFAULT_TRIALS),
        2
    );
}

#[test]
fn catalog_algebras_satisfy_jacobi() {
    for e in CATALOG {
        for n in e.min_n..=e.max_n.min(3) {
            let alg = e.build(n).unwrap();
            assert!(alg.jacobi_check().passed(), "{}", alg.name());
            assert_eq!(alg.dim(), e.dimension(n), "{}", alg.name());
        }
    }
}

#[test]
fn rank_is_monotone_and_stabilizes() {
    for e in CATALOG {
        for n in e.min_n..=e.max_n.min(3) {
            let alg = e.build(n).unwrap();
            let ranks: Vec<usize> = (1..=5).map(|t| alg.generic_rank(DEFAULT_SEED, t)).collect();
            assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{}", alg.name());
            assert_eq!(
                alg.generic_rank(1, 5),
                alg.generic_rank(2, 5),
                "{}",
                alg.name()
            );
            assert_eq!(alg.generic_rank(1, 5), ranks[4], "{}", alg.name());
        }
    }
}

fn catalog_algebra() -> impl Strategy<Value = LieAlgebra> {
    (0..CATALOG.len(), 1usize..=3).prop_map(|(k, n)| {
        let e = &CATALOG[k];
        e.build(n.clamp(e.min_n, e.max_n)).unwrap()
    })
}

fn sparse_element(dim: usize) -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0..dim, -9i64..=9, 1i64..=4), 0..=4)
}

fn to_element(alg: &LieAlgebra, terms: &[(usize, i64, i64)]) -> AlgebraElement {
    let d = alg.dim();
    AlgebraElement::from_sparse(
        d,
        SparseVec::from_pairs(terms.iter().map(|&(i, p, q)| (i % d, Scalar::ratio(p, q)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(alg in catalog_algebra()) {
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let x = AlgebraElement::basis(alg.dim(), a);
                let y = AlgebraElement::basis(alg.dim(), b);
                let s = alg.bracket(&x, &y).unwrap().add(&alg.bracket(&y, &x).unwrap());
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn bilinearity(
        alg in catalog_algebra(),
        x in sparse_element(64),
        y in sparse_element(64),
        z in sparse_element(64),
        (ap, aq, bp, bq) in (-5i64..=5, 1i64..=5, -5i64..=5, 1i64..=5),
    ) {
        let (x, y, z) = (to_element(&alg, &x), to_element(&alg, &y), to_element(&alg, &z));
        let (alpha, beta) = (Scalar::ratio(ap, aq), Scalar::ratio(bp, bq));
        let lhs = alg.bracket(&x.scale(&alpha).add(&y.scale(&beta)), &z).unwrap();
        let rhs = alg
            .bracket(&x, &z)
            .unwrap()
            .scale(&alpha)
            .add(&alg.bracket(&y, &z).unwrap().scale(&beta));
        prop_assert_eq!(lhs, rhs);
    }
}
