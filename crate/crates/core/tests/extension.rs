use centrex::catalog;
use centrex::extension::{
    build_ansatz, coboundary_space, jacobi_system, pair_index, prune_by_subalgebras, solve_ansatz,
    solve_central_extension, standard_blocking_subsets, ExtensionFreeRegistry, ExtensionResult,
};
use centrex::groups::{self, Family, SymplecticMetric};
use centrex::sparse::{Span, SparseVec};
use centrex::{LieAlgebra, Scalar};

fn pattern(alg: &LieAlgebra, charges: &[(String, String, i64)]) -> SparseVec {
    let n = alg.dim();
    SparseVec::from_pairs(charges.iter().map(|(a, b, c)| {
        let (i, j) = (alg.index_of(a).unwrap(), alg.index_of(b).unwrap());
        let (lo, hi, s) = if i < j { (i, j, *c) } else { (j, i, -*c) };
        (pair_index(n, lo, hi), Scalar::from(s))
    }))
}

fn diagonal(x: &str, y: &str, n: usize, c: i64) -> Vec<(String, String, i64)> {
    (1..=n)
        .map(|i| (format!("{x}{i}"), format!("{y}{i}"), c))
        .collect()
}

fn expected_span(alg: &LieAlgebra, patterns: &[SparseVec]) -> Span {
    let mut span = Span::from_vectors(&coboundary_space(alg));
    for p in patterns {
        span.insert(p);
    }
    span
}

/// A class representative equals `B.reduce(p)` for one pattern, up to scale.
fn matches_pattern_up_to_scale(alg: &LieAlgebra, res: &ExtensionResult, patterns: &[SparseVec]) {
    let b = Span::from_vectors(&coboundary_space(alg));
    let n = alg.dim();
    for c in &res.cocycles {
        let v = c.vector(n);
        assert!(
            patterns.iter().any(|p| b.reduce(p).is_proportional_to(&v)),
            "{} is not a rescaled pattern",
            c.central_name
        );
    }
}

fn pruned_solve(alg: &LieAlgebra, reg: &ExtensionFreeRegistry) -> ExtensionResult {
    let subsets = standard_blocking_subsets(alg);
    let (ansatz, _) = prune_by_subalgebras(&build_ansatz(alg), &subsets, reg).unwrap();
    solve_ansatz(&ansatz, None)
}

#[test]
fn unknown_counts() {
    assert_eq!(build_ansatz(&catalog::translations(4)).unknowns().len(), 6);
    let ie = catalog::inhomogeneous_euclidean(3);
    assert_eq!(ie.dim(), 10);
    assert_eq!(build_ansatz(&ie).unknowns().len(), 45);
    let iha = catalog::inhomogeneous_hamilton(3);
    assert_eq!(iha.dim(), 18);
    assert_eq!(build_ansatz(&iha).unknowns().len(), 153);
}

#[test]
fn translations_keep_every_charge() {
    for m in 1..=6 {
        let res = solve_central_extension(&catalog::translations(m));
        assert_eq!(res.dimension, m * (m - 1) / 2);
    }
}

#[test]
fn extension_free_algebras() {
    for alg in [
        catalog::so(3),
        groups::symplectic_algebra(1),
        catalog::euclidean(3),
    ] {
        assert_eq!(solve_central_extension(&alg).dimension, 0, "{}", alg.name());
    }
}

#[test]
fn coboundaries_of_so3_and_h1() {
    let so3 = catalog::so(3);
    let cob = coboundary_space(&so3);
    assert_eq!(cob.len(), 3);
    assert_eq!(Span::from_vectors(&cob).dim(), 3);

    let h1 = catalog::heisenberg(1);
    let cob = coboundary_space(&h1);
    assert!(cob[0].is_zero() && cob[1].is_zero());
    assert_eq!(cob[2].nnz(), 1);
}

#[test]
fn heisenberg_triple_is_vacuous() {
    let h1 = catalog::heisenberg(1);
    let sys = jacobi_system(&build_ansatz(&h1));
    assert_eq!(sys.matrix.nrows(), 0);
    assert_eq!(solve_central_extension(&h1).dimension, 2);
}

#[test]
fn mass_extension_of_ie3() {
    let alg = catalog::inhomogeneous_euclidean(3);
    let res = solve_central_extension(&alg);
    assert_eq!(res.dimension, 1);
    let mass = pattern(&alg, &diagonal("G", "P", 3, 1));
    assert!(res
        .class_span()
        .same_as(&expected_span(&alg, std::slice::from_ref(&mass))));
    assert_eq!(res.cocycles[0].vector(alg.dim()), mass);
    assert!(res.extended.jacobi_check().passed());
}

fn iha_patterns(alg: &LieAlgebra, n: usize) -> [SparseVec; 4] {
    let mut i = diagonal("P", "Q", n, 1);
    i.push(("E".into(), "T".into(), -1));
    // second charge on the pairs that carry T: [F_i,P_k] = δ_ik K, [E,R] = K
    let mut k = diagonal("F", "P", n, 1);
    k.push(("E".into(), "R".into(), 1));
    [
        pattern(alg, &i),
        pattern(alg, &diagonal("G", "P", n, 1)),
        pattern(alg, &diagonal("F", "Q", n, 1)),
        pattern(alg, &k),
    ]
}

#[test]
fn iha3_classes() {
    let alg = catalog::inhomogeneous_hamilton(3);
    let res = solve_central_extension(&alg);
    let patterns = iha_patterns(&alg, 3);
    assert_eq!(res.dimension, 4);
    assert!(res.class_span().same_as(&expected_span(&alg, &patterns)));
    matches_pattern_up_to_scale(&alg, &res, &patterns);
    assert!(res.extended.jacobi_check().passed());

    let ima = expected_span(&alg, &patterns[..3]);
    assert!(res.class_span().contains_span(&ima));
    assert_eq!(ima.dim() + 1, res.class_span().dim());
}

#[test]
fn t_carrying_charges_form_a_plane() {
    // a Σ[G_i,Q_i] + b Σ[F_i,P_i] + c [E,R] is closed iff c = a + b
    let alg = catalog::inhomogeneous_hamilton(2);
    let sys = jacobi_system(&build_ansatz(&alg));
    let closed = |a: i64, b: i64, c: i64| {
        let mut ch = diagonal("G", "Q", 2, a);
        ch.extend(diagonal("F", "P", 2, b));
        ch.push(("E".into(), "R".into(), c));
        let v = pattern(&alg, &ch);
        sys.matrix.rows().iter().all(|row| {
            let dot: Scalar = row
                .iter()
                .map(|(col, x)| {
                    x * &v
                        .get(sys.columns[col])
                        .cloned()
                        .unwrap_or_else(Scalar::zero)
                })
                .sum();
            dot.is_zero()
        })
    };
    assert!(closed(1, 1, 2));
    assert!(closed(1, 0, 1));
    assert!(closed(0, 1, 1));
    assert!(!closed(1, 0, 0));
    assert!(!closed(1, 1, 1));
}

#[test]
fn isp4_charge_is_the_symplectic_form() {
    let alg = groups::structure_constants_from_matrices(Family::ISp, 1).unwrap();
    let res = solve_central_extension(&alg);
    assert_eq!(res.dimension, 1);

    let zeta = SymplecticMetric::extended(1).matrix;
    let gens = groups::derive_generators(Family::ISp, 1);
    let size = gens[0].matrix.rows();
    let translation = |g: &groups::GeneratorMatrix| -> Option<Vec<Scalar>> {
        let m = &g.matrix;
        let last = size - 1;
        let only_column = (0..size).all(|r| (0..size).all(|c| c == last || m.get(r, c).is_zero()));
        only_column.then(|| (0..last).map(|r| m.get(r, last).clone()).collect())
    };
    let ys: Vec<(usize, Vec<Scalar>)> = gens
        .iter()
        .enumerate()
        .filter_map(|(k, g)| translation(g).map(|y| (k, y)))
        .collect();
    assert_eq!(ys.len(), 4);

    let n = alg.dim();
    let mut form = Vec::new();
    for (x, (a, ya)) in ys.iter().enumerate() {
        for (b, yb) in &ys[x + 1..] {
            let v = groups::bilinear(ya, &zeta, yb);
            form.push((pair_index(n, *a, *b), v));
        }
    }
    let form = SparseVec::from_pairs(form);
    assert!(!form.is_zero());
    assert!(res.cocycles[0].vector(n).is_proportional_to(&form));
    assert!(res.extended.jacobi_check().passed());

    // the translation block of the extension is a Weyl-Heisenberg algebra
    let mut idx: Vec<usize> = ys.iter().map(|(k, _)| *k).collect();
    idx.push(n);
    let wh = res.extended.subalgebra(&idx).unwrap();
    assert_eq!(wh.dim(), 5);
    assert!((0..4).all(|k| !wh.is_central(k)) && wh.is_central(4));
}

#[test]
fn isp4_rows_come_from_two_triple_types() {
    let alg = groups::structure_constants_from_matrices(Family::ISp, 1).unwrap();
    let reg = ExtensionFreeRegistry::with_builtins();
    let ws: Vec<String> = alg
        .basis()
        .iter()
        .filter(|g| g.starts_with('W'))
        .cloned()
        .collect();
    let (ansatz, report) =
        prune_by_subalgebras(&build_ansatz(&alg), std::slice::from_ref(&ws), &reg).unwrap();
    assert_eq!(
        report.applied.len(),
        1,
        "W block should be a registered sp(4)"
    );
    let sys = jacobi_system(&ansatz);
    let is_w = |k: usize| alg.generator_name(k).starts_with('W');
    let (mut yww, mut yyw) = (0, 0);
    for &(a, b, c) in &sys.origins {
        match [a, b, c].iter().filter(|&&k| is_w(k)).count() {
            2 => yww += 1,
            1 => yyw += 1,
            k => panic!("row from a triple with {k} symplectic generators"),
        }
    }
    assert!(yww > 0 && yyw > 0);
    let pruned = solve_ansatz(&ansatz, None);
    let full = solve_central_extension(&alg);
    assert_eq!(pruned.dimension, 1);
    assert!(pruned.class_span().same_as(&full.class_span()));
}

#[test]
fn soundness_and_nontriviality() {
    let algs = [
        catalog::inhomogeneous_euclidean(1),
        catalog::inhomogeneous_euclidean(2),
        catalog::inhomogeneous_euclidean(3),
        catalog::inhomogeneous_hamilton(1),
        catalog::inhomogeneous_hamilton(2),
        catalog::heisenberg(1),
        catalog::euclidean(2),
        catalog::translations(3),
    ];
    for alg in algs {
        let res = solve_central_extension(&alg);
        assert!(res.extended.jacobi_check().passed(), "{}", alg.name());
        let mut span = Span::from_vectors(&coboundary_space(&alg));
        for c in &res.cocycles {
            assert!(
                span.insert(&c.vector(alg.dim())),
                "{} is trivial",
                c.central_name
            );
        }
        for k in alg.dim()..res.extended.dim() {
            assert!(res.extended.is_central(k));
        }
    }
}

#[test]
fn pruning_is_consistent() {
    let reg = ExtensionFreeRegistry::with_builtins();
    let algs = [
        catalog::galilei(1),
        catalog::galilei(2),
        catalog::galilei(3),
        catalog::inhomogeneous_euclidean(3),
        catalog::inhomogeneous_hamilton(1),
        catalog::inhomogeneous_hamilton(2),
        catalog::inhomogeneous_hamilton(3),
    ];
    for alg in algs {
        let full = solve_central_extension(&alg);
        let pruned = pruned_solve(&alg, &reg);
        assert_eq!(full.dimension, pruned.dimension, "{}", alg.name());
        assert!(
            full.class_span().same_as(&pruned.class_span()),
            "{}",
            alg.name()
        );
    }
}

#[test]
fn galilei_pruning_fixes_the_euclidean_blocks() {
    let alg = catalog::galilei(3);
    let reg = ExtensionFreeRegistry::with_builtins();
    let names = |p: &str| -> Vec<String> {
        alg.basis()
            .iter()
            .filter(|g| g.starts_with(p))
            .cloned()
            .collect()
    };
    let jg = [names("J"), names("G")].concat();
    let jp = [names("J"), names("P")].concat();
    let (ansatz, report) = prune_by_subalgebras(&build_ansatz(&alg), &[jg, jp], &reg).unwrap();
    assert_eq!(report.applied.len(), 2);
    for (a, b) in ansatz.unknowns() {
        let (x, y) = (&alg.basis()[*a], &alg.basis()[*b]);
        let block = |g: &str| g.chars().next().unwrap();
        let blocked = matches!(
            (block(x), block(y)),
            ('J', 'J' | 'G' | 'P') | ('G', 'G') | ('P', 'P')
        );
        assert_eq!(ansatz.is_pruned(*a, *b), blocked, "{x},{y}");
    }
    assert!(ansatz
        .pruned()
        .iter()
        .all(|(_, note)| note.contains("e(3)")));
}

#[test]
fn iha_pruning_adds_f_and_q_blocks() {
    let alg = catalog::inhomogeneous_hamilton(3);
    let subsets = standard_blocking_subsets(&alg);
    assert_eq!(subsets.len(), 4);
    let reg = ExtensionFreeRegistry::with_builtins();
    let (ansatz, report) = prune_by_subalgebras(&build_ansatz(&alg), &subsets, &reg).unwrap();
    assert_eq!(report.applied.len(), 4);
    // J-J (3), J-X for four vector families (4 * 9), X-X within each (4 * 3)
    assert_eq!(ansatz.pruned().len(), 3 + 36 + 12);
}

#[test]
fn mass_extension_embeds_in_the_hamilton_extension() {
    let ie = catalog::inhomogeneous_euclidean(3);
    let iha = catalog::inhomogeneous_hamilton(3);
    let small = solve_ansatz(&build_ansatz(&ie), Some(&["M"]));
    let big = solve_central_extension(&iha);
    let mass = pattern(&iha, &diagonal("G", "P", 3, 1));
    let b = Span::from_vectors(&coboundary_space(&iha));
    let k = big
        .cocycles
        .iter()
        .position(|c| b.reduce(&mass).is_proportional_to(&c.vector(iha.dim())))
        .expect("an M class");
    let mut names: Vec<&str> = big
        .cocycles
        .iter()
        .map(|c| c.central_name.as_str())
        .collect();
    names[k] = "M";
    let big = solve_ansatz(&build_ansatz(&iha), Some(&names));
    let (s, l) = (&small.extended, &big.extended);
    for x in s.basis() {
        for y in s.basis() {
            let lhs = s.bracket_basis(s.index_of(x).unwrap(), s.index_of(y).unwrap());
            let rhs = l.bracket_basis(l.index_of(x).unwrap(), l.index_of(y).unwrap());
            let lhs: Vec<(&str, Scalar)> = lhs
                .iter()
                .map(|(c, v)| (s.generator_name(c), v.clone()))
                .collect();
            let rhs: Vec<(&str, Scalar)> = rhs
                .iter()
                .map(|(c, v)| (l.generator_name(c), v.clone()))
                .collect();
            assert_eq!(lhs, rhs, "[{x}, {y}]");
        }
    }
}

#[test]
fn low_dimensional_euclidean_extensions() {
    let n1 = solve_central_extension(&catalog::inhomogeneous_euclidean(1)).dimension;
    let n2 = solve_central_extension(&catalog::inhomogeneous_euclidean(2)).dimension;
    assert_eq!(n1, 2);
    assert!(n2 >= 1);
    println!("N_e(IE(1)) = {n1}, N_e(IE(2)) = {n2}");
}
