//! Parameterized rational matrix groups and their Lie algebras.
//!
//! Every family is a polynomial template in its parameters. The homogeneous
//! core shared by `H`, `Ha`, `HSp` and `AutH` is the `(2n+2)`-square matrix
//!
//! ```text
//! [ a·A          0      w ]
//! [ −ε·a·wᵀζ°A   ε·a²   r ]
//! [ 0            0      ε ]
//! ```
//!
//! and the inhomogeneous families append a translation column.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{Dual, Mat, QMatrix, Ring};
use crate::scalar::Scalar;
use crate::sparse::{Coordinates, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Weyl-Heisenberg group, elements `Υ(w, ι)`.
    H,
    /// Homogeneous Hamilton group.
    Ha,
    /// Sp(2n) ⋉ H(n).
    HSp,
    /// Inhomogeneous Hamilton group.
    IHa,
    /// HSp(2n) ⋉ T(2n+2).
    IHSp,
    /// Inhomogeneous Euclidean group.
    IE,
    /// Automorphisms of the Weyl-Heisenberg group.
    AutH,
    /// Abelian translations T(m).
    T,
    /// Sp(2n+2) ⋉ T(2n+2) with the extended metric.
    ISp,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::H,
        Family::Ha,
        Family::HSp,
        Family::IHa,
        Family::IHSp,
        Family::IE,
        Family::AutH,
        Family::T,
        Family::ISp,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Family::H => "h",
            Family::Ha => "ha",
            Family::HSp => "hsp",
            Family::IHa => "iha",
            Family::IHSp => "ihsp",
            Family::IE => "ie",
            Family::AutH => "auth",
            Family::T => "t",
            Family::ISp => "isp",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        let k = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.key() == k)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }

    /// Side length of the matrices.
    pub fn size(self, n: usize) -> usize {
        match self {
            Family::H | Family::Ha | Family::HSp | Family::AutH => 2 * n + 2,
            Family::IHa | Family::IHSp | Family::IE | Family::ISp => 2 * n + 3,
            Family::T => n + 1,
        }
    }

    pub fn param_specs(self, n: usize) -> Vec<ParamSpec> {
        use ParamKind::*;
        let p = |name, kind| ParamSpec { name, kind };
        match self {
            Family::H => vec![p("w", Vector(2 * n)), p("iota", Number)],
            Family::Ha => vec![
                p("eps", Sign),
                p("R", Orthogonal(n)),
                p("v", Vector(n)),
                p("f", Vector(n)),
                p("r", Number),
            ],
            Family::HSp => vec![
                p("eps", Sign),
                p("A", Symplectic(n)),
                p("w", Vector(2 * n)),
                p("r", Number),
            ],
            Family::IHa => vec![
                p("eps", Sign),
                p("R", Orthogonal(n)),
                p("v", Vector(n)),
                p("f", Vector(n)),
                p("r", Number),
                p("q", Vector(n)),
                p("p", Vector(n)),
                p("e", Number),
                p("t", Number),
            ],
            Family::IHSp => vec![
                p("eps", Sign),
                p("A", Symplectic(n)),
                p("w", Vector(2 * n)),
                p("r", Number),
                p("z", Vector(2 * n)),
                p("e", Number),
                p("t", Number),
            ],
            Family::IE => vec![
                p("eps", Sign),
                p("R", Orthogonal(n)),
                p("v", Vector(n)),
                p("q", Vector(n)),
                p("t", Number),
            ],
            Family::AutH => vec![
                p("eps", Sign),
                p("a", NonZero),
                p("A", Symplectic(n)),
                p("w", Vector(2 * n)),
                p("r", Number),
            ],
            Family::T => vec![p("y", Vector(n))],
            Family::ISp => vec![p("S", ExtendedSymplectic(n)), p("y", Vector(2 * n + 2))],
        }
    }

    /// Parameters of the identity element.
    pub fn identity_params(self, n: usize) -> Params {
        self.param_specs(n)
            .into_iter()
            .map(|s| (s.name.to_string(), s.kind.identity()))
            .collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// ε ∈ {+1, −1}.
    Sign,
    Number,
    NonZero,
    Vector(usize),
    /// n×n with RᵀR = 1.
    Orthogonal(usize),
    /// 2n×2n with Aζ°Aᵀ = ζ°.
    Symplectic(usize),
    /// (2n+2)×(2n+2) with SζSᵀ = ζ for the extended metric.
    ExtendedSymplectic(usize),
}

impl ParamKind {
    fn identity(self) -> Param {
        match self {
            ParamKind::Sign | ParamKind::NonZero => Param::Scalar(Scalar::one()),
            ParamKind::Number => Param::Scalar(Scalar::zero()),
            ParamKind::Vector(k) => Param::Vector(vec![Scalar::zero(); k]),
            ParamKind::Orthogonal(k) => Param::Matrix(QMatrix::identity(k)),
            ParamKind::Symplectic(k) => Param::Matrix(QMatrix::identity(2 * k)),
            ParamKind::ExtendedSymplectic(k) => Param::Matrix(QMatrix::identity(2 * k + 2)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

/// Parameter value: a number, a vector, or a matrix block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Scalar(Scalar),
    Vector(Vec<Scalar>),
    Matrix(QMatrix),
}

pub type Params = BTreeMap<String, Param>;

/// Group element: the family template evaluated at `params`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub family: Family,
    pub n: usize,
    pub params: Params,
    pub matrix: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub name: String,
    pub matrix: QMatrix,
}

/// Antisymmetric form ζ with ζᵀ = −ζ and ζ² = −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMetric {
    pub n: usize,
    pub matrix: QMatrix,
}

impl SymplecticMetric {
    /// ζ° = [[0, I_n], [−I_n, 0]].
    pub fn standard(n: usize) -> Self {
        SymplecticMetric {
            n,
            matrix: zeta0(n),
        }
    }

    /// diag(ζ°, [[0, −1], [1, 0]]) in the basis order P, Q, E, T.
    pub fn extended(n: usize) -> Self {
        SymplecticMetric {
            n,
            matrix: zeta_ext(n),
        }
    }
}

fn zeta0<R: Ring>(n: usize) -> Mat<R> {
    let mut m = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, R::one());
        m.set(n + i, i, R::one().neg());
    }
    m
}

fn zeta_ext<R: Ring>(n: usize) -> Mat<R> {
    let mut m = Mat::zeros(2 * n + 2, 2 * n + 2);
    m.set_block(0, 0, &zeta0::<R>(n));
    m.set(2 * n, 2 * n + 1, R::one().neg());
    m.set(2 * n + 1, 2 * n, R::one());
    m
}

/// `S ζ Sᵀ = ζ`.
pub fn check_symplectic(s: &QMatrix, metric: &SymplecticMetric) -> bool {
    s.is_square()
        && s.rows() == metric.matrix.rows()
        && s.mul(&metric.matrix).mul(&s.transpose()) == metric.matrix
}

fn is_orthogonal(r: &QMatrix) -> bool {
    r.is_square() && r.transpose().mul(r).is_identity()
}

// ---------------------------------------------------------------------------
// templates

enum Val<R> {
    S(R),
    V(Vec<R>),
    M(Mat<R>),
}

struct Args<R>(BTreeMap<String, Val<R>>);

impl<R: Ring> Args<R> {
    fn s(&self, k: &str) -> R {
        match self.0.get(k) {
            Some(Val::S(x)) => x.clone(),
            _ => panic!("missing scalar parameter {k}"),
        }
    }
    fn v(&self, k: &str) -> Vec<R> {
        match self.0.get(k) {
            Some(Val::V(x)) => x.clone(),
            _ => panic!("missing vector parameter {k}"),
        }
    }
    fn m(&self, k: &str) -> Mat<R> {
        match self.0.get(k) {
            Some(Val::M(x)) => x.clone(),
            _ => panic!("missing matrix parameter {k}"),
        }
    }
}

fn lift(params: &Params) -> Args<Dual> {
    Args(
        params
            .iter()
            .map(|(k, p)| {
                let v = match p {
                    Param::Scalar(x) => Val::S(Dual::from_scalar(x.clone())),
                    Param::Vector(x) => {
                        Val::V(x.iter().map(|y| Dual::from_scalar(y.clone())).collect())
                    }
                    Param::Matrix(x) => Val::M(x.to_dual()),
                };
                (k.clone(), v)
            })
            .collect(),
    )
}

fn homogeneous<R: Ring>(n: usize, eps: &R, a: &R, block: &Mat<R>, w: &[R], r: &R) -> Mat<R> {
    let d = 2 * n;
    let mut m = Mat::zeros(d + 2, d + 2);
    m.set_block(0, 0, &block.scale(a));
    for (i, x) in w.iter().enumerate() {
        m.set(i, d + 1, x.clone());
    }
    let row = Mat::from_rows(vec![w.to_vec()]).mul(&zeta0(n)).mul(block);
    let c = eps.mul(a).neg();
    for j in 0..d {
        m.set(d, j, row.get(0, j).mul(&c));
    }
    m.set(d, d, eps.mul(a).mul(a));
    m.set(d, d + 1, r.clone());
    m.set(d + 1, d + 1, eps.clone());
    m
}

fn affine<R: Ring>(lin: &Mat<R>, y: &[R]) -> Mat<R> {
    let k = lin.rows();
    assert_eq!(k, y.len());
    let mut m = Mat::zeros(k + 1, k + 1);
    m.set_block(0, 0, lin);
    for (i, x) in y.iter().enumerate() {
        m.set(i, k, x.clone());
    }
    m.set(k, k, R::one());
    m
}

fn cat<R: Clone>(parts: &[&[R]]) -> Vec<R> {
    parts.concat()
}

fn template<R: Ring>(family: Family, n: usize, p: &Args<R>) -> Mat<R> {
    let one = R::one();
    let zero = R::zero();
    let zeros = vec![R::zero(); n];
    match family {
        Family::H => homogeneous(
            n,
            &one,
            &one,
            &Mat::identity(2 * n),
            &p.v("w"),
            &p.s("iota"),
        ),
        Family::Ha => {
            let rr = p.m("R");
            homogeneous(
                n,
                &p.s("eps"),
                &one,
                &Mat::direct_sum(&rr, &rr),
                &cat(&[&p.v("f"), &p.v("v")]),
                &p.s("r"),
            )
        }
        Family::HSp => homogeneous(n, &p.s("eps"), &one, &p.m("A"), &p.v("w"), &p.s("r")),
        Family::AutH => homogeneous(n, &p.s("eps"), &p.s("a"), &p.m("A"), &p.v("w"), &p.s("r")),
        Family::IHa => {
            let rr = p.m("R");
            let lin = homogeneous(
                n,
                &p.s("eps"),
                &one,
                &Mat::direct_sum(&rr, &rr),
                &cat(&[&p.v("f"), &p.v("v")]),
                &p.s("r"),
            );
            affine(&lin, &cat(&[&p.v("p"), &p.v("q"), &[p.s("e"), p.s("t")]]))
        }
        Family::IHSp => {
            let lin = homogeneous(n, &p.s("eps"), &one, &p.m("A"), &p.v("w"), &p.s("r"));
            affine(&lin, &cat(&[&p.v("z"), &[p.s("e"), p.s("t")]]))
        }
        Family::IE => {
            let rr = p.m("R");
            let lin = homogeneous(
                n,
                &p.s("eps"),
                &one,
                &Mat::direct_sum(&rr, &rr),
                &cat(&[&zeros, &p.v("v")]),
                &zero,
            );
            affine(&lin, &cat(&[&zeros, &p.v("q"), &[zero.clone(), p.s("t")]]))
        }
        Family::T => affine(&Mat::identity(n), &p.v("y")),
        Family::ISp => affine(&p.m("S"), &p.v("y")),
    }
}

fn invalid(family: Family, reason: String) -> Error {
    Error::InvalidParameters {
        family: family.to_string(),
        reason,
    }
}

fn validate(family: Family, n: usize, params: &Params) -> Result<()> {
    let specs = family.param_specs(n);
    for k in params.keys() {
        if !specs.iter().any(|s| s.name == k) {
            return Err(invalid(family, format!("unexpected parameter {k:?}")));
        }
    }
    for spec in specs {
        let value = params
            .get(spec.name)
            .ok_or_else(|| invalid(family, format!("missing parameter {:?}", spec.name)))?;
        let name = spec.name;
        match (spec.kind, value) {
            (ParamKind::Sign, Param::Scalar(x)) => {
                if !(x.is_one() || (-x).is_one()) {
                    return Err(invalid(family, format!("{name} must be +1 or -1, got {x}")));
                }
            }
            (ParamKind::Number, Param::Scalar(_)) => {}
            (ParamKind::NonZero, Param::Scalar(x)) => {
                if x.is_zero() {
                    return Err(invalid(family, format!("{name} must be nonzero")));
                }
            }
            (ParamKind::Vector(k), Param::Vector(v)) => {
                if v.len() != k {
                    return Err(invalid(
                        family,
                        format!("{name} has length {}, expected {k}", v.len()),
                    ));
                }
            }
            (ParamKind::Orthogonal(k), Param::Matrix(m)) => {
                check_shape(family, name, m, k)?;
                if !is_orthogonal(m) {
                    return Err(invalid(family, format!("{name} is not orthogonal")));
                }
            }
            (ParamKind::Symplectic(k), Param::Matrix(m)) => {
                check_shape(family, name, m, 2 * k)?;
                if !check_symplectic(m, &SymplecticMetric::standard(k)) {
                    return Err(invalid(family, format!("{name} is not symplectic")));
                }
            }
            (ParamKind::ExtendedSymplectic(k), Param::Matrix(m)) => {
                check_shape(family, name, m, 2 * k + 2)?;
                if !check_symplectic(m, &SymplecticMetric::extended(k)) {
                    return Err(invalid(family, format!("{name} is not symplectic")));
                }
            }
            (kind, _) => {
                return Err(invalid(family, format!("{name} should be {kind:?}")));
            }
        }
    }
    Ok(())
}

fn check_shape(family: Family, name: &str, m: &QMatrix, k: usize) -> Result<()> {
    if m.rows() != k || m.cols() != k {
        return Err(invalid(
            family,
            format!("{name} is {}x{}, expected {k}x{k}", m.rows(), m.cols()),
        ));
    }
    Ok(())
}

/// Evaluates the family template after checking the parameters.
pub fn build_element(family: Family, n: usize, params: Params) -> Result<GroupElement> {
    validate(family, n, &params)?;
    let matrix = template(family, n, &lift(&params)).real_part();
    Ok(GroupElement {
        family,
        n,
        params,
        matrix,
    })
}

pub fn identity_element(family: Family, n: usize) -> GroupElement {
    build_element(family, n, family.identity_params(n)).expect("identity parameters are valid")
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let (p, q) = (x.numer(), x.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    if &(&sp * &sp) == p && &(&sq * &sq) == q {
        Some(Scalar::from(BigRational::new(sp, sq)))
    } else {
        None
    }
}

/// Reads template parameters back off a matrix and checks the round trip.
///
/// For `AutH` the pair `(a, A)` is only determined up to a common sign; the
/// representative with `a > 0` is returned.
pub fn identify(family: Family, n: usize, m: &QMatrix) -> Result<GroupElement> {
    let size = family.size(n);
    let mismatch = |reason: &str| Error::TemplateMismatch {
        family: family.to_string(),
        reason: reason.to_string(),
    };
    if m.rows() != size || m.cols() != size {
        return Err(mismatch(&format!(
            "expected {size}x{size}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let d = 2 * n;
    let sc = |x: &Scalar| Param::Scalar(x.clone());
    let mut p = Params::new();
    let mut put = |k: &str, v: Param| {
        p.insert(k.to_string(), v);
    };
    match family {
        Family::H => {
            put("w", Param::Vector(m.column_slice(d + 1, 0, d)));
            put("iota", sc(m.get(d, d + 1)));
        }
        Family::Ha | Family::IHa | Family::IE => {
            put("eps", sc(m.get(d + 1, d + 1)));
            put("R", Param::Matrix(m.block(0, 0, n, n)));
            put("v", Param::Vector(m.column_slice(d + 1, n, n)));
            if family != Family::IE {
                put("f", Param::Vector(m.column_slice(d + 1, 0, n)));
                put("r", sc(m.get(d, d + 1)));
            }
            if family == Family::IHa {
                put("p", Param::Vector(m.column_slice(d + 2, 0, n)));
                put("e", sc(m.get(d, d + 2)));
            }
            if family != Family::Ha {
                put("q", Param::Vector(m.column_slice(d + 2, n, n)));
                put("t", sc(m.get(d + 1, d + 2)));
            }
        }
        Family::HSp | Family::IHSp => {
            put("eps", sc(m.get(d + 1, d + 1)));
            put("A", Param::Matrix(m.block(0, 0, d, d)));
            put("w", Param::Vector(m.column_slice(d + 1, 0, d)));
            put("r", sc(m.get(d, d + 1)));
            if family == Family::IHSp {
                put("z", Param::Vector(m.column_slice(d + 2, 0, d)));
                put("e", sc(m.get(d, d + 2)));
                put("t", sc(m.get(d + 1, d + 2)));
            }
        }
        Family::AutH => {
            let eps = m.get(d + 1, d + 1).clone();
            let a = rational_sqrt(&(&eps * m.get(d, d)))
                .filter(|a| !a.is_zero())
                .ok_or_else(|| mismatch("scale a is not a nonzero rational"))?;
            let inv = a.recip().expect("nonzero");
            put("eps", Param::Scalar(eps));
            put("A", Param::Matrix(m.block(0, 0, d, d).scale(&inv)));
            put("a", Param::Scalar(a));
            put("w", Param::Vector(m.column_slice(d + 1, 0, d)));
            put("r", sc(m.get(d, d + 1)));
        }
        Family::T => {
            put("y", Param::Vector(m.column_slice(n, 0, n)));
        }
        Family::ISp => {
            put("S", Param::Matrix(m.block(0, 0, d + 2, d + 2)));
            put("y", Param::Vector(m.column_slice(d + 2, 0, d + 2)));
        }
    }
    let g = build_element(family, n, p).map_err(|e| mismatch(&e.to_string()))?;
    if &g.matrix != m {
        return Err(mismatch(
            "matrix differs from the template at the recovered parameters",
        ));
    }
    Ok(g)
}

fn same_group(g: &GroupElement, h: &GroupElement) -> Result<()> {
    if g.family != h.family || g.n != h.n {
        return Err(Error::FamilyMismatch {
            left: format!("{}({})", g.family, g.n),
            right: format!("{}({})", h.family, h.n),
        });
    }
    Ok(())
}

/// `g·h`, re-identified within the family.
pub fn compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    same_group(g, h)?;
    identify(g.family, g.n, &g.matrix.mul(&h.matrix))
}

pub fn inverse(g: &GroupElement) -> Result<GroupElement> {
    let inv = g.matrix.inverse().ok_or(Error::Singular)?;
    identify(g.family, g.n, &inv)
}

/// `g·X·g⁻¹`.
pub fn conjugate_generator(g: &GroupElement, x: &QMatrix) -> Result<QMatrix> {
    if x.rows() != g.matrix.rows() || x.cols() != g.matrix.cols() {
        return Err(invalid(
            g.family,
            format!(
                "cannot conjugate a {}x{} matrix by a {}x{} element",
                x.rows(),
                x.cols(),
                g.matrix.rows(),
                g.matrix.cols()
            ),
        ));
    }
    let inv = g.matrix.inverse().ok_or(Error::Singular)?;
    Ok(g.matrix.mul(x).mul(&inv))
}

// ---------------------------------------------------------------------------
// time invariance

/// The time generator `E_{2n,2n+1}` acting on `(P, Q, E, T)`.
pub fn time_generator(n: usize) -> QMatrix {
    let mut t = QMatrix::zeros(2 * n + 2, 2 * n + 2);
    t.set(2 * n, 2 * n + 1, Scalar::one());
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeInvariance {
    pub invariant: bool,
    /// `HSp` parameters when `S` has the invariant block form.
    pub params: Option<Params>,
}

/// Tests `S T S⁻¹ = T` for a `(2n+2)`-square `S`.
pub fn check_time_invariance(s: &QMatrix) -> TimeInvariance {
    let size = s.rows();
    if !s.is_square() || size < 2 || !size.is_multiple_of(2) {
        return TimeInvariance {
            invariant: false,
            params: None,
        };
    }
    let n = (size - 2) / 2;
    let t = time_generator(n);
    let invariant = match s.inverse() {
        Some(inv) => s.mul(&t).mul(&inv) == t,
        None => false,
    };
    let params = if invariant {
        identify(Family::HSp, n, s).ok().map(|g| g.params)
    } else {
        None
    };
    TimeInvariance { invariant, params }
}

// ---------------------------------------------------------------------------
// generators

#[derive(Clone, Copy, Debug)]
enum Coord {
    Scalar(&'static str),
    Component(&'static str, usize),
    /// E_ij − E_ji in the named orthogonal block.
    Skew(&'static str, usize, usize),
    /// (E_ab + E_ba)·ζ in the named symplectic block.
    Hamiltonian(&'static str, usize, usize),
}

struct GenSpec {
    name: String,
    coord: Coord,
    scale: i64,
}

fn gen(name: String, coord: Coord, scale: i64) -> GenSpec {
    GenSpec { name, coord, scale }
}

fn rotation_specs(n: usize) -> Vec<GenSpec> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(gen(
                format!("J{}{}", i + 1, j + 1),
                Coord::Skew("R", i, j),
                1,
            ));
        }
    }
    out
}

fn hamiltonian_specs(block: &'static str, dim: usize) -> Vec<GenSpec> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            out.push(gen(
                format!("W{}{}", a + 1, b + 1),
                Coord::Hamiltonian(block, a, b),
                1,
            ));
        }
    }
    out
}

fn vector_specs(
    prefix: &str,
    param: &'static str,
    offset: usize,
    n: usize,
    scale: i64,
) -> Vec<GenSpec> {
    (0..n)
        .map(|i| {
            gen(
                format!("{prefix}{}", i + 1),
                Coord::Component(param, offset + i),
                scale,
            )
        })
        .collect()
}

fn generator_specs(family: Family, n: usize) -> Vec<GenSpec> {
    let s = |name: &str, p: &'static str, k: i64| gen(name.to_string(), Coord::Scalar(p), k);
    let hamilton = || {
        let mut v = rotation_specs(n);
        v.extend(vector_specs("G", "v", 0, n, 1));
        v.extend(vector_specs("F", "f", 0, n, -1));
        v.push(s("R", "r", -2));
        v
    };
    let heisenberg = |w: &'static str, iota: &'static str| {
        let mut v = vector_specs("P", w, 0, n, 1);
        v.extend(vector_specs("Q", w, n, n, 1));
        v.push(s("I", iota, -2));
        v
    };
    match family {
        Family::H => heisenberg("w", "iota"),
        Family::Ha => hamilton(),
        Family::HSp => {
            let mut v = hamiltonian_specs("A", 2 * n);
            v.extend(heisenberg("w", "r"));
            v
        }
        Family::AutH => {
            let mut v = hamiltonian_specs("A", 2 * n);
            v.push(s("D", "a", 1));
            v.extend(heisenberg("w", "r"));
            v
        }
        Family::IHa => {
            let mut v = hamilton();
            v.extend(vector_specs("P", "q", 0, n, 1));
            v.extend(vector_specs("Q", "p", 0, n, 1));
            v.push(s("E", "t", 1));
            v.push(s("T", "e", 1));
            v
        }
        Family::IHSp => {
            let mut v = hamiltonian_specs("A", 2 * n);
            v.extend(vector_specs("V", "w", 0, 2 * n, 1));
            v.push(s("R", "r", -2));
            v.extend(vector_specs("Y", "z", 0, 2 * n, 1));
            v.push(s("E", "t", 1));
            v.push(s("T", "e", 1));
            v
        }
        Family::IE => {
            let mut v = rotation_specs(n);
            v.extend(vector_specs("G", "v", 0, n, 1));
            v.extend(vector_specs("P", "q", 0, n, 1));
            v.push(s("E", "t", 1));
            v
        }
        Family::T => vector_specs("X", "y", 0, n, 1),
        Family::ISp => {
            let mut v = hamiltonian_specs("S", 2 * n + 2);
            v.extend(vector_specs("P", "y", 0, n, 1));
            v.extend(vector_specs("Q", "y", n, n, 1));
            v.push(gen("E".into(), Coord::Component("y", 2 * n), 1));
            v.push(gen("T".into(), Coord::Component("y", 2 * n + 1), 1));
            v
        }
    }
}

fn block_metric(family: Family, n: usize, block: &str) -> QMatrix {
    match (family, block) {
        (Family::ISp, "S") => zeta_ext(n),
        _ => zeta0(n),
    }
}

/// First-order coefficient matrices of the template at the identity.
pub fn derive_generators(family: Family, n: usize) -> Vec<GeneratorMatrix> {
    let base = family.identity_params(n);
    generator_specs(family, n)
        .into_iter()
        .map(|spec| {
            let mut args = lift(&base);
            match spec.coord {
                Coord::Scalar(k) => {
                    let Some(Val::S(x)) = args.0.get_mut(k) else {
                        unreachable!()
                    };
                    x.eps = Scalar::one();
                }
                Coord::Component(k, i) => {
                    let Some(Val::V(x)) = args.0.get_mut(k) else {
                        unreachable!()
                    };
                    x[i].eps = Scalar::one();
                }
                Coord::Skew(k, i, j) => {
                    let Some(Val::M(x)) = args.0.get_mut(k) else {
                        unreachable!()
                    };
                    x.set(i, j, Dual::new(Scalar::zero(), Scalar::one()));
                    x.set(j, i, Dual::new(Scalar::zero(), -Scalar::one()));
                }
                Coord::Hamiltonian(k, a, b) => {
                    let metric = block_metric(family, n, k);
                    let dim = metric.rows();
                    let mut sym = QMatrix::zeros(dim, dim);
                    let bump = |m: &mut QMatrix, r, c| {
                        let v = m.get(r, c) + &Scalar::one();
                        m.set(r, c, v);
                    };
                    bump(&mut sym, a, b);
                    bump(&mut sym, b, a);
                    let x = sym.mul(&metric);
                    let ident = QMatrix::identity(dim);
                    let dual = Mat::from_rows(
                        (0..dim)
                            .map(|r| {
                                (0..dim)
                                    .map(|c| {
                                        Dual::new(ident.get(r, c).clone(), x.get(r, c).clone())
                                    })
                                    .collect()
                            })
                            .collect(),
                    );
                    args.0.insert(k.to_string(), Val::M(dual));
                }
            }
            let matrix = template(family, n, &args)
                .dual_part()
                .scale(&Scalar::from_int(spec.scale));
            GeneratorMatrix {
                name: spec.name,
                matrix,
            }
        })
        .collect()
}

/// Lie algebra spanned by the given matrices, in the given order.
pub fn algebra_from_generators(name: &str, gens: &[GeneratorMatrix]) -> Result<LieAlgebra> {
    let flat = |m: &QMatrix| SparseVec::from_dense(m.entries());
    let ambient = gens.first().map_or(0, |g| g.matrix.entries().len());
    let family: Vec<SparseVec> = gens.iter().map(|g| flat(&g.matrix)).collect();
    let coords = Coordinates::new(ambient, &family).ok_or_else(|| Error::InvalidParameters {
        family: name.to_string(),
        reason: "generator matrices are linearly dependent".into(),
    })?;
    let mut b = LieAlgebra::builder(name, gens.iter().map(|g| g.name.clone()))?;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let comm = gens[i].matrix.commutator(&gens[j].matrix);
            let x = coords.solve(&flat(&comm)).ok_or_else(|| Error::NotInSpan {
                a: gens[i].name.clone(),
                b: gens[j].name.clone(),
            })?;
            for (c, v) in x.iter() {
                b.add(i, j, c, v.clone());
            }
        }
    }
    Ok(b.build())
}

pub fn family_display_name(family: Family, n: usize) -> String {
    match family {
        Family::HSp => format!("HSp({})", 2 * n),
        Family::IHSp | Family::ISp => format!("{family}({})", 2 * n + 2),
        _ => format!("{family}({n})"),
    }
}

pub fn structure_constants_from_matrices(family: Family, n: usize) -> Result<LieAlgebra> {
    algebra_from_generators(
        &family_display_name(family, n),
        &derive_generators(family, n),
    )
}

/// sp(2n) from the Hamiltonian matrices `(E_ab + E_ba)·ζ°`.
pub fn symplectic_algebra(n: usize) -> LieAlgebra {
    hamiltonian_algebra(&zeta0(n))
}

/// sp(2n+2) in the basis `(E_ab + E_ba)·ζ` for the extended metric, as it
/// appears inside ISp(2n+2).
pub fn extended_symplectic_algebra(n: usize) -> LieAlgebra {
    hamiltonian_algebra(&zeta_ext(n))
}

fn hamiltonian_algebra(metric: &QMatrix) -> LieAlgebra {
    let d = metric.rows();
    let mut gens = Vec::new();
    for a in 0..d {
        for b in a..d {
            let mut sym = QMatrix::zeros(d, d);
            let one = Scalar::one();
            sym.set(a, b, one.clone());
            let v = sym.get(b, a) + &one;
            sym.set(b, a, v);
            gens.push(GeneratorMatrix {
                name: format!("W{}{}", a + 1, b + 1),
                matrix: sym.mul(metric),
            });
        }
    }
    algebra_from_generators(&format!("sp({d})"), &gens).expect("sp(2n) closes")
}

// ---------------------------------------------------------------------------
// random draws

fn small_rational<G: Rng>(rng: &mut G) -> Scalar {
    Scalar::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

fn small_nonzero<G: Rng>(rng: &mut G) -> Scalar {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_vector<G: Rng>(rng: &mut G, k: usize) -> Vec<Scalar> {
    (0..k).map(|_| small_rational(rng)).collect()
}

/// Exact orthogonal matrix: Cayley transform of a random skew matrix, times a
/// random reflection.
pub fn random_orthogonal<G: Rng>(rng: &mut G, n: usize) -> QMatrix {
    let mut k = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = Scalar::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2));
            k.set(i, j, x.clone());
            k.set(j, i, -x);
        }
    }
    let id = QMatrix::identity(n);
    let cayley = id
        .sub(&k)
        .inverse()
        .expect("I - K is invertible for skew K")
        .mul(&id.add(&k));
    if n > 0 && rng.gen_bool(0.5) {
        let mut refl = QMatrix::identity(n);
        refl.set(0, 0, -Scalar::one());
        cayley.mul(&refl)
    } else {
        cayley
    }
}

/// Exact symplectic matrix for `metric`: a product of transvections
/// `I + c·u·uᵀ·ζ`.
pub fn random_symplectic<G: Rng>(rng: &mut G, metric: &SymplecticMetric) -> QMatrix {
    let d = metric.matrix.rows();
    let mut s = QMatrix::identity(d);
    for _ in 0..3 {
        let u: Vec<Scalar> = (0..d)
            .map(|_| Scalar::from_int(rng.gen_range(-2..=2)))
            .collect();
        let col = QMatrix::column(&u);
        let c = small_nonzero(rng);
        let t = QMatrix::identity(d).add(&col.mul(&col.transpose()).mul(&metric.matrix).scale(&c));
        s = s.mul(&t);
    }
    s
}

pub fn random_params<G: Rng>(family: Family, n: usize, rng: &mut G) -> Params {
    family
        .param_specs(n)
        .into_iter()
        .map(|spec| {
            let v = match spec.kind {
                ParamKind::Sign => {
                    Param::Scalar(Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -1 }))
                }
                ParamKind::Number => Param::Scalar(small_rational(rng)),
                ParamKind::NonZero => Param::Scalar(small_nonzero(rng)),
                ParamKind::Vector(k) => Param::Vector(random_vector(rng, k)),
                ParamKind::Orthogonal(k) => Param::Matrix(random_orthogonal(rng, k)),
                ParamKind::Symplectic(k) => {
                    Param::Matrix(random_symplectic(rng, &SymplecticMetric::standard(k)))
                }
                ParamKind::ExtendedSymplectic(k) => {
                    Param::Matrix(random_symplectic(rng, &SymplecticMetric::extended(k)))
                }
            };
            (spec.name.to_string(), v)
        })
        .collect()
}

pub fn random_element<G: Rng>(family: Family, n: usize, rng: &mut G) -> GroupElement {
    build_element(family, n, random_params(family, n, rng)).expect("random parameters are valid")
}

/// Convenience accessors for parameter maps.
pub trait ParamsExt {
    fn scalar(&self, k: &str) -> Scalar;
    fn vector(&self, k: &str) -> Vec<Scalar>;
    fn matrix(&self, k: &str) -> QMatrix;
}

impl ParamsExt for Params {
    fn scalar(&self, k: &str) -> Scalar {
        match self.get(k) {
            Some(Param::Scalar(x)) => x.clone(),
            other => panic!("parameter {k} is not a scalar: {other:?}"),
        }
    }
    fn vector(&self, k: &str) -> Vec<Scalar> {
        match self.get(k) {
            Some(Param::Vector(x)) => x.clone(),
            other => panic!("parameter {k} is not a vector: {other:?}"),
        }
    }
    fn matrix(&self, k: &str) -> QMatrix {
        match self.get(k) {
            Some(Param::Matrix(x)) => x.clone(),
            other => panic!("parameter {k} is not a matrix: {other:?}"),
        }
    }
}

/// `xᵀ·M·y`.
pub fn bilinear(x: &[Scalar], m: &QMatrix, y: &[Scalar]) -> Scalar {
    let xm = Mat::from_rows(vec![x.to_vec()]).mul(m);
    xm.row_vec(0).iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn mat_vec(m: &QMatrix, v: &[Scalar]) -> Vec<Scalar> {
    let c = m.mul(&QMatrix::column(v));
    (0..c.rows()).map(|i| c.get(i, 0).clone()).collect()
}
