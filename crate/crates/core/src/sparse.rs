//! Exact sparse linear algebra over the rationals.
//!
//! Two tools live here:
//!
//! * [`Span`], an incrementally maintained reduced row-echelon basis. Used for
//!   small subspaces (coboundaries, products of Casimirs, generator spans)
//!   where canonical representatives matter.
//! * [`SparseMatrix::eliminate`], Gauss-Jordan elimination with Markowitz
//!   pivot selection for the large constraint systems built by the extension
//!   and Casimir solvers.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Scalar;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            *map.entry(i).or_default() += v;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Scalar::one(), other)
    }

    /// Scales so the leading entry is 1.
    pub fn normalized(&self) -> SparseVec {
        match self.leading() {
            None => SparseVec::new(),
            Some((_, lead)) => self.scale(&lead.recip().expect("nonzero lead")),
        }
    }

    /// Relabels indices through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))),
        )
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn is_proportional_to(&self, other: &SparseVec) -> bool {
        if self.nnz() != other.nnz() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        self.normalized() == other.normalized()
    }
}

/// Subspace kept in reduced row-echelon form, pivot = smallest index of a row.
///
/// The RREF basis of a subspace is unique, so two spans are equal iff their
/// `rows()` agree.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> Self {
        let mut span = Span::new();
        for v in vectors {
            span.insert(v);
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.pivot_row
            .values()
            .map(|&r| self.rows[r].clone())
            .collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (i, c) in v.iter() {
            if let Some(&r) = self.pivot_row.get(&i) {
                out = out.axpy(&-c, &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, _)) = r.leading() else {
            return false;
        };
        let r = r.normalized();
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(p).cloned() {
                *row = row.axpy(&-c, &r);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.dim() == other.dim() && self.contains_span(other)
    }
}

/// Row-major sparse matrix with a fixed column count.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseVec>,
}

/// Outcome of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    ncols: usize,
    /// `(pivot column, row)`; each row has a 1 at its pivot and zeros at every
    /// other pivot column.
    pivots: Vec<(usize, SparseVec)>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.entries().last().is_none_or(|(i, _)| *i < ncols)));
        SparseMatrix { ncols, rows }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.entries().last().is_none_or(|(i, _)| *i < self.ncols));
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    /// Gauss-Jordan elimination with Markowitz pivoting.
    ///
    /// At each step the pivot is taken from the rows of smallest remaining
    /// length, choosing the entry that minimizes `(r - 1) * (c - 1)` where `r`
    /// and `c` are the row and column counts.
    pub fn eliminate(&self) -> Elimination {
        let mut rows: Vec<SparseVec> = self.rows.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.ncols];
        let mut active: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (r, row) in rows.iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            for (c, _) in row.iter() {
                col_rows[c].insert(r);
            }
            active.insert((row.nnz(), r));
        }

        let mut pivots: Vec<(usize, usize)> = Vec::new();
        const CANDIDATE_ROWS: usize = 4;

        while let Some(&(min_len, _)) = active.iter().next() {
            let mut best: Option<(usize, usize, usize)> = None; // (cost, row, col)
            for &(len, r) in active.iter().take(CANDIDATE_ROWS) {
                if len > min_len && best.is_some() {
                    break;
                }
                for (c, _) in rows[r].iter() {
                    let cost = (len - 1) * (col_rows[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                    }
                }
            }
            let (_, pr, pc) = best.expect("active row has entries");
            active.remove(&(rows[pr].nnz(), pr));

            let pivot_row = rows[pr].normalized_at(pc);
            rows[pr] = pivot_row.clone();

            let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
            for r in targets {
                let factor = rows[r].get(pc).cloned().expect("column index is current");
                let was_active = active.remove(&(rows[r].nnz(), r));
                let updated = rows[r].axpy(&-factor, &pivot_row);
                for (c, _) in rows[r].iter() {
                    col_rows[c].remove(&r);
                }
                for (c, _) in updated.iter() {
                    col_rows[c].insert(r);
                }
                if was_active && !updated.is_zero() {
                    active.insert((updated.nnz(), r));
                }
                rows[r] = updated;
            }
            pivots.push((pc, pr));
        }

        let mut out: Vec<(usize, SparseVec)> = pivots
            .into_iter()
            .map(|(c, r)| (c, std::mem::take(&mut rows[r])))
            .collect();
        out.sort_by_key(|(c, _)| *c);
        Elimination {
            ncols: self.ncols,
            pivots: out,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.eliminate().nullspace()
    }
}

impl SparseVec {
    fn normalized_at(&self, col: usize) -> SparseVec {
        let p = self.get(col).expect("pivot present");
        self.scale(&p.recip().expect("nonzero pivot"))
    }
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|(c, _)| *c)
    }

    pub fn nullspace(&self) -> Vec<SparseVec> {
        let pivot_cols: BTreeSet<usize> = self.pivot_columns().collect();
        let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (pc, row) in &self.pivots {
            for (c, v) in row.iter() {
                if c != *pc {
                    by_free.entry(c).or_default().push((*pc, -v));
                }
            }
        }
        (0..self.ncols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|f| {
                let mut pairs = by_free.remove(&f).unwrap_or_default();
                pairs.push((f, Scalar::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Expresses vectors in the coordinates of a fixed independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    ambient: usize,
    family: usize,
    span: Span,
}

impl Coordinates {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(ambient: usize, family: &[SparseVec]) -> Option<Self> {
        let mut span = Span::new();
        for (k, v) in family.iter().enumerate() {
            let tagged = v.add(&SparseVec::unit(ambient + k));
            let reduced = span.reduce(&tagged);
            match reduced.leading() {
                Some((p, _)) if p < ambient => {
                    span.insert(&tagged);
                }
                _ => return None,
            }
        }
        Some(Coordinates {
            ambient,
            family: family.len(),
            span,
        })
    }

    /// Coefficients `x` with `w = sum_k x_k family[k]`, or `None` if `w` is
    /// outside the span.
    pub fn solve(&self, w: &SparseVec) -> Option<SparseVec> {
        let r = self.span.reduce(w);
        if r.iter().any(|(i, _)| i < self.ambient) {
            return None;
        }
        let ambient = self.ambient;
        let family = self.family;
        Some(
            r.remap(|i| (i >= ambient && i < ambient + family).then(|| i - ambient))
                .scale(&-Scalar::one()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    fn dense_dot(a: &SparseVec, b: &SparseVec) -> Scalar {
        a.iter().filter_map(|(i, x)| b.get(i).map(|y| x * y)).sum()
    }

    #[test]
    fn axpy_cancels_entries() {
        let a = v(&[1, 2, 0, 3]);
        let b = v(&[0, 1, 5, 0]);
        assert_eq!(a.axpy(&Scalar::from_int(-2), &b), v(&[1, 0, -10, 3]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn span_is_canonical() {
        let s1 = Span::from_vectors(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let s2 = Span::from_vectors(&[v(&[1, 0, -1]), v(&[2, 3, 1])]);
        assert!(s1.same_as(&s2));
        assert_eq!(s1.rows(), s2.rows());
        assert_eq!(s1.rows(), vec![v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert!(!s1.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn rank_and_nullspace_small() {
        // rank 2, 4 columns
        let m = SparseMatrix::from_rows(
            4,
            vec![
                v(&[1, 2, 0, 1]),
                v(&[0, 1, 1, 0]),
                v(&[1, 3, 1, 1]),
                v(&[0, 0, 0, 0]),
            ],
        );
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in m.rows() {
                assert!(dense_dot(row, x).is_zero());
            }
        }
    }

    #[test]
    fn empty_matrix_nullspace_is_everything() {
        let m = SparseMatrix::new(3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().len(), 3);
    }

    #[test]
    fn coordinates_solve() {
        let fam = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let coords = Coordinates::new(3, &fam).unwrap();
        let x = coords.solve(&v(&[2, 5, 3])).unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(coords.solve(&v(&[1, 0, 0])).is_none());
        assert!(Coordinates::new(3, &[v(&[1, 1, 0]), v(&[2, 2, 0])]).is_none());
    }

    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..7, 1usize..9).prop_flat_map(|(ncols, nrows)| {
            (
                Just(ncols),
                proptest::collection::vec(
                    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], ncols),
                    nrows,
                ),
            )
        })
    }

    proptest! {
        #[test]
        fn markowitz_rank_matches_span_rank((ncols, rows) in small_matrix()) {
            let sv: Vec<SparseVec> = rows.iter().map(|r| v(r)).collect();
            let m = SparseMatrix::from_rows(ncols, sv.clone());
            let span = Span::from_vectors(&sv);
            prop_assert_eq!(m.rank(), span.dim());
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + span.dim(), ncols);
            for x in &ns {
                for row in &sv {
                    prop_assert!(dense_dot(row, x).is_zero());
                }
            }
            prop_assert_eq!(Span::from_vectors(&ns).dim(), ns.len());
        }
    }
}
