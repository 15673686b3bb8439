//! Point sets, evaluation vectors and incremental exact row reduction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::monomials::{check_arity, Term};
use crate::polys::Polynomial;

/// A nonempty ordered list of pairwise distinct points of equal arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    arity: usize,
    points: Vec<Vec<FieldElement>>,
}

impl PointSet {
    pub fn new(field: FieldSpec, points: Vec<Vec<FieldElement>>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let arity = first.len();
        for p in &points {
            check_arity(arity, p.len())?;
            for c in p {
                if c.spec() != field {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: c.spec().to_string(),
                    });
                }
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| cmp_point(&points[a], &points[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::DuplicatePoints {
                    first: w[0].min(w[1]) + 1,
                    second: w[0].max(w[1]) + 1,
                });
            }
        }
        Ok(PointSet {
            field,
            arity,
            points,
        })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(field: FieldSpec, points: &[&[i64]]) -> Result<Self> {
        Self::new(
            field,
            points
                .iter()
                .map(|p| p.iter().map(|&c| field.from_i64(c)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[FieldElement] {
        &self.points[i]
    }

    /// `(t(P_1), ..., t(P_s))`.
    pub fn evaluation_vector(&self, t: &Term) -> Result<Vec<FieldElement>> {
        check_arity(self.arity, t.arity())?;
        Ok(self
            .points
            .iter()
            .map(|p| {
                let mut v = self.field.one();
                for (x, &e) in p.iter().zip(t.exponents()) {
                    if e > 0 {
                        v = &v * &x.pow(e);
                    }
                }
                v
            })
            .collect())
    }
}

fn cmp_point(a: &[FieldElement], b: &[FieldElement]) -> std::cmp::Ordering {
    a.iter()
        .map(ToString::to_string)
        .cmp(b.iter().map(ToString::to_string))
}

#[derive(Debug)]
struct RowEntry {
    term: Term,
    row: Vec<FieldElement>,
    pivot: usize,
    separator: Polynomial,
}

/// Echelon rows of evaluation vectors with the separator polynomial behind
/// each row. Appending returns a new state; rows are shared between states.
#[derive(Clone, Debug)]
pub struct ReductionState {
    arity: usize,
    field: FieldSpec,
    width: usize,
    entries: Vec<Arc<RowEntry>>,
}

impl ReductionState {
    pub fn new(points: &PointSet) -> Self {
        ReductionState {
            arity: points.arity(),
            field: points.field(),
            width: points.len(),
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True once the rows span the whole evaluation space.
    pub fn is_full(&self) -> bool {
        self.entries.len() == self.width
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis_terms(&self) -> impl Iterator<Item = &Term> {
        self.entries.iter().map(|e| &e.term)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.entries.iter().map(|e| e.row.as_slice())
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.pivot)
    }

    pub fn separators(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter().map(|e| &e.separator)
    }

    /// Reduces `v` against the rows in order. Returns the residual, which is
    /// zero at every pivot column, and the multiples of each row removed.
    pub fn reduce_and_track(&self, v: &[FieldElement]) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        if v.len() != self.width {
            return Err(Error::Dimension {
                expected: self.width,
                found: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut combination = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let c = residual[e.pivot].try_div(&e.row[e.pivot])?;
            if !c.is_zero() {
                for (r, x) in residual.iter_mut().zip(&e.row).skip(e.pivot) {
                    if !x.is_zero() {
                        *r = &*r - &(&c * x);
                    }
                }
            }
            combination.push(c);
        }
        Ok((residual, combination))
    }

    /// Adds a nonzero reduced row for `t` with separator
    /// `t - sum combination_k * separator_k`.
    pub fn append_row(&self, t: Term, residual: Vec<FieldElement>, combination: &[FieldElement]) -> Result<ReductionState> {
        check_arity(self.arity, t.arity())?;
        if residual.len() != self.width {
            return Err(Error::Dimension {
                expected: self.width,
                found: residual.len(),
            });
        }
        let pivot = residual.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroRow)?;
        let separator = self.separator_combination_polynomial(&t, combination)?;
        let mut next = self.clone();
        next.entries.push(Arc::new(RowEntry {
            term: t,
            row: residual,
            pivot,
            separator,
        }));
        Ok(next)
    }

    /// `t - sum combination_k * separator_k`. For a zero residual this
    /// polynomial vanishes on every point.
    pub fn separator_combination_polynomial(&self, t: &Term, combination: &[FieldElement]) -> Result<Polynomial> {
        check_arity(self.arity, t.arity())?;
        if combination.len() != self.entries.len() {
            return Err(Error::Dimension {
                expected: self.entries.len(),
                found: combination.len(),
            });
        }
        let mut p = Polynomial::monomial(t.clone(), self.field.one());
        for (e, c) in self.entries.iter().zip(combination) {
            if !c.is_zero() {
                p = &p - &e.separator.scale(c);
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomials::OrderIdealSet;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn t(s: &str) -> Term {
        Term::parse(s, &names()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&c| q().from_i64(c)).collect()
    }

    fn three_points() -> PointSet {
        PointSet::from_integers(q(), &[&[2, 3], &[1, 4], &[5, 0]]).unwrap()
    }

    fn push(state: &ReductionState, x: &PointSet, term: &str) -> (ReductionState, Polynomial) {
        let tt = t(term);
        let (r, c) = state.reduce_and_track(&x.evaluation_vector(&tt).unwrap()).unwrap();
        if r.iter().all(FieldElement::is_zero) {
            let g = state.separator_combination_polynomial(&tt, &c).unwrap();
            (state.clone(), g)
        } else {
            let next = state.append_row(tt, r, &c).unwrap();
            let sep = next.separators().last().unwrap().clone();
            (next, sep)
        }
    }

    #[test]
    fn evaluation_vectors() {
        let x = three_points();
        assert_eq!(x.evaluation_vector(&t("x")).unwrap(), ints(&[2, 1, 5]));
        assert_eq!(x.evaluation_vector(&t("y")).unwrap(), ints(&[3, 4, 0]));
        assert_eq!(x.evaluation_vector(&t("1")).unwrap(), ints(&[1, 1, 1]));
        assert!(matches!(
            x.evaluation_vector(&Term::one(3)),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn point_set_validation() {
        assert_eq!(
            PointSet::from_integers(q(), &[&[1, 2], &[0, 0], &[1, 2]]),
            Err(Error::DuplicatePoints { first: 1, second: 3 })
        );
        assert_eq!(PointSet::new(q(), vec![]), Err(Error::EmptyPointSet));
        assert!(matches!(
            PointSet::from_integers(q(), &[&[1, 2], &[0]]),
            Err(Error::Arity { .. })
        ));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            PointSet::from_integers(f5, &[&[1], &[6]]),
            Err(Error::DuplicatePoints { .. })
        ));
    }

    #[test]
    fn reduction_steps() {
        let x = three_points();
        let s0 = ReductionState::new(&x);
        let (r, c) = s0.reduce_and_track(&ints(&[1, 1, 1])).unwrap();
        assert!(c.is_empty());
        let s1 = s0.append_row(t("1"), r, &c).unwrap();
        assert_eq!(s1.separators().next().unwrap().to_string(), "1");

        let (r, c) = s1.reduce_and_track(&ints(&[2, 1, 5])).unwrap();
        assert_eq!(r, ints(&[0, -1, 3]));
        assert_eq!(c, ints(&[2]));
        let s2 = s1.append_row(t("x"), r, &c).unwrap();

        let (r, _) = s2.reduce_and_track(&ints(&[3, 4, 0])).unwrap();
        assert!(r.iter().all(FieldElement::is_zero));

        let (r, c) = s2.reduce_and_track(&ints(&[0, 0, 0])).unwrap();
        assert!(r.iter().chain(&c).all(FieldElement::is_zero));

        assert_eq!(s1.len(), 1);
        assert!(matches!(
            s1.reduce_and_track(&ints(&[1, 1])),
            Err(Error::Dimension { expected: 3, found: 2 })
        ));
        assert_eq!(s1.append_row(t("y"), ints(&[0, 0, 0]), &[]).err(), Some(Error::ZeroRow));
    }

    #[test]
    fn separators_follow_worked_example() {
        let x = PointSet::from_integers(q(), &[&[0, 0], &[0, -1], &[1, 0], &[1, 1], &[-1, 1]]).unwrap();
        let n = names();
        let mut state = ReductionState::new(&x);
        for term in ["1", "x", "y"] {
            state = push(&state, &x, term).0;
        }
        let (state, sep) = push(&state, &x, "x^2");
        assert_eq!(sep.display_with(&n).to_string(), "x^2 - x");
        let (_, g) = push(&state, &x, "x^3");
        assert_eq!(g.display_with(&n).to_string(), "x^3 - x");
        let (state, sep) = push(&state, &x, "y^2");
        assert_eq!(sep, Polynomial::parse("-x^2 + y^2 + x + y", &n, q()).unwrap());
        let (_, g) = push(&state, &x, "x*y");
        assert_eq!(g, Polynomial::parse("x*y - x + x^2 - 1/2*y - 1/2*y^2", &n, q()).unwrap());
        let full = push(&state, &x, "x^3").0;
        assert!(full.is_full());
        assert_eq!(full.len(), 5);
    }

    #[test]
    fn full_state_rejects_rows() {
        let x = three_points();
        let mut state = ReductionState::new(&x);
        for term in ["1", "x", "x^2"] {
            state = push(&state, &x, term).0;
        }
        assert!(state.is_full());
        let (r, c) = state.reduce_and_track(&x.evaluation_vector(&t("y^3")).unwrap()).unwrap();
        assert!(r.iter().all(FieldElement::is_zero));
        assert_eq!(state.append_row(t("y^3"), r, &c).err(), Some(Error::ZeroRow));
    }

    #[test]
    fn empty_state_combination() {
        let state = ReductionState::new(&three_points());
        let p = state.separator_combination_polynomial(&t("1"), &[]).unwrap();
        assert_eq!(p.to_string(), "1");
    }

    /// Dimension of the span of the given vectors, by naive elimination.
    fn naive_rank(mut rows: Vec<Vec<FieldElement>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(rank, p);
                for r in rank + 1..rows.len() {
                    let f = rows[r][col].try_div(&rows[rank][col]).unwrap();
                    for c in 0..cols {
                        rows[r][c] = &rows[r][c] - &(&f * &rows[rank][c]);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn points_strategy() -> impl Strategy<Value = PointSet> {
        proptest::collection::btree_set((0i64..4, 0i64..4), 1..6).prop_map(|pts| {
            let v: Vec<Vec<FieldElement>> = pts.into_iter().map(|(a, b)| ints(&[a, b])).collect();
            PointSet::new(q(), v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn provenance_and_membership(x in points_strategy(), picks in proptest::collection::vec((0u32..3, 0u32..3), 1..10)) {
            let mut state = ReductionState::new(&x);
            for (a, b) in picks {
                let term = Term::from_exponents(&[a, b]);
                let v = x.evaluation_vector(&term).unwrap();
                let (r, c) = state.reduce_and_track(&v).unwrap();
                for p in state.pivots() {
                    prop_assert!(r[p].is_zero());
                }
                let mut span: Vec<Vec<FieldElement>> = state.basis_terms()
                    .map(|u| x.evaluation_vector(u).unwrap())
                    .collect();
                let before = naive_rank(span.clone());
                span.push(v);
                let dependent = naive_rank(span) == before;
                prop_assert_eq!(r.iter().all(FieldElement::is_zero), dependent);
                if dependent {
                    let g = state.separator_combination_polynomial(&term, &c).unwrap();
                    for p in x.points() {
                        prop_assert!(g.evaluate(p).unwrap().is_zero());
                    }
                } else {
                    state = state.append_row(term, r, &c).unwrap();
                }
                for (sep, row) in state.separators().zip(state.rows()) {
                    let vals: Vec<FieldElement> = x.points().iter().map(|p| sep.evaluate(p).unwrap()).collect();
                    prop_assert_eq!(vals.as_slice(), row);
                }
            }
            prop_assert!(state.len() <= x.len());
            let o = OrderIdealSet::from_terms(2, state.basis_terms().cloned()).unwrap();
            prop_assert_eq!(o.len(), state.len());
        }
    }
}
