//! Buchberger–Möller style engines: a reduced Gröbner basis for a term
//! ordering, a single border pair, and recursive enumeration of every
//! (quasi) order ideal that supports a border basis.

use std::collections::BTreeSet;

use crate::enumeration::{for_each, Accumulator, EnumerationOptions, EnumerationResult, EvalCache};
use crate::error::{Error, Result};
use crate::evalmat::{PointSet, ReductionState};
use crate::field::FieldElement;
use crate::monomials::{check_arity, OrderIdealSet, Term, TermOrdering};
use crate::polys::{BorderPair, MarkedPolynomial, Polynomial};

/// Reduced Gröbner basis of the vanishing ideal for one term ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Basis polynomials, each monic, in the order their leading terms were found.
    pub polynomials: Vec<Polynomial>,
    pub leading_terms: Vec<Term>,
    /// Terms outside the leading term ideal.
    pub order_ideal: OrderIdealSet,
}

/// How [`bm_border_with`] chooses among candidates of equal minimal degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The smallest candidate in degree-reverse-lexicographic order.
    #[default]
    DegRevLexSmallest,
    /// The smallest candidate in the given ordering.
    OrderingSmallest(TermOrdering),
    /// Pure powers of one variable first, then degree-reverse-lexicographic.
    PurePowersFirst,
}

impl TieBreak {
    fn pick<'a>(&self, ties: impl Iterator<Item = &'a Term>) -> Option<&'a Term> {
        match self {
            TieBreak::DegRevLexSmallest => ties.min(),
            TieBreak::OrderingSmallest(ord) => ties.min_by(|a, b| ord.cmp_unchecked(a, b)),
            TieBreak::PurePowersFirst => ties.min_by_key(|t| (t.support_size(), *t)),
        }
    }
}

fn is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

/// Classical Buchberger–Möller: the reduced Gröbner basis of `I(X)` with
/// respect to `ord`, together with its standard monomials.
pub fn buchberger_moller(points: &PointSet, ord: &TermOrdering) -> Result<GroebnerBasis> {
    check_arity(points.arity(), ord.arity())?;
    let n = points.arity();
    let mut state = ReductionState::new(points);
    let mut pending: Vec<Term> = vec![Term::one(n)];
    let mut polynomials = Vec::new();
    let mut leading_terms: Vec<Term> = Vec::new();
    let mut standard = Vec::new();

    while let Some(pos) = (0..pending.len()).min_by(|&a, &b| ord.cmp_unchecked(&pending[a], &pending[b])) {
        let t = pending.swap_remove(pos);
        let (residual, combination) = state.reduce_and_track(&points.evaluation_vector(&t)?)?;
        if is_zero(&residual) {
            polynomials.push(state.separator_combination_polynomial(&t, &combination)?);
            pending.retain(|u| !t.divides_unchecked(u));
            leading_terms.push(t);
        } else {
            state = state.append_row(t.clone(), residual, &combination)?;
            for i in 0..n {
                let u = t.mul_var(i);
                let covered = leading_terms.iter().chain(&pending).any(|l| l.divides_unchecked(&u));
                if !covered {
                    pending.push(u);
                }
            }
            standard.push(t);
        }
    }
    Ok(GroebnerBasis {
        polynomials,
        leading_terms,
        order_ideal: OrderIdealSet::from_terms(n, standard)?,
    })
}

/// A single border pair, breaking degree ties toward the
/// degree-reverse-lexicographically smallest candidate.
pub fn bm_border(points: &PointSet) -> Result<BorderPair> {
    bm_border_with(points, &TieBreak::default())
}

/// A single border pair, built by always processing a candidate of minimal
/// degree and breaking ties with `tie_break`.
pub fn bm_border_with(points: &PointSet, tie_break: &TieBreak) -> Result<BorderPair> {
    if let TieBreak::OrderingSmallest(ord) = tie_break {
        check_arity(points.arity(), ord.arity())?;
    }
    let n = points.arity();
    let mut state = ReductionState::new(points);
    let mut pending: BTreeSet<Term> = BTreeSet::from([Term::one(n)]);
    let mut basis = Vec::new();
    let mut standard = Vec::new();

    while let Some(min_degree) = pending.iter().map(Term::degree).min() {
        let t = tie_break
            .pick(pending.iter().filter(|t| t.degree() == min_degree))
            .cloned()
            .expect("nonempty candidate list");
        pending.remove(&t);
        let (residual, combination) = state.reduce_and_track(&points.evaluation_vector(&t)?)?;
        if is_zero(&residual) {
            let g = state.separator_combination_polynomial(&t, &combination)?;
            basis.push(MarkedPolynomial::from_polynomial(t, g)?);
        } else {
            state = state.append_row(t.clone(), residual, &combination)?;
            pending.extend((0..n).map(|i| t.mul_var(i)));
            standard.push(t);
        }
    }
    Ok(BorderPair::new(OrderIdealSet::from_terms(n, standard)?, basis, false))
}

/// Every order ideal `O` for which `I(X)` has an `O`-border basis, each with
/// its border basis.
pub fn bm_all_order_ideals(points: &PointSet) -> Result<EnumerationResult> {
    bm_all_order_ideals_with(points, &EnumerationOptions::default())
}

pub fn bm_all_order_ideals_with(points: &PointSet, options: &EnumerationOptions) -> Result<EnumerationResult> {
    enumerate(points, options, false)
}

/// Every quasi order ideal supporting a quasi border basis. Same recursion
/// as [`bm_all_order_ideals`] with every border term as a candidate.
pub fn bm_all_quasi_order_ideals(points: &PointSet) -> Result<EnumerationResult> {
    bm_all_quasi_order_ideals_with(points, &EnumerationOptions::default())
}

pub fn bm_all_quasi_order_ideals_with(points: &PointSet, options: &EnumerationOptions) -> Result<EnumerationResult> {
    enumerate(points, options, true)
}

struct Search<'a> {
    points: &'a PointSet,
    evals: EvalCache<'a>,
    quasi: bool,
    parallel: bool,
    acc: Accumulator<Vec<Vec<u32>>>,
    error: std::sync::Mutex<Option<Error>>,
}

fn enumerate(points: &PointSet, options: &EnumerationOptions, quasi: bool) -> Result<EnumerationResult> {
    let search = Search {
        points,
        evals: EvalCache::new(points),
        quasi,
        parallel: options.parallel,
        acc: Accumulator::new(options),
        error: std::sync::Mutex::new(None),
    };
    search.step(OrderIdealSet::empty(points.arity()), ReductionState::new(points));
    if let Some(e) = search.error.into_inner().expect("error lock") {
        return Err(e);
    }
    Ok(search.acc.finish())
}

impl Search<'_> {
    fn step(&self, o: OrderIdealSet, state: ReductionState) {
        if let Err(e) = self.try_step(o, state) {
            self.error.lock().expect("error lock").get_or_insert(e);
        }
    }

    fn try_step(&self, o: OrderIdealSet, state: ReductionState) -> Result<()> {
        self.acc.enter();
        if o.len() == self.points.len() {
            self.acc.reached_leaf();
            if self.acc.first_visit(o.key()) && !self.acc.has_pair(&o) {
                let basis = leaf_basis(&o, &state, &self.evals)?;
                self.acc.insert(BorderPair::new(o, basis, self.quasi));
            }
            return Ok(());
        }
        if !self.acc.first_visit(o.key()) {
            return Ok(());
        }
        let candidates = if self.quasi {
            o.border().into_iter().collect()
        } else {
            o.expand_candidates()
        };
        let mut children = Vec::new();
        for t in candidates {
            let (residual, combination) = state.reduce_and_track(&self.evals.get(&t)?)?;
            if !is_zero(&residual) {
                children.push((o.with(t.clone()), state.append_row(t, residual, &combination)?));
            }
        }
        for_each(self.parallel, children, |(o, s)| self.step(o, s));
        Ok(())
    }
}

/// At full rank every border term reduces to zero; its separator
/// combination is the basis element.
fn leaf_basis(o: &OrderIdealSet, state: &ReductionState, evals: &EvalCache) -> Result<Vec<MarkedPolynomial>> {
    o.border()
        .into_iter()
        .map(|b| {
            let (residual, combination) = state.reduce_and_track(&evals.get(&b)?)?;
            debug_assert!(is_zero(&residual));
            let g = state.separator_combination_polynomial(&b, &combination)?;
            MarkedPolynomial::from_polynomial(b, g)
        })
        .collect()
}
