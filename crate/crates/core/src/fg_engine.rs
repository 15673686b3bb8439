//! Engines that add the points one at a time: a single border
//! pair, and enumeration of every quasi border pair.

use std::collections::BTreeSet;
use std::sync::Mutex;

use crate::enumeration::{for_each, Accumulator, EnumerationOptions, EnumerationResult};
use crate::error::{Error, Result};
use crate::evalmat::PointSet;
use crate::field::FieldElement;
use crate::monomials::{OrderIdealSet, Term};
use crate::polys::{border_term_division, BorderPair, MarkedPolynomial, Polynomial};

/// Progress of the point-by-point construction: a (quasi) order ideal and
/// a prebasis that vanishes on the first `processed` points of
/// `point_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgState {
    order_ideal: OrderIdealSet,
    basis: Vec<MarkedPolynomial>,
    point_order: Vec<usize>,
    processed: usize,
}

impl FgState {
    /// Nothing processed yet, points in input order.
    pub fn initial(points: &PointSet) -> Self {
        FgState {
            order_ideal: OrderIdealSet::empty(points.arity()),
            basis: Vec::new(),
            point_order: (0..points.len()).collect(),
            processed: 0,
        }
    }

    /// A state built from known data. `point_order` is a permutation of the
    /// point indices whose first `processed` entries are already handled.
    pub fn from_parts(
        order_ideal: OrderIdealSet,
        basis: Vec<MarkedPolynomial>,
        point_order: Vec<usize>,
        processed: usize,
    ) -> Self {
        FgState {
            order_ideal,
            basis,
            point_order,
            processed,
        }
    }

    pub fn order_ideal(&self) -> &OrderIdealSet {
        &self.order_ideal
    }

    pub fn basis(&self) -> &[MarkedPolynomial] {
        &self.basis
    }

    pub fn point_order(&self) -> &[usize] {
        &self.point_order
    }

    pub fn processed(&self) -> usize {
        self.processed
    }

    fn processed_key(&self) -> Vec<usize> {
        let mut v = self.point_order[..self.processed].to_vec();
        v.sort_unstable();
        v
    }
}

fn linear_factor(arity: usize, j: usize, p: &FieldElement) -> Polynomial {
    let x = Polynomial::monomial(Term::var(arity, j), p.spec().one());
    &x - &Polynomial::constant(arity, p.clone())
}

/// `(x_j - p_j) * f` divided by `basis`, marked with `x_j * BT(f)`.
fn extend_by_variable(
    f: &MarkedPolynomial,
    j: usize,
    point: &[FieldElement],
    basis: &[MarkedPolynomial],
    order_ideal: &OrderIdealSet,
) -> Result<MarkedPolynomial> {
    let h = &linear_factor(order_ideal.arity(), j, &point[j]) * f.polynomial();
    let reduced = border_term_division(&h, basis, order_ideal)?;
    MarkedPolynomial::from_polynomial(f.border_term().mul_var(j), reduced)
}

/// `g - (g(P) / f(P)) * f` for every `g` not vanishing at `P`.
fn eliminate(
    basis: Vec<MarkedPolynomial>,
    f: &MarkedPolynomial,
    f_at: &FieldElement,
    point: &[FieldElement],
) -> Result<Vec<MarkedPolynomial>> {
    basis
        .into_iter()
        .map(|g| {
            let g_at = g.evaluate(point)?;
            if g_at.is_zero() {
                return Ok(g);
            }
            let factor = g_at.try_div(f_at)?;
            let bt = g.border_term().clone();
            MarkedPolynomial::from_polynomial(bt, g.polynomial() - &f.polynomial().scale(&factor))
        })
        .collect()
}

/// One border pair for `I(X)`, adding the points in input order. At each
/// point the basis element of least degree not vanishing there, ties broken
/// toward the degree-reverse-lexicographically smallest border term, joins
/// the order ideal.
pub fn fg_border(points: &PointSet) -> Result<BorderPair> {
    let n = points.arity();
    let mut o = OrderIdealSet::empty(n);
    let mut basis = vec![MarkedPolynomial::from_polynomial(
        Term::one(n),
        Polynomial::constant(n, points.field().one()),
    )?];

    for point in points.points() {
        let mut values = Vec::with_capacity(basis.len());
        for g in &basis {
            values.push(g.evaluate(point)?);
        }
        let i = (0..basis.len())
            .filter(|&i| !values[i].is_zero())
            .min_by_key(|&i| (basis[i].border_term().degree(), basis[i].border_term()))
            .expect("some basis element separates a new point");
        let chosen = basis.remove(i);
        let chosen_at = values.remove(i);
        let mut rest = Vec::with_capacity(basis.len());
        for (g, v) in basis.into_iter().zip(values) {
            if v.is_zero() {
                rest.push(g);
            } else {
                let factor = v.try_div(&chosen_at)?;
                let bt = g.border_term().clone();
                rest.push(MarkedPolynomial::from_polynomial(
                    bt,
                    g.polynomial() - &chosen.polynomial().scale(&factor),
                )?);
            }
        }
        o = o.with(chosen.border_term().clone());
        let marks: BTreeSet<Term> = rest.iter().map(|g| g.border_term().clone()).collect();
        let mut extension = Vec::new();
        for j in 0..n {
            if !marks.contains(&chosen.border_term().mul_var(j)) {
                extension.push(extend_by_variable(&chosen, j, point, &rest, &o)?);
            }
        }
        rest.extend(extension);
        basis = rest;
    }
    Ok(BorderPair::new(o, basis, false))
}

/// Processes the next point of `state` with `f`, which must not vanish
/// there: `BT(f)` joins the order ideal, the other basis elements are made
/// to vanish at the point, and `f` times each linear form `x_j - p_j` with a
/// new border term is added after division.
pub fn quasi_oi_step(points: &PointSet, state: FgState, f: &MarkedPolynomial) -> Result<FgState> {
    let FgState {
        order_ideal,
        basis,
        point_order,
        processed,
    } = state;
    let point = points.point(point_order[processed]);
    let f_at = f.evaluate(point)?;
    if f_at.is_zero() {
        return Err(Error::BorderTerm(
            f.border_term().to_string(),
            "polynomial vanishes at the point it should separate".into(),
        ));
    }
    let o = order_ideal.with(f.border_term().clone());
    let mut basis = eliminate(basis, f, &f_at, point)?;
    let marks: BTreeSet<Term> = basis.iter().map(|g| g.border_term().clone()).collect();
    let mut extension = Vec::new();
    for j in 0..points.arity() {
        let bt = f.border_term().mul_var(j);
        if !o.contains(&bt) && !marks.contains(&bt) {
            extension.push(extend_by_variable(f, j, point, &basis, &o)?);
        }
    }
    basis.extend(extension);
    basis.sort_by(|a, b| a.border_term().cmp(b.border_term()));

    let next = FgState {
        order_ideal: o,
        basis,
        point_order,
        processed: processed + 1,
    };
    debug_assert!(next.basis.iter().all(|g| {
        next.point_order[..next.processed]
            .iter()
            .all(|&p| g.evaluate(points.point(p)).is_ok_and(|v| v.is_zero()))
    }));
    Ok(next)
}

/// Every quasi order ideal for which `I(X)` has a quasi border basis,
/// found by extending one point at a time.
pub fn fg_all_quasi_order_ideals(points: &PointSet) -> Result<EnumerationResult> {
    fg_all_quasi_order_ideals_with(points, &EnumerationOptions::default())
}

pub fn fg_all_quasi_order_ideals_with(points: &PointSet, options: &EnumerationOptions) -> Result<EnumerationResult> {
    let n = points.arity();
    let search = Search {
        points,
        parallel: options.parallel,
        acc: Accumulator::new(options),
        error: Mutex::new(None),
    };
    let seed = MarkedPolynomial::from_polynomial(Term::one(n), Polynomial::constant(n, points.field().one()))?;
    search.step(FgState::initial(points), seed);
    if let Some(e) = search.error.into_inner().expect("error lock") {
        return Err(e);
    }
    Ok(search.acc.finish())
}

type StateKey = (Vec<Vec<u32>>, Vec<usize>);

struct Search<'a> {
    points: &'a PointSet,
    parallel: bool,
    acc: Accumulator<StateKey>,
    error: Mutex<Option<Error>>,
}

impl Search<'_> {
    fn step(&self, state: FgState, f: MarkedPolynomial) {
        if let Err(e) = self.try_step(state, f) {
            self.error.lock().expect("error lock").get_or_insert(e);
        }
    }

    fn try_step(&self, state: FgState, f: MarkedPolynomial) -> Result<()> {
        self.acc.enter();
        let s = self.points.len();
        let target = state.order_ideal.with(f.border_term().clone());
        let mut seen = state.processed_key();
        seen.push(state.point_order[state.processed]);
        seen.sort_unstable();
        let leaf = target.len() == s;
        if leaf {
            self.acc.reached_leaf();
        }
        if !self.acc.first_visit((target.key(), seen)) || (leaf && self.acc.has_pair(&target)) {
            return Ok(());
        }

        let next = quasi_oi_step(self.points, state, &f)?;
        if leaf {
            self.acc.insert(BorderPair::new(next.order_ideal, next.basis, true));
            return Ok(());
        }

        let d = next.processed;
        let mut order = next.point_order.clone();
        let mut children = Vec::new();
        for (k, g) in next.basis.iter().enumerate() {
            for i in d..s {
                if !g.evaluate(self.points.point(order[i]))?.is_zero() {
                    order.swap(i, d);
                    let mut rest = next.basis.clone();
                    let g = rest.remove(k);
                    let child = FgState {
                        order_ideal: next.order_ideal.clone(),
                        basis: rest,
                        point_order: order.clone(),
                        processed: d,
                    };
                    children.push((child, g));
                }
            }
        }
        for_each(self.parallel, children, |(child, g)| self.step(child, g));
        Ok(())
    }
}
