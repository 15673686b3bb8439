//! Brute-force reference enumerations for small inputs. Everything here is
//! written from the definitions alone and shares no row reduction with the
//! engines.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::evalmat::PointSet;
use crate::field::FieldElement;
use crate::monomials::{OrderIdealSet, Term};

/// Largest inputs the oracles accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_points: usize,
    pub max_vars: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_points: 7,
            max_vars: 4,
        }
    }
}

/// All order ideals of cardinality `s` whose evaluation matrix on `X` is
/// invertible.
pub fn brute_force_all_order_ideals(points: &PointSet) -> Result<BTreeSet<OrderIdealSet>> {
    brute_force_all_order_ideals_within(points, &OracleBounds::default())
}

pub fn brute_force_all_order_ideals_within(points: &PointSet, bounds: &OracleBounds) -> Result<BTreeSet<OrderIdealSet>> {
    search(points, bounds, OrderIdealSet::is_order_ideal)
}

/// All quasi order ideals of cardinality `s` whose evaluation matrix on `X`
/// is invertible.
pub fn brute_force_all_quasi_order_ideals(points: &PointSet) -> Result<BTreeSet<OrderIdealSet>> {
    brute_force_all_quasi_order_ideals_within(points, &OracleBounds::default())
}

pub fn brute_force_all_quasi_order_ideals_within(
    points: &PointSet,
    bounds: &OracleBounds,
) -> Result<BTreeSet<OrderIdealSet>> {
    search(points, bounds, |_| true)
}

/// Grows every admissible set one border term at a time, level by level.
/// A set of `s` terms in which each term other than 1 has a predecessor
/// in the set contains a chain from 1 to each member, so every member has
/// total degree at most `s - 1`; the levels therefore cover the whole
/// search region without an explicit degree cutoff.
fn search(
    points: &PointSet,
    bounds: &OracleBounds,
    admissible: impl Fn(&OrderIdealSet) -> bool,
) -> Result<BTreeSet<OrderIdealSet>> {
    let (s, n) = (points.len(), points.arity());
    if s > bounds.max_points || n > bounds.max_vars {
        return Err(Error::OracleTooLarge {
            points: s,
            vars: n,
            max_points: bounds.max_points,
            max_vars: bounds.max_vars,
        });
    }
    let mut level: BTreeSet<OrderIdealSet> = BTreeSet::from([OrderIdealSet::empty(n).with(Term::one(n))]);
    for _ in 1..s {
        let mut next = BTreeSet::new();
        for o in &level {
            for t in o.border() {
                let grown = o.with(t);
                if admissible(&grown) {
                    next.insert(grown);
                }
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .filter(|o| evaluation_matrix_invertible(o, points))
        .collect())
}

fn evaluate_term(t: &Term, point: &[FieldElement]) -> FieldElement {
    let mut v = point[0].spec().one();
    for (x, &e) in point.iter().zip(t.exponents()) {
        for _ in 0..e {
            v = &v * x;
        }
    }
    v
}

fn evaluation_matrix_invertible(o: &OrderIdealSet, points: &PointSet) -> bool {
    let mut m: Vec<Vec<FieldElement>> = o
        .iter()
        .map(|t| points.points().iter().map(|p| evaluate_term(t, p)).collect())
        .collect();
    let size = m.len();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, pivot);
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].try_div(&m[col][col]).expect("nonzero pivot");
            for c in col..size {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn set(terms: &[&str]) -> OrderIdealSet {
        let names = vec!["x".to_string(), "y".to_string()];
        OrderIdealSet::from_terms(2, terms.iter().map(|s| Term::parse(s, &names).unwrap())).unwrap()
    }

    #[test]
    fn three_points_order_ideals() {
        let x = PointSet::from_integers(q(), &[&[2, 3], &[1, 4], &[5, 0]]).unwrap();
        let found = brute_force_all_order_ideals(&x).unwrap();
        assert_eq!(found, BTreeSet::from([set(&["1", "x", "x^2"]), set(&["1", "y", "y^2"])]));
    }

    #[test]
    fn three_points_quasi_order_ideals() {
        let x = PointSet::from_integers(q(), &[&[2, 3], &[5, 6], &[1, 2]]).unwrap();
        let found = brute_force_all_quasi_order_ideals(&x).unwrap();
        let expected = BTreeSet::from([
            set(&["1", "x", "x^2"]),
            set(&["1", "x", "x*y"]),
            set(&["1", "y", "y^2"]),
            set(&["1", "y", "x*y"]),
        ]);
        assert_eq!(found, expected);
        assert!(brute_force_all_order_ideals(&x).unwrap().is_subset(&found));
    }

    #[test]
    fn single_point() {
        let x = PointSet::from_integers(q(), &[&[7, 7]]).unwrap();
        assert_eq!(brute_force_all_order_ideals(&x).unwrap(), BTreeSet::from([set(&["1"])]));
    }

    #[test]
    fn five_points_order_ideal_present() {
        let x = PointSet::from_integers(q(), &[&[0, 0], &[0, -1], &[1, 0], &[1, 1], &[-1, 1]]).unwrap();
        let found = brute_force_all_order_ideals(&x).unwrap();
        assert!(found.contains(&set(&["1", "x", "y", "x^2", "y^2"])));
    }

    #[test]
    fn bounds_are_enforced() {
        let pts: Vec<Vec<i64>> = (0..8).map(|i| vec![i]).collect();
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        let x = PointSet::from_integers(q(), &refs).unwrap();
        assert!(matches!(
            brute_force_all_order_ideals(&x),
            Err(Error::OracleTooLarge { points: 8, .. })
        ));
        let wide = PointSet::from_integers(q(), &[&[0, 0, 0, 0, 0]]).unwrap();
        assert!(matches!(
            brute_force_all_quasi_order_ideals(&wide),
            Err(Error::OracleTooLarge { vars: 5, .. })
        ));
        let roomy = OracleBounds { max_points: 8, max_vars: 1 };
        assert_eq!(brute_force_all_order_ideals_within(&x, &roomy).unwrap().len(), 1);
    }
}
