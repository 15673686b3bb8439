//! Sparse multivariate polynomials and border-prebasis-shape polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::evalmat::PointSet;
use crate::field::{FieldElement, FieldSpec};
use crate::monomials::{check_arity, default_names, OrderIdealSet, Term};

/// A polynomial as a map from terms to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    field: FieldSpec,
    coeffs: BTreeMap<Term, FieldElement>,
}

impl Polynomial {
    pub fn zero(arity: usize, field: FieldSpec) -> Self {
        Polynomial {
            arity,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: FieldElement) -> Self {
        Self::monomial(Term::one(arity), c)
    }

    pub fn monomial(t: Term, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(t.arity(), c.spec());
        if !c.is_zero() {
            p.coeffs.insert(t, c);
        }
        p
    }

    /// Sums the given terms; like terms are combined and zeros dropped.
    pub fn from_terms(
        arity: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Term, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(arity, field);
        for (t, c) in terms {
            check_arity(arity, t.arity())?;
            if c.spec() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: c.spec().to_string(),
                });
            }
            p.add_term(t, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, t: Term, c: &FieldElement) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(t) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of terms in the support.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Option<&FieldElement> {
        self.coeffs.get(t)
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.coeffs.keys()
    }

    /// `(term, coefficient)` pairs in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, &FieldElement)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity, self.field);
        }
        Polynomial {
            arity: self.arity,
            field: self.field,
            coeffs: self.coeffs.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, t: &Term) -> Polynomial {
        Polynomial {
            arity: self.arity,
            field: self.field,
            coeffs: self.coeffs.iter().map(|(u, a)| (u.mul(t), a.clone())).collect(),
        }
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        check_arity(self.arity, point.len())?;
        let mut acc = self.field.zero();
        for (t, c) in &self.coeffs {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(t.exponents()) {
                if e > 0 {
                    v = v.try_mul(&x.pow(e))?;
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            if negate {
                out.add_term(t.clone(), &-c);
            } else {
                out.add_term(t.clone(), c);
            }
        }
        out
    }

    /// Renders with the given variable names, terms in descending canonical
    /// order.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }

    /// Parses a sum of monomials such as `"x1^2*x2 - 1/2*x2^2 + 3"`.
    /// Coefficients are written before the term, joined by `*`.
    pub fn parse(text: &str, names: &[String], field: FieldSpec) -> Result<Polynomial> {
        let arity = names.len();
        let mut p = Polynomial::zero(arity, field);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(p);
        }
        // split into signed chunks at top-level + and -
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                chunks.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                negative ^= ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        chunks.push((negative, cur));

        for (negative, chunk) in chunks {
            let mut coeff = field.one();
            let mut term = Term::one(arity);
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {chunk:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff = coeff.try_mul(&field.parse(factor)?)?;
                } else {
                    term = term.mul(&Term::parse(factor, names)?);
                }
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(term, &coeff);
        }
        Ok(p)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "polynomial arity mismatch");
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        let mut out = Polynomial::zero(self.arity, self.field);
        for (t, a) in &self.coeffs {
            for (u, b) in &rhs.coeffs {
                out.add_term(t.mul(u), &(a * b));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            field: self.field,
            coeffs: self.coeffs.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.poly.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", t.display_with(self.names))?;
            } else {
                write!(f, "{magnitude}*{}", t.display_with(self.names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.arity);
        PolyDisplay { poly: self, names: &names }.fmt(f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial `b - tail` with an explicit border term `b` whose
/// coefficient is exactly 1. The mark is data: it is never recomputed from a
/// term ordering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarkedPolynomial {
    border_term: Term,
    poly: Polynomial,
}

impl MarkedPolynomial {
    /// Builds `border_term - tail`. The tail must not mention the border term.
    pub fn from_tail(border_term: Term, tail: &Polynomial) -> Result<Self> {
        check_arity(tail.arity(), border_term.arity())?;
        if tail.coeff(&border_term).is_some() {
            return Err(Error::BorderTerm(
                border_term.to_string(),
                "tail mentions the border term".into(),
            ));
        }
        let lead = Polynomial::monomial(border_term.clone(), tail.field().one());
        Ok(MarkedPolynomial {
            border_term,
            poly: &lead - tail,
        })
    }

    /// Marks an existing polynomial whose coefficient at `border_term` is 1.
    pub fn from_polynomial(border_term: Term, poly: Polynomial) -> Result<Self> {
        match poly.coeff(&border_term) {
            Some(c) if c.is_one() => Ok(MarkedPolynomial { border_term, poly }),
            _ => Err(Error::BorderTerm(
                border_term.to_string(),
                "coefficient is not 1".into(),
            )),
        }
    }

    /// Builds the marked polynomial and checks it is in (quasi) prebasis
    /// shape for `context`: the border term is in the border and the tail is
    /// supported inside the set.
    pub fn new(border_term: Term, tail: &Polynomial, context: &OrderIdealSet) -> Result<Self> {
        let m = Self::from_tail(border_term, tail)?;
        m.check_shape(context)?;
        Ok(m)
    }

    pub fn check_shape(&self, context: &OrderIdealSet) -> Result<()> {
        check_arity(context.arity(), self.border_term.arity())?;
        if context.contains(&self.border_term) || !context.border().contains(&self.border_term) {
            return Err(Error::BorderTerm(
                self.border_term.to_string(),
                "not in the border of the set".into(),
            ));
        }
        for t in self.poly.support() {
            if t != &self.border_term && !context.contains(t) {
                return Err(Error::Support(t.to_string()));
            }
        }
        Ok(())
    }

    pub fn border_term(&self) -> &Term {
        &self.border_term
    }

    /// The full polynomial `b - tail`.
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_polynomial(self) -> Polynomial {
        self.poly
    }

    /// `tail` such that the polynomial equals `b - tail`.
    pub fn tail(&self) -> Polynomial {
        let lead = Polynomial::monomial(self.border_term.clone(), self.poly.field().one());
        &lead - &self.poly
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        self.poly.evaluate(point)
    }
}

impl fmt::Debug for MarkedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.border_term, self.poly)
    }
}

/// An order ideal (or quasi order ideal) with one marked polynomial per
/// border term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BorderPair {
    order_ideal: OrderIdealSet,
    basis: Vec<MarkedPolynomial>,
    quasi: bool,
}

impl BorderPair {
    /// The basis is stored sorted by border term.
    pub fn new(order_ideal: OrderIdealSet, mut basis: Vec<MarkedPolynomial>, quasi: bool) -> Self {
        basis.sort_by(|a, b| a.border_term.cmp(&b.border_term));
        BorderPair {
            order_ideal,
            basis,
            quasi,
        }
    }

    pub fn order_ideal(&self) -> &OrderIdealSet {
        &self.order_ideal
    }

    pub fn basis(&self) -> &[MarkedPolynomial] {
        &self.basis
    }

    pub fn is_quasi(&self) -> bool {
        self.quasi
    }

    pub fn basis_element(&self, border_term: &Term) -> Option<&MarkedPolynomial> {
        self.basis.iter().find(|g| &g.border_term == border_term)
    }

    pub fn key(&self) -> Vec<Vec<u32>> {
        self.order_ideal.key()
    }
}

impl fmt::Debug for BorderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BorderPair")
            .field("order_ideal", &self.order_ideal)
            .field("basis", &self.basis)
            .field("quasi", &self.quasi)
            .finish()
    }
}

/// Subtracts from `f` the multiple `c_i * g_i` of every basis element whose
/// border term occurs in `f` with coefficient `c_i`.
///
/// `f` must be supported on `order_ideal` and its border, every border term
/// of `basis` must lie in that border, and no two basis elements may share a
/// border term.
pub fn border_term_division(
    f: &Polynomial,
    basis: &[MarkedPolynomial],
    order_ideal: &OrderIdealSet,
) -> Result<Polynomial> {
    check_arity(order_ideal.arity(), f.arity())?;
    let border = order_ideal.border();
    let mut marks = BTreeMap::new();
    for g in basis {
        if !border.contains(&g.border_term) {
            return Err(Error::BorderTerm(
                g.border_term.to_string(),
                "not in the border of the order ideal".into(),
            ));
        }
        if marks.insert(&g.border_term, g).is_some() {
            return Err(Error::BorderTerm(
                g.border_term.to_string(),
                "shared by two basis elements".into(),
            ));
        }
    }
    for t in f.support() {
        if !order_ideal.contains(t) && !border.contains(t) {
            return Err(Error::Support(t.to_string()));
        }
    }
    Ok(divide_unchecked(f, &marks))
}

pub(crate) fn divide_unchecked(f: &Polynomial, marks: &BTreeMap<&Term, &MarkedPolynomial>) -> Polynomial {
    let mut out = f.clone();
    for (t, c) in f.terms() {
        if let Some(g) = marks.get(t) {
            out = &out - &g.poly.scale(c);
        }
    }
    out
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Result of [`verify_border_pair`]: one entry per independent check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const CHECK_CARDINALITY: &str = "cardinality";
pub const CHECK_SHAPE: &str = "order-ideal shape";
pub const CHECK_BORDER: &str = "border terms";
pub const CHECK_VANISHING: &str = "vanishing";
pub const CHECK_INVERTIBLE: &str = "evaluation matrix invertible";

/// Checks a (quasi) border pair against a point set from scratch:
/// cardinality, the (quasi) order ideal predicate, border terms matching the
/// border exactly with tails inside the set, vanishing of every basis element
/// on every point, and invertibility of the evaluation matrix of the set.
pub fn verify_border_pair(pair: &BorderPair, points: &PointSet) -> VerificationReport {
    let o = &pair.order_ideal;
    let mut checks = Vec::with_capacity(5);

    checks.push(CheckOutcome {
        name: CHECK_CARDINALITY,
        passed: o.len() == points.len(),
        detail: format!("|O| = {}, |X| = {}", o.len(), points.len()),
    });

    let shape_ok = if pair.quasi {
        o.is_quasi_order_ideal()
    } else {
        o.is_order_ideal()
    };
    checks.push(CheckOutcome {
        name: CHECK_SHAPE,
        passed: shape_ok && o.arity() == points.arity(),
        detail: format!(
            "{} expected to be {}",
            o,
            if pair.quasi { "a quasi order ideal" } else { "an order ideal" }
        ),
    });

    let border = o.border();
    let marks: BTreeSet<&Term> = pair.basis.iter().map(|g| &g.border_term).collect();
    let mut problems = Vec::new();
    if marks.len() != pair.basis.len() {
        problems.push("repeated border terms".to_string());
    }
    if marks.len() != border.len() || !border.iter().all(|b| marks.contains(b)) {
        problems.push(format!(
            "basis marks {} terms, border has {}",
            marks.len(),
            border.len()
        ));
    }
    for g in &pair.basis {
        if g.poly.arity() != o.arity() {
            problems.push(format!("{} has the wrong arity", g.border_term));
            continue;
        }
        if g.poly.coeff(&g.border_term).map(|c| c.is_one()) != Some(true) {
            problems.push(format!("{} is not monic in its border term", g.border_term));
        }
        for t in g.poly.support() {
            if t != &g.border_term && !o.contains(t) {
                problems.push(format!("tail of {} mentions {t}", g.border_term));
            }
        }
    }
    checks.push(CheckOutcome {
        name: CHECK_BORDER,
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} basis elements match the border", pair.basis.len())
        } else {
            problems.join("; ")
        },
    });

    let mut nonvanishing = Vec::new();
    for g in &pair.basis {
        for (i, p) in points.points().iter().enumerate() {
            match g.poly.evaluate(p) {
                Ok(v) if v.is_zero() => {}
                _ => {
                    nonvanishing.push(format!("{} at P{}", g.border_term, i + 1));
                }
            }
        }
    }
    checks.push(CheckOutcome {
        name: CHECK_VANISHING,
        passed: nonvanishing.is_empty(),
        detail: if nonvanishing.is_empty() {
            "every basis element vanishes on every point".into()
        } else {
            format!("nonzero: {}", nonvanishing.join(", "))
        },
    });

    let rank = evaluation_rank(o, points);
    checks.push(CheckOutcome {
        name: CHECK_INVERTIBLE,
        passed: rank == Some(points.len()) && o.len() == points.len(),
        detail: match rank {
            Some(r) => format!("rank {r} of {} x {}", o.len(), points.len()),
            None => "arity or field mismatch".into(),
        },
    });

    VerificationReport { checks }
}

/// Rank of the matrix whose rows are the values of the set's terms at the
/// points, by plain Gaussian elimination with a full pivot search.
fn evaluation_rank(o: &OrderIdealSet, points: &PointSet) -> Option<usize> {
    if o.arity() != points.arity() {
        return None;
    }
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(o.len());
    for t in o.iter() {
        let mut row = Vec::with_capacity(points.len());
        for p in points.points() {
            let mut v = points.field().one();
            for (x, &e) in p.iter().zip(t.exponents()) {
                for _ in 0..e {
                    v = &v * x;
                }
            }
            row.push(v);
        }
        rows.push(row);
    }
    let cols = points.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().ok()?;
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] * &inv;
                for c in col..cols {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &sub;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &names(), q()).unwrap()
    }

    fn t(s: &str) -> Term {
        Term::parse(s, &names()).unwrap()
    }

    fn set(terms: &[&str]) -> OrderIdealSet {
        OrderIdealSet::from_terms(2, terms.iter().map(|s| t(s))).unwrap()
    }

    fn marked(bt: &str, full: &str) -> MarkedPolynomial {
        MarkedPolynomial::from_polynomial(t(bt), p(full)).unwrap()
    }

    fn pt(coords: &[i64]) -> Vec<FieldElement> {
        coords.iter().map(|&c| q().from_i64(c)).collect()
    }

    #[test]
    fn evaluation() {
        let f = p("x - 2*y - 3");
        assert!(f.evaluate(&pt(&[3, 0])).unwrap().is_zero());
        assert_eq!(f.evaluate(&pt(&[4, 1])).unwrap(), q().from_i64(-1));
        assert_eq!(p("1").evaluate(&pt(&[7, 9])).unwrap(), q().one());
        assert!(matches!(
            f.evaluate(&pt(&[1, 2, 3])),
            Err(Error::Arity { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn parse_and_display() {
        let n = default_names(2);
        let f = Polynomial::parse("x1^2*x2 - 1/2*x2^2 - 1/2*x2", &n, q()).unwrap();
        assert_eq!(f.to_string(), "x1^2*x2 - 1/2*x2^2 - 1/2*x2");
        assert_eq!(p("-x + 3 - y^2").display_with(&names()).to_string(), "-y^2 - x + 3");
        assert_eq!(p("x - x").to_string(), "0");
        assert!(Polynomial::parse("x +", &names(), q()).is_err());
        assert!(Polynomial::parse("z", &names(), q()).is_err());
        let f7 = FieldSpec::prime(7).unwrap();
        let g = Polynomial::parse("x - 1", &names(), f7).unwrap();
        assert_eq!(g.display_with(&names()).to_string(), "x + 6");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p("x - 4") * &p("x - 2*y - 3"), p("x^2 - 7*x - 2*x*y + 8*y + 12"));
        assert_eq!(&p("y - 1") * &p("x - 2*y - 3"), p("x*y - x - 2*y^2 - y + 3"));
        assert_eq!(&p("x + y") - &p("y"), p("x"));
        assert_eq!(-&p("x - 1"), p("1 - x"));
    }

    #[test]
    fn division_worked_example() {
        let o = set(&["1", "y", "x"]);
        let g = vec![
            marked("y^2", "y^2 - 3*y + 2*x - 6"),
            marked("x*y", "x*y + 3*x - 7*y - 9"),
        ];
        let f = p("x^2 - 7*x - 2*x*y + 8*y + 12");
        assert_eq!(border_term_division(&f, &g, &o).unwrap(), p("x^2 - x - 6*y - 6"));
    }

    #[test]
    fn division_edge_cases() {
        let o = set(&["1", "y", "x"]);
        let g = vec![marked("y^2", "y^2 - 3*y + 2*x - 6")];
        let inside = p("3*x - y + 1");
        assert_eq!(border_term_division(&inside, &g, &o).unwrap(), inside);
        assert!(border_term_division(g[0].polynomial(), &g, &o).unwrap().is_zero());
        assert!(matches!(
            border_term_division(&p("x^3"), &g, &o),
            Err(Error::Support(_))
        ));
        let dup = vec![g[0].clone(), g[0].clone()];
        assert!(matches!(
            border_term_division(&inside, &dup, &o),
            Err(Error::BorderTerm(..))
        ));
    }

    #[test]
    fn marked_shape_checks() {
        let o = set(&["1", "y", "x"]);
        assert!(MarkedPolynomial::new(t("x*y"), &p("7*y - 3*x + 9"), &o).is_ok());
        assert!(MarkedPolynomial::new(t("x"), &p("y"), &o).is_err());
        assert!(MarkedPolynomial::new(t("x*y"), &p("y^2"), &o).is_err());
        assert!(MarkedPolynomial::from_polynomial(t("x"), p("2*x - 1")).is_err());
        let m = marked("x*y", "x*y + 3*x - 7*y - 9");
        assert_eq!(m.tail(), p("-3*x + 7*y + 9"));
        assert_eq!(MarkedPolynomial::from_tail(t("x*y"), &m.tail()).unwrap(), m);
    }

    fn five_points() -> (PointSet, BorderPair) {
        let points = PointSet::from_integers(
            q(),
            &[&[0, 0], &[0, -1], &[1, 0], &[1, 1], &[-1, 1]],
        )
        .unwrap();
        let o = set(&["1", "y", "y^2", "x", "x^2"]);
        let basis = vec![
            marked("x*y", "x*y + x^2 - 1/2*y^2 - x - 1/2*y"),
            marked("x^3", "x^3 - x"),
            marked("x^2*y", "x^2*y - 1/2*y^2 - 1/2*y"),
            marked("x*y^2", "x*y^2 + x^2 - 1/2*y^2 - x - 1/2*y"),
            marked("y^3", "y^3 - y"),
        ];
        (points, BorderPair::new(o, basis, false))
    }

    #[test]
    fn verify_five_points_pair() {
        let (points, pair) = five_points();
        let report = verify_border_pair(&pair, &points);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn verify_detects_perturbation() {
        let (points, pair) = five_points();
        let mut basis = pair.basis().to_vec();
        let i = basis.iter().position(|g| g.border_term() == &t("x^3")).unwrap();
        basis[i] = marked("x^3", "x^3 - x + 1/7");
        let broken = BorderPair::new(pair.order_ideal().clone(), basis, false);
        let report = verify_border_pair(&broken, &points);
        assert_eq!(report.failed_checks(), vec![CHECK_VANISHING]);
    }

    #[test]
    fn verify_detects_wrong_cardinality() {
        let (points, _) = five_points();
        let o = set(&["1", "y", "x"]);
        let pair = BorderPair::new(o, vec![], false);
        let report = verify_border_pair(&pair, &points);
        assert!(report.failed_checks().contains(&CHECK_CARDINALITY));
        assert!(report.failed_checks().contains(&CHECK_BORDER));
    }

    #[test]
    fn verify_detects_singular_set() {
        // x and x^2 agree on points with x in {0, 1}
        let points = PointSet::from_integers(q(), &[&[0, 0], &[1, 0], &[1, 1]]).unwrap();
        let pair = BorderPair::new(set(&["1", "x", "x^2"]), vec![], false);
        let report = verify_border_pair(&pair, &points);
        assert!(report.failed_checks().contains(&CHECK_INVERTIBLE));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        let exps = (0u32..3, 0u32..3).prop_filter("degree <= 2", |(a, b)| a + b <= 2);
        proptest::collection::vec((exps, -5i64..5), 0..6).prop_map(|terms| {
            Polynomial::from_terms(
                2,
                FieldSpec::rationals(),
                terms
                    .into_iter()
                    .map(|((a, b), c)| (Term::from_exponents(&[a, b]), q().from_i64(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn division_is_linear_and_clears_marks(f1 in small_poly(), f2 in small_poly()) {
            let o = set(&["1", "x", "y", "x^2", "x*y", "y^2"]);
            let g = vec![
                marked("x^3", "x^3 - x*y + 2"),
                marked("x^2*y", "x^2*y - 1/3*y^2 + x"),
                marked("y^3", "y^3 - y"),
            ];
            let lift = |f: &Polynomial| &f.mul_term(&t("x")) + f;
            let (a, b) = (lift(&f1), lift(&f2));
            let da = border_term_division(&a, &g, &o).unwrap();
            let db = border_term_division(&b, &g, &o).unwrap();
            let dab = border_term_division(&(&a + &b), &g, &o).unwrap();
            prop_assert_eq!(&dab, &(&da + &db));
            for m in &g {
                prop_assert!(da.coeff(m.border_term()).is_none());
            }
        }
    }
}
