//! Terms, term orderings, and the combinatorics of (quasi) order ideals.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::polys::Polynomial;

/// A power product `x1^a1 * ... * xn^an`, stored as its exponent vector.
///
/// `Ord` is the canonical display order: total degree first, then
/// DegRevLex with `x1 > x2 > ... > xn`, ascending.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: SmallVec<[u32; 4]>,
}

pub(crate) fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Arity { expected, found })
    }
}

impl Term {
    pub fn one(arity: usize) -> Self {
        Term {
            exps: SmallVec::from_elem(0, arity),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Term {
            exps: SmallVec::from_slice(exps),
        }
    }

    /// The variable `x_{index+1}`.
    pub fn var(arity: usize, index: usize) -> Self {
        let mut t = Term::one(arity);
        t.exps[index] = 1;
        t
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of variables that actually occur.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Term) -> Result<bool> {
        check_arity(self.arity(), other.arity())?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Product of two terms of equal arity.
    pub fn mul(&self, other: &Term) -> Term {
        assert_eq!(self.arity(), other.arity(), "term arity mismatch");
        Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, index: usize) -> Term {
        let mut t = self.clone();
        t.exps[index] += 1;
        t
    }

    pub fn div_var(&self, index: usize) -> Option<Term> {
        if self.exps[index] == 0 {
            return None;
        }
        let mut t = self.clone();
        t.exps[index] -= 1;
        Some(t)
    }

    /// All `t / x_i` for variables `x_i` dividing `t`.
    pub fn predecessors(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.arity()).filter_map(move |i| self.div_var(i))
    }

    /// The quotient `self / divisor`, if `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Term) -> Option<Term> {
        if self.arity() != divisor.arity() || !divisor.divides_unchecked(self) {
            return None;
        }
        Some(Term {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Renders with the given variable names; `"1"` for the unit term.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        TermDisplay { term: self, names }
    }

    /// Parses `"x1^2*x2"`, `"1"`, or a product over the given variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<Term> {
        let mut t = Term::one(names.len());
        let text = text.trim();
        if text == "1" {
            return Ok(t);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((v, e)) => (
                    v.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            t.exps[idx] += exp;
        }
        Ok(t)
    }
}

/// `x1, ..., xn`.
pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.term.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", i + 1)?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn cmp_degrevlex_within_degree(a: &[u32], b: &[u32], perm: impl DoubleEndedIterator<Item = usize>) -> Ordering {
    for i in perm.rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // a larger exponent in the last variable makes the term smaller
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| cmp_degrevlex_within_degree(&self.exps, &other.exps, 0..self.arity()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    DegRevLex,
    DegLex,
    Lex,
}

/// A term ordering together with a variable precedence: `perm[0]` is the
/// largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrdering {
    kind: OrderingKind,
    perm: Vec<usize>,
}

impl TermOrdering {
    /// The ordering with `x1 > x2 > ... > xn`.
    pub fn new(kind: OrderingKind, arity: usize) -> Self {
        TermOrdering {
            kind,
            perm: (0..arity).collect(),
        }
    }

    /// `perm` lists 0-based variable indices from largest to smallest.
    pub fn with_permutation(kind: OrderingKind, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(TermOrdering { kind, perm })
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn compare(&self, t: &Term, u: &Term) -> Result<Ordering> {
        check_arity(self.arity(), t.arity())?;
        check_arity(self.arity(), u.arity())?;
        Ok(self.cmp_unchecked(t, u))
    }

    pub(crate) fn cmp_unchecked(&self, t: &Term, u: &Term) -> Ordering {
        let lex = || {
            self.perm
                .iter()
                .map(|&i| t.exps[i].cmp(&u.exps[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        };
        match self.kind {
            OrderingKind::Lex => lex(),
            OrderingKind::DegLex => t.degree().cmp(&u.degree()).then_with(lex),
            OrderingKind::DegRevLex => t.degree().cmp(&u.degree()).then_with(|| {
                cmp_degrevlex_within_degree(&t.exps, &u.exps, self.perm.iter().copied())
            }),
        }
    }
}

/// A finite set of terms of a fixed arity, with the order-ideal predicates
/// and border operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdealSet {
    arity: usize,
    terms: BTreeSet<Term>,
}

impl OrderIdealSet {
    pub fn empty(arity: usize) -> Self {
        OrderIdealSet {
            arity,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut set = OrderIdealSet::empty(arity);
        for t in terms {
            check_arity(arity, t.arity())?;
            set.terms.insert(t);
        }
        Ok(set)
    }

    /// Convenience constructor from exponent vectors.
    pub fn from_exponents(arity: usize, exps: &[&[u32]]) -> Result<Self> {
        Self::from_terms(arity, exps.iter().map(|e| Term::from_exponents(e)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeSet<Term> {
        &self.terms
    }

    /// A copy of the set with `t` added.
    pub fn with(&self, t: Term) -> Self {
        debug_assert_eq!(t.arity(), self.arity);
        let mut next = self.clone();
        next.terms.insert(t);
        next
    }

    /// The sorted exponent vectors; the identity used for deduplication.
    pub fn key(&self) -> Vec<Vec<u32>> {
        self.terms.iter().map(|t| t.exponents().to_vec()).collect()
    }

    /// Closed under divisors: every `t / x_i` of a member is a member.
    pub fn is_order_ideal(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.predecessors().all(|p| self.terms.contains(&p)))
    }

    /// Contains 1, and every other member `t` lies in the border of the set
    /// without `t`, i.e. some `t / x_i` is a member.
    pub fn is_quasi_order_ideal(&self) -> bool {
        self.terms.contains(&Term::one(self.arity))
            && self
                .terms
                .iter()
                .filter(|t| !t.is_one())
                .all(|t| t.predecessors().any(|p| self.terms.contains(&p)))
    }

    /// `(x1*S ∪ ... ∪ xn*S) \ S`, and `{1}` for the empty set.
    pub fn border(&self) -> BTreeSet<Term> {
        if self.terms.is_empty() {
            return BTreeSet::from([Term::one(self.arity)]);
        }
        let mut out = BTreeSet::new();
        for t in &self.terms {
            for i in 0..self.arity {
                let u = t.mul_var(i);
                if !self.terms.contains(&u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Least `k` such that `t = m * t''` with `m` a member and `deg t'' = k`.
    pub fn index_of(&self, t: &Term) -> Result<u32> {
        check_arity(self.arity, t.arity())?;
        self.terms
            .iter()
            .filter(|m| m.divides_unchecked(t))
            .map(|m| t.degree() - m.degree())
            .min()
            .ok_or_else(|| Error::IndexUndefined(t.to_string()))
    }

    /// The part of `f` supported on terms of maximal index. Only defined
    /// relative to an order ideal.
    pub fn border_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_order_ideal() {
            return Err(Error::NotOrderIdeal(self.to_string()));
        }
        check_arity(self.arity, f.arity())?;
        let mut indexed = Vec::with_capacity(f.len());
        for (t, c) in f.terms() {
            indexed.push((self.index_of(t)?, t, c));
        }
        let top = indexed.iter().map(|(k, _, _)| *k).max().unwrap_or(0);
        Polynomial::from_terms(
            f.arity(),
            f.field(),
            indexed
                .into_iter()
                .filter(|(k, _, _)| *k == top)
                .map(|(_, t, c)| (t.clone(), c.clone())),
        )
    }

    /// Border terms `t` such that the set with `t` added is still an order
    /// ideal, i.e. all of `t`'s predecessors are members. `{1}` for the empty
    /// set.
    pub fn expand_candidates(&self) -> Vec<Term> {
        self.border()
            .into_iter()
            .filter(|t| t.predecessors().all(|p| self.terms.contains(&p)))
            .collect()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        SetDisplay { set: self, names }
    }
}

struct SetDisplay<'a> {
    set: &'a OrderIdealSet,
    names: &'a [String],
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.set.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", t.display_with(self.names))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for OrderIdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for OrderIdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
