//! Result accumulation shared by the enumeration engines.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use dashmap::{DashMap, DashSet};
use rayon::prelude::*;

use crate::error::Result;
use crate::evalmat::PointSet;
use crate::field::FieldElement;
use crate::monomials::{OrderIdealSet, Term};
use crate::polys::BorderPair;

/// Controls how the recursive enumerations explore their search trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Explore sibling branches on the rayon thread pool.
    pub parallel: bool,
    /// Skip a branch whose state was already explored. The state of a branch
    /// determines its whole subtree, so this never changes the set of pairs,
    /// only the amount of repeated work.
    pub prune_revisits: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            parallel: false,
            prune_revisits: true,
        }
    }
}

impl EnumerationOptions {
    pub fn parallel() -> Self {
        EnumerationOptions {
            parallel: true,
            ..Self::default()
        }
    }

    /// Every branch is followed to its end, as in the unpruned recursion.
    pub fn literal() -> Self {
        EnumerationOptions {
            prune_revisits: false,
            ..Self::default()
        }
    }
}

/// Pairs found by an enumeration, sorted by their order ideal keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub pairs: Vec<BorderPair>,
    /// Number of recursive step invocations.
    pub branch_count: u64,
    /// Number of complete pairs reached, counting repeats.
    pub raw_count: u64,
}

impl EnumerationResult {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn keys(&self) -> BTreeSet<Vec<Vec<u32>>> {
        self.pairs.iter().map(BorderPair::key).collect()
    }

    pub fn order_ideals(&self) -> impl Iterator<Item = &OrderIdealSet> {
        self.pairs.iter().map(BorderPair::order_ideal)
    }

    pub fn find(&self, o: &OrderIdealSet) -> Option<&BorderPair> {
        self.pairs.iter().find(|p| p.order_ideal() == o)
    }
}

pub(crate) struct Accumulator<K> {
    prune: bool,
    visited: DashSet<K>,
    results: Mutex<BTreeMap<Vec<Vec<u32>>, BorderPair>>,
    branches: AtomicU64,
    raw: AtomicU64,
}

impl<K: Eq + Hash> Accumulator<K> {
    pub fn new(options: &EnumerationOptions) -> Self {
        Accumulator {
            prune: options.prune_revisits,
            visited: DashSet::new(),
            results: Mutex::new(BTreeMap::new()),
            branches: AtomicU64::new(0),
            raw: AtomicU64::new(0),
        }
    }

    pub fn enter(&self) {
        self.branches.fetch_add(1, Ordering::Relaxed);
    }

    pub fn reached_leaf(&self) {
        self.raw.fetch_add(1, Ordering::Relaxed);
    }

    /// False when pruning is on and the state was seen before.
    pub fn first_visit(&self, key: K) -> bool {
        !self.prune || self.visited.insert(key)
    }

    pub fn has_pair(&self, o: &OrderIdealSet) -> bool {
        self.results.lock().expect("result lock").contains_key(&o.key())
    }

    pub fn insert(&self, pair: BorderPair) {
        self.results
            .lock()
            .expect("result lock")
            .entry(pair.key())
            .or_insert(pair);
    }

    pub fn finish(self) -> EnumerationResult {
        EnumerationResult {
            pairs: self.results.into_inner().expect("result lock").into_values().collect(),
            branch_count: self.branches.into_inner(),
            raw_count: self.raw.into_inner(),
        }
    }
}

pub(crate) fn for_each<T: Send>(parallel: bool, items: Vec<T>, f: impl Fn(T) + Sync + Send) {
    if parallel {
        items.into_par_iter().for_each(f);
    } else {
        items.into_iter().for_each(f);
    }
}

/// Memoized evaluation vectors for one point set.
pub(crate) struct EvalCache<'a> {
    points: &'a PointSet,
    cache: DashMap<Term, std::sync::Arc<Vec<FieldElement>>>,
}

impl<'a> EvalCache<'a> {
    pub fn new(points: &'a PointSet) -> Self {
        EvalCache {
            points,
            cache: DashMap::new(),
        }
    }

    pub fn get(&self, t: &Term) -> Result<std::sync::Arc<Vec<FieldElement>>> {
        if let Some(v) = self.cache.get(t) {
            return Ok(v.clone());
        }
        let v = std::sync::Arc::new(self.points.evaluation_vector(t)?);
        self.cache.insert(t.clone(), v.clone());
        Ok(v)
    }
}
