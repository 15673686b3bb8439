//! Point set generators for benchmarks.

use border_core::{FieldElement, FieldSpec, PointSet};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::io::InputError;

/// The grid of all tuples of roots, one list per variable. It is the zero
/// set of the complete intersection cut out by the univariate polynomials
/// with those roots.
pub fn generate_complete_intersection(roots: &[Vec<FieldElement>], field: FieldSpec) -> Result<PointSet, InputError> {
    if roots.is_empty() || roots.iter().any(Vec::is_empty) {
        return Err(InputError::new("every variable needs at least one root"));
    }
    for (v, list) in roots.iter().enumerate() {
        for (i, a) in list.iter().enumerate() {
            if a.spec() != field {
                return Err(InputError::new(format!("root {a} of variable {} is not in {field}", v + 1)));
            }
            if list[..i].contains(a) {
                return Err(InputError::new(format!("root {a} repeated for variable {}", v + 1)));
            }
        }
    }
    let mut points: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for list in roots {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a.clone());
                    p
                })
            })
            .collect();
    }
    Ok(PointSet::new(field, points)?)
}

/// `s` distinct random points in `n` variables from a seeded SplitMix64
/// stream. Over a prime field coordinates are uniform residues; over the
/// rationals they are integers in `[-range, range]`. Repeats are resampled.
pub fn generate_random(field: FieldSpec, s: usize, n: usize, seed: u64, range: u64) -> Result<PointSet, InputError> {
    if s == 0 || n == 0 {
        return Err(InputError::new("need at least one point and one variable"));
    }
    let per_coord: u128 = match field.modulus() {
        Some(p) => p as u128,
        None => 2 * range as u128 + 1,
    };
    if per_coord.checked_pow(n as u32).is_some_and(|total| total < s as u128) {
        return Err(InputError::new(format!("only {per_coord}^{n} distinct points exist, {s} requested")));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut points: Vec<Vec<FieldElement>> = Vec::with_capacity(s);
    while points.len() < s {
        let p: Vec<FieldElement> = (0..n)
            .map(|_| match field.modulus() {
                Some(m) => field.from_i64(rng.random_range(0..m) as i64),
                None => field.from_i64(rng.random_range(-(range as i64)..=range as i64)),
            })
            .collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Ok(PointSet::new(field, points)?)
}
