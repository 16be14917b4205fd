//! Schubitopes: their halfspace description through parenthesis words, the
//! Schubert matroids of the columns, and vertex enumeration by greedy
//! fillings.

mod certify;
mod hrep;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{skyline, Diagram};
use crate::error::{Error, Result};
use crate::exact::{rational, Rational};
use crate::fillings::{vertex_vector_unchecked, ORACLE_MAX_N};
use crate::perms::{vertex_compositions, Composition, Permutation};
use crate::subset::Subset;

pub use certify::{
    certify_lattice_vertices, certify_vertices, Certification, Witness, CERTIFY_MAX_N,
};
pub use hrep::{base_polytope, hrep, member, Constraint, HRep, HRepBound, HRepJson, HREP_MAX_N};

/// Largest `n` for which [`vertices`] sweeps all of `S_n`.
pub const SWEEP_MAX_N: usize = 9;

/// An integer point of `R^n`. Orders lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| rational(x)).collect()
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl From<&Composition> for LatticePoint {
    fn from(c: &Composition) -> Self {
        LatticePoint(c.parts().iter().map(|&p| p as i64).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Paren {
    Open,
    Close,
    Star,
}

/// The word read down one column: `(` for a non-box row in `S`, `)` for a
/// box row outside `S`, `★` for a box row in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParenWord(Vec<Paren>);

impl ParenWord {
    pub fn symbols(&self) -> &[Paren] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Matched `()` pairs; each `)` closes the most recent unmatched `(`.
    pub fn matched_pairs(&self) -> usize {
        let mut open = 0usize;
        let mut pairs = 0;
        for s in &self.0 {
            match s {
                Paren::Open => open += 1,
                Paren::Close if open > 0 => {
                    open -= 1;
                    pairs += 1;
                }
                _ => {}
            }
        }
        pairs
    }

    pub fn stars(&self) -> usize {
        self.0.iter().filter(|s| **s == Paren::Star).count()
    }

    /// Matched pairs plus stars.
    pub fn theta(&self) -> usize {
        self.matched_pairs() + self.stars()
    }
}

impl fmt::Display for ParenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Paren::Open => "(",
                Paren::Close => ")",
                Paren::Star => "★",
            })?;
        }
        Ok(())
    }
}

/// `word_{j,S}(D)`.
pub fn column_word(d: &Diagram, j: usize, s: Subset) -> Result<ParenWord> {
    let column = d.column(j)?;
    Ok(ParenWord(
        (1..=d.n())
            .filter_map(|i| match (column.contains(i), s.contains(i)) {
                (false, true) => Some(Paren::Open),
                (true, false) => Some(Paren::Close),
                (true, true) => Some(Paren::Star),
                (false, false) => None,
            })
            .collect(),
    ))
}

fn column_theta(rows: Subset, n: usize, s: Subset) -> usize {
    let mut open = 0usize;
    let mut total = 0;
    for i in 1..=n {
        match (rows.contains(i), s.contains(i)) {
            (false, true) => open += 1,
            (true, false) if open > 0 => {
                open -= 1;
                total += 1;
            }
            (true, true) => total += 1,
            _ => {}
        }
    }
    total
}

/// `θ_D^j(S)` for `j = 1, ..., n`.
pub fn theta_columns(d: &Diagram, s: Subset) -> Vec<usize> {
    d.column_sets()
        .iter()
        .map(|&c| column_theta(c, d.n(), s))
        .collect()
}

/// `θ_D(S) = Σ_j θ_D^j(S)`. Elements of `S` beyond `n` never appear in a
/// column word and are ignored.
pub fn theta(d: &Diagram, s: Subset) -> usize {
    theta_columns(d, s).into_iter().sum()
}

/// Gale order on sets of equal size: sorted entries dominated entrywise.
pub fn gale_leq(t: Subset, s: Subset) -> bool {
    t.len() == s.len() && t.iter().zip(s.iter()).all(|(a, b)| a <= b)
}

/// Bases of the Schubert matroid `SM_n(S)`: all `T <= S` in Gale order,
/// listed in increasing mask order.
pub fn schubert_matroid_bases(s: Subset, n: usize) -> Result<Vec<Subset>> {
    if n > ORACLE_MAX_N {
        return Err(Error::size("matroid ground set", ORACLE_MAX_N, n));
    }
    if !s.is_subset_of(Subset::full(n)) {
        return Err(Error::domain(
            "set",
            format!("{s:?} is not a subset of [1, {n}]"),
        ));
    }
    Ok(Subset::of_size(n, s.len())
        .filter(|&t| gale_leq(t, s))
        .collect())
}

/// Edmonds' greedy point for a set function `f` and the order `w`:
/// `x_{w_k} = f({w_1..w_k}) - f({w_1..w_{k-1}})`.
pub fn edmonds_vertex<F>(n: usize, f: F, w: &Permutation) -> Result<LatticePoint>
where
    F: Fn(Subset) -> i64,
{
    if w.degree() != n {
        return Err(Error::dimension("permutation degree", n, w.degree()));
    }
    let mut x = vec![0i64; n];
    let mut prefix = Subset::empty();
    let mut prev = f(prefix);
    for &v in w.entries() {
        prefix.insert(v);
        let cur = f(prefix);
        x[v - 1] = cur - prev;
        prev = cur;
    }
    Ok(LatticePoint(x))
}

fn check_sweep(n: usize) -> Result<()> {
    if n > SWEEP_MAX_N {
        return Err(Error::size("vertex sweep dimension", SWEEP_MAX_N, n));
    }
    Ok(())
}

/// `{x(w) : w ∈ S_n}` with the permutations that produce each point.
pub fn vertex_fibers(d: &Diagram) -> Result<BTreeMap<LatticePoint, Vec<Permutation>>> {
    check_sweep(d.n())?;
    let mut fibers: BTreeMap<LatticePoint, Vec<Permutation>> = BTreeMap::new();
    for w in Permutation::all(d.n()) {
        fibers
            .entry(vertex_vector_unchecked(d, &w))
            .or_default()
            .push(w);
    }
    Ok(fibers)
}

/// The vertex set of `S_D`, as the distinct greedy vectors `x(w)` over all
/// of `S_n`. Sorted lexicographically.
pub fn vertices(d: &Diagram) -> Result<Vec<LatticePoint>> {
    let n = d.n();
    check_sweep(n)?;
    if n <= 1 {
        return Ok(Permutation::all(n)
            .map(|w| vertex_vector_unchecked(d, &w))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect());
    }
    // Split S_n by first entry; each block is swept independently.
    let set: BTreeSet<LatticePoint> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            let mut local = BTreeSet::new();
            for tail in itertools::Itertools::permutations(rest.into_iter(), n - 1) {
                let mut entries = Vec::with_capacity(n);
                entries.push(first);
                entries.extend(tail);
                let w = Permutation::new(entries).expect("permutation");
                local.insert(vertex_vector_unchecked(d, &w));
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set.into_iter().collect())
}

/// Vertices of the skyline Schubitope `S_{D(α)}` read off the lower Bruhat
/// interval below `w(α)`.
pub fn skyline_vertices(alpha: &Composition) -> Result<Vec<LatticePoint>> {
    skyline(alpha)?;
    Ok(vertex_compositions(alpha)
        .iter()
        .map(LatticePoint::from)
        .collect())
}

/// The points of `points` that are not convex combinations of the others,
/// deduplicated and sorted. These are the vertices of their convex hull.
///
/// Points maximizing a direction in `{-1,0,1}^n` (ties broken
/// lexicographically) are vertices outright. Every other point is first
/// tested against those vertices and only then against all the points.
pub fn extreme_points(points: &[LatticePoint]) -> Vec<LatticePoint> {
    use crate::exact::lp::convex_combination;

    let distinct: Vec<LatticePoint> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let Some(first) = distinct.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let mut known = BTreeSet::new();
    let directions = (0..n).map(|_| -1i64..=1).multi_cartesian_product();
    for c in directions {
        // later points are lexicographically larger, so max_by_key keeps the lex-max
        let best = distinct
            .iter()
            .enumerate()
            .max_by_key(|(_, p)| p.coords().iter().zip(&c).map(|(x, y)| x * y).sum::<i64>())
            .map(|(k, _)| k);
        if let Some(k) = best {
            known.insert(k);
        }
    }
    let rat: Vec<Vec<Rational>> = distinct.iter().map(LatticePoint::to_rational).collect();
    let found: Vec<Vec<Rational>> = known.iter().map(|&k| rat[k].clone()).collect();
    distinct
        .iter()
        .enumerate()
        .filter(|&(k, _)| {
            if known.contains(&k) {
                return true;
            }
            if convex_combination(&rat[k], &found).is_some() {
                return false;
            }
            let others: Vec<Vec<Rational>> = rat
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, q)| q.clone())
                .collect();
            convex_combination(&rat[k], &others).is_none()
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// `{"vertices": [[3,1,0], ...]}`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSetJson {
    pub vertices: Vec<LatticePoint>,
}

impl VertexSetJson {
    pub fn new(mut vertices: Vec<LatticePoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        VertexSetJson { vertices }
    }
}
