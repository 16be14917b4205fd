//! Permutations, compositions and the (strong) Bruhat order.
//!
//! Permutations are stored in one-line notation with values `1..=n`.
//! Products compose as functions: `(u * v)(i) = u(v(i))`, so right
//! multiplication by `s_i` swaps the entries in positions `i` and `i + 1`
//! while left multiplication swaps the values `i` and `i + 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `entries` is a bijection on `[n]`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n {
                return Err(Error::domain(
                    "permutation",
                    format!("value {v} outside [1, {n}]"),
                ));
            }
            if seen[v] {
                return Err(Error::domain(
                    "permutation",
                    format!("value {v} repeated; not a bijection"),
                ));
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The longest element `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// The adjacent transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_simple_index(n, i)?;
        Ok(Permutation::identity(n).swap_positions(i))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `w(i)` for 1-indexed `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// The position holding value `v`, i.e. `w^{-1}(v)`.
    pub fn position_of(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value in range") + 1
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self * other` as composition of functions.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::dimension("compose", self.degree(), other.degree()));
        }
        Ok(Permutation(
            other.0.iter().map(|&v| self.0[v - 1]).collect(),
        ))
    }

    /// `w * s_i`: swap the entries at positions `i` and `i + 1`.
    pub fn swap_positions(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Permutation(w)
    }

    /// `s_i * w`: swap the values `i` and `i + 1`.
    pub fn swap_values(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&v| {
                    if v == i {
                        i + 1
                    } else if v == i + 1 {
                        i
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(Permutation)
    }

    /// A reduced word obtained by repeatedly peeling off the leftmost descent.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.degree()).find(|&i| w.at(i) > w.at(i + 1)) {
            rev.push(i);
            w = w.swap_positions(i);
        }
        rev.reverse();
        ReducedWord {
            n: self.degree(),
            indices: rev,
        }
    }

    /// Elements covered by `self` in Bruhat order: `w * t_{ij}` with
    /// `w(i) > w(j)` and no value strictly between them in positions `i < k < j`.
    pub fn bruhat_lower_covers(&self) -> Vec<Permutation> {
        let w = &self.0;
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] && !(i + 1..j).any(|k| w[j] < w[k] && w[k] < w[i]) {
                    let mut v = w.clone();
                    v.swap(i, j);
                    out.push(Permutation(v));
                }
            }
        }
        out
    }
}

fn check_simple_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::domain(
            "index",
            format!(
                "simple transposition s_{i} outside [1, {}]",
                n.saturating_sub(1)
            ),
        ));
    }
    Ok(())
}

/// Digit string for `n <= 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        Error::parse("permutation", format!("'{}' is not an integer", t.trim()))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            if s.chars().count() > 9 {
                return Err(Error::parse(
                    "permutation",
                    "digit strings only cover n <= 9; use commas for larger n",
                ));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse("permutation", format!("'{c}' is not a digit")))
                })
                .collect::<Result<_>>()?
        };
        if entries.is_empty() {
            return Err(Error::parse("permutation", "empty"));
        }
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A vector of non-negative parts; its length is fixed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn zeros(n: usize) -> Self {
        Composition(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `α_i` for 1-indexed `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Weakly decreasing compositions are partitions.
    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1])
    }

    /// First position `r` (1-indexed) with `α_r < α_{r+1}`.
    pub fn first_ascent(&self) -> Option<usize> {
        (1..self.len()).find(|&r| self.at(r) < self.at(r + 1))
    }

    /// Last position `r` (1-indexed) with `α_r < α_{r+1}`.
    pub fn last_ascent(&self) -> Option<usize> {
        (1..self.len()).rev().find(|&r| self.at(r) < self.at(r + 1))
    }

    /// `α · s_r`: swap the parts in positions `r` and `r + 1`.
    pub fn swap_adjacent(&self, r: usize) -> Self {
        let mut p = self.0.clone();
        p.swap(r - 1, r);
        Composition(p)
    }

    /// Every composition of length `n` with parts at most `max_part`,
    /// in lexicographic order.
    pub fn all(n: usize, max_part: u32) -> impl Iterator<Item = Composition> {
        (0..n)
            .map(|_| 0..=max_part)
            .multi_cartesian_product()
            .filter(move |_| n > 0)
            .map(Composition)
            .chain((n == 0).then(|| Composition(Vec::new())))
    }
}

impl From<&Permutation> for Composition {
    fn from(w: &Permutation) -> Self {
        Composition(w.entries().iter().map(|&v| v as u32).collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse("composition", "empty"));
        }
        s.split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| {
                    Error::parse(
                        "composition",
                        format!("'{}' is not a non-negative integer", t.trim()),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

/// A word `i_1 ... i_k` in the adjacent transpositions of `S_n` whose product
/// has length exactly `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    n: usize,
    indices: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        for &i in &indices {
            check_simple_index(n, i)?;
        }
        let w = word_product(n, &indices);
        if w.length() != indices.len() {
            return Err(Error::domain(
                "reduced word",
                format!(
                    "product has length {} but the word has {} letters",
                    w.length(),
                    indices.len()
                ),
            ));
        }
        Ok(ReducedWord { n, indices })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn product(&self) -> Permutation {
        word_product(self.n, &self.indices)
    }
}

/// `s_{i_1} s_{i_2} ... s_{i_k}` in `S_n`, reduced or not.
pub fn word_product(n: usize, indices: &[usize]) -> Permutation {
    indices
        .iter()
        .fold(Permutation::identity(n), |w, &i| w.swap_positions(i))
}

/// Right action `v · w = (v_{w_1}, ..., v_{w_n})`.
pub fn act<T: Clone>(v: &[T], w: &Permutation) -> Result<Vec<T>> {
    if v.len() != w.degree() {
        return Err(Error::dimension("act", w.degree(), v.len()));
    }
    Ok(w.entries().iter().map(|&i| v[i - 1].clone()).collect())
}

/// Strong Bruhat order by the prefix-dominance criterion:
/// `u <= w` iff `#{a <= i : u(a) >= j} <= #{a <= i : w(a) >= j}` for all `i, j`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    let n = w.degree();
    if u.degree() != n {
        return Err(Error::dimension("bruhat", n, u.degree()));
    }
    // count_x[j] = #{a <= i : x(a) >= j}
    let mut count_u = vec![0usize; n + 2];
    let mut count_w = vec![0usize; n + 2];
    for i in 1..=n {
        for c in count_u.iter_mut().take(u.at(i) + 1).skip(1) {
            *c += 1;
        }
        for c in count_w.iter_mut().take(w.at(i) + 1).skip(1) {
            *c += 1;
        }
        if (1..=n).any(|j| count_u[j] > count_w[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lower interval `[e, w]`, sorted. Found by walking Bruhat covers downward.
pub fn lower_interval(w: &Permutation) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(v) = queue.pop_front() {
        for c in v.bruhat_lower_covers() {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// `λ(α)`: the parts of `α` sorted into weakly decreasing order.
pub fn lambda_of(alpha: &Composition) -> Composition {
    let mut p = alpha.0.clone();
    p.sort_unstable_by(|a, b| b.cmp(a));
    Composition(p)
}

/// `w(α)`, the shortest permutation with `λ(α) · w(α) = α`.
///
/// Scans the distinct part values from largest to smallest and hands out
/// consecutive labels to their positions from left to right.
pub fn w_of(alpha: &Composition) -> Permutation {
    let n = alpha.len();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal parts keep left-to-right order
    order.sort_by(|&a, &b| alpha.0[b].cmp(&alpha.0[a]));
    let mut w = vec![0; n];
    for (label, &pos) in order.iter().enumerate() {
        w[pos] = label + 1;
    }
    Permutation(w)
}

/// The composition order: `β <= α` iff `λ(β) = λ(α)` and `w(β) <= w(α)`.
pub fn composition_leq(beta: &Composition, alpha: &Composition) -> Result<bool> {
    if beta.len() != alpha.len() {
        return Err(Error::dimension(
            "composition order",
            alpha.len(),
            beta.len(),
        ));
    }
    if lambda_of(beta) != lambda_of(alpha) {
        return Ok(false);
    }
    bruhat_leq(&w_of(beta), &w_of(alpha))
}

/// `V(α) = {β : β <= α}`, computed as `{λ(α) · σ : σ <= w(α)}` and returned
/// in lexicographic order.
pub fn vertex_compositions(alpha: &Composition) -> Vec<Composition> {
    let lambda = lambda_of(alpha);
    lower_interval(&w_of(alpha))
        .iter()
        .map(|sigma| Composition(act(&lambda.0, sigma).expect("same length")))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Brute-force characterizations used to cross-check the fast routines.
pub mod oracle {
    use super::*;

    /// `{σ : σ <= w}` via the Subword Property: products of the reduced
    /// subexpressions of one fixed reduced word of `w`.
    pub fn subword_lower_interval(w: &Permutation) -> BTreeSet<Permutation> {
        let n = w.degree();
        let word = w.reduced_word();
        let letters = word.indices();
        let k = letters.len();
        let mut out = BTreeSet::new();
        for mask in 0u64..(1u64 << k) {
            let sub: Vec<usize> = (0..k)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| letters[b])
                .collect();
            let p = word_product(n, &sub);
            if p.length() == sub.len() {
                out.insert(p);
            }
        }
        out
    }

    pub fn bruhat_leq_subword(u: &Permutation, w: &Permutation) -> bool {
        u.degree() == w.degree() && subword_lower_interval(w).contains(u)
    }

    /// Everything reachable from `α` by swaps `t_{i,j}` with `i < j` and
    /// `α_i < α_j`, `α` included.
    pub fn searles_lower_set(alpha: &Composition) -> BTreeSet<Composition> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![alpha.clone()];
        seen.insert(alpha.clone());
        while let Some(a) = stack.pop() {
            let n = a.len();
            for i in 0..n {
                for j in i + 1..n {
                    if a.0[i] < a.0[j] {
                        let mut b = a.0.clone();
                        b.swap(i, j);
                        let b = Composition(b);
                        if seen.insert(b.clone()) {
                            stack.push(b);
                        }
                    }
                }
            }
        }
        seen
    }

    pub fn composition_leq_searles(beta: &Composition, alpha: &Composition) -> bool {
        searles_lower_set(alpha).contains(beta)
    }

    /// All permutations of minimal length sending `λ(α)` to `α`, by an
    /// exhaustive search of `S_n`.
    pub fn shortest_sorting_permutations(alpha: &Composition) -> Vec<Permutation> {
        let lambda = lambda_of(alpha);
        let candidates: Vec<Permutation> = Permutation::all(alpha.len())
            .filter(|s| act(lambda.parts(), s).unwrap() == alpha.parts())
            .collect();
        let best = candidates.iter().map(Permutation::length).min();
        candidates
            .into_iter()
            .filter(|s| Some(s.length()) == best)
            .collect()
    }

    /// `V(α)` by its definition: every rearrangement `β` of `α` with `β <= α`.
    pub fn vertex_compositions_by_definition(alpha: &Composition) -> BTreeSet<Composition> {
        let lambda = lambda_of(alpha);
        Permutation::all(alpha.len())
            .map(|s| Composition(act(lambda.parts(), &s).unwrap()))
            .filter(|b| composition_leq(b, alpha).unwrap())
            .collect()
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn reduced_word_round_trips(w in (1usize..8).prop_flat_map(permutation)) {
            let rw = w.reduced_word();
            prop_assert_eq!(rw.len(), w.length());
            prop_assert_eq!(rw.product(), w);
        }

        #[test]
        fn bruhat_is_compatible_with_length(
            (u, w) in (1usize..7).prop_flat_map(|n| (permutation(n), permutation(n)))
        ) {
            if bruhat_leq(&u, &w).unwrap() {
                prop_assert!(u.length() <= w.length());
                prop_assert!(bruhat_leq(&u.inverse(), &w.inverse()).unwrap());
            }
        }

        #[test]
        fn w_of_sorts_lambda(parts in proptest::collection::vec(0u32..5, 0..8)) {
            let alpha = Composition::new(parts);
            let w = w_of(&alpha);
            prop_assert_eq!(act(lambda_of(&alpha).parts(), &w).unwrap(), alpha.parts().to_vec());
        }
    }
}
