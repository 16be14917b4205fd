//! Greedy fillings of diagrams and the rank functions of Schubert matroids.
//!
//! A filling of a column assigns positive integers to some of its boxes. The
//! greedy filling `F_π(C)` places `π_1, π_2, ...` in turn, each into the
//! topmost empty box whose row index is at least the value; a value with no
//! such box is skipped. Greedy fillings are column-strict and flagged, and
//! their size is the rank `r_C(S)` of the Schubert matroid `SM_n(C)` on the
//! set of values offered, whatever the order.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{Column, Diagram};
use crate::error::{Error, Result};
use crate::perms::Permutation;
use crate::schubitope::{schubert_matroid_bases, LatticePoint};
use crate::subset::Subset;

/// Grid size accepted by the exhaustive rank oracles.
pub const ORACLE_MAX_N: usize = 12;

/// A partial assignment of positive integers to the boxes of one column.
/// Values are stored per row, so lookups are O(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnFilling {
    column: Column,
    values: Vec<Option<usize>>,
}

impl ColumnFilling {
    pub fn empty(column: Column) -> Self {
        ColumnFilling {
            column,
            values: vec![None; column.n()],
        }
    }

    /// Builds a filling from `(row, value)` pairs; every row must be a box of
    /// the column and rows may not repeat. No flag or strictness condition is
    /// imposed here.
    pub fn from_entries(column: Column, entries: &[(usize, usize)]) -> Result<Self> {
        let mut f = ColumnFilling::empty(column);
        for &(row, value) in entries {
            if !column.contains(row) {
                return Err(Error::domain(
                    "filling",
                    format!("row {row} is not a box of the column"),
                ));
            }
            if value == 0 {
                return Err(Error::domain("filling", "entries must be positive"));
            }
            if f.values[row - 1].replace(value).is_some() {
                return Err(Error::domain(
                    "filling",
                    format!("row {row} assigned twice"),
                ));
            }
        }
        Ok(f)
    }

    pub fn column(&self) -> Column {
        self.column
    }

    pub fn get(&self, row: usize) -> Option<usize> {
        self.values.get(row.wrapping_sub(1)).copied().flatten()
    }

    /// Occupied `(row, value)` pairs from top to bottom.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i + 1, v)))
            .collect()
    }

    /// `|F|`, the number of non-empty boxes.
    pub fn size(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn occupied(&self) -> Subset {
        let mut s = Subset::empty();
        for (row, _) in self.entries() {
            s.insert(row);
        }
        s
    }

    /// Every entry in row `i` is at most `i`.
    pub fn is_flagged(&self) -> bool {
        self.entries().iter().all(|&(row, v)| v <= row)
    }

    /// Entries are pairwise distinct.
    pub fn is_column_strict(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.entries().iter().all(|&(_, v)| seen.insert(v))
    }

    /// Entries strictly increase from top to bottom.
    pub fn is_increasing(&self) -> bool {
        self.entries().windows(2).all(|p| p[0].1 < p[1].1)
    }

    pub fn count_of(&self, value: usize) -> usize {
        self.values.iter().filter(|v| **v == Some(value)).count()
    }

    /// Sorted multiset of the entries.
    pub fn values_sorted(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.values.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

/// `F_π(C)`. `pi` must consist of distinct values in `[n]`.
pub fn fill_column(column: &Column, pi: &[usize]) -> ColumnFilling {
    debug_assert!(
        {
            let mut s = pi.to_vec();
            s.sort_unstable();
            s.windows(2).all(|p| p[0] != p[1]) && s.iter().all(|&v| v >= 1)
        },
        "fill_column needs distinct positive values"
    );
    let mut f = ColumnFilling::empty(*column);
    let mut empty = column.rows().bits();
    for &v in pi {
        if let Some(row) = topmost_at_or_below(empty, v) {
            f.values[row - 1] = Some(v);
            empty &= !(1u64 << (row - 1));
        }
    }
    f
}

/// Smallest row `>= v` whose bit is set in `empty`.
#[inline]
fn topmost_at_or_below(empty: u64, v: usize) -> Option<usize> {
    if v == 0 || v > 64 {
        return None;
    }
    let allowed = empty & (u64::MAX << (v - 1));
    (allowed != 0).then(|| allowed.trailing_zeros() as usize + 1)
}

/// Number of boxes filled by the greedy placement of `pi`, without building
/// the filling.
fn greedy_size(column: &Column, pi: impl IntoIterator<Item = usize>) -> usize {
    let mut empty = column.rows().bits();
    let mut size = 0;
    for v in pi {
        if let Some(row) = topmost_at_or_below(empty, v) {
            empty &= !(1u64 << (row - 1));
            size += 1;
        }
    }
    size
}

/// `F_w(D)`: each column filled independently with the same permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFilling {
    n: usize,
    columns: Vec<ColumnFilling>,
}

impl DiagramFilling {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[ColumnFilling] {
        &self.columns
    }

    /// Value in box `(row, col)`, if the box exists and is filled.
    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.columns.get(col.wrapping_sub(1))?.get(row)
    }

    /// Filled boxes `(row, col, value)` in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if let Some(v) = self.get(i, j) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(ColumnFilling::size).sum()
    }

    /// Number of appearances of `k`.
    pub fn count_of(&self, k: usize) -> usize {
        self.columns.iter().map(|c| c.count_of(k)).sum()
    }

    /// The diagram grid with each box showing its value, or `·` when the box
    /// stayed empty. Cells are separated by spaces once values can have two
    /// digits.
    pub fn to_text(&self) -> String {
        let wide = self.n > 9;
        let mut s = String::new();
        for i in 1..=self.n {
            let cells: Vec<String> = (1..=self.n)
                .map(|j| {
                    let c = &self.columns[j - 1];
                    if !c.column().contains(i) {
                        ".".to_string()
                    } else {
                        c.get(i).map_or("·".to_string(), |v| v.to_string())
                    }
                })
                .collect();
            if wide {
                let cells: Vec<String> = cells.iter().map(|c| format!("{c:>2}")).collect();
                s.push_str(&cells.join(" "));
            } else {
                s.push_str(&cells.concat());
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> FillingJson {
        FillingJson {
            n: self.n,
            entries: self
                .entries()
                .into_iter()
                .map(|(i, j, v)| [i, j, v])
                .collect(),
        }
    }

    /// Reads a filling of `d` back from its JSON form. Entries must sit in
    /// boxes of `d`; no flag or strictness condition is imposed.
    pub fn from_json(d: &Diagram, doc: &FillingJson) -> Result<Self> {
        if doc.n != d.n() {
            return Err(Error::dimension("filling", d.n(), doc.n));
        }
        let mut per_column: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.n()];
        for &[row, col, value] in &doc.entries {
            if !d.contains(row, col) {
                return Err(Error::domain(
                    "filling",
                    format!("({row}, {col}) is not a box of the diagram"),
                ));
            }
            per_column[col - 1].push((row, value));
        }
        let columns = d
            .columns()
            .zip(&per_column)
            .map(|(c, e)| ColumnFilling::from_entries(c, e))
            .collect::<Result<_>>()?;
        Ok(DiagramFilling { n: d.n(), columns })
    }
}

/// `{"n": 6, "entries": [[row, col, value], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillingJson {
    pub n: usize,
    pub entries: Vec<[usize; 3]>,
}

fn check_degree(d: &Diagram, w: &Permutation) -> Result<()> {
    if w.degree() != d.n() {
        return Err(Error::dimension("permutation degree", d.n(), w.degree()));
    }
    Ok(())
}

/// `F_w(D)`.
pub fn fill_diagram(d: &Diagram, w: &Permutation) -> Result<DiagramFilling> {
    check_degree(d, w)?;
    let columns = d.columns().map(|c| fill_column(&c, w.entries())).collect();
    Ok(DiagramFilling { n: d.n(), columns })
}

/// `x(w)`: `x_k` counts the appearances of `k` in `F_w(D)`.
pub fn vertex_vector(d: &Diagram, w: &Permutation) -> Result<LatticePoint> {
    check_degree(d, w)?;
    Ok(vertex_vector_unchecked(d, w))
}

pub(crate) fn vertex_vector_unchecked(d: &Diagram, w: &Permutation) -> LatticePoint {
    let mut x = vec![0i64; d.n()];
    for c in d.column_sets() {
        let mut empty = c.bits();
        for &v in w.entries() {
            if empty == 0 {
                break;
            }
            if let Some(row) = topmost_at_or_below(empty, v) {
                empty &= !(1u64 << (row - 1));
                x[v - 1] += 1;
            }
        }
    }
    LatticePoint::new(x)
}

/// `r_C(S) = |F_π(C)|` for `π` the elements of `S` in increasing order.
pub fn rank_filling(column: &Column, s: Subset) -> usize {
    let r = greedy_size(column, s.iter());
    debug_assert_eq!(
        r,
        greedy_size(column, s.to_vec().into_iter().rev()),
        "greedy rank depends on the order of S"
    );
    r
}

/// `r_C(S)` for an explicit ordering `pi` of `S`.
pub fn rank_filling_ordered(column: &Column, pi: &[usize]) -> usize {
    greedy_size(column, pi.iter().copied())
}

fn check_oracle_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_N {
        return Err(Error::size("oracle grid size", ORACLE_MAX_N, n));
    }
    Ok(())
}

/// `max{#(S ∩ B) : B a basis of SM_n(C)}`, by listing the bases.
pub fn rank_brute(column: &Column, s: Subset) -> Result<usize> {
    check_oracle_size(column.n())?;
    let bases = schubert_matroid_bases(column.rows(), column.n())?;
    Ok(bases
        .iter()
        .map(|b| b.intersection(s).len())
        .max()
        .unwrap_or(0))
}

/// `max{|F| : F ∈ F(C, S)}` over all column-strict flagged fillings of `C`
/// with entries in `S`. Exhaustive search, memoized on (box, values used).
pub fn rank_max_filling(column: &Column, s: Subset) -> Result<usize> {
    check_oracle_size(column.n())?;
    let rows = column.rows().to_vec();
    let values = s.to_vec();
    let mut memo = HashMap::new();
    Ok(best_filling(&rows, &values, 0, 0, &mut memo))
}

fn best_filling(
    rows: &[usize],
    values: &[usize],
    k: usize,
    used: u64,
    memo: &mut HashMap<(usize, u64), usize>,
) -> usize {
    if k == rows.len() {
        return 0;
    }
    if let Some(&m) = memo.get(&(k, used)) {
        return m;
    }
    // leave box k empty
    let mut best = best_filling(rows, values, k + 1, used, memo);
    for (idx, &v) in values.iter().enumerate() {
        if used & (1 << idx) == 0 && v <= rows[k] {
            best = best.max(1 + best_filling(rows, values, k + 1, used | (1 << idx), memo));
        }
    }
    memo.insert((k, used), best);
    best
}

/// `r_D(S) = Σ_j r_{D_j}(S)`.
pub fn rank_diagram(d: &Diagram, s: Subset) -> usize {
    d.columns().map(|c| rank_filling(&c, s)).sum()
}

/// Rank of every subset of `[n]`, indexed by mask. Columns are independent,
/// so they are processed in parallel.
pub fn rank_table(d: &Diagram) -> Result<Vec<i64>> {
    let n = d.n();
    if n > 24 {
        return Err(Error::size("rank table dimension", 24, n));
    }
    let cols: Vec<Column> = d.columns().collect();
    Ok((0u64..(1u64 << n))
        .into_par_iter()
        .map(|m| {
            let s = Subset::from_bits(m);
            cols.iter().map(|c| rank_filling(c, s) as i64).sum()
        })
        .collect())
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(what.to_string()))
    }
}

/// `sort(F)`: keep the occupied boxes, rearrange the entries increasingly
/// from top to bottom. The input must be column-strict and flagged; the
/// output is then flagged as well.
pub fn sort_filling(f: &ColumnFilling) -> Result<ColumnFilling> {
    require(f.is_column_strict(), "sort needs a column-strict filling")?;
    require(f.is_flagged(), "sort needs a flagged filling")?;
    let entries = f.entries();
    let mut vals: Vec<usize> = entries.iter().map(|&(_, v)| v).collect();
    vals.sort_unstable();
    let mut out = ColumnFilling::empty(f.column);
    for (&(row, _), v) in entries.iter().zip(vals) {
        out.values[row - 1] = Some(v);
    }
    require(out.is_flagged(), "sorted filling is not flagged")?;
    Ok(out)
}

/// `standard(F)`: for the entries `a_1 < ... < a_k` in turn, move `a_t` up
/// into the highest empty box above it whose row index is at least `a_t`,
/// if there is one. The input must be column-strict, flagged and increasing.
pub fn standardize(f: &ColumnFilling) -> Result<ColumnFilling> {
    require(
        f.is_column_strict(),
        "standardize needs a column-strict filling",
    )?;
    require(f.is_flagged(), "standardize needs a flagged filling")?;
    require(f.is_increasing(), "standardize needs an increasing filling")?;
    let mut out = f.clone();
    for (start_row, a) in f.entries() {
        let target = f
            .column
            .rows()
            .iter()
            .take_while(|&r| r < start_row)
            .find(|&r| r >= a && out.values[r - 1].is_none());
        if let Some(r) = target {
            out.values[start_row - 1] = None;
            out.values[r - 1] = Some(a);
        }
    }
    require(
        out.is_flagged() && out.is_increasing(),
        "standardized filling left F_<=(C, S)",
    )?;
    Ok(out)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    /// A random column-strict flagged filling of a random column of `[8]`.
    fn flagged_filling() -> impl Strategy<Value = ColumnFilling> {
        (
            1u64..256,
            proptest::collection::vec(any::<prop::sample::Index>(), 8),
            any::<u64>(),
        )
            .prop_map(|(rows, picks, mask)| {
                let column = Column::new(8, Subset::from_bits(rows)).unwrap();
                let mut used = Subset::empty();
                let mut entries = Vec::new();
                for (k, row) in column.rows().iter().enumerate() {
                    if mask & (1 << k) == 0 {
                        continue;
                    }
                    let free: Vec<usize> = (1..=row).filter(|v| !used.contains(*v)).collect();
                    if free.is_empty() {
                        continue;
                    }
                    let v = *picks[k].get(&free);
                    used.insert(v);
                    entries.push((row, v));
                }
                ColumnFilling::from_entries(column, &entries).unwrap()
            })
    }

    fn ordering(n: usize) -> impl Strategy<Value = (Subset, Vec<usize>)> {
        (0u64..(1 << n)).prop_flat_map(|m| {
            let s = Subset::from_bits(m);
            Just(s.to_vec()).prop_shuffle().prop_map(move |pi| (s, pi))
        })
    }

    proptest! {
        #[test]
        fn greedy_filling_is_strict_and_flagged(rows in 0u64..512, (_, pi) in ordering(9)) {
            let column = Column::new(9, Subset::from_bits(rows)).unwrap();
            let f = fill_column(&column, &pi);
            prop_assert!(f.is_column_strict());
            prop_assert!(f.is_flagged());
        }

        #[test]
        fn greedy_rank_ignores_order(rows in 0u64..512, (s, pi) in ordering(9)) {
            let column = Column::new(9, Subset::from_bits(rows)).unwrap();
            prop_assert_eq!(rank_filling_ordered(&column, &pi), rank_filling(&column, s));
        }

        #[test]
        fn sort_preserves_boxes_and_values(f in flagged_filling()) {
            let s = sort_filling(&f).unwrap();
            prop_assert_eq!(s.size(), f.size());
            prop_assert_eq!(s.occupied(), f.occupied());
            prop_assert_eq!(s.values_sorted(), f.values_sorted());
            prop_assert!(s.is_flagged() && s.is_increasing());
        }

        #[test]
        fn standardize_is_idempotent(f in flagged_filling()) {
            let sorted = sort_filling(&f).unwrap();
            let s = standardize(&sorted).unwrap();
            prop_assert_eq!(s.size(), f.size());
            prop_assert_eq!(s.values_sorted(), f.values_sorted());
            prop_assert!(s.is_flagged() && s.is_increasing() && s.is_column_strict());
            prop_assert_eq!(standardize(&s).unwrap(), s);
        }
    }
}
