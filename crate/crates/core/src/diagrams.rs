//! Diagrams: sets of boxes in an `n × n` grid, rows numbered top to bottom.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::{Composition, Permutation};
use crate::subset::{Subset, MAX_GROUND};

/// One column of a diagram viewed as a subset of `[n]` (its occupied rows).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    n: usize,
    rows: Subset,
}

impl Column {
    pub fn new(n: usize, rows: Subset) -> Result<Self> {
        check_grid(n)?;
        if !rows.is_subset_of(Subset::full(n)) {
            return Err(Error::domain(
                "column",
                format!("rows {rows} not contained in [1, {n}]"),
            ));
        }
        Ok(Column { n, rows })
    }

    pub fn from_rows<I: IntoIterator<Item = usize>>(n: usize, rows: I) -> Result<Self> {
        check_grid(n)?;
        Ok(Column {
            n,
            rows: Subset::from_elements(n, rows)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Subset {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, row: usize) -> bool {
        self.rows.contains(row)
    }

    /// The column as a one-column diagram (placed in column 1).
    pub fn to_diagram(&self) -> Diagram {
        let mut columns = vec![Subset::empty(); self.n];
        if self.n > 0 {
            columns[0] = self.rows;
        }
        Diagram { n: self.n, columns }
    }
}

/// A diagram in `[n]^2`. Boxes are `(row, col)` pairs, 1-indexed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: usize,
    columns: Vec<Subset>,
}

fn check_grid(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::size("grid size", MAX_GROUND, n));
    }
    Ok(())
}

impl Diagram {
    pub fn empty(n: usize) -> Result<Self> {
        check_grid(n)?;
        Ok(Diagram {
            n,
            columns: vec![Subset::empty(); n],
        })
    }

    /// Builds a diagram from `(row, col)` boxes; rejects boxes outside the
    /// grid and duplicates.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, boxes: I) -> Result<Self> {
        let mut d = Diagram::empty(n)?;
        for (i, j) in boxes {
            if i == 0 || i > n || j == 0 || j > n {
                return Err(Error::domain(
                    "boxes",
                    format!("box ({i},{j}) outside the {n}x{n} grid"),
                ));
            }
            if d.columns[j - 1].contains(i) {
                return Err(Error::domain("boxes", format!("duplicate box ({i},{j})")));
            }
            d.columns[j - 1].insert(i);
        }
        Ok(d)
    }

    /// Assembles a diagram from its columns `D_1, ..., D_n`.
    pub fn from_columns(n: usize, columns: Vec<Subset>) -> Result<Self> {
        check_grid(n)?;
        if columns.len() != n {
            return Err(Error::dimension("columns", n, columns.len()));
        }
        let full = Subset::full(n);
        if let Some((j, c)) = columns
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_subset_of(full))
        {
            return Err(Error::domain(
                "columns",
                format!("column {} has rows {c} outside [1, {n}]", j + 1),
            ));
        }
        Ok(Diagram { n, columns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `#D`.
    pub fn len(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        col >= 1 && col <= self.n && self.columns[col - 1].contains(row)
    }

    /// `D_j` for `1 <= j <= n`.
    pub fn column(&self, j: usize) -> Result<Column> {
        if j == 0 || j > self.n {
            return Err(Error::domain(
                "column",
                format!("index {j} outside [1, {}]", self.n),
            ));
        }
        Ok(Column {
            n: self.n,
            rows: self.columns[j - 1],
        })
    }

    pub fn columns(&self) -> impl Iterator<Item = Column> + '_ {
        self.columns
            .iter()
            .map(move |&rows| Column { n: self.n, rows })
    }

    pub fn column_sets(&self) -> &[Subset] {
        &self.columns
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.columns[j - 1].contains(i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// One line per row, `□` for a box and `.` for an empty cell.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                s.push(if self.contains(i, j) { '□' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            n: self.n,
            boxes: self.boxes().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(doc: &DiagramJson) -> Result<Self> {
        Diagram::new(doc.n, doc.boxes.iter().map(|b| (b[0], b[1])))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, {:?})", self.n, self.boxes())
    }
}

/// `{"n": 5, "boxes": [[1,1],[2,4], ...]}` with boxes sorted row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub n: usize,
    pub boxes: Vec<[usize; 2]>,
}

/// The Rothe diagram `D(w) = {(i, j) : j < w_i and w^{-1}(j) > i}`.
pub fn rothe(w: &Permutation) -> Result<Diagram> {
    let n = w.degree();
    let inv = w.inverse();
    let mut d = Diagram::empty(n)?;
    for i in 1..=n {
        for j in 1..w.at(i) {
            if inv.at(j) > i {
                d.columns[j - 1].insert(i);
            }
        }
    }
    Ok(d)
}

/// The skyline diagram `D(α)`: the first `α_i` boxes of row `i`, in an
/// `n × n` grid with `n = len(α)`.
pub fn skyline(alpha: &Composition) -> Result<Diagram> {
    let n = alpha.len();
    let mut d = Diagram::empty(n)?;
    for i in 1..=n {
        let a = alpha.at(i) as usize;
        if a > n {
            return Err(Error::domain(
                "composition",
                format!("part {a} in row {i} exceeds grid size {n}"),
            ));
        }
        for j in 1..=a {
            d.columns[j - 1].insert(i);
        }
    }
    Ok(d)
}
