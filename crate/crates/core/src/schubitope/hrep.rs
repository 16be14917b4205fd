use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{theta, LatticePoint};
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::exact::{rational, Rational};
use crate::subset::Subset;

/// Largest dimension for which [`hrep`] lists all `2^n - 2` inequalities.
pub const HREP_MAX_N: usize = 16;

/// A named constraint of an [`HRep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// `Σ x_i = total`.
    Total,
    /// `Σ_{i∈S} x_i <= bound(S)`.
    Subset(Subset),
}

/// `{x : Σ x_i = total, Σ_{i∈S} x_i <= bounds(S)}`. Bounds are stored as
/// given, one per proper nonempty `S`, without removing redundant ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    n: usize,
    total: i64,
    bounds: BTreeMap<Subset, i64>,
}

impl HRep {
    pub fn new(n: usize, total: i64, bounds: BTreeMap<Subset, i64>) -> Result<Self> {
        if n >= crate::subset::MAX_GROUND {
            return Err(Error::size(
                "hrep dimension",
                crate::subset::MAX_GROUND - 1,
                n,
            ));
        }
        let full = Subset::full(n);
        for (&s, &b) in &bounds {
            if s.is_empty() || s == full || !s.is_subset_of(full) {
                return Err(Error::domain(
                    "bounds",
                    format!("{{{s}}} is not a proper nonempty subset of [1, {n}]"),
                ));
            }
            if b < 0 {
                return Err(Error::domain(
                    "bounds",
                    format!("bound {b} for {{{s}}} is negative"),
                ));
            }
        }
        Ok(HRep { n, total, bounds })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn bounds(&self) -> &BTreeMap<Subset, i64> {
        &self.bounds
    }

    pub fn bound(&self, s: Subset) -> Option<i64> {
        self.bounds.get(&s).copied()
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::dimension("point", self.n, got));
        }
        Ok(())
    }

    /// The first violated constraint in the order total, then subsets by
    /// increasing mask, with its left-hand side and bound.
    pub fn first_violation(
        &self,
        p: &[Rational],
    ) -> Result<Option<(Constraint, Rational, Rational)>> {
        self.check_dim(p.len())?;
        let sum: Rational = p.iter().sum();
        let total = rational(self.total);
        if sum != total {
            return Ok(Some((Constraint::Total, sum, total)));
        }
        for (&s, &b) in &self.bounds {
            let lhs: Rational = s.iter().map(|i| &p[i - 1]).sum();
            let b = rational(b);
            if lhs > b {
                return Ok(Some((Constraint::Subset(s), lhs, b)));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool> {
        Ok(self.first_violation(p)?.is_none())
    }

    pub fn contains_lattice(&self, p: &LatticePoint) -> Result<bool> {
        self.check_dim(p.dim())?;
        let x = p.coords();
        if x.iter().sum::<i64>() != self.total {
            return Ok(false);
        }
        Ok(self
            .bounds
            .iter()
            .all(|(s, &b)| s.iter().map(|i| x[i - 1]).sum::<i64>() <= b))
    }

    pub fn to_json(&self) -> HRepJson {
        HRepJson {
            n: self.n,
            total: self.total,
            bounds: self
                .bounds
                .iter()
                .map(|(s, &b)| HRepBound { s: s.to_vec(), b })
                .collect(),
        }
    }

    pub fn from_json(doc: &HRepJson) -> Result<Self> {
        let mut bounds = BTreeMap::new();
        for entry in &doc.bounds {
            let s = Subset::from_elements(doc.n, entry.s.iter().copied())?;
            if bounds.insert(s, entry.b).is_some() {
                return Err(Error::domain(
                    "bounds",
                    format!("subset {{{s}}} listed twice"),
                ));
            }
        }
        HRep::new(doc.n, doc.total, bounds)
    }

    /// First line `n total`, then one `bitmask bound` line per subset.
    pub fn to_hform(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.total);
        for (s, b) in &self.bounds {
            let _ = writeln!(out, "{} {}", s.bits(), b);
        }
        out
    }

    pub fn from_hform(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("hform", "missing header line"))?;
        let (n, total) = two_fields(header, "hform header")?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::parse("hform header", format!("bad dimension '{n}'")))?;
        let total: i64 = total
            .parse()
            .map_err(|_| Error::parse("hform header", format!("bad total '{total}'")))?;
        let mut bounds = BTreeMap::new();
        for line in lines {
            let (mask, b) = two_fields(line, "hform bound")?;
            let mask: u64 = mask
                .parse()
                .map_err(|_| Error::parse("hform bound", format!("bad bitmask '{mask}'")))?;
            let b: i64 = b
                .parse()
                .map_err(|_| Error::parse("hform bound", format!("bad bound '{b}'")))?;
            if bounds.insert(Subset::from_bits(mask), b).is_some() {
                return Err(Error::parse(
                    "hform bound",
                    format!("bitmask {mask} listed twice"),
                ));
            }
        }
        HRep::new(n, total, bounds)
    }
}

fn two_fields<'a>(line: &'a str, field: &str) -> Result<(&'a str, &'a str)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(Error::parse(
            field,
            format!("expected two fields in '{line}'"),
        )),
    }
}

/// `{"n":3, "total":4, "bounds":[{"S":[1],"b":3}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HRepJson {
    pub n: usize,
    pub total: i64,
    pub bounds: Vec<HRepBound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HRepBound {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub b: i64,
}

/// The Schubitope of `d`: total `#D` and `θ_D(S)` for every proper
/// nonempty `S`.
pub fn hrep(d: &Diagram) -> Result<HRep> {
    let n = d.n();
    if n > HREP_MAX_N {
        return Err(Error::size("hrep dimension", HREP_MAX_N, n));
    }
    let subsets: Vec<Subset> = Subset::proper_nonempty(n).collect();
    let bounds: BTreeMap<Subset, i64> = subsets
        .into_par_iter()
        .map(|s| (s, theta(d, s) as i64))
        .collect();
    Ok(HRep {
        n,
        total: d.len() as i64,
        bounds,
    })
}

/// The base polytope of a set function: total `f([n])`, bounds `f(S)`.
pub fn base_polytope<F>(n: usize, f: F) -> Result<HRep>
where
    F: Fn(Subset) -> i64,
{
    if n > HREP_MAX_N {
        return Err(Error::size("hrep dimension", HREP_MAX_N, n));
    }
    let bounds = Subset::proper_nonempty(n).map(|s| (s, f(s))).collect();
    HRep::new(n, f(Subset::full(n)), bounds)
}

/// `p ∈ H`.
pub fn member(h: &HRep, p: &[Rational]) -> Result<bool> {
    h.contains(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::skyline;
    use crate::fillings::rank_diagram;

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::from_elements(n, e.iter().copied()).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    fn h103() -> HRep {
        hrep(&skyline(&"1,0,3".parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn skyline_103_bounds() {
        let h = h103();
        assert_eq!(h.total(), 4);
        let expect = [
            (vec![1], 3),
            (vec![2], 3),
            (vec![3], 3),
            (vec![1, 2], 4),
            (vec![1, 3], 4),
            (vec![2, 3], 3),
        ];
        assert_eq!(h.bounds().len(), 6);
        for (s, b) in expect {
            assert_eq!(h.bound(set(3, &s)), Some(b), "S={s:?}");
        }
    }

    #[test]
    fn small_hreps() {
        let e = hrep(&Diagram::empty(3).unwrap()).unwrap();
        assert_eq!(e.total(), 0);
        assert!(e.bounds().values().all(|&b| b == 0));
        let one = hrep(&Diagram::new(2, [(1, 1)]).unwrap()).unwrap();
        assert_eq!(one.total(), 1);
        assert_eq!(one.bound(set(2, &[1])), Some(1));
        assert_eq!(one.bound(set(2, &[2])), Some(0));
        assert!(hrep(&Diagram::empty(17).unwrap()).is_err());
    }

    #[test]
    fn membership() {
        let h = h103();
        assert!(member(&h, &q(&[2, 1, 1])).unwrap());
        assert!(!member(&h, &q(&[4, 0, 0])).unwrap());
        let (c, lhs, b) = h.first_violation(&q(&[4, 0, 0])).unwrap().unwrap();
        assert_eq!(c, Constraint::Subset(set(3, &[1])));
        assert_eq!((lhs, b), (rational(4), rational(3)));
        assert_eq!(
            h.first_violation(&q(&[1, 1, 1])).unwrap().unwrap().0,
            Constraint::Total
        );
        assert!(h
            .contains_lattice(&LatticePoint::new(vec![1, 0, 3]))
            .unwrap());
        assert!(!h
            .contains_lattice(&LatticePoint::new(vec![0, 0, 4]))
            .unwrap());
        assert!(member(&h, &q(&[1, 1])).is_err());
        let half = Rational::new(3.into(), 2.into());
        assert!(member(&h, &[half.clone(), half, rational(1)]).unwrap());
    }

    #[test]
    fn serialization_round_trips() {
        let h = h103();
        let json = serde_json::to_string(&h.to_json()).unwrap();
        assert!(json.starts_with(r#"{"n":3,"total":4,"bounds":[{"S":[1],"b":3},{"S":[2],"b":3}"#));
        let back: HRepJson = serde_json::from_str(&json).unwrap();
        assert_eq!(HRep::from_json(&back).unwrap(), h);

        let text = h.to_hform();
        assert!(text.starts_with("3 4\n1 3\n2 3\n3 4\n"));
        assert_eq!(HRep::from_hform(&text).unwrap(), h);
        assert!(HRep::from_hform("3 4\n7 1\n").is_err());
        assert!(HRep::from_hform("3\n").is_err());
        assert!(HRep::from_hform("").is_err());
    }

    #[test]
    fn validation() {
        let mut b = BTreeMap::new();
        b.insert(Subset::empty(), 0);
        assert!(HRep::new(2, 0, b).is_err());
        let mut b = BTreeMap::new();
        b.insert(set(2, &[1]), -1);
        assert!(HRep::new(2, 0, b).is_err());
    }

    #[test]
    fn base_polytope_of_rank_matches_hrep() {
        let d = skyline(&"2,0,1,3".parse().unwrap()).unwrap();
        let b = base_polytope(4, |s| rank_diagram(&d, s) as i64).unwrap();
        assert_eq!(b, hrep(&d).unwrap());
    }
}
