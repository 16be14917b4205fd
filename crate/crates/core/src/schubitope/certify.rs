use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Constraint, HRep, LatticePoint};
use crate::error::{Error, Result};
use crate::exact::dd::extreme_rays;
use crate::exact::lp::convex_combination;
use crate::exact::Rational;

/// Largest dimension accepted by [`certify_vertices`].
pub const CERTIFY_MAX_N: usize = 6;

/// Evidence that a candidate vertex set is not the vertex set of an
/// [`HRep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A candidate lies outside the polytope.
    Violates {
        point: Vec<Rational>,
        constraint: Constraint,
        lhs: Rational,
        bound: Rational,
    },
    /// A candidate is a convex combination of the other candidates, with
    /// the weights listed in candidate order (the point itself omitted).
    NotExtreme {
        point: Vec<Rational>,
        combination: Vec<Rational>,
    },
    /// A vertex of the polytope that is not among the candidates.
    MissingVertex { vertex: Vec<Rational> },
    /// The constraint system does not bound a polytope.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub n: usize,
    pub candidates: usize,
    /// Vertices found for the H-description, when it is bounded.
    pub polytope_vertices: Option<Vec<Vec<Rational>>>,
    pub witnesses: Vec<Witness>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Vertices of `h`, or `None` when the system is unbounded. An empty
/// polytope has no vertices.
fn polytope_vertices(h: &HRep) -> Option<Vec<Vec<Rational>>> {
    let n = h.n();
    if n == 0 {
        return Some(if h.total() == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        });
    }
    // Eliminate x_n = total - Σ_{i<n} x_i and homogenize: z = (t, x_1..x_{n-1}).
    let total = BigInt::from(h.total());
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(h.bounds().len() + 1);
    let mut t_row = vec![BigInt::zero(); n];
    t_row[0] = BigInt::from(1);
    rows.push(t_row);
    for (&s, &b) in h.bounds() {
        let mut row = vec![BigInt::zero(); n];
        if s.contains(n) {
            // total - Σ_{i<n, i∉S} x_i <= b
            row[0] = BigInt::from(b) - &total;
            for i in 1..n {
                if !s.contains(i) {
                    row[i] = BigInt::from(1);
                }
            }
        } else {
            row[0] = BigInt::from(b);
            for i in s.iter() {
                row[i] = BigInt::from(-1);
            }
        }
        rows.push(row);
    }
    let rays = extreme_rays(&rows, n).ok()?;
    let mut out = Vec::new();
    for r in rays {
        if r[0].is_zero() {
            return None;
        }
        debug_assert!(r[0].is_positive());
        let t = Rational::from_integer(r[0].clone());
        let mut x: Vec<Rational> = r[1..]
            .iter()
            .map(|v| Rational::from_integer(v.clone()) / &t)
            .collect();
        let last = Rational::from_integer(total.clone()) - x.iter().sum::<Rational>();
        x.push(last);
        out.push(x);
    }
    out.sort();
    Some(out)
}

/// Checks exactly that `points` is the vertex set of the polytope `h`:
/// every point satisfies `h`, no point is a convex combination of the
/// others, and every vertex of `h` is among the points.
pub fn certify_vertices(h: &HRep, points: &[Vec<Rational>]) -> Result<Certification> {
    let n = h.n();
    if n > CERTIFY_MAX_N {
        return Err(Error::size("certification dimension", CERTIFY_MAX_N, n));
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::dimension("candidate vertex", n, p.len()));
    }
    let mut witnesses = Vec::new();
    for p in points {
        if let Some((constraint, lhs, bound)) = h.first_violation(p)? {
            witnesses.push(Witness::Violates {
                point: p.clone(),
                constraint,
                lhs,
                bound,
            });
        }
    }
    for (k, p) in points.iter().enumerate() {
        let others: Vec<Vec<Rational>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, q)| q.clone())
            .collect();
        if let Some(combination) = convex_combination(p, &others) {
            witnesses.push(Witness::NotExtreme {
                point: p.clone(),
                combination,
            });
        }
    }
    let verts = polytope_vertices(h);
    match &verts {
        None => witnesses.push(Witness::Unbounded),
        Some(vs) => {
            let have: BTreeSet<&Vec<Rational>> = points.iter().collect();
            for v in vs {
                if !have.contains(v) {
                    witnesses.push(Witness::MissingVertex { vertex: v.clone() });
                }
            }
        }
    }
    Ok(Certification {
        n,
        candidates: points.len(),
        polytope_vertices: verts,
        witnesses,
    })
}

pub fn certify_lattice_vertices(h: &HRep, points: &[LatticePoint]) -> Result<Certification> {
    let pts: Vec<Vec<Rational>> = points.iter().map(LatticePoint::to_rational).collect();
    certify_vertices(h, &pts)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::diagrams::{skyline, Diagram};
    use crate::exact::rational;
    use crate::schubitope::{hrep, vertices};
    use crate::subset::Subset;

    fn lp(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec())
    }

    #[test]
    fn trapezoid_passes() {
        let d = skyline(&"1,0,3".parse().unwrap()).unwrap();
        let h = hrep(&d).unwrap();
        let c = certify_lattice_vertices(&h, &vertices(&d).unwrap()).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.polytope_vertices.unwrap().len(), 4);
    }

    #[test]
    fn segment_passes() {
        let mut b = BTreeMap::new();
        b.insert(Subset::from_elements(2, [1]).unwrap(), 1);
        b.insert(Subset::from_elements(2, [2]).unwrap(), 1);
        let h = HRep::new(2, 1, b).unwrap();
        assert_eq!(h, hrep(&Diagram::new(2, [(2, 1)]).unwrap()).unwrap());
        let c = certify_lattice_vertices(&h, &[lp(&[1, 0]), lp(&[0, 1])]).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn missing_vertex_fails_with_witness() {
        let d = skyline(&"1,0,3".parse().unwrap()).unwrap();
        let h = hrep(&d).unwrap();
        let pts = [lp(&[1, 0, 3]), lp(&[1, 3, 0]), lp(&[3, 0, 1])];
        let c = certify_lattice_vertices(&h, &pts).unwrap();
        assert!(!c.passed());
        assert_eq!(
            c.witnesses,
            vec![Witness::MissingVertex {
                vertex: lp(&[3, 1, 0]).to_rational()
            }]
        );
    }

    #[test]
    fn interior_and_outside_points_fail() {
        let d = skyline(&"1,0,3".parse().unwrap()).unwrap();
        let h = hrep(&d).unwrap();
        let mut pts = vertices(&d).unwrap();
        pts.push(lp(&[2, 1, 1]));
        let c = certify_lattice_vertices(&h, &pts).unwrap();
        assert!(matches!(
            c.witnesses.as_slice(),
            [Witness::NotExtreme { .. }]
        ));

        let mut pts = vertices(&d).unwrap();
        pts.push(lp(&[0, 0, 4]));
        let c = certify_lattice_vertices(&h, &pts).unwrap();
        assert!(c
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::Violates { .. })));
    }

    #[test]
    fn unbounded_and_degenerate_systems() {
        let h = HRep::new(2, 1, BTreeMap::new()).unwrap();
        let c = certify_lattice_vertices(&h, &[lp(&[1, 0])]).unwrap();
        assert!(c.witnesses.contains(&Witness::Unbounded));

        let h = HRep::new(1, 5, BTreeMap::new()).unwrap();
        assert!(certify_lattice_vertices(&h, &[lp(&[5])]).unwrap().passed());

        let h = HRep::new(0, 0, BTreeMap::new()).unwrap();
        assert!(certify_vertices(&h, &[Vec::new()]).unwrap().passed());

        let h = hrep(&Diagram::empty(7).unwrap()).unwrap();
        assert!(certify_vertices(&h, &[]).is_err());
    }

    #[test]
    fn point_polytope() {
        // x1 + x2 = 1 with x1 <= 0 and x2 <= 1
        let mut b = BTreeMap::new();
        b.insert(Subset::from_elements(2, [1]).unwrap(), 0);
        b.insert(Subset::from_elements(2, [2]).unwrap(), 1);
        let h = HRep::new(2, 1, b).unwrap();
        let c = certify_vertices(&h, &[vec![rational(0), rational(1)]]).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}
