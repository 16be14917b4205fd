//! Double description method for pointed polyhedral cones over the integers.
//!
//! Given rows `a_1, ..., a_m` of a cone `{z : a_i · z >= 0}`, computes its
//! extreme rays. Rays are kept as primitive integer vectors, and adjacency
//! is decided combinatorially from the sets of tight rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// The cone contains a line, so it has no extreme-ray description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotPointed;

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Picks `dim` linearly independent rows, or reports a nontrivial kernel.
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new(); // (pivot column, reduced row)
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
        for (pc, b) in &basis {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone() / &b[*pc];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
            basis.push((pc, r));
            chosen.push(idx);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

/// Inverse of a square rational matrix known to be invertible.
fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let pv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pv;
        }
        let prow = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// Extreme rays of `{z ∈ R^dim : row · z >= 0 for every row}`.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, NotPointed> {
    assert!(rows.iter().all(|r| r.len() == dim), "row width mismatch");
    if dim == 0 {
        return Ok(Vec::new());
    }
    let m = rows.len();
    let init = independent_rows(rows, dim).ok_or(NotPointed)?;

    // Initial simplicial cone: columns of the inverse of the chosen rows.
    let sub: Vec<Vec<Rational>> = init
        .iter()
        .map(|&i| {
            rows[i]
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect()
        })
        .collect();
    let inv = invert(&sub);
    let mut rays: Vec<Ray> = (0..dim)
        .map(|k| {
            let col: Vec<Rational> = (0..dim).map(|r| inv[r][k].clone()).collect();
            let lcm = col.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let v = col
                .iter()
                .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
                .collect();
            let mut zeros = Bits::new(m);
            for (pos, &ri) in init.iter().enumerate() {
                if pos != k {
                    zeros.set(ri);
                }
            }
            Ray {
                v: primitive(v),
                zeros,
            }
        })
        .collect();

    let mut processed = init.len();
    for (ri, row) in rows.iter().enumerate() {
        if init.contains(&ri) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(qv, pv)| &vals[p] * qv - &vals[q] * pv)
                    .collect();
                let mut zeros = common;
                zeros.set(ri);
                next.push(Ray {
                    v: primitive(v),
                    zeros,
                });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                r.zeros.set(ri);
                next.push(r);
            } else if vals[i].is_positive() {
                next.push(r);
            }
        }
        rays = next;
        processed += 1;
    }
    debug_assert_eq!(processed, m);

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
