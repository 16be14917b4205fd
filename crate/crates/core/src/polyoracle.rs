//! Sparse integer polynomials with divided-difference and Demazure
//! operators; Schubert and key polynomials built from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::{Composition, Permutation};
use crate::schubitope::LatticePoint;

pub const SCHUBERT_MAX_N: usize = 7;
pub const KEY_MAX_N: usize = 6;
pub const KEY_MAX_PART: u32 = 4;

/// `Σ c_e x^e` in `n` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Polynomial::monomial(vec![0; n], BigInt::one())
    }

    pub fn monomial(exponent: Vec<u32>, coefficient: BigInt) -> Self {
        let mut p = Polynomial::zero(exponent.len());
        p.add_term(exponent, coefficient);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::dimension("exponent", n, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &Polynomial) {
        assert_eq!(
            self.n, other.n,
            "polynomials in different numbers of variables"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_same(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_same(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        let mut p = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * k);
        }
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_same(other);
        let mut p = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(e, c * d);
            }
        }
        p
    }

    /// `x_i · f`.
    pub fn mul_var(&self, i: usize) -> Polynomial {
        assert!(i >= 1 && i <= self.n, "variable x{i} out of range");
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i - 1] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `s_i f`: exchange `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Polynomial {
        assert!(i >= 1 && i < self.n, "s_{i} out of range");
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i - 1, i);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    e: e.clone(),
                    c: match c.to_i64() {
                        Some(v) => Coefficient::Int(v),
                        None => Coefficient::Big(c.to_string()),
                    },
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &PolynomialJson) -> Result<Self> {
        let terms = doc
            .terms
            .iter()
            .map(|t| {
                let c = match &t.c {
                    Coefficient::Int(v) => BigInt::from(*v),
                    Coefficient::Big(s) => s.parse().map_err(|_| {
                        Error::parse("coefficient", format!("'{s}' is not an integer"))
                    })?,
                };
                Ok((t.e.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(doc.n, terms)
    }
}

/// `x1^3*x2 + 2*x1*x3 + ...`, terms in decreasing lexicographic order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{p}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(n={}, {self})", self.n)
    }
}

/// `{"n":3, "terms":[{"e":[3,1,0],"c":1}, ...]}`, terms sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: Coefficient,
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Big(String),
}

fn check_index(f: &Polynomial, i: usize) -> Result<()> {
    if i == 0 || i >= f.n {
        return Err(Error::domain(
            "index",
            format!("operator index {i} outside [1, {}]", f.n.saturating_sub(1)),
        ));
    }
    Ok(())
}

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`.
///
/// Each monomial and its `s_i`-image are divided together:
/// `(x_i^p x_{i+1}^q - x_i^q x_{i+1}^p) / (x_i - x_{i+1})` is
/// `x_i^q x_{i+1}^q Σ_{k<p-q} x_i^{p-q-1-k} x_{i+1}^k` for `p > q`.
pub fn divided_difference(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(f, i)?;
    let (a, b) = (i - 1, i);
    let mut out = Polynomial::zero(f.n);
    for (e, c) in &f.terms {
        let (p, q) = (e[a], e[b]);
        if p == q {
            continue;
        }
        let (hi, lo, c) = if p > q { (p, q, c.clone()) } else { (q, p, -c) };
        for k in 0..hi - lo {
            let mut m = e.clone();
            m[a] = hi - 1 - k;
            m[b] = lo + k;
            out.add_term(m, c.clone());
        }
    }
    let lhs = f.sub(&f.swap_vars(i));
    let rhs = out.mul_var(i).sub(&out.mul_var(i + 1));
    if lhs != rhs {
        return Err(Error::Invariant(format!(
            "division by x{} - x{} left a remainder",
            i,
            i + 1
        )));
    }
    Ok(out)
}

/// `π_i f = ∂_i (x_i f)`.
pub fn demazure(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(f, i)?;
    divided_difference(&f.mul_var(i), i)
}

/// Which ascent a recursion steps through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chain {
    FirstAscent,
    LastAscent,
}

fn permutation_ascent(w: &Permutation, chain: Chain) -> Option<usize> {
    let n = w.degree();
    let asc = |i: &usize| w.at(*i) < w.at(*i + 1);
    match chain {
        Chain::FirstAscent => (1..n).find(asc),
        Chain::LastAscent => (1..n).rev().find(asc),
    }
}

fn composition_ascent(alpha: &Composition, chain: Chain) -> Option<usize> {
    match chain {
        Chain::FirstAscent => alpha.first_ascent(),
        Chain::LastAscent => alpha.last_ascent(),
    }
}

fn check_schubert(w: &Permutation) -> Result<()> {
    if w.degree() > SCHUBERT_MAX_N {
        return Err(Error::size(
            "schubert polynomial degree",
            SCHUBERT_MAX_N,
            w.degree(),
        ));
    }
    Ok(())
}

fn check_key(alpha: &Composition) -> Result<()> {
    if alpha.len() > KEY_MAX_N {
        return Err(Error::size("key polynomial length", KEY_MAX_N, alpha.len()));
    }
    if alpha.max_part() > KEY_MAX_PART {
        return Err(Error::size(
            "key polynomial part",
            KEY_MAX_PART as usize,
            alpha.max_part() as usize,
        ));
    }
    Ok(())
}

/// Memoized Schubert and key polynomials. Entries are only ever inserted,
/// and a key always maps to the same value, so concurrent use is safe.
#[derive(Default)]
pub struct PolyOracle {
    schubert: RwLock<HashMap<(Permutation, Chain), Polynomial>>,
    key: RwLock<HashMap<(Composition, Chain), Polynomial>>,
}

impl PolyOracle {
    pub fn new() -> Self {
        PolyOracle::default()
    }

    /// `𝔖_w`, stepping from `w_0` down through the chosen ascents.
    pub fn schubert(&self, w: &Permutation, chain: Chain) -> Result<Polynomial> {
        check_schubert(w)?;
        // Walk up to w_0, then apply the operators on the way back down.
        let mut path = Vec::new();
        let mut cur = w.clone();
        let mut base = None;
        while let Some(i) = permutation_ascent(&cur, chain) {
            if let Some(p) = self.schubert.read().unwrap().get(&(cur.clone(), chain)) {
                base = Some(p.clone());
                break;
            }
            path.push((cur.clone(), i));
            cur = cur.swap_positions(i);
        }
        let mut poly = match base {
            Some(p) => p,
            None => {
                let n = cur.degree();
                Polynomial::monomial((0..n).map(|k| (n - 1 - k) as u32).collect(), BigInt::one())
            }
        };
        for (v, i) in path.into_iter().rev() {
            poly = divided_difference(&poly, i)?;
            self.schubert
                .write()
                .unwrap()
                .entry((v, chain))
                .or_insert_with(|| poly.clone());
        }
        Ok(poly)
    }

    /// `κ_α`, stepping from `λ(α)` through the chosen ascents of `α`.
    pub fn key(&self, alpha: &Composition, chain: Chain) -> Result<Polynomial> {
        check_key(alpha)?;
        let mut path = Vec::new();
        let mut cur = alpha.clone();
        let mut base = None;
        while let Some(r) = composition_ascent(&cur, chain) {
            if let Some(p) = self.key.read().unwrap().get(&(cur.clone(), chain)) {
                base = Some(p.clone());
                break;
            }
            path.push((cur.clone(), r));
            cur = cur.swap_adjacent(r);
        }
        let mut poly = match base {
            Some(p) => p,
            None => Polynomial::monomial(cur.parts().to_vec(), BigInt::one()),
        };
        for (beta, r) in path.into_iter().rev() {
            poly = demazure(&poly, r)?;
            self.key
                .write()
                .unwrap()
                .entry((beta, chain))
                .or_insert_with(|| poly.clone());
        }
        Ok(poly)
    }
}

/// `𝔖_w` for `n <= 7`.
pub fn schubert_polynomial(w: &Permutation) -> Result<Polynomial> {
    PolyOracle::new().schubert(w, Chain::FirstAscent)
}

/// `κ_α` for `n <= 6` and parts at most 4.
pub fn key_polynomial(alpha: &Composition) -> Result<Polynomial> {
    PolyOracle::new().key(alpha, Chain::FirstAscent)
}

/// The support of `f`, lexicographically sorted.
pub fn newton_exponents(f: &Polynomial) -> Vec<LatticePoint> {
    f.terms
        .keys()
        .map(|e| LatticePoint::new(e.iter().map(|&x| x as i64).collect()))
        .collect()
}
