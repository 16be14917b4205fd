//! The cross-module invariant suite behind `schubitope verify`.
//!
//! Every check walks its instances in a fixed order and stops at the first
//! failure, recording a counterexample string that can be replayed by hand.
//! Sampled checks draw from a ChaCha stream seeded by the caller.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{rothe, skyline, Column, Diagram};
use crate::error::{Error, Result};
use crate::fillings::{
    fill_column, rank_brute, rank_diagram, rank_filling, rank_filling_ordered, rank_max_filling,
    sort_filling, standardize, vertex_vector,
};
use crate::perms::oracle::{
    bruhat_leq_subword, searles_lower_set, shortest_sorting_permutations,
    vertex_compositions_by_definition,
};
use crate::perms::{
    act, bruhat_leq, composition_leq, lambda_of, vertex_compositions, w_of, Composition,
    Permutation,
};
use crate::polyoracle::{
    demazure, divided_difference, newton_exponents, Chain, PolyOracle, Polynomial,
};
use crate::schubitope::{
    certify_lattice_vertices, edmonds_vertex, extreme_points, hrep, schubert_matroid_bases, theta,
    vertices, LatticePoint,
};
use crate::subset::Subset;

/// Diagrams drawn at random for the sampled checks.
pub const RANDOM_DIAGRAMS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub instances: u64,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Largest dimension to check; each check also has its own cap.
    pub n: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

type CheckFn = fn(&Ctx) -> CheckResult;

struct Ctx {
    n: usize,
    seed: u64,
}

impl Ctx {
    fn upto(&self, cap: usize) -> std::ops::RangeInclusive<usize> {
        1..=self.n.min(cap)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Runs `f` on every item until the first failure.
fn check<I, F>(name: &str, items: I, mut f: F) -> CheckResult
where
    I: IntoIterator,
    F: FnMut(I::Item) -> std::result::Result<(), String>,
{
    let mut instances = 0;
    for item in items {
        instances += 1;
        if let Err(cx) = f(item) {
            return CheckResult {
                name: name.to_string(),
                instances,
                counterexample: Some(cx),
            };
        }
    }
    CheckResult {
        name: name.to_string(),
        instances,
        counterexample: None,
    }
}

fn ensure(cond: bool, cx: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(cx())
    }
}

fn enc(d: &Diagram) -> String {
    serde_json::to_string(&d.to_json()).expect("diagram json")
}

fn compositions(ctx: &Ctx, cap: usize, max_part: u32) -> Vec<Composition> {
    ctx.upto(cap)
        .flat_map(|n| Composition::all(n, max_part))
        .collect()
}

fn permutations(ctx: &Ctx, cap: usize) -> Vec<Permutation> {
    ctx.upto(cap).flat_map(Permutation::all).collect()
}

/// `count` diagrams in the `n × n` grid, each box present with probability 1/2.
pub fn random_diagrams(n: usize, count: usize, seed: u64) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let boxes: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .filter(|_| rng.random_bool(0.5))
                .collect();
            Diagram::new(n, boxes).expect("in-grid boxes")
        })
        .collect()
}

/// Random diagrams plus every Rothe diagram and every skyline diagram at `n`.
pub fn diagram_corpus(n: usize, random: usize, seed: u64) -> Vec<Diagram> {
    let mut out = random_diagrams(n, random, seed);
    out.extend(Permutation::all(n).map(|w| rothe(&w).expect("rothe")));
    out.extend(Composition::all(n, n as u32).map(|a| skyline(&a).expect("skyline")));
    out
}

/// A failure of `θ_D(S) = r_D(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRankMismatch {
    pub diagram: Diagram,
    pub set: Subset,
    pub theta: usize,
    pub rank: usize,
}

/// The smallest mismatch of `θ` against the rank function over `diagrams`,
/// ordered by number of boxes, then grid size, then boxes, then `S` by mask.
pub fn theta_rank_counterexample(diagrams: &[Diagram]) -> Option<ThetaRankMismatch> {
    diagrams
        .par_iter()
        .flat_map_iter(|d| {
            Subset::all(d.n()).filter_map(move |s| {
                let t = theta(d, s);
                let r = rank_diagram(d, s);
                (t != r).then(|| ThetaRankMismatch {
                    diagram: d.clone(),
                    set: s,
                    theta: t,
                    rank: r,
                })
            })
        })
        .min_by_key(|m| (m.diagram.len(), m.diagram.n(), m.diagram.boxes(), m.set))
}

// ---- perms

fn w_of_minimal(ctx: &Ctx) -> CheckResult {
    check("perms.w_of_shortest", compositions(ctx, 4, 3), |a| {
        let w = w_of(&a);
        let lambda = lambda_of(&a);
        ensure(act(lambda.parts(), &w).unwrap() == a.parts(), || {
            format!("alpha={a}: λ·w(α) ≠ α")
        })?;
        let best = shortest_sorting_permutations(&a);
        ensure(best.contains(&w) && best.len() == 1, || {
            format!("alpha={a}: w(α)={w} but shortest are {best:?}")
        })
    })
}

fn bruhat_subword(ctx: &Ctx) -> CheckResult {
    let pairs: Vec<(Permutation, Permutation)> = ctx
        .upto(4)
        .flat_map(|n| {
            Permutation::all(n).cartesian_product(Permutation::all(n).collect::<Vec<_>>())
        })
        .collect();
    check("perms.bruhat_subword", pairs, |(u, w)| {
        let fast = bruhat_leq(&u, &w).unwrap();
        ensure(fast == bruhat_leq_subword(&u, &w), || {
            format!("u={u} w={w} prefix={fast}")
        })
    })
}

fn composition_searles(ctx: &Ctx) -> CheckResult {
    let comps = compositions(ctx, 4, 3);
    let lower: Vec<BTreeSet<Composition>> = comps.iter().map(searles_lower_set).collect();
    let pairs = comps.iter().zip(&lower).flat_map(|(a, set)| {
        comps
            .iter()
            .filter(move |b| b.len() == a.len())
            .map(move |b| (a, set, b))
    });
    check("perms.composition_order_searles", pairs, |(a, set, b)| {
        let fast = composition_leq(b, a).unwrap();
        ensure(fast == set.contains(b), || {
            format!("beta={b} alpha={a} fast={fast}")
        })
    })
}

fn vertex_set_recursion(ctx: &Ctx) -> CheckResult {
    let items = compositions(ctx, 4, 3).into_iter().flat_map(|a| {
        (1..a.len())
            .filter(|&r| a.at(r) < a.at(r + 1))
            .map(|r| (a.clone(), r))
            .collect::<Vec<_>>()
    });
    check("perms.vertex_set_recursion", items, |(a, r)| {
        let prime = a.swap_adjacent(r);
        let vp = vertex_compositions(&prime);
        let mut expect: BTreeSet<Composition> = vp.iter().cloned().collect();
        expect.extend(vp.iter().map(|v| v.swap_adjacent(r)));
        let got: BTreeSet<Composition> = vertex_compositions(&a).into_iter().collect();
        ensure(got == expect, || format!("alpha={a} r={r}"))
    })
}

fn vertex_set_definition(ctx: &Ctx) -> CheckResult {
    check(
        "perms.vertex_set_definition",
        compositions(ctx, 4, 3),
        |a| {
            let got: BTreeSet<Composition> = vertex_compositions(&a).into_iter().collect();
            ensure(got == vertex_compositions_by_definition(&a), || {
                format!("alpha={a}")
            })
        },
    )
}

// ---- diagrams

fn rothe_length(ctx: &Ctx) -> CheckResult {
    check("diagrams.rothe_size_is_length", permutations(ctx, 5), |w| {
        let d = rothe(&w).unwrap();
        ensure(d.len() == w.length(), || {
            format!("w={w} #D={} len={}", d.len(), w.length())
        })
    })
}

// ---- fillings

fn columns(ctx: &Ctx, cap: usize) -> Vec<Column> {
    ctx.upto(cap)
        .flat_map(|n| Subset::all(n).map(move |c| Column::new(n, c).unwrap()))
        .collect()
}

fn column_set_pairs(ctx: &Ctx, cap: usize) -> Vec<(Column, Subset)> {
    columns(ctx, cap)
        .into_iter()
        .flat_map(|c| Subset::all(c.n()).map(move |s| (c, s)))
        .collect()
}

fn rank_triple(ctx: &Ctx) -> CheckResult {
    check(
        "fillings.rank_triple_agreement",
        column_set_pairs(ctx, 5),
        |(c, s)| {
            let a = rank_filling(&c, s);
            let b = rank_brute(&c, s).unwrap();
            let m = rank_max_filling(&c, s).unwrap();
            ensure(a == b && b == m, || {
                format!(
                    "n={} C={{{}}} S={{{s}}} filling={a} brute={b} max={m}",
                    c.n(),
                    c.rows()
                )
            })
        },
    )
}

fn order_independence(ctx: &Ctx) -> CheckResult {
    let items = column_set_pairs(ctx, 5)
        .into_iter()
        .filter(|(_, s)| s.len() <= 4);
    check("fillings.rank_order_independent", items, |(c, s)| {
        let r = rank_filling(&c, s);
        for pi in s.iter().permutations(s.len()) {
            let got = rank_filling_ordered(&c, &pi);
            ensure(got == r, || {
                format!(
                    "n={} C={{{}}} pi={pi:?} got={got} expected={r}",
                    c.n(),
                    c.rows()
                )
            })?;
        }
        Ok(())
    })
}

fn fill_flagged(ctx: &Ctx) -> CheckResult {
    let items = columns(ctx, 5)
        .into_iter()
        .flat_map(|c| Permutation::all(c.n()).map(move |w| (c, w)));
    check("fillings.fill_flagged_strict", items, |(c, w)| {
        let f = fill_column(&c, w.entries());
        ensure(f.is_flagged() && f.is_column_strict(), || {
            format!("n={} C={{{}}} w={w}", c.n(), c.rows())
        })
    })
}

fn sort_and_standardize(ctx: &Ctx) -> CheckResult {
    let mut rng = ctx.rng(1);
    let items: Vec<(Column, Vec<usize>)> = column_set_pairs(ctx, 5)
        .into_iter()
        .map(|(c, s)| {
            let mut pi = s.to_vec();
            pi.shuffle(&mut rng);
            (c, pi)
        })
        .collect();
    check("fillings.sort_standardize", items, |(c, pi)| {
        let cx = || format!("n={} C={{{}}} pi={pi:?}", c.n(), c.rows());
        let f = fill_column(&c, &pi);
        let sorted = sort_filling(&f).map_err(|e| format!("{} sort: {e}", cx()))?;
        ensure(
            sorted.occupied() == f.occupied()
                && sorted.values_sorted() == f.values_sorted()
                && sorted.is_flagged()
                && sorted.is_increasing(),
            || format!("{} sort", cx()),
        )?;
        let st = standardize(&sorted).map_err(|e| format!("{} standardize: {e}", cx()))?;
        ensure(
            st.values_sorted() == f.values_sorted()
                && st.size() == f.size()
                && st.is_flagged()
                && st.is_column_strict()
                && st.is_increasing(),
            || format!("{} standardize", cx()),
        )?;
        let again = standardize(&st).map_err(|e| format!("{} standardize: {e}", cx()))?;
        ensure(again == st, || {
            format!("{} standardize not idempotent", cx())
        })
    })
}

fn monotone_step(ctx: &Ctx) -> CheckResult {
    check(
        "fillings.rank_unit_increase",
        column_set_pairs(ctx, 5),
        |(c, s)| {
            let r = rank_filling(&c, s);
            for x in s.iter() {
                let step = r as i64 - rank_filling(&c, s.without(x)) as i64;
                ensure(step == 0 || step == 1, || {
                    format!("n={} C={{{}}} S={{{s}}} s={x} step={step}", c.n(), c.rows())
                })?;
            }
            Ok(())
        },
    )
}

fn submodular<F: Fn(Subset) -> usize>(n: usize, f: F) -> std::result::Result<(), String> {
    let values: Vec<usize> = Subset::all(n).map(&f).collect();
    let at = |s: Subset| values[s.bits() as usize];
    for s in Subset::all(n) {
        for t in Subset::all(n) {
            if at(s) + at(t) < at(s.union(t)) + at(s.intersection(t)) {
                return Err(format!("S={{{s}}} T={{{t}}}"));
            }
        }
    }
    Ok(())
}

fn rank_submodular(ctx: &Ctx) -> CheckResult {
    let n = ctx.n.min(4);
    check(
        "fillings.rank_submodular",
        random_diagrams(n, 50, ctx.seed ^ 2),
        |d| submodular(n, |s| rank_diagram(&d, s)).map_err(|e| format!("D={} {e}", enc(&d))),
    )
}

// ---- schubitope

fn corpus(ctx: &Ctx) -> Vec<Diagram> {
    let n = ctx.n.min(4);
    diagram_corpus(n, RANDOM_DIAGRAMS, ctx.seed)
}

fn theta_rank(ctx: &Ctx) -> CheckResult {
    let c = corpus(ctx);
    let instances = c.iter().map(|d| 1u64 << d.n()).sum();
    CheckResult {
        name: "schubitope.theta_equals_rank".into(),
        instances,
        counterexample: theta_rank_counterexample(&c).map(|m| {
            format!(
                "D={} S={{{}}} theta={} rank={}",
                enc(&m.diagram),
                m.set,
                m.theta,
                m.rank
            )
        }),
    }
}

fn greedy_edmonds(ctx: &Ctx) -> CheckResult {
    let items = corpus(ctx)
        .into_iter()
        .flat_map(|d| Permutation::all(d.n()).map(move |w| (d.clone(), w)));
    check("schubitope.greedy_equals_edmonds", items, |(d, w)| {
        let x = vertex_vector(&d, &w).unwrap();
        let e = edmonds_vertex(d.n(), |s| rank_diagram(&d, s) as i64, &w).unwrap();
        ensure(x == e, || {
            format!("D={} w={w} filling={x} edmonds={e}", enc(&d))
        })?;
        let mut prefix = Subset::empty();
        let mut sum = 0;
        for &v in w.entries() {
            prefix.insert(v);
            sum += x.coords()[v - 1];
            let (r, t) = (rank_diagram(&d, prefix), theta(&d, prefix));
            ensure(sum == r as i64 && sum == t as i64, || {
                format!(
                    "D={} w={w} prefix={{{prefix}}} sum={sum} rank={r} theta={t}",
                    enc(&d)
                )
            })?;
        }
        Ok(())
    })
}

fn theta_submodular(ctx: &Ctx) -> CheckResult {
    check("schubitope.theta_submodular", corpus(ctx), |d| {
        submodular(d.n(), |s| theta(&d, s)).map_err(|e| format!("D={} {e}", enc(&d)))
    })
}

/// Vertices of the matroid polytope of `SM_n(C)`: indicator vectors of bases.
fn basis_points(c: Subset, n: usize) -> Vec<LatticePoint> {
    schubert_matroid_bases(c, n)
        .unwrap()
        .into_iter()
        .map(|b| LatticePoint::new((1..=n).map(|i| b.contains(i) as i64).collect()))
        .collect()
}

fn minkowski(ctx: &Ctx) -> CheckResult {
    let n = ctx.n.min(4);
    let mut ds = random_diagrams(n, 20, ctx.seed ^ 3);
    ds.extend(Permutation::all(n).map(|w| rothe(&w).unwrap()));
    check("schubitope.minkowski_sum", ds, |d| {
        let h = hrep(&d).unwrap();
        let per_column: Vec<Vec<LatticePoint>> = d
            .column_sets()
            .iter()
            .map(|&c| basis_points(c, n))
            .collect();
        let mut sums = BTreeSet::new();
        for choice in per_column.iter().multi_cartesian_product() {
            let p = LatticePoint::new(
                (0..n)
                    .map(|i| choice.iter().map(|v| v.coords()[i]).sum())
                    .collect(),
            );
            ensure(h.contains_lattice(&p).unwrap(), || {
                format!("D={} sum={p} outside", enc(&d))
            })?;
            sums.insert(p);
        }
        if n == 0 {
            sums.insert(LatticePoint::new(Vec::new()));
        }
        for v in vertices(&d).unwrap() {
            ensure(sums.contains(&v), || {
                format!("D={} vertex={v} not a sum", enc(&d))
            })?;
        }
        Ok(())
    })
}

fn matroid_polytope(ctx: &Ctx) -> CheckResult {
    check("schubitope.matroid_polytope", columns(ctx, 5), |c| {
        let n = c.n();
        let cert =
            certify_lattice_vertices(&hrep(&c.to_diagram()).unwrap(), &basis_points(c.rows(), n))
                .unwrap();
        ensure(cert.passed(), || {
            format!("n={n} C={{{}}} {:?}", c.rows(), cert.witnesses)
        })
    })
}

fn certified_vertices(ctx: &Ctx) -> CheckResult {
    let n = ctx.n.min(4);
    let mut ds = random_diagrams(n, 20, ctx.seed ^ 4);
    ds.extend(Permutation::all(n).map(|w| rothe(&w).unwrap()));
    check("schubitope.vertices_certified", ds, |d| {
        let cert = certify_lattice_vertices(&hrep(&d).unwrap(), &vertices(&d).unwrap()).unwrap();
        ensure(cert.passed(), || {
            format!("D={} {:?}", enc(&d), cert.witnesses)
        })
    })
}

fn skyline_vertices_check(ctx: &Ctx) -> CheckResult {
    let items = compositions(ctx, 4, 3)
        .into_iter()
        .filter(|a| a.max_part() as usize <= a.len());
    check("schubitope.skyline_vertices", items, |a| {
        let d = skyline(&a).unwrap();
        let got = vertices(&d).unwrap();
        let want: Vec<LatticePoint> = vertex_compositions(&a)
            .iter()
            .map(LatticePoint::from)
            .collect();
        ensure(got == want, || {
            format!("alpha={a} vertices={got:?} V={want:?}")
        })
    })
}

fn skyline_symmetry_instances(ctx: &Ctx) -> Vec<(Composition, usize, Permutation)> {
    compositions(ctx, 4, 3)
        .into_iter()
        .filter(|a| a.max_part() as usize <= a.len())
        .flat_map(|a| {
            let n = a.len();
            (1..n)
                .filter(|&r| a.at(r) < a.at(r + 1))
                .flat_map(|r| {
                    let a = a.clone();
                    Permutation::all(n)
                        .filter(move |w| w.position_of(r) < w.position_of(r + 1))
                        .map(move |w| (a.clone(), r, w))
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn swap_symmetry(ctx: &Ctx) -> CheckResult {
    check(
        "schubitope.vertex_swap_symmetry",
        skyline_symmetry_instances(ctx),
        |(a, r, w)| {
            let d = skyline(&a).unwrap();
            let x = vertex_vector(&d, &w).unwrap();
            let y = vertex_vector(&d, &w.swap_values(r)).unwrap();
            let ys = LatticePoint::new(
                act(y.coords(), &Permutation::simple(a.len(), r).unwrap()).unwrap(),
            );
            ensure(x == ys, || {
                format!("alpha={a} r={r} w={w} x={x} x(s_r w)·s_r={ys}")
            })
        },
    )
}

fn shape_stability(ctx: &Ctx) -> CheckResult {
    check(
        "schubitope.vertex_shape_stability",
        skyline_symmetry_instances(ctx),
        |(a, r, w)| {
            let x = vertex_vector(&skyline(&a).unwrap(), &w).unwrap();
            let x2 = vertex_vector(&skyline(&a.swap_adjacent(r)).unwrap(), &w).unwrap();
            ensure(x == x2, || format!("alpha={a} r={r} w={w} x={x} x'={x2}"))
        },
    )
}

// ---- polyoracle

fn random_polynomial(rng: &mut ChaCha8Rng, n: usize) -> Polynomial {
    let terms = rng.random_range(0..6);
    let ts = (0..terms)
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..=4)).collect();
            (e, BigInt::from(rng.random_range(-3i64..=3)))
        })
        .collect::<Vec<_>>();
    Polynomial::from_terms(n, ts).unwrap()
}

fn operator_relations(ctx: &Ctx) -> CheckResult {
    let n = ctx.n.min(4);
    if n < 2 {
        return check(
            "polyoracle.operator_relations",
            Vec::<()>::new(),
            |_| Ok(()),
        );
    }
    let mut rng = ctx.rng(5);
    let polys: Vec<Polynomial> = (0..50).map(|_| random_polynomial(&mut rng, n)).collect();
    check("polyoracle.operator_relations", polys, |f| {
        let dd = |g: &Polynomial, k| divided_difference(g, k).unwrap();
        let pi = |g: &Polynomial, k| demazure(g, k).unwrap();
        for i in 1..n {
            ensure(dd(&dd(&f, i), i).is_zero(), || {
                format!("∂{i}² f ≠ 0 for f={f}")
            })?;
            ensure(pi(&pi(&f, i), i) == pi(&f, i), || {
                format!("π{i}² ≠ π{i} for f={f}")
            })?;
            if i + 1 < n {
                ensure(
                    dd(&dd(&dd(&f, i), i + 1), i) == dd(&dd(&dd(&f, i + 1), i), i + 1),
                    || format!("∂ braid at {i} for f={f}"),
                )?;
                ensure(
                    pi(&pi(&pi(&f, i), i + 1), i) == pi(&pi(&pi(&f, i + 1), i), i + 1),
                    || format!("π braid at {i} for f={f}"),
                )?;
            }
        }
        Ok(())
    })
}

fn chains(ctx: &Ctx) -> CheckResult {
    let oracle = PolyOracle::new();
    let perms = permutations(ctx, 4).into_iter().map(|w| (Some(w), None));
    let comps = compositions(ctx, 4, 3).into_iter().map(|a| (None, Some(a)));
    check(
        "polyoracle.recursion_chains_agree",
        perms.chain(comps),
        |item| match item {
            (Some(w), _) => {
                let a = oracle.schubert(&w, Chain::FirstAscent).unwrap();
                let b = oracle.schubert(&w, Chain::LastAscent).unwrap();
                ensure(a == b, || format!("w={w}"))?;
                ensure(a.terms().values().all(|c| c > &BigInt::from(0)), || {
                    format!("w={w} has a nonpositive coefficient")
                })
            }
            (_, Some(alpha)) => {
                let a = oracle.key(&alpha, Chain::FirstAscent).unwrap();
                let b = oracle.key(&alpha, Chain::LastAscent).unwrap();
                ensure(a == b, || format!("alpha={alpha}"))?;
                ensure(a.terms().values().all(|c| c > &BigInt::from(0)), || {
                    format!("alpha={alpha} has a nonpositive coefficient")
                })
            }
            _ => unreachable!(),
        },
    )
}

/// The certified vertex set of `Newton(f)` against the Schubitope `d`.
pub fn certified_newton_vertices(f: &Polynomial, d: &Diagram) -> Result<Vec<LatticePoint>> {
    let h = hrep(d)?;
    let exps = newton_exponents(f);
    for p in &exps {
        if !h.contains_lattice(p)? {
            return Err(Error::Invariant(format!(
                "exponent {p} lies outside the Schubitope"
            )));
        }
    }
    let hull = extreme_points(&exps);
    let cert = certify_lattice_vertices(&h, &hull)?;
    if !cert.passed() {
        return Err(Error::Invariant(format!(
            "certification failed: {:?}",
            cert.witnesses
        )));
    }
    Ok(hull)
}

fn key_newton(ctx: &Ctx) -> CheckResult {
    let oracle = PolyOracle::new();
    let items = compositions(ctx, 4, 3)
        .into_iter()
        .filter(|a| a.max_part() as usize <= a.len());
    check("polyoracle.key_newton_vertices", items, |a| {
        let k = oracle.key(&a, Chain::FirstAscent).unwrap();
        let got = certified_newton_vertices(&k, &skyline(&a).unwrap())
            .map_err(|e| format!("alpha={a} {e}"))?;
        let want: Vec<LatticePoint> = vertex_compositions(&a)
            .iter()
            .map(LatticePoint::from)
            .collect();
        ensure(got == want, || {
            format!("alpha={a} newton={got:?} V={want:?}")
        })
    })
}

fn schubert_newton(ctx: &Ctx) -> CheckResult {
    let oracle = PolyOracle::new();
    check("polyoracle.schubert_newton", permutations(ctx, 4), |w| {
        let s = oracle.schubert(&w, Chain::FirstAscent).unwrap();
        let d = rothe(&w).unwrap();
        let got = certified_newton_vertices(&s, &d).map_err(|e| format!("w={w} {e}"))?;
        let exps: BTreeSet<LatticePoint> = newton_exponents(&s).into_iter().collect();
        let verts = vertices(&d).unwrap();
        ensure(verts.iter().all(|v| exps.contains(v)), || {
            format!("w={w} vertex missing from support")
        })?;
        ensure(got == verts, || {
            format!("w={w} newton={got:?} vertices={verts:?}")
        })
    })
}

fn bruhat_interval(ctx: &Ctx) -> CheckResult {
    let oracle = PolyOracle::new();
    check(
        "polyoracle.bruhat_interval_polytope",
        permutations(ctx, 4),
        |w| {
            let n = w.degree();
            let a = Composition::from(&w);
            let k = oracle.key(&a, Chain::FirstAscent).unwrap();
            let got = certified_newton_vertices(&k, &skyline(&a).unwrap())
                .map_err(|e| format!("w={w} {e}"))?;
            let want: BTreeSet<LatticePoint> = Permutation::all(n)
                .filter(|v| bruhat_leq(&w, v).unwrap())
                .map(|v| LatticePoint::from(&Composition::from(&v)))
                .collect();
            ensure(got.iter().cloned().collect::<BTreeSet<_>>() == want, || {
                format!("w={w}")
            })
        },
    )
}

fn schur_case(ctx: &Ctx) -> CheckResult {
    let oracle = PolyOracle::new();
    let items = compositions(ctx, 4, 3)
        .into_iter()
        .filter(|a| a.max_part() as usize <= a.len() && a.parts().windows(2).all(|p| p[0] <= p[1]));
    check("polyoracle.permutohedron", items, |a| {
        let k = oracle.key(&a, Chain::FirstAscent).unwrap();
        let got = certified_newton_vertices(&k, &skyline(&a).unwrap())
            .map_err(|e| format!("alpha={a} {e}"))?;
        let lambda = lambda_of(&a);
        let want: BTreeSet<LatticePoint> = Permutation::all(a.len())
            .map(|s| {
                LatticePoint::new(
                    act(lambda.parts(), &s)
                        .unwrap()
                        .into_iter()
                        .map(i64::from)
                        .collect(),
                )
            })
            .collect();
        ensure(got.into_iter().collect::<BTreeSet<_>>() == want, || {
            format!("alpha={a}")
        })
    })
}

const CHECKS: &[CheckFn] = &[
    w_of_minimal,
    bruhat_subword,
    composition_searles,
    vertex_set_recursion,
    vertex_set_definition,
    rothe_length,
    rank_triple,
    order_independence,
    fill_flagged,
    sort_and_standardize,
    monotone_step,
    rank_submodular,
    theta_rank,
    greedy_edmonds,
    theta_submodular,
    minkowski,
    matroid_polytope,
    certified_vertices,
    skyline_vertices_check,
    swap_symmetry,
    shape_stability,
    operator_relations,
    chains,
    key_newton,
    schubert_newton,
    bruhat_interval,
    schur_case,
];

/// Largest `n` accepted by [`run`]; every check is capped at or below it.
pub const VERIFY_MAX_N: usize = 5;

/// Runs every check at dimensions up to `opts.n`. Results come back in a
/// fixed order regardless of how the work was scheduled.
pub fn run(opts: &Options) -> Result<Report> {
    if opts.n > VERIFY_MAX_N {
        return Err(Error::size("verify dimension", VERIFY_MAX_N, opts.n));
    }
    if opts.jobs == Some(0) {
        return Err(Error::domain("jobs", "must be at least 1"));
    }
    let ctx = Ctx {
        n: opts.n,
        seed: opts.seed,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::domain("jobs", e.to_string()))?;
    let checks: Vec<CheckResult> = pool.install(|| CHECKS.par_iter().map(|f| f(&ctx)).collect());
    let status = if checks.iter().all(|c| c.counterexample.is_none()) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Report {
        status,
        n: opts.n,
        seed: opts.seed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let opts = Options {
            n: 3,
            seed: 7,
            jobs: Some(2),
        };
        let a = run(&opts).unwrap();
        for c in &a.checks {
            assert!(c.counterexample.is_none(), "{c:?}");
        }
        assert!(a.passed());
        assert_eq!(a.checks.len(), CHECKS.len());
        let b = run(&Options {
            jobs: Some(1),
            ..opts
        })
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_options() {
        assert!(run(&Options {
            n: 6,
            seed: 0,
            jobs: None
        })
        .is_err());
        assert!(run(&Options {
            n: 2,
            seed: 0,
            jobs: Some(0)
        })
        .is_err());
    }

    #[test]
    fn failing_check_reports_counterexample() {
        let r = check("demo", 1..=5, |k| ensure(k < 3, || format!("k={k}")));
        assert_eq!(r.instances, 3);
        assert_eq!(r.counterexample.as_deref(), Some("k=3"));
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_diagrams(4, 10, 1), random_diagrams(4, 10, 1));
        assert_ne!(random_diagrams(4, 10, 1), random_diagrams(4, 10, 2));
        assert_eq!(diagram_corpus(2, 3, 0).len(), 3 + 2 + 9);
    }

    #[test]
    fn minimal_mismatch_is_none_on_corpus() {
        assert!(theta_rank_counterexample(&diagram_corpus(3, 50, 11)).is_none());
    }
}
