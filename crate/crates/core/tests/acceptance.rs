//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Golden values are frozen below; sweeps compare the library
//! against oracles written here from first principles.
//!
//! Runtime limits are checked against the median of `TIMING_RUNS` timed
//! runs after one untimed warm-up run.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use schubitope::fillings::rank_filling_ordered;
use schubitope::verify::{diagram_corpus, theta_rank_counterexample, ThetaRankMismatch};
use schubitope::{
    act, certify_lattice_vertices, column_word, edmonds_vertex, extreme_points, fill_diagram, hrep,
    key_polynomial, newton_exponents, rank_brute, rank_diagram, rank_filling, rank_max_filling,
    rothe, schubert_polynomial, skyline, theta, theta_columns, vertex_compositions, vertex_vector,
    vertices, w_of, Column, Composition, Diagram, LatticePoint, Permutation, Polynomial, Subset,
};

const TIMING_RUNS: usize = 5;
const LIMIT_RUNNING_EXAMPLE: Duration = Duration::from_millis(1);
const LIMIT_FOUR_BOX: Duration = Duration::from_millis(10);
const LIMIT_RANKS: Duration = Duration::from_secs(30);
const LIMIT_SKYLINE_SWEEP: Duration = Duration::from_secs(60);
const LIMIT_SCHUBERT_SWEEP: Duration = Duration::from_secs(60);

/// Seed for the 200 random diagrams of the last criterion.
const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_RANDOM: usize = 200;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn pt(v: &[i64]) -> LatticePoint {
    LatticePoint::new(v.to_vec())
}

fn set(n: usize, e: &[usize]) -> Subset {
    Subset::from_elements(n, e.iter().copied()).unwrap()
}

/// Runs `f` once untimed, then `TIMING_RUNS` times; fails on the first error
/// or when the median run exceeds `limit`.
fn timed(limit: Duration, f: impl Fn() -> Outcome) -> (Outcome, Duration) {
    if let Err(e) = f() {
        return (Err(e), Duration::ZERO);
    }
    let mut runs = Vec::with_capacity(TIMING_RUNS);
    for _ in 0..TIMING_RUNS {
        let start = Instant::now();
        if let Err(e) = f() {
            return (Err(e), start.elapsed());
        }
        runs.push(start.elapsed());
    }
    runs.sort();
    let median = runs[TIMING_RUNS / 2];
    if median > limit {
        return (
            Err(format!("median runtime {median:?} exceeds limit {limit:?}")),
            median,
        );
    }
    (Ok(()), median)
}

/// Times a single run of a long sweep.
fn timed_once(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    match r {
        Err(e) => (Err(e), took),
        Ok(()) if took > limit => (
            Err(format!("runtime {took:?} exceeds limit {limit:?}")),
            took,
        ),
        Ok(()) => (Ok(()), took),
    }
}

// ---- independent oracles

/// Bruhat order by the tableau criterion: for every `k`, the sorted first
/// `k` entries of `u` are dominated entrywise by those of `w`.
fn bruhat_tableau(u: &Permutation, w: &Permutation) -> bool {
    (1..=u.degree()).all(|k| {
        let mut a = u.entries()[..k].to_vec();
        let mut b = w.entries()[..k].to_vec();
        a.sort();
        b.sort();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

/// `{β : β <= α}` as the closure of `α` under swaps `t_{i,j}` that move a
/// larger later part in front of a smaller earlier one.
fn searles_closure(alpha: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut seen = BTreeSet::from([alpha.to_vec()]);
    let mut stack = vec![alpha.to_vec()];
    while let Some(a) = stack.pop() {
        for (i, j) in (0..a.len()).tuple_combinations() {
            if a[i] < a[j] {
                let mut b = a.clone();
                b.swap(i, j);
                if seen.insert(b.clone()) {
                    stack.push(b);
                }
            }
        }
    }
    seen
}

/// Greedy filling of one column written out directly over row indices.
fn fill_rows(rows: &[usize], pi: &[usize]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &v in pi {
        if let Some(&r) = rows
            .iter()
            .filter(|&&r| r >= v && !out.contains_key(&r))
            .min()
        {
            out.insert(r, v);
        }
    }
    out
}

// ---- criteria

fn running_example_diagram() -> Diagram {
    let rows: [&[usize]; 6] = [
        &[5],
        &[1, 2, 3, 5],
        &[1, 6],
        &[1, 2, 3, 4, 6],
        &[2, 6],
        &[1, 2, 4, 5],
    ];
    Diagram::new(
        6,
        rows.iter()
            .enumerate()
            .flat_map(|(i, cs)| cs.iter().map(move |&j| (i + 1, j))),
    )
    .unwrap()
}

const RUNNING_EXAMPLE_ENTRIES: [(usize, usize, usize); 18] = [
    (1, 5, 1),
    (2, 1, 1),
    (2, 2, 1),
    (2, 3, 1),
    (2, 5, 2),
    (3, 1, 3),
    (3, 6, 3),
    (4, 1, 2),
    (4, 2, 3),
    (4, 3, 3),
    (4, 4, 3),
    (4, 6, 1),
    (5, 2, 5),
    (5, 6, 5),
    (6, 1, 5),
    (6, 2, 6),
    (6, 4, 1),
    (6, 5, 3),
];

fn criterion_1() -> (Outcome, Duration) {
    let d = running_example_diagram();
    let w = perm("315624");
    if d.len() != 18 {
        return (
            Err(format!("diagram has {} boxes, expected 18", d.len())),
            Duration::ZERO,
        );
    }
    timed(LIMIT_RUNNING_EXAMPLE, || {
        let f = fill_diagram(&d, &w).map_err(|e| e.to_string())?;
        ensure(f.entries() == RUNNING_EXAMPLE_ENTRIES, || {
            format!("filling {:?}", f.entries())
        })?;
        let x = vertex_vector(&d, &w).map_err(|e| e.to_string())?;
        ensure(x == pt(&[6, 2, 6, 0, 3, 1]), || format!("x(w) = {x}"))?;
        ensure(x.sum() == 18, || "Σx ≠ #D".into())
    })
}

fn criterion_2() -> (Outcome, Duration) {
    let d = Diagram::new(3, [(1, 1), (3, 1), (3, 2), (3, 3)]).unwrap();
    // (w, value in box (1,1), values in boxes (3,1), (3,2), (3,3))
    let four_box_fillings: [(&str, usize, [usize; 3]); 6] = [
        ("123", 1, [2, 1, 1]),
        ("132", 1, [3, 1, 1]),
        ("213", 1, [2, 2, 2]),
        ("231", 1, [2, 2, 2]),
        ("312", 1, [3, 3, 3]),
        ("321", 1, [3, 3, 3]),
    ];
    let expected_vertices = vec![
        pt(&[1, 0, 3]),
        pt(&[1, 3, 0]),
        pt(&[3, 0, 1]),
        pt(&[3, 1, 0]),
    ];
    timed(LIMIT_FOUR_BOX, || {
        for (w, top, bottom) in four_box_fillings {
            let f = fill_diagram(&d, &perm(w)).map_err(|e| e.to_string())?;
            let got = (f.get(1, 1), [f.get(3, 1), f.get(3, 2), f.get(3, 3)]);
            let want = (Some(top), bottom.map(Some));
            ensure(got == want, || format!("w={w}: filling {:?}", f.entries()))?;
        }
        let v = vertices(&d).map_err(|e| e.to_string())?;
        ensure(v == expected_vertices, || format!("vertices {v:?}"))?;
        let h = hrep(&d).map_err(|e| e.to_string())?;
        let c = certify_lattice_vertices(&h, &v).map_err(|e| e.to_string())?;
        ensure(c.passed(), || {
            format!("certification witnesses {:?}", c.witnesses)
        })
    })
}

fn d9() -> Diagram {
    Diagram::new(
        5,
        [
            (1, 1),
            (2, 4),
            (2, 5),
            (3, 2),
            (3, 4),
            (4, 1),
            (5, 1),
            (5, 3),
            (5, 4),
        ],
    )
    .unwrap()
}

fn criterion_3() -> Outcome {
    let d = d9();
    let s = set(5, &[1, 3]);
    let words: Vec<String> = (1..=5)
        .map(|j| column_word(&d, j, s).map(|w| w.to_string()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(words == ["★())", "(★", "(()", "()★)", "()("], || {
        format!("words {words:?}")
    })?;
    let per = theta_columns(&d, s);
    ensure(per == [2, 1, 1, 2, 1], || format!("per-column θ {per:?}"))?;
    ensure(theta(&d, s) == 7, || format!("θ = {}", theta(&d, s)))
}

fn criterion_4() -> Outcome {
    let alpha = comp("1,0,3");
    let k = key_polynomial(&alpha).map_err(|e| e.to_string())?;
    let expansion: [[u32; 3]; 9] = [
        [3, 1, 0],
        [3, 0, 1],
        [2, 2, 0],
        [2, 1, 1],
        [2, 0, 2],
        [1, 3, 0],
        [1, 2, 1],
        [1, 1, 2],
        [1, 0, 3],
    ];
    let want = Polynomial::from_terms(3, expansion.iter().map(|e| (e.to_vec(), BigInt::from(1))))
        .map_err(|e| e.to_string())?;
    ensure(k == want, || format!("κ = {k}"))?;
    let hull = extreme_points(&newton_exponents(&k));
    let h = hrep(&skyline(&alpha).unwrap()).map_err(|e| e.to_string())?;
    let c = certify_lattice_vertices(&h, &hull).map_err(|e| e.to_string())?;
    ensure(c.passed(), || {
        format!("certification witnesses {:?}", c.witnesses)
    })?;
    let v: Vec<LatticePoint> = vertex_compositions(&alpha)
        .iter()
        .map(LatticePoint::from)
        .collect();
    ensure(hull == v, || {
        format!("Newton vertices {hull:?} vs V(α) {v:?}")
    })
}

fn criterion_5() -> Outcome {
    let w = w_of(&comp("2,0,1,3,2,0,1"));
    ensure(w == perm("2641375"), || format!("w(α) = {w}"))
}

fn criterion_6() -> (Outcome, Duration) {
    timed_once(LIMIT_RANKS, || {
        let mut pairs = 0;
        for c in Subset::all(5) {
            let column = Column::new(5, c).unwrap();
            for s in Subset::all(5) {
                pairs += 1;
                let a = rank_filling(&column, s);
                let b = rank_brute(&column, s).map_err(|e| e.to_string())?;
                let m = rank_max_filling(&column, s).map_err(|e| e.to_string())?;
                ensure(a == b && b == m, || {
                    format!("C={{{c}}} S={{{s}}}: filling {a}, brute {b}, max-filling {m}")
                })?;
                if s.len() <= 4 {
                    for pi in s.iter().permutations(s.len()) {
                        let r = rank_filling_ordered(&column, &pi);
                        let direct = fill_rows(&c.to_vec(), &pi).len();
                        ensure(r == a && direct == a, || {
                            format!("C={{{c}}} order {pi:?}: {r} (direct {direct}) vs {a}")
                        })?;
                    }
                }
            }
        }
        ensure(pairs == 1024, || format!("{pairs} pairs"))
    })
}

fn criterion_7() -> (Outcome, Duration) {
    timed_once(LIMIT_SKYLINE_SWEEP, || {
        let comps: Vec<Composition> = Composition::all(4, 3).collect();
        ensure(comps.len() == 256, || {
            format!("{} compositions", comps.len())
        })?;
        for a in &comps {
            let d = skyline(a).map_err(|e| e.to_string())?;
            let got = vertices(&d).map_err(|e| e.to_string())?;
            let v = vertex_compositions(a);
            let want: Vec<LatticePoint> = v.iter().map(LatticePoint::from).collect();
            ensure(got == want, || {
                format!("alpha={a}: vertices {got:?} vs V(α) {want:?}")
            })?;
            let closure = searles_closure(a.parts());
            let v_parts: BTreeSet<Vec<u32>> = v.iter().map(|c| c.parts().to_vec()).collect();
            ensure(v_parts == closure, || {
                format!("alpha={a}: V(α) disagrees with t_ij closure")
            })?;

            for r in 1..4 {
                if a.at(r) >= a.at(r + 1) {
                    continue;
                }
                let prime = a.swap_adjacent(r);
                let vp = vertex_compositions(&prime);
                let mut rec: BTreeSet<Composition> = vp.iter().cloned().collect();
                rec.extend(vp.iter().map(|b| b.swap_adjacent(r)));
                ensure(rec == v.iter().cloned().collect(), || {
                    format!("alpha={a} r={r}: V(α) ≠ V(α') ∪ V(α')·s_r")
                })?;
                let d_prime = skyline(&prime).unwrap();
                let s_r = Permutation::simple(4, r).unwrap();
                for w in Permutation::all(4) {
                    if w.position_of(r) > w.position_of(r + 1) {
                        continue;
                    }
                    let x = vertex_vector(&d, &w).unwrap();
                    let y = vertex_vector(&d, &w.swap_values(r)).unwrap();
                    let ys = pt(&act(y.coords(), &s_r).unwrap());
                    ensure(x == ys, || {
                        format!("alpha={a} r={r} w={w}: x(w)={x}, x(s_r w)·s_r={ys}")
                    })?;
                    let x2 = vertex_vector(&d_prime, &w).unwrap();
                    ensure(x == x2, || {
                        format!("alpha={a} r={r} w={w}: x(w)={x}, x'(w)={x2}")
                    })?;
                }
            }
        }
        Ok(())
    })
}

fn criterion_8() -> (Outcome, Duration) {
    timed_once(LIMIT_SCHUBERT_SWEEP, || {
        for w in Permutation::all(4) {
            let s = schubert_polynomial(&w).map_err(|e| e.to_string())?;
            let d = rothe(&w).unwrap();
            let h = hrep(&d).map_err(|e| e.to_string())?;
            let exps = newton_exponents(&s);
            for e in &exps {
                ensure(h.contains_lattice(e).unwrap(), || {
                    format!("w={w}: exponent {e} outside")
                })?;
            }
            let v = vertices(&d).map_err(|e| e.to_string())?;
            let support: BTreeSet<&LatticePoint> = exps.iter().collect();
            ensure(v.iter().all(|p| support.contains(p)), || {
                format!("w={w}: a vertex is missing from the support")
            })?;
            let c = certify_lattice_vertices(&h, &v).map_err(|e| e.to_string())?;
            ensure(c.passed(), || format!("w={w}: {:?}", c.witnesses))?;
        }
        Ok(())
    })
}

fn criterion_9() -> Outcome {
    for w in Permutation::all(4) {
        let a = Composition::from(&w);
        let k = key_polynomial(&a).map_err(|e| e.to_string())?;
        let hull = extreme_points(&newton_exponents(&k));
        let h = hrep(&skyline(&a).unwrap()).map_err(|e| e.to_string())?;
        let c = certify_lattice_vertices(&h, &hull).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("w={w}: {:?}", c.witnesses))?;
        let want: BTreeSet<LatticePoint> = Permutation::all(4)
            .filter(|v| bruhat_tableau(&w, v))
            .map(|v| pt(&v.entries().iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect();
        let got: BTreeSet<LatticePoint> = hull.into_iter().collect();
        ensure(got == want, || {
            format!("w={w}: Newton vertices {got:?} vs interval {want:?}")
        })?;
    }
    Ok(())
}

fn dump(m: &ThetaRankMismatch) -> String {
    let d = &m.diagram;
    let columns: Vec<String> = (1..=d.n())
        .map(|j| {
            let c = d.column(j).unwrap();
            format!(
                "col {j} rows {{{}}}: word {} rank {}",
                c.rows(),
                column_word(d, j, m.set).unwrap(),
                rank_filling(&c, m.set)
            )
        })
        .collect();
    format!(
        "minimal counterexample: D={:?} S={{{}}} θ={} r={}\n{}{}",
        d.boxes(),
        m.set,
        m.theta,
        m.rank,
        d.to_text(),
        columns.join("\n")
    )
}

fn criterion_10() -> Outcome {
    let corpus = diagram_corpus(4, CORPUS_RANDOM, CORPUS_SEED);
    ensure(corpus.len() == CORPUS_RANDOM + 24 + 625, || {
        format!("corpus size {}", corpus.len())
    })?;
    if let Some(m) = theta_rank_counterexample(&corpus) {
        return Err(dump(&m));
    }
    // θ again, subset by subset, with ranks from the direct row-index filling
    for d in &corpus {
        for s in Subset::all(4) {
            let direct: usize = d
                .column_sets()
                .iter()
                .map(|c| fill_rows(&c.to_vec(), &s.to_vec()).len())
                .sum();
            ensure(theta(d, s) == direct, || {
                format!(
                    "D={:?} S={{{s}}}: θ={} direct rank={direct}",
                    d.boxes(),
                    theta(d, s)
                )
            })?;
        }
    }
    let mut mismatches = Vec::new();
    for d in &corpus {
        for w in Permutation::all(4) {
            let x = vertex_vector(d, &w).unwrap();
            let e = edmonds_vertex(4, |s| rank_diagram(d, s) as i64, &w).unwrap();
            if x != e {
                mismatches.push((d.len(), d.boxes(), w, x, e));
            }
        }
    }
    if let Some((_, boxes, w, x, e)) = mismatches.into_iter().min() {
        return Err(format!(
            "minimal counterexample: D={boxes:?} w={w}: filling {x} vs greedy {e}"
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, outcome: Outcome, took: Option<Duration>| {
        let time = took.map(|t| format!(" [{t:?}]")).unwrap_or_default();
        match outcome {
            Ok(()) => println!("PASS {id:>2} {name}{time}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {id:>2} {name}{time}: {e}");
            }
        }
    };
    let (o, t) = criterion_1();
    report(1, "running example filling and x(315624)", o, Some(t));
    let (o, t) = criterion_2();
    report(
        2,
        "four-box diagram fillings, vertices and certification",
        o,
        Some(t),
    );
    report(3, "column words and theta on D9", criterion_3(), None);
    report(
        4,
        "key polynomial of (1,0,3) and its Newton vertices",
        criterion_4(),
        None,
    );
    report(5, "w(2,0,1,3,2,0,1) = 2641375", criterion_5(), None);
    let (o, t) = criterion_6();
    report(6, "rank equivalence on 1024 column/set pairs", o, Some(t));
    let (o, t) = criterion_7();
    report(
        7,
        "skyline vertex sweep with recursion and symmetries",
        o,
        Some(t),
    );
    let (o, t) = criterion_8();
    report(8, "Schubert Newton sweep over S_4", o, Some(t));
    report(
        9,
        "key polynomials of S_4 give Bruhat interval polytopes",
        criterion_9(),
        None,
    );
    report(
        10,
        "theta equals rank and greedy equals Edmonds",
        criterion_10(),
        None,
    );
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
