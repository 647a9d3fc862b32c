//! One PASS/FAIL line per acceptance criterion. Counts are compared exactly;
//! the time limits are 300 s for the summary counts and 30 s for the substrate checks.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use common::{compare, load, rs};
use solvsph_core::active::{family, member_pi, pi_options, ActivePair};
use solvsph_core::build::{build_subalgebra, check_sphericity, is_weight_basis, verify_closure};
use solvsph_core::combdata::{check_reduced, codims, largest_torus, validate};
use solvsph_core::enumerate::{all_reduced, d, d0, d_direct, emit_table, enumerate_valid};
use solvsph_core::rootsys::{jacobi_violations, support_len};
use solvsph_core::transform::{orbit, orbits, preserves_reduced, reduce_to_reduced, Verdict};
use solvsph_core::{CombTriple, RootSystem};

const SUMMARY_LIMIT: Duration = Duration::from_secs(300);
const SUBSTRATE_LIMIT: Duration = Duration::from_secs(30);

const TYPES: [&str; 12] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4"];
const SMALL: [&str; 11] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "A1xA2", "A1xB2", "A1xA1xA1"];

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

fn report(n: usize, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = run();
    let t = start.elapsed();
    if let Some(l) = limit {
        if t > l {
            out.failures.push(format!("took {:.1}s, limit {}s", t.as_secs_f64(), l.as_secs()));
        }
    }
    let ok = out.failures.is_empty();
    println!(
        "{} {n}. {name}: {} [{:.1}s]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        t.as_secs_f64()
    );
    for f in out.failures.iter().take(10) {
        println!("     {f}");
    }
    ok
}

fn summary_counts() -> Outcome {
    let want = [2, 5, 6, 6, 18, 22, 21, 74, 91, 86, 86, 87];
    let got: Vec<(usize, usize)> = TYPES
        .par_iter()
        .map(|l| {
            let r = rs(l);
            (d(&r).unwrap(), d_direct(&r).unwrap())
        })
        .collect();
    let mut failures = Vec::new();
    for ((l, w), (a, b)) in TYPES.iter().zip(want).zip(&got) {
        if *a != w || *b != w {
            failures.push(format!("{l}: d = {a} (subset sum), {b} (direct), expected {w}"));
        }
    }
    let detail = TYPES.iter().zip(&got).map(|(l, g)| format!("{l}={}", g.0)).collect::<Vec<_>>().join(" ");
    Outcome { failures, detail }
}

fn d0_counts() -> Outcome {
    let want = [
        ("A2", 2),
        ("B2", 3),
        ("G2", 3),
        ("A1xA1xA1", 5),
        ("A1xA2", 5),
        ("A1xB2", 7),
        ("A3", 8),
        ("B3", 11),
        ("C3", 10),
        ("A4", 31),
        ("B4", 42),
        ("C4", 38),
        ("F4", 38),
        ("D4", 40),
    ];
    let got: Vec<usize> = want.par_iter().map(|(l, _)| d0(&rs(l)).unwrap()).collect();
    let failures = want
        .iter()
        .zip(&got)
        .filter(|((_, w), g)| w != *g)
        .map(|((l, w), g)| format!("{l}: d0 = {g}, expected {w}"))
        .collect();
    let detail = want.iter().zip(&got).map(|((l, _), g)| format!("{l}={g}")).collect::<Vec<_>>().join(" ");
    Outcome { failures, detail }
}

fn tables() -> Outcome {
    let jobs: [(&str, &[&str]); 6] = [
        ("rank2", &["A2", "B2", "G2"]),
        ("a1a1a1", &["A1xA1xA1"]),
        ("a1a2", &["A1xA2", "A1xB2"]),
        ("rank3", &["A3", "B3", "C3"]),
        ("rank4_a", &["A4", "B4", "C4", "F4"]),
        ("rank4_d", &["D4"]),
    ];
    let res: Vec<(usize, Vec<String>, usize)> = jobs
        .par_iter()
        .map(|(name, labels)| {
            let systems: Vec<RootSystem> = labels.iter().map(|l| rs(l)).collect();
            let t = emit_table(&systems).unwrap();
            let (bad, cells) = compare(&t, &load(name));
            (t.rows.len(), bad.into_iter().map(|b| format!("{name}: {b}")).collect(), cells)
        })
        .collect();
    let failures: Vec<String> = res.iter().flat_map(|r| r.1.clone()).collect();
    let cells: usize = res.iter().map(|r| r.2).sum();
    let sizes = jobs.iter().zip(&res).map(|((n, _), r)| format!("{n}:{}", r.0)).collect::<Vec<_>>().join(" ");
    Outcome {
        failures,
        detail: format!("rows {sizes}; {cells} transition cells compared"),
    }
}

fn soundness() -> Outcome {
    let items: Vec<(RootSystem, CombTriple)> = TYPES
        .iter()
        .flat_map(|l| {
            let r = rs(l);
            all_reduced(&r)
                .unwrap()
                .into_iter()
                .flat_map(|c| c.triples)
                .map(move |t| (r.clone(), t))
                .collect::<Vec<_>>()
        })
        .collect();
    let failures: Vec<String> = items
        .par_iter()
        .filter_map(|(r, t)| {
            let k = largest_torus(r, t);
            if !validate(r, t, Some(&k)).ok() {
                return Some(format!("{} {t}: invalid with its largest torus", r.label()));
            }
            let m = match build_subalgebra(r, t, &k) {
                Ok(m) => m,
                Err(e) => return Some(format!("{} {t}: {e}", r.label())),
            };
            let (cs, cn) = codims(r, t).unwrap();
            let checks = [
                ("closure", verify_closure(r, &m)),
                ("weights", is_weight_basis(r, &m)),
                ("sphericity", check_sphericity(r, &m)),
                ("dim", m.dim() == r.num_positive() - cn),
                ("codims", cs + cn == support_len(t.support())),
            ];
            let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
            (!bad.is_empty()).then(|| format!("{} {t}: {}", r.label(), bad.join(",")))
        })
        .collect();
    Outcome {
        failures,
        detail: format!("{} reduced triples over all supports", items.len()),
    }
}

fn transformations() -> Outcome {
    let per: Vec<(Vec<String>, usize, usize)> = TYPES
        .par_iter()
        .map(|l| {
            let r = rs(l);
            let mut bad = Vec::new();
            let (mut edges, mut verdicts) = (0, 0);
            for cat in all_reduced(&r).unwrap() {
                let full = orbits(&r, &cat.triples, false).unwrap();
                let cod: Vec<(usize, usize)> = full.nodes.iter().map(|t| codims(&r, t).unwrap()).collect();
                let set: HashSet<_> = full.edges.iter().map(|e| (e.from, e.to, e.center)).collect();
                for e in &full.edges {
                    edges += 1;
                    if !set.contains(&(e.to, e.from, e.center)) {
                        bad.push(format!("{l}: no reverse for {} -{}-> {}", full.nodes[e.from], e.center + 1, full.nodes[e.to]));
                    }
                    let (a, b) = (&full.nodes[e.from], &full.nodes[e.to]);
                    if a.support() != b.support() || cod[e.from] != cod[e.to] {
                        bad.push(format!("{l}: invariants change along {a} -> {b}"));
                    }
                }
                for t in &cat.triples {
                    let gi = full.index_of(t).unwrap();
                    for e in full.edges.iter().filter(|e| e.from == gi) {
                        verdicts += 1;
                        let u = &full.nodes[e.to];
                        let actual = if u == t {
                            Verdict::Unchanged
                        } else if check_reduced(&r, u).ok() {
                            Verdict::ReducedNew
                        } else {
                            Verdict::NotReduced
                        };
                        let v = preserves_reduced(&r, t, e.center).unwrap();
                        if v != actual {
                            bad.push(format!("{l}: {t} at {}: predicted {v:?}, got {actual:?}", e.center + 1));
                        }
                    }
                }
                let reduced: HashSet<&CombTriple> = cat.triples.iter().collect();
                let restricted: BTreeSet<BTreeSet<&CombTriple>> = full
                    .orbits
                    .iter()
                    .map(|o| o.iter().map(|&i| &full.nodes[i]).filter(|t| reduced.contains(t)).collect::<BTreeSet<_>>())
                    .filter(|o| !o.is_empty())
                    .collect();
                let ours: BTreeSet<BTreeSet<&CombTriple>> = cat
                    .orbits
                    .iter()
                    .map(|o| o.iter().map(|&i| &cat.triples[i]).collect())
                    .collect();
                if restricted != ours {
                    bad.push(format!("{l}: reduced-only orbits differ from full orbits on support {:#b}", cat.support));
                }
            }
            (bad, edges, verdicts)
        })
        .collect();
    Outcome {
        failures: per.iter().flat_map(|p| p.0.clone()).collect(),
        detail: format!(
            "{} edges, {} verdicts checked",
            per.iter().map(|p| p.1).sum::<usize>(),
            per.iter().map(|p| p.2).sum::<usize>()
        ),
    }
}

fn reduction() -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for l in SMALL {
        let r = rs(l);
        let mut count = 0;
        for s in 0..=r.full_support() {
            let cat = enumerate_valid(&r, s).unwrap();
            count += cat.len();
            for t in &cat.triples {
                match reduce_to_reduced(&r, t) {
                    Ok((u, _)) => {
                        if !check_reduced(&r, &u).ok() {
                            failures.push(format!("{l} {t}: output {u} is not reduced"));
                        }
                        if orbit(&r, t, false).unwrap().index_of(&u).is_none() {
                            failures.push(format!("{l} {t}: output {u} is outside the orbit"));
                        }
                    }
                    Err(e) => failures.push(format!("{l} {t}: {e}")),
                }
            }
        }
        if l == "G2" && count != 9 {
            failures.push(format!("G2 has {count} valid triples, expected 9"));
        }
        total += count;
    }
    Outcome {
        failures,
        detail: format!("{total} valid triples reduced"),
    }
}

fn substrate() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for l in TYPES.iter().chain(["A1xA1", "A1xB2", "A1xA2"].iter()) {
        let r = rs(l);
        if jacobi_violations(&r) != 0 {
            failures.push(format!("{l}: Jacobi identity fails"));
        }
        let n2 = 2 * r.num_positive();
        for a in 0..n2 {
            for b in 0..n2 {
                if r.sum_index(a, b).is_some() && r.n_signed(a, b) != -r.n_signed(b, a) {
                    failures.push(format!("{l}: N is not antisymmetric at ({a},{b})"));
                }
            }
        }
        let simply_laced = r.components().iter().all(|c| matches!(c.kind.letter(), 'A' | 'D' | 'E'));
        for a in r.positive_roots() {
            if simply_laced && r.count_decompositions(a) as i32 != a.height() - 1 {
                failures.push(format!("{l}: s({a}) != hgt - 1"));
            }
            for k in pi_options(&r, a) {
                pairs += 1;
                let p = ActivePair::new(a.clone(), k);
                let fam = family(&r, &p).unwrap();
                let pis: BTreeSet<usize> = fam.iter().map(|b| member_pi(&r, &p, b).unwrap()).collect();
                let sup: BTreeSet<usize> = (0..r.rank()).filter(|&i| a.support() >> i & 1 == 1).collect();
                if fam.len() != sup.len() || pis != sup {
                    failures.push(format!("{l}: ({a},{}) has |F| = {} and pi image {pis:?}", k + 1, fam.len()));
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!("{pairs} active pairs"),
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, "summary counts d(G)", Some(SUMMARY_LIMIT), summary_counts);
    ok &= report(2, "d0 footers", None, d0_counts);
    ok &= report(3, "table contents", None, tables);
    ok &= report(4, "construction soundness", None, soundness);
    ok &= report(5, "transformation algebra", None, transformations);
    ok &= report(6, "reduction procedure", None, reduction);
    ok &= report(7, "substrate checks", Some(SUBSTRATE_LIMIT), substrate);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
