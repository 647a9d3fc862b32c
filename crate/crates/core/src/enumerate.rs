//! Exhaustive catalogs of reduced and valid triples, orbit counts `d₀`, `d`,
//! and the per-graph tables.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::active::{classify_pair, pi_options, ActivePair, Tag};
use crate::combdata::{check_reduced, codims, validate, CombTriple};
use crate::error::{Error, Result};
use crate::rootsys::{support_iter, Root, RootSystem, Support};
use crate::transform::orbits;

/// Triples with a fixed `Supp M`, their codimensions and orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub label: String,
    pub support: Support,
    /// Canonical order.
    pub triples: Vec<CombTriple>,
    /// `(c(S), c(N))` per triple.
    pub codims: Vec<(usize, usize)>,
    /// Blocks of indices into `triples`, each sorted, blocks ordered by first element.
    pub orbits: Vec<Vec<usize>>,
    /// One-step moves `(target, center)` inside the catalog, self-loops omitted.
    pub steps: Vec<Vec<(usize, usize)>>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn index_of(&self, t: &CombTriple) -> Option<usize> {
        self.triples.binary_search(t).ok()
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits.iter().position(|o| o.contains(&i)).expect("orbits cover the catalog")
    }

    /// One JSON object per triple.
    pub fn json_lines(&self) -> impl Iterator<Item = Value> + '_ {
        self.triples.iter().enumerate().map(move |(i, t)| {
            json!({
                "index": i,
                "system": self.label,
                "triple": t,
                "compact": t.to_string(),
                "cS": self.codims[i].0,
                "cN": self.codims[i].1,
                "orbit": self.orbit_of(i),
            })
        })
    }
}

fn connected_subsets(rs: &RootSystem, support: Support) -> Vec<Support> {
    let mut out = Vec::new();
    let mut s = support;
    while s != 0 {
        if rs.is_connected(s) {
            out.push(s);
        }
        s = (s - 1) & support;
    }
    out.sort_unstable();
    out
}

/// Families of supports covering `support` in which every member owns a node no other member has.
fn support_families(rs: &RootSystem, support: Support) -> Vec<Vec<Support>> {
    fn go(cands: &[Support], start: usize, cur: &mut Vec<Support>, support: Support, out: &mut Vec<Vec<Support>>) {
        let union = cur.iter().fold(0, |a, &b| a | b);
        if union == support {
            out.push(cur.clone());
            return;
        }
        for k in start..cands.len() {
            let s = cands[k];
            if s & !union == 0 {
                continue;
            }
            let keeps_private = (0..cur.len()).all(|i| {
                let others = cur.iter().enumerate().filter(|&(j, _)| j != i).fold(s, |a, (_, &b)| a | b);
                cur[i] & !others != 0
            });
            if keeps_private {
                cur.push(s);
                go(cands, k + 1, cur, support, out);
                cur.pop();
            }
        }
    }
    let cands = connected_subsets(rs, support);
    let mut out = Vec::new();
    go(&cands, 0, &mut Vec::new(), support, &mut out);
    out
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|pre| {
                opts.iter().map(move |o| {
                    let mut v = pre.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// Restricted-growth labelings of `0..n` in which each forced pair shares a label.
fn partitions(n: usize, forced: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn go(n: usize, forced: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == n {
            out.push(cur.clone());
            return;
        }
        let top = cur.iter().max().map_or(0, |m| m + 1);
        for l in 0..=top {
            let ok = forced
                .iter()
                .all(|&(a, b)| !(b == k && a < k && cur[a] != l) && !(a == k && b < k && cur[b] != l));
            if ok {
                cur.push(l);
                go(n, forced, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, forced, &mut Vec::new(), &mut out);
    out
}

fn triples_for(m: &[ActivePair], forced: &[(usize, usize)]) -> Vec<CombTriple> {
    partitions(m.len(), forced)
        .into_iter()
        .filter_map(|labels| CombTriple::with_labels(m.to_vec(), &labels).ok())
        .collect()
}

fn reduced_for_family(rs: &RootSystem, fam: &[Support]) -> Vec<CombTriple> {
    let roots: Vec<Root> = fam.iter().map(|&s| rs.typical_root(s)).collect();
    let pis: Vec<Vec<usize>> = fam.iter().map(|&s| support_iter(s).collect()).collect();
    let mut out = Vec::new();
    for choice in product(&pis) {
        let m: Vec<ActivePair> = roots.iter().zip(&choice).map(|(r, &k)| ActivePair::new(r.clone(), k)).collect();
        let mut forced = Vec::new();
        let mut ok = true;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if fam[i] & fam[j] != 0 {
                    let c = classify_pair(rs, &m[i], &m[j], true);
                    if !matches!(c.refined, Some(Tag::E1Prime | Tag::E2Prime)) {
                        ok = false;
                    }
                    forced.push((i, j));
                }
            }
        }
        if ok {
            out.extend(triples_for(&m, &forced).into_iter().filter(|t| check_reduced(rs, t).ok()));
        }
    }
    out
}

fn finish(rs: &RootSystem, support: Support, mut triples: Vec<CombTriple>, reduced_only: bool) -> Result<Catalog> {
    triples.sort();
    triples.dedup();
    let codims = triples.par_iter().map(|t| codims(rs, t)).collect::<Result<Vec<_>>>()?;
    let g = orbits(rs, &triples, reduced_only)?;
    let pos: Vec<usize> = g
        .nodes
        .iter()
        .map(|t| {
            triples
                .binary_search(t)
                .map_err(|_| Error::Invalid("catalog", format!("orbit leaves the catalog at {t}")))
        })
        .collect::<Result<_>>()?;
    let mut orbits: Vec<Vec<usize>> = g
        .orbits
        .iter()
        .map(|o| {
            let mut v: Vec<usize> = o.iter().map(|&i| pos[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    orbits.sort();
    let mut steps = vec![Vec::new(); triples.len()];
    for e in g.edges.iter().filter(|e| e.from != e.to) {
        steps[pos[e.from]].push((pos[e.to], e.center));
    }
    for s in &mut steps {
        s.sort_unstable();
        s.dedup();
    }
    Ok(Catalog {
        label: rs.label().to_string(),
        support,
        triples,
        codims,
        orbits,
        steps,
    })
}

fn check_support(rs: &RootSystem, support: Support) -> Result<()> {
    if support & !rs.full_support() != 0 {
        return Err(Error::Malformed(format!("support {support:#b} is not a set of simple roots")));
    }
    Ok(())
}

/// All reduced triples with `Supp M = support`; orbits under reduced-preserving moves.
pub fn enumerate_reduced(rs: &RootSystem, support: Support) -> Result<Catalog> {
    check_support(rs, support)?;
    let triples: Vec<CombTriple> = if support == 0 {
        vec![CombTriple::empty()]
    } else {
        support_families(rs, support)
            .par_iter()
            .flat_map_iter(|fam| reduced_for_family(rs, fam))
            .collect()
    };
    finish(rs, support, triples, true)
}

/// All triples satisfying (A), (D), (E), (C) with `Supp M = support`; rank at most 3.
pub fn enumerate_valid(rs: &RootSystem, support: Support) -> Result<Catalog> {
    check_support(rs, support)?;
    if rs.rank() > 3 {
        return Err(Error::Unsupported(format!(
            "valid-triple enumeration is limited to rank 3, {} has rank {}",
            rs.label(),
            rs.rank()
        )));
    }
    let mut by_support: HashMap<Support, Vec<ActivePair>> = HashMap::new();
    for r in rs.positive_roots() {
        for k in pi_options(rs, r) {
            by_support.entry(r.support()).or_default().push(ActivePair::new(r.clone(), k));
        }
    }
    let mut triples = Vec::new();
    if support == 0 {
        triples.push(CombTriple::empty());
    }
    for fam in support_families(rs, support) {
        let opts: Vec<Vec<ActivePair>> = fam.iter().map(|s| by_support.get(s).cloned().unwrap_or_default()).collect();
        for m in product(&opts) {
            triples.extend(triples_for(&m, &[]).into_iter().filter(|t| validate(rs, t, None).admissible()));
        }
    }
    finish(rs, support, triples, false)
}

/// Conjugacy classes with full support: orbits of all moves through the reduced triples.
pub fn d0(rs: &RootSystem) -> Result<usize> {
    let cat = enumerate_reduced(rs, rs.full_support())?;
    Ok(orbits(rs, &cat.triples, false)?.orbits.len())
}

/// Isomorphism key of the diagram on a set of simple roots.
pub fn diagram_key(rs: &RootSystem, s: Support) -> String {
    let mut names: Vec<String> = rs.connected_parts(s).into_iter().map(|p| rs.identify(p).name()).collect();
    names.sort();
    names.join("x")
}

/// `d = Σ_{Π′ ⊆ Π} d₀(Π′)`, each `d₀` computed once per diagram type.
pub fn d(rs: &RootSystem) -> Result<usize> {
    let subsets: Vec<Support> = (0..=rs.full_support()).filter(|s| s & !rs.full_support() == 0).collect();
    let mut reps: HashMap<String, Support> = HashMap::new();
    for &s in subsets.iter().filter(|&&s| s != 0) {
        reps.entry(diagram_key(rs, s)).or_insert(s);
    }
    let memo: HashMap<String, usize> = reps
        .into_par_iter()
        .map(|(k, s)| d0(&rs.subsystem(s).0).map(|v| (k, v)))
        .collect::<Result<_>>()?;
    Ok(subsets
        .iter()
        .map(|&s| if s == 0 { 1 } else { memo[&diagram_key(rs, s)] })
        .sum())
}

/// `d` by counting orbits over every support directly in `rs`.
pub fn d_direct(rs: &RootSystem) -> Result<usize> {
    let subsets: Vec<Support> = (0..=rs.full_support()).filter(|s| s & !rs.full_support() == 0).collect();
    subsets
        .par_iter()
        .map(|&s| {
            let cat = enumerate_reduced(rs, s)?;
            Ok(orbits(rs, &cat.triples, false)?.orbits.len())
        })
        .sum()
}

/// Rows for several systems on the same underlying graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub systems: Vec<String>,
    pub rows: Vec<TableRow>,
    pub d0: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub triple: CombTriple,
    /// Reachable rows (1-based) per system, each with its one-step centers (1-based).
    pub reach: Vec<Vec<(usize, Vec<usize>)>>,
    pub cs: usize,
    pub cn: usize,
}

impl TableRow {
    pub fn pairs_cell(&self) -> String {
        let s = self.triple.to_string();
        s.split(" & ").next().unwrap_or_default().to_string()
    }

    pub fn sim_cell(&self) -> String {
        let s = self.triple.to_string();
        s.split_once(" & ").map(|(_, e)| e.replace(", ", ",")).unwrap_or_default()
    }

    /// `2,3(2)`: row 3 in one step at center 2, row 2 only by longer paths.
    pub fn reach_cell(&self, k: usize) -> String {
        self.reach[k]
            .iter()
            .map(|(r, cs)| {
                let tail: String = cs.iter().map(|c| format!("({c})")).collect();
                format!("{r}{tail}")
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn underlying(rs: &RootSystem) -> Vec<Vec<bool>> {
    (0..rs.rank()).map(|i| (0..rs.rank()).map(|j| rs.adjacent(i, j)).collect()).collect()
}

pub fn emit_table(systems: &[RootSystem]) -> Result<Table> {
    let first = systems.first().ok_or_else(|| Error::Malformed("no systems given".into()))?;
    if systems.iter().any(|r| underlying(r) != underlying(first)) {
        return Err(Error::Malformed("systems do not share an underlying graph".into()));
    }
    let cats: Vec<Catalog> = systems
        .par_iter()
        .map(|r| enumerate_reduced(r, r.full_support()))
        .collect::<Result<_>>()?;
    let mut all: Vec<CombTriple> = cats.iter().flat_map(|c| c.triples.iter().cloned()).collect();
    all.sort();
    all.dedup();
    let row_of: HashMap<&CombTriple, usize> = all.iter().enumerate().map(|(i, t)| (t, i + 1)).collect();
    let mut rows: Vec<TableRow> = Vec::new();
    for t in &all {
        let (cs, cn) = codims(first, t).or_else(|_| {
            let c = cats.iter().find(|c| c.index_of(t).is_some()).expect("row comes from a catalog");
            Ok::<_, Error>(c.codims[c.index_of(t).unwrap()])
        })?;
        let reach = cats
            .iter()
            .map(|c| {
                let Some(i) = c.index_of(t) else { return Vec::new() };
                let mut v: Vec<(usize, Vec<usize>)> = c.orbits[c.orbit_of(i)]
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| {
                        let centers = c.steps[i].iter().filter(|s| s.0 == j).map(|s| s.1 + 1).collect();
                        (row_of[&c.triples[j]], centers)
                    })
                    .collect();
                v.sort();
                v
            })
            .collect();
        rows.push(TableRow { triple: t.clone(), reach, cs, cn });
    }
    let d0 = systems.par_iter().map(d0).collect::<Result<Vec<_>>>()?;
    Ok(Table {
        systems: systems.iter().map(|r| r.label().to_string()).collect(),
        rows,
        d0,
    })
}

impl Table {
    fn header(&self) -> Vec<String> {
        let mut h = vec!["No.".to_string(), "(M, pi)".into(), "~".into()];
        h.extend(self.systems.iter().cloned());
        h.extend(["c(S)".to_string(), "c(N)".into()]);
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut out = vec![self.header()];
        for (i, r) in self.rows.iter().enumerate() {
            let mut rec = vec![(i + 1).to_string(), r.pairs_cell(), r.sim_cell()];
            rec.extend((0..self.systems.len()).map(|k| r.reach_cell(k)));
            rec.extend([r.cs.to_string(), r.cn.to_string()]);
            out.push(rec);
        }
        let mut foot = vec!["d0".to_string(), String::new(), String::new()];
        foot.extend(self.d0.iter().map(usize::to_string));
        foot.extend([String::new(), String::new()]);
        out.push(foot);
        out
    }

    pub fn to_text(&self) -> String {
        let recs = self.records();
        let widths: Vec<usize> = (0..recs[0].len())
            .map(|c| recs.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut s = String::new();
        for r in &recs {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(x, &w)| format!("{x:<w$}")).collect();
            s.push_str(cells.join(" | ").trim_end());
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let reach: serde_json::Map<String, Value> = self
                    .systems
                    .iter()
                    .enumerate()
                    .map(|(k, s)| (s.clone(), json!(r.reach[k])))
                    .collect();
                json!({"row": i + 1, "triple": r.triple, "compact": r.triple.to_string(), "reach": reach, "cS": r.cs, "cN": r.cn})
            })
            .collect();
        let d0: serde_json::Map<String, Value> =
            self.systems.iter().zip(&self.d0).map(|(s, d)| (s.clone(), json!(d))).collect();
        json!({"systems": self.systems, "rows": rows, "d0": d0})
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in self.records() {
            w.write_record(&r).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 cells")
    }
}

/// Collects every distinct reduced triple over all supports of `rs`.
pub fn all_reduced(rs: &RootSystem) -> Result<Vec<Catalog>> {
    let subsets: Vec<Support> = (0..=rs.full_support()).filter(|s| s & !rs.full_support() == 0).collect();
    subsets.par_iter().map(|&s| enumerate_reduced(rs, s)).collect()
}

/// Sets of triples of a catalog mapped through `f`, used to compare orbit partitions.
pub fn partition_sets(cat: &Catalog) -> HashSet<Vec<CombTriple>> {
    cat.orbits
        .iter()
        .map(|o| o.iter().map(|&i| cat.triples[i].clone()).collect())
        .collect()
}
