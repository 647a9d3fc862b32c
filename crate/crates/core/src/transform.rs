//! Elementary transformations of `(M, π, ∼)` at regular active simple roots,
//! conjugacy orbits, and the reduction to reduced form.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::active::ActivePair;
use crate::build::expand_psi;
use crate::combdata::{check_reduced, validate, CombTriple};
use crate::error::{Error, Result};
use crate::rootsys::{support_iter, Root, RootSystem, Support};

fn require_admissible(rs: &RootSystem, t: &CombTriple) -> Result<()> {
    let rep = validate(rs, t, None);
    if rep.admissible() {
        Ok(())
    } else {
        rep.into_result()
    }
}

fn contains(s: Support, i: usize) -> bool {
    s >> i & 1 == 1
}

fn regular_unchecked(rs: &RootSystem, t: &CombTriple) -> Vec<usize> {
    let m = t.pairs();
    (0..rs.rank())
        .filter(|&d| {
            let simple = Root::simple(rs.rank(), d);
            if let Some(i) = t.position(&simple) {
                return t.classes()[t.class_of(i)].len() == 1;
            }
            m.iter().enumerate().any(|(k, a)| {
                let s = a.support();
                let rest = s & !(1 << d);
                rs.is_terminal(d, s)
                    && a.pi != d
                    && m.iter()
                        .enumerate()
                        .all(|(j, b)| j == k || rest & !b.support() != 0)
            })
        })
        .collect()
}

/// Simple roots at which an elementary transformation is defined.
pub fn regular_active_simple_roots(rs: &RootSystem, t: &CombTriple) -> Result<Vec<usize>> {
    require_admissible(rs, t)?;
    Ok(regular_unchecked(rs, t))
}

/// Rewriting at a center already known to be regular; the output is revalidated.
fn step(rs: &RootSystem, t: &CombTriple, d: usize) -> Result<CombTriple> {
    let n = rs.rank();
    let simple = Root::simple(n, d);
    let keep: Vec<usize> = (0..t.len()).filter(|&i| t.pairs()[i].root != simple).collect();
    let mut m: Vec<ActivePair> = keep
        .iter()
        .map(|&i| {
            let p = &t.pairs()[i];
            ActivePair::new(rs.reflect_unchecked(&p.root, d), p.pi)
        })
        .collect();
    let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut classes: Vec<Vec<usize>> = t
        .classes()
        .iter()
        .map(|b| b.iter().filter_map(|i| new_index.get(i).copied()).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    if !m.iter().any(|p| contains(p.support(), d)) {
        classes.push(vec![m.len()]);
        m.push(ActivePair::new(simple, d));
    }
    let out = CombTriple::new(m, classes)?;
    let rep = validate(rs, &out, None);
    if !rep.admissible() {
        return Err(Error::Invalid(
            "transform",
            format!("{t} at {} gives {out}: {}", d + 1, rep.failures.join("; ")),
        ));
    }
    Ok(out)
}

pub fn elementary_transform(rs: &RootSystem, t: &CombTriple, d: usize) -> Result<CombTriple> {
    if d >= rs.rank() {
        return Err(Error::BadIndex(d));
    }
    if !regular_active_simple_roots(rs, t)?.contains(&d) {
        return Err(Error::NotRegular(d));
    }
    step(rs, t, d)
}

/// Sizes of `M₀`, `M₁₁`, `M₁₂`, `M₁₃`, `M₂₁`, `M₂₂`, `M₂₃` for a center `δ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaProfile {
    pub m0: usize,
    pub m11: usize,
    pub m12: usize,
    pub m13: usize,
    pub m21: usize,
    pub m22: usize,
    pub m23: usize,
}

impl DeltaProfile {
    pub fn m1(&self) -> usize {
        self.m11 + self.m12 + self.m13
    }

    pub fn m2(&self) -> usize {
        self.m21 + self.m22 + self.m23
    }
}

fn profile_unchecked(rs: &RootSystem, t: &CombTriple, d: usize) -> DeltaProfile {
    let simple = Root::simple(rs.rank(), d);
    let mut p = DeltaProfile::default();
    for a in t.pairs().iter().filter(|a| a.root != simple) {
        let s = a.support();
        let nbrs: Vec<usize> = support_iter(s).filter(|&g| rs.adjacent(d, g)).collect();
        let arrow = |bond: i64| nbrs.iter().any(|&g| rs.bond(d, g) == bond && rs.arrow_toward(d, g));
        if contains(s, d) {
            if arrow(3) {
                p.m21 += 1;
            } else if arrow(2) {
                p.m22 += 1;
            } else {
                p.m23 += 1;
            }
        } else if nbrs.is_empty() {
            p.m0 += 1;
        } else if arrow(3) {
            p.m11 += 1;
        } else if arrow(2) {
            p.m12 += 1;
        } else {
            p.m13 += 1;
        }
    }
    p
}

pub fn delta_profile(rs: &RootSystem, t: &CombTriple, d: usize) -> Result<DeltaProfile> {
    if !regular_active_simple_roots(rs, t)?.contains(&d) {
        return Err(Error::NotRegular(d));
    }
    Ok(profile_unchecked(rs, t, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Unchanged,
    ReducedNew,
    NotReduced,
}

impl Verdict {
    fn from_profile(p: &DeltaProfile) -> Verdict {
        if p.m1() + p.m21 + p.m23 == 0 {
            Verdict::Unchanged
        } else if p.m13 + p.m23 >= 1 && p.m11 + p.m12 + p.m21 == 0 && p.m13 + p.m22 <= 1 {
            Verdict::ReducedNew
        } else {
            Verdict::NotReduced
        }
    }
}

/// Whether transforming a reduced triple at `δ` keeps it, gives another reduced triple, or leaves the reduced class.
pub fn preserves_reduced(rs: &RootSystem, t: &CombTriple, d: usize) -> Result<Verdict> {
    Ok(Verdict::from_profile(&delta_profile(rs, t, d)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub center: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitGraph {
    pub nodes: Vec<CombTriple>,
    pub edges: Vec<Edge>,
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitGraph {
    pub fn index_of(&self, t: &CombTriple) -> Option<usize> {
        self.nodes.iter().position(|x| x == t)
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbits.iter().position(|o| o.contains(&i)).expect("orbits cover nodes")
    }

    pub fn to_json(&self) -> Value {
        json!({"nodes": self.nodes, "edges": self.edges, "orbits": self.orbits})
    }
}

/// Orbits of the seeds under elementary transformations. With `reduced_only`
/// only moves that keep the triple reduced are followed. Nodes are numbered in
/// discovery order, seeds first in the order given.
pub fn orbits(rs: &RootSystem, seeds: &[CombTriple], reduced_only: bool) -> Result<OrbitGraph> {
    let mut g = OrbitGraph::default();
    let mut index: HashMap<CombTriple, usize> = HashMap::new();
    for seed in seeds {
        if index.contains_key(seed) {
            continue;
        }
        require_admissible(rs, seed)?;
        let start = g.nodes.len();
        index.insert(seed.clone(), start);
        g.nodes.push(seed.clone());
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let t = g.nodes[i].clone();
            for d in regular_unchecked(rs, &t) {
                if reduced_only && Verdict::from_profile(&profile_unchecked(rs, &t, d)) == Verdict::NotReduced {
                    continue;
                }
                let u = step(rs, &t, d)?;
                let j = match index.get(&u) {
                    Some(&j) => j,
                    None => {
                        let j = g.nodes.len();
                        index.insert(u.clone(), j);
                        g.nodes.push(u);
                        orbit.push(j);
                        queue.push_back(j);
                        j
                    }
                };
                g.edges.push(Edge { from: i, to: j, center: d });
            }
        }
        orbit.sort_unstable();
        g.orbits.push(orbit);
    }
    Ok(g)
}

pub fn orbit(rs: &RootSystem, t: &CombTriple, reduced_only: bool) -> Result<OrbitGraph> {
    orbits(rs, std::slice::from_ref(t), reduced_only)
}

/// The simple root of `Supp α` marked for removing a non-typical `α`: its short terminal node.
fn star(rs: &RootSystem, a: &Root) -> usize {
    let s = a.support();
    support_iter(s)
        .filter(|&i| rs.is_terminal(i, s))
        .min_by_key(|&i| rs.gram()[i][i])
        .expect("non-typical roots have at least two support nodes")
}

/// A reduced triple in the orbit of `t`, with the centers used to reach it.
pub fn reduce_to_reduced(rs: &RootSystem, t: &CombTriple) -> Result<(CombTriple, Vec<usize>)> {
    require_admissible(rs, t)?;
    let mut cur = t.clone();
    let mut path = Vec::new();
    let limit = 4 * rs.num_positive() * (t.len() + 1) + 16;
    while !check_reduced(rs, &cur).ok() {
        if path.len() > limit {
            return Err(Error::Invalid("reduce", format!("no progress from {t}")));
        }
        let d = if let Some(p) = cur.pairs().iter().find(|p| !p.root.is_typical()) {
            star(rs, &p.root)
        } else {
            let aset = expand_psi(rs, &cur)?;
            (0..rs.rank())
                .find(|&d| {
                    aset.position(&Root::simple(rs.rank(), d)).is_some()
                        && cur.pairs().iter().filter(|p| contains(p.support(), d)).count() >= 2
                })
                .ok_or_else(|| Error::Invalid("reduce", format!("{cur} is stuck")))?
        };
        if !regular_unchecked(rs, &cur).contains(&d) {
            return Err(Error::NotRegular(d));
        }
        cur = step(rs, &cur, d)?;
        path.push(d);
    }
    Ok((cur, path))
}
