//! Active roots: the catalog of admissible pairs `(α, π(α))`, the families
//! `F(α)`, associated simple roots, and the intersection patterns allowed
//! between two maximal active roots.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{support_iter, Kind, Root, RootSystem, Support};

/// A root together with its associated simple root `π(α)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActivePair {
    pub root: Root,
    pub pi: usize,
}

impl ActivePair {
    pub fn new(root: Root, pi: usize) -> Self {
        ActivePair { root, pi }
    }

    pub fn support(&self) -> Support {
        self.root.support()
    }
}

struct Row {
    /// `None` matches every connected type.
    kind: Option<Kind>,
    coeffs: fn(usize) -> Vec<i32>,
    pis: fn(usize) -> Vec<usize>,
}

/// The admissible pairs in the canonical numbering of `Supp α`, 0-based.
const ACTIVE_ROWS: [Row; 6] = [
    Row {
        kind: None,
        coeffs: |n| vec![1; n],
        pis: |n| (0..n).collect(),
    },
    Row {
        kind: Some(Kind::B),
        coeffs: |n| {
            let mut c = vec![1; n];
            c[n - 1] = 2;
            c
        },
        pis: |n| (0..n - 1).collect(),
    },
    Row {
        kind: Some(Kind::C),
        coeffs: |n| {
            let mut c = vec![2; n];
            c[n - 1] = 1;
            c
        },
        pis: |n| vec![n - 1],
    },
    Row {
        kind: Some(Kind::F),
        coeffs: |_| vec![2, 2, 1, 1],
        pis: |_| vec![2, 3],
    },
    Row {
        kind: Some(Kind::G),
        coeffs: |_| vec![2, 1],
        pis: |_| vec![1],
    },
    Row {
        kind: Some(Kind::G),
        coeffs: |_| vec![3, 1],
        pis: |_| vec![1],
    },
];

/// Canonical numberings of a connected support under which the rows are read.
/// A double edge of rank 2 is read both as `B_2` and as `C_2`.
fn labelings(rs: &RootSystem, s: Support) -> Vec<(Kind, Vec<usize>)> {
    let c = rs.identify(s);
    let mut out = vec![(c.kind, c.nodes.clone())];
    match c.kind {
        Kind::B if c.rank() == 2 => out.push((Kind::C, vec![c.nodes[1], c.nodes[0]])),
        Kind::A if c.rank() >= 2 => out.push((Kind::A, c.nodes.iter().rev().copied().collect())),
        _ => {}
    }
    out
}

/// Simple roots admissible as `π(α)`; empty when `α` is not an active root.
pub fn pi_options(rs: &RootSystem, a: &Root) -> Vec<usize> {
    if a.rank() != rs.rank() || !rs.is_positive_root(a) {
        return Vec::new();
    }
    let s = a.support();
    let mut out: Vec<usize> = Vec::new();
    for (kind, nodes) in labelings(rs, s) {
        let n = nodes.len();
        let local: Vec<i32> = nodes.iter().map(|&i| a.0[i]).collect();
        for row in &ACTIVE_ROWS {
            if row.kind.is_some_and(|k| k != kind) {
                continue;
            }
            if (row.coeffs)(n) == local {
                out.extend((row.pis)(n).into_iter().map(|k| nodes[k]));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn check_pair(rs: &RootSystem, p: &ActivePair) -> Result<()> {
    rs.check_coeffs(&p.root)?;
    if !pi_options(rs, &p.root).contains(&p.pi) {
        return Err(Error::NotActive {
            root: p.root.0.clone(),
            pi: p.pi,
        });
    }
    Ok(())
}

/// `F(α) = {α} ∪ {α' ∈ Δ₊ : α − α' ∈ Δ₊, π(α) ∉ Supp α'}`, in canonical order.
pub fn family(rs: &RootSystem, p: &ActivePair) -> Result<Vec<Root>> {
    check_pair(rs, p)?;
    Ok(family_unchecked(rs, p))
}

pub(crate) fn family_unchecked(rs: &RootSystem, p: &ActivePair) -> Vec<Root> {
    let mut out: Vec<Root> = rs
        .positive_roots()
        .iter()
        .filter(|b| {
            b.support() >> p.pi & 1 == 0 && rs.is_positive_root(&p.root.sub(b))
        })
        .cloned()
        .collect();
    out.push(p.root.clone());
    out.sort();
    out
}

/// The simple root `γ ∈ Supp β` such that for every split `β = β₁ + β₂`
/// into positive roots, `β₁ ∈ Ψ` exactly when `γ ∉ Supp β₁`.
pub fn associated_simple(rs: &RootSystem, psi: &HashSet<Root>, b: &Root) -> Option<usize> {
    let splits: Vec<&Root> = rs
        .positive_roots()
        .iter()
        .filter(|b1| rs.is_positive_root(&b.sub(b1)))
        .collect();
    let mut found = support_iter(b.support())
        .filter(|&g| splits.iter().all(|b1| psi.contains(*b1) == (b1.support() >> g & 1 == 0)));
    let g = found.next()?;
    found.next().is_none().then_some(g)
}

/// `π(β)` for a member `β` of `F(α)`.
pub fn member_pi(rs: &RootSystem, p: &ActivePair, b: &Root) -> Result<usize> {
    let fam = family(rs, p)?;
    if !fam.contains(b) {
        return Err(Error::Malformed(format!("{b} is not in F({})", p.root)));
    }
    let psi: HashSet<Root> = fam.into_iter().collect();
    associated_simple(rs, &psi, b)
        .ok_or_else(|| Error::Malformed(format!("no unique associated simple root for {b}")))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tag {
    D0,
    D1,
    E1,
    D2,
    E2,
    #[serde(rename = "E1PRIME")]
    E1Prime,
    #[serde(rename = "E2PRIME")]
    E2Prime,
    Invalid,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::D0 => "D0",
            Tag::D1 => "D1",
            Tag::E1 => "E1",
            Tag::D2 => "D2",
            Tag::E2 => "E2",
            Tag::E1Prime => "E1PRIME",
            Tag::E2Prime => "E2PRIME",
            Tag::Invalid => "INVALID",
        };
        f.write_str(s)
    }
}

/// Branching diagram of `Supp α ∪ Supp β`: the node `γ₀` with arms
/// `α₁…α_p`, `β₁…β_q` and the shared chain `γ₀, γ₁, …, γ_r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Branching {
    pub alpha_arm: Vec<usize>,
    pub beta_arm: Vec<usize>,
    pub chain: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Shared(usize),
    Diagram(Branching),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairClass {
    pub tag: Tag,
    /// `E1PRIME` / `E2PRIME` when the stricter shape also holds.
    pub refined: Option<Tag>,
    pub witness: Option<Witness>,
}

/// Path from `start` away from `from`, inside `s`.
fn arm(rs: &RootSystem, s: Support, from: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    while let Some(next) = support_iter(s).find(|&j| j != prev && rs.adjacent(cur, j)) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

fn mask(nodes: &[usize]) -> Support {
    nodes.iter().fold(0, |m, &i| m | 1 << i)
}

/// Recognizes the branching shape for two typical roots with supports `sa`, `sb`.
pub fn branching(rs: &RootSystem, sa: Support, sb: Support) -> Option<Branching> {
    let u = sa | sb;
    let i = sa & sb;
    if i == 0 || !rs.is_connected(u) {
        return None;
    }
    let nodes: Vec<usize> = support_iter(u).collect();
    if nodes.iter().any(|&x| nodes.iter().any(|&y| rs.bond(x, y) > 1)) {
        return None;
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&x| rs.degree_in(x, u) >= 3).collect();
    let [g0] = branch[..] else { return None };
    if rs.degree_in(g0, u) != 3 || i >> g0 & 1 == 0 {
        return None;
    }
    let arms: Vec<Vec<usize>> = support_iter(u)
        .filter(|&j| rs.adjacent(g0, j))
        .map(|j| arm(rs, u, g0, j))
        .collect();
    let find = |m: Support| arms.iter().find(|a| mask(a) == m).cloned();
    let alpha_arm = find(sa & !i)?;
    let beta_arm = find(sb & !i)?;
    let rest = find(i & !(1 << g0))?;
    let mut chain = vec![g0];
    chain.extend(rest);
    Some(Branching {
        alpha_arm,
        beta_arm,
        chain,
    })
}

fn single(s: Support) -> Option<usize> {
    (s.count_ones() == 1).then(|| s.trailing_zeros() as usize)
}

/// Which intersection pattern two maximal active roots realize.
pub fn classify_pair(rs: &RootSystem, a: &ActivePair, b: &ActivePair, equivalent: bool) -> PairClass {
    let (sa, sb) = (a.support(), b.support());
    let i = sa & sb;
    let refined = refined_tag(rs, a, b);
    let mk = |tag, witness| PairClass {
        tag,
        refined,
        witness,
    };
    if i == 0 {
        return mk(Tag::D0, None);
    }
    if let Some(d) = single(i) {
        let terminal = rs.is_terminal(d, sa) && rs.is_terminal(d, sb);
        if terminal && a.pi != d && b.pi != d {
            return mk(Tag::D1, Some(Witness::Shared(d)));
        }
        let ds = rs.simple_root(d);
        if equivalent
            && terminal
            && a.pi == d
            && b.pi == d
            && rs.is_positive_root(&a.root.sub(&ds))
            && rs.is_positive_root(&b.root.sub(&ds))
        {
            return mk(Tag::E1, Some(Witness::Shared(d)));
        }
    }
    let typical = a.root == rs.typical_root(sa) && b.root == rs.typical_root(sb);
    if let Some(shape) = branching(rs, sa, sb).filter(|_| typical) {
        if i >> a.pi & 1 == 0 && i >> b.pi & 1 == 0 {
            return mk(Tag::D2, Some(Witness::Diagram(shape)));
        }
        if equivalent && a.pi == b.pi && i >> a.pi & 1 == 1 {
            return mk(Tag::E2, Some(Witness::Diagram(shape)));
        }
    }
    PairClass {
        tag: Tag::Invalid,
        refined: None,
        witness: None,
    }
}

/// The stricter shapes used for reduced triples.
fn refined_tag(rs: &RootSystem, a: &ActivePair, b: &ActivePair) -> Option<Tag> {
    let (sa, sb) = (a.support(), b.support());
    if a.pi != b.pi {
        return None;
    }
    if single(sa & sb) == Some(a.pi) && rs.is_terminal(a.pi, sa) && rs.is_terminal(a.pi, sb) {
        return Some(Tag::E1Prime);
    }
    let typical = a.root == rs.typical_root(sa) && b.root == rs.typical_root(sb);
    let shape = branching(rs, sa, sb).filter(|_| typical)?;
    (shape.chain.last() == Some(&a.pi)).then_some(Tag::E2Prime)
}
