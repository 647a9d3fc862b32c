//! Combinatorial data `(M, π, ∼)` of a solvable subgroup standardly embedded
//! in a Borel subgroup, the torus `S` through its vanishing lattice, and the
//! conditions that characterize which data come from spherical subgroups.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::active::{check_pair, classify_pair, ActivePair, Tag};
use crate::build::expand_psi;
use crate::error::{Error, Result};
use crate::linalg::{rank_z, saturate, to_q, Span};
use crate::rootsys::{support_iter, support_len, Root, RootSystem, Support};

/// `(M, π, ∼)` in canonical form: `M` sorted, blocks sorted, block list sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct CombTriple {
    #[serde(rename = "M")]
    m: Vec<ActivePair>,
    classes: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTriple {
    #[serde(rename = "M")]
    m: Vec<ActivePair>,
    #[serde(default)]
    classes: Option<Vec<Vec<usize>>>,
}

impl<'de> Deserialize<'de> for CombTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTriple::deserialize(d)?;
        match raw.classes {
            Some(c) => CombTriple::new(raw.m, c).map_err(serde::de::Error::custom),
            None => Ok(CombTriple::singletons(raw.m)),
        }
    }
}

impl CombTriple {
    /// Canonicalizes; `classes` must partition `0..m.len()`.
    pub fn new(m: Vec<ActivePair>, classes: Vec<Vec<usize>>) -> Result<CombTriple> {
        let n = m.len();
        let mut seen = vec![false; n];
        for &i in classes.iter().flatten() {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Malformed(format!("classes do not partition 0..{n}")));
            }
        }
        if seen.iter().any(|s| !s) || classes.iter().any(Vec::is_empty) {
            return Err(Error::Malformed(format!("classes do not partition 0..{n}")));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| m[a].cmp(&m[b]));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut blocks: Vec<Vec<usize>> = classes
            .iter()
            .map(|b| {
                let mut b: Vec<usize> = b.iter().map(|&i| pos[i]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let m = order.into_iter().map(|i| m[i].clone()).collect();
        Ok(CombTriple { m, classes: blocks })
    }

    pub fn singletons(m: Vec<ActivePair>) -> CombTriple {
        let classes = (0..m.len()).map(|i| vec![i]).collect();
        CombTriple::new(m, classes).expect("singletons partition")
    }

    /// Builds from pairs where equal labels mean equivalent roots.
    pub fn with_labels(m: Vec<ActivePair>, labels: &[usize]) -> Result<CombTriple> {
        let mut keys: Vec<usize> = labels.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let classes = keys
            .iter()
            .map(|k| (0..labels.len()).filter(|&i| labels[i] == *k).collect())
            .collect();
        CombTriple::new(m, classes)
    }

    pub fn empty() -> CombTriple {
        CombTriple {
            m: Vec::new(),
            classes: Vec::new(),
        }
    }

    pub fn pairs(&self) -> &[ActivePair] {
        &self.m
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|b| b.contains(&i)).expect("partition")
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.class_of(i) == self.class_of(j)
    }

    /// `Supp M`, the union of the supports.
    pub fn support(&self) -> Support {
        self.m.iter().fold(0, |s, p| s | p.support())
    }

    pub fn position(&self, root: &Root) -> Option<usize> {
        self.m.iter().position(|p| &p.root == root)
    }

    /// Structural sanity: coefficient lengths, positive roots, distinct roots, `π ∈ Supp`.
    pub fn check_well_formed(&self, rs: &RootSystem) -> Result<()> {
        let mut seen = HashSet::new();
        for p in &self.m {
            rs.check_coeffs(&p.root)?;
            if !rs.is_positive_root(&p.root) {
                return Err(Error::NotARoot(p.root.0.clone()));
            }
            if !seen.insert(&p.root) {
                return Err(Error::Malformed(format!("{} occurs twice in M", p.root)));
            }
            if p.pi >= rs.rank() || p.support() >> p.pi & 1 == 0 {
                return Err(Error::Malformed(format!("pi = {} is outside Supp {}", p.pi, p.root)));
            }
        }
        Ok(())
    }
}

/// Compact notation: `(12,1),(34,3) & 12~34`, simple roots numbered from 1.
impl fmt::Display for CombTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.m.iter().map(|p| root_digits(&p.root)).collect();
        let body: Vec<String> = self
            .m
            .iter()
            .zip(&names)
            .map(|(p, n)| format!("({},{})", n, p.pi + 1))
            .collect();
        write!(f, "{}", body.join(","))?;
        let eq: Vec<String> = self
            .classes
            .iter()
            .filter(|b| b.len() > 1)
            .map(|b| b.iter().map(|&i| names[i].clone()).collect::<Vec<_>>().join("~"))
            .collect();
        if !eq.is_empty() {
            write!(f, " & {}", eq.join(", "))?;
        }
        Ok(())
    }
}

/// `α₁+α₂+α₄ ↦ "124"`; coefficients above one are written as `2·3` for `2α₃`.
pub fn root_digits(r: &Root) -> String {
    r.0.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("{}", i + 1)
            } else {
                format!("{c}·{}", i + 1)
            }
        })
        .collect()
}

/// Inverse of [`root_digits`].
pub fn parse_digits(rank: usize, s: &str) -> Result<Root> {
    let bad = || Error::Parse(format!("bad root {s:?}"));
    let mut c = vec![0; rank];
    let mut coeff = 1;
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        let d = ch.to_digit(10).ok_or_else(bad)? as usize;
        if chars.peek() == Some(&'·') {
            chars.next();
            coeff = d as i32;
            continue;
        }
        if d == 0 || d > rank || c[d - 1] != 0 {
            return Err(bad());
        }
        c[d - 1] = coeff;
        coeff = 1;
    }
    if c.iter().all(|&x| x == 0) {
        return Err(bad());
    }
    Ok(Root(c))
}

impl CombTriple {
    /// Parses `(12,1),(3,3)` and `12~3, ...` (the second part may be empty).
    pub fn parse_compact(rank: usize, pairs: &str, sim: &str) -> Result<CombTriple> {
        let bad = || Error::Parse(format!("bad pair list {pairs:?}"));
        let body = pairs.replace(char::is_whitespace, "");
        if body.is_empty() && sim.trim().is_empty() {
            return Ok(CombTriple::empty());
        }
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let mut m = Vec::new();
        for item in body.split("),(") {
            let (r, k) = item.split_once(',').ok_or_else(bad)?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if k == 0 || k > rank {
                return Err(bad());
            }
            m.push(ActivePair::new(parse_digits(rank, r)?, k - 1));
        }
        let mut labels: Vec<usize> = (0..m.len()).collect();
        let sim = sim.replace(char::is_whitespace, "");
        for block in sim.split(',').filter(|b| !b.is_empty()) {
            let idx = block
                .split('~')
                .map(|r| {
                    let root = parse_digits(rank, r)?;
                    m.iter()
                        .position(|p| p.root == root)
                        .ok_or_else(|| Error::Parse(format!("{r} is not in M")))
                })
                .collect::<Result<Vec<usize>>>()?;
            for &i in &idx {
                labels[i] = idx[0];
            }
        }
        CombTriple::with_labels(m, &labels)
    }

    /// Parses the [`Display`](fmt::Display) form.
    pub fn parse_display(rank: usize, s: &str) -> Result<CombTriple> {
        let (pairs, sim) = s.split_once('&').unwrap_or((s, ""));
        CombTriple::parse_compact(rank, pairs, sim)
    }
}

/// The lattice `K` of characters of `T` vanishing on `S`, saturated and in Hermite form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TorusSpec {
    vanishing: Vec<Vec<i64>>,
    #[serde(skip)]
    rank_t: usize,
}

impl TorusSpec {
    pub fn new(rows: &[Vec<i64>], rank_t: usize) -> Result<TorusSpec> {
        if let Some(r) = rows.iter().find(|r| r.len() != rank_t) {
            return Err(Error::RankMismatch {
                got: r.len(),
                want: rank_t,
            });
        }
        Ok(TorusSpec {
            vanishing: saturate(rows, rank_t),
            rank_t,
        })
    }

    /// `S = T`.
    pub fn full(rank_t: usize) -> TorusSpec {
        TorusSpec {
            vanishing: Vec::new(),
            rank_t,
        }
    }

    pub fn vanishing(&self) -> &[Vec<i64>] {
        &self.vanishing
    }

    pub fn rank_t(&self) -> usize {
        self.rank_t
    }

    pub fn rank_s(&self) -> usize {
        self.rank_t - self.vanishing.len()
    }

    pub fn span(&self) -> Span {
        Span::new(self.rank_t, &to_q(&self.vanishing))
    }

    /// `τ(a) = τ(b)`, i.e. `a − b ∈ K ⊗ ℚ`.
    pub fn same_weight(&self, span: &Span, a: &Root, b: &Root) -> bool {
        span.contains(&to_q(&[root_i64(&a.sub(b))])[0])
    }
}

#[derive(Deserialize)]
struct RawTorus {
    vanishing: Vec<Vec<i64>>,
}

impl TorusSpec {
    pub fn from_json(s: &str, rank_t: usize) -> Result<TorusSpec> {
        let raw: RawTorus = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TorusSpec::new(&raw.vanishing, rank_t)
    }
}

pub(crate) fn root_i64(r: &Root) -> Vec<i64> {
    r.0.iter().map(|&c| c as i64).collect()
}

/// Per-condition outcome; `None` means the condition was not examined.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    #[serde(rename = "A")]
    pub a: Option<bool>,
    #[serde(rename = "D")]
    pub d: Option<bool>,
    #[serde(rename = "E")]
    pub e: Option<bool>,
    #[serde(rename = "C")]
    pub c: Option<bool>,
    #[serde(rename = "T")]
    pub t: Option<bool>,
    #[serde(rename = "A'")]
    pub a_prime: Option<bool>,
    #[serde(rename = "D'")]
    pub d_prime: Option<bool>,
    #[serde(rename = "E'")]
    pub e_prime: Option<bool>,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        [
            self.a,
            self.d,
            self.e,
            self.c,
            self.t,
            self.a_prime,
            self.d_prime,
            self.e_prime,
        ]
        .iter()
        .all(|x| x.unwrap_or(true))
    }

    /// (A), (D), (E), (C) all hold.
    pub fn admissible(&self) -> bool {
        [self.a, self.d, self.e, self.c].iter().all(|x| *x == Some(true))
    }

    fn first_failure(&self) -> Error {
        let names = [
            ("A", self.a),
            ("D", self.d),
            ("E", self.e),
            ("C", self.c),
            ("T", self.t),
        ];
        let name = names.iter().find(|(_, v)| *v == Some(false)).map_or("?", |(n, _)| n);
        Error::Invalid(name, self.failures.join("; "))
    }

    pub fn into_result(self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(self.first_failure())
        }
    }
}

/// `Supp α ⊄ ⋃ Supp β` over the other roots of `M`.
fn covering_failures(t: &CombTriple) -> Vec<usize> {
    let sup: Vec<Support> = t.pairs().iter().map(ActivePair::support).collect();
    (0..sup.len())
        .filter(|&i| {
            let others = (0..sup.len()).filter(|&j| j != i).fold(0, |s, j| s | sup[j]);
            sup[i] & !others == 0
        })
        .collect()
}

/// Checks (A), (D), (E), (C) and, when a torus is given, (T).
pub fn validate(rs: &RootSystem, t: &CombTriple, torus: Option<&TorusSpec>) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if let Err(e) = t.check_well_formed(rs) {
        rep.a = Some(false);
        rep.failures.push(e.to_string());
        return rep;
    }
    let m = t.pairs();
    let mut a_ok = true;
    for p in m {
        if let Err(e) = check_pair(rs, p) {
            a_ok = false;
            rep.failures.push(e.to_string());
        }
    }
    rep.a = Some(a_ok);
    let (mut d_ok, mut e_ok) = (true, true);
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let eq = t.equivalent(i, j);
            if classify_pair(rs, &m[i], &m[j], eq).tag == Tag::Invalid {
                let cond = if eq { "E" } else { "D" };
                rep.failures
                    .push(format!("({cond}) fails for {} and {}", m[i].root, m[j].root));
                if eq {
                    e_ok = false;
                } else {
                    d_ok = false;
                }
            }
        }
    }
    rep.d = Some(d_ok);
    rep.e = Some(e_ok);
    let cov = covering_failures(t);
    for &i in &cov {
        rep.failures.push(format!("(C) fails: Supp {} is covered", m[i].root));
    }
    rep.c = Some(cov.is_empty());
    if let Some(k) = torus {
        let ok = check_torus(rs, t, k);
        if !ok {
            rep.failures
                .push("(T) fails: Ker τ on <Supp M> differs from the span of differences".into());
        }
        rep.t = Some(ok);
    }
    rep
}

/// Differences `μ − ν` over equivalent pairs (consecutive within each class).
pub fn differences(t: &CombTriple) -> Vec<Vec<i64>> {
    t.classes()
        .iter()
        .flat_map(|b| b.windows(2).map(|w| root_i64(&t.pairs()[w[1]].root.sub(&t.pairs()[w[0]].root))))
        .collect()
}

/// `(K ⊗ ℚ) ∩ ⟨Supp M⟩ = span{μ − ν : μ ∼ ν}`.
fn check_torus(rs: &RootSystem, t: &CombTriple, k: &TorusSpec) -> bool {
    let n = rs.rank();
    if k.rank_t() != n {
        return false;
    }
    let diffs = differences(t);
    let kspan = k.span();
    if !diffs.iter().all(|d| kspan.contains(&to_q(std::slice::from_ref(d))[0])) {
        return false;
    }
    let r: Vec<Vec<i64>> = support_iter(t.support())
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut both = k.vanishing().to_vec();
    both.extend(r.iter().cloned());
    let meet = k.vanishing().len() + r.len() - rank_z(&both);
    meet == rank_z(&diffs)
}

/// Checks (A′), (D′), (E′) and (C).
pub fn check_reduced(rs: &RootSystem, t: &CombTriple) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if let Err(e) = t.check_well_formed(rs) {
        rep.a_prime = Some(false);
        rep.failures.push(e.to_string());
        return rep;
    }
    let m = t.pairs();
    let mut a_ok = true;
    for p in m {
        if !p.root.is_typical() {
            a_ok = false;
            rep.failures.push(format!("(A') {} is not typical", p.root));
        }
    }
    rep.a_prime = Some(a_ok);
    let (mut d_ok, mut e_ok) = (true, true);
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let disjoint = m[i].support() & m[j].support() == 0;
            if !t.equivalent(i, j) {
                if !disjoint {
                    d_ok = false;
                    rep.failures
                        .push(format!("(D') {} and {} overlap", m[i].root, m[j].root));
                }
            } else if !disjoint {
                let c = classify_pair(rs, &m[i], &m[j], true);
                if !matches!(c.refined, Some(Tag::E1Prime | Tag::E2Prime)) {
                    e_ok = false;
                    rep.failures
                        .push(format!("(E') fails for {} and {}", m[i].root, m[j].root));
                }
            }
        }
    }
    rep.d_prime = Some(d_ok);
    rep.e_prime = Some(e_ok);
    let cov = covering_failures(t);
    rep.c = Some(cov.is_empty());
    rep
}

/// The torus with `K` the saturation of the lattice spanned by `μ − ν`, `μ ∼ ν`.
pub fn largest_torus(rs: &RootSystem, t: &CombTriple) -> TorusSpec {
    TorusSpec::new(&differences(t), rs.rank()).expect("rows have ambient rank")
}

/// `(c(S), c(N))`: codimensions of `S` in `T` and of `N` in `U`.
pub fn codims(rs: &RootSystem, t: &CombTriple) -> Result<(usize, usize)> {
    let aset = expand_psi(rs, t)?;
    Ok((t.len() - t.classes().len(), aset.classes.len()))
}

/// `|Supp M|`.
pub fn support_size(t: &CombTriple) -> usize {
    support_len(t.support())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn p(c: &[i32], pi: usize) -> ActivePair {
        ActivePair::new(Root(c.to_vec()), pi)
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = CombTriple::new(vec![p(&[0, 1], 1), p(&[1, 0], 0)], vec![vec![1], vec![0]]).unwrap();
        let b = CombTriple::new(vec![p(&[1, 0], 0), p(&[0, 1], 1)], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pairs()[0].root, Root(vec![1, 0]));
        assert!(CombTriple::new(vec![p(&[1, 0], 0)], vec![vec![0], vec![0]]).is_err());
        assert!(CombTriple::new(vec![p(&[1, 0], 0)], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t: CombTriple =
            serde_json::from_str(r#"{"M":[{"root":[0,1,1],"pi":1},{"root":[1,1,0],"pi":1}],"classes":[[0,1]]}"#)
                .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"M":[{"root":[1,1,0],"pi":1},{"root":[0,1,1],"pi":1}],"classes":[[0,1]]}"#);
        let u: CombTriple = serde_json::from_str(r#"{"M":[{"root":[1,0],"pi":0}]}"#).unwrap();
        assert_eq!(u.classes(), &[vec![0]]);
    }

    #[test]
    fn display_uses_table_notation() {
        let t = CombTriple::with_labels(vec![p(&[1, 1, 0, 0], 1), p(&[0, 0, 1, 1], 2)], &[0, 0]).unwrap();
        assert_eq!(t.to_string(), "(12,2),(34,3) & 12~34");
        assert_eq!(CombTriple::parse_display(4, &t.to_string()).unwrap(), t);
        let u = CombTriple::parse_compact(4, "(1,1),(2,2),(3,3),(4,4)", "1~4,2~3").unwrap();
        assert_eq!(u.classes(), &[vec![0, 3], vec![1, 2]]);
        let v = CombTriple::singletons(vec![p(&[1, 2], 0)]);
        assert_eq!(CombTriple::parse_display(2, &v.to_string()).unwrap(), v);
        assert!(CombTriple::parse_compact(2, "(13,1)", "").is_err());
    }

    #[test]
    fn validate_examples() {
        let a2 = rs("A2");
        let t = CombTriple::singletons(vec![p(&[1, 1], 0)]);
        let k = largest_torus(&a2, &t);
        assert!(validate(&a2, &t, Some(&k)).ok());
        let t = CombTriple::singletons(vec![p(&[1, 1], 0), p(&[0, 1], 1)]);
        let r = validate(&a2, &t, None);
        assert_eq!(r.c, Some(false));
        let t = CombTriple::with_labels(vec![p(&[1, 0], 0), p(&[0, 1], 1)], &[0, 0]).unwrap();
        let r = validate(&a2, &t, Some(&TorusSpec::full(2)));
        assert_eq!(r.t, Some(false));
        assert!(r.admissible());
        let r = validate(&a2, &t, Some(&largest_torus(&a2, &t)));
        assert!(r.ok());
    }

    #[test]
    fn torus_condition_is_exact() {
        let a3 = rs("A3");
        let t = CombTriple::with_labels(vec![p(&[1, 0, 0], 0), p(&[0, 1, 0], 1)], &[0, 0]).unwrap();
        // vanishing on α₃ is outside ⟨Supp M⟩, so it does not matter
        let k = TorusSpec::new(&[vec![1, -1, 0], vec![0, 0, 1]], 3).unwrap();
        assert_eq!(validate(&a3, &t, Some(&k)).t, Some(true));
        let k = TorusSpec::new(&[vec![1, 0, 0], vec![0, 1, 0]], 3).unwrap();
        assert_eq!(validate(&a3, &t, Some(&k)).t, Some(false));
        let k = TorusSpec::new(&[vec![1, -1, 1]], 3).unwrap();
        assert_eq!(validate(&a3, &t, Some(&k)).t, Some(false));
    }

    #[test]
    fn reduced_examples() {
        let b2 = rs("B2");
        let r = check_reduced(&b2, &CombTriple::singletons(vec![p(&[1, 2], 0)]));
        assert_eq!(r.a_prime, Some(false));
        let a2 = rs("A2");
        let t = CombTriple::with_labels(vec![p(&[1, 0], 0), p(&[0, 1], 1)], &[0, 0]).unwrap();
        assert!(check_reduced(&a2, &t).ok());
        let a3 = rs("A3");
        let t = CombTriple::with_labels(vec![p(&[1, 1, 0], 1), p(&[0, 1, 1], 1)], &[0, 0]).unwrap();
        assert!(check_reduced(&a3, &t).ok());
        let t = CombTriple::singletons(vec![p(&[1, 1, 0], 1), p(&[0, 1, 1], 1)]);
        assert_eq!(check_reduced(&a3, &t).d_prime, Some(false));
    }

    #[test]
    fn largest_torus_examples() {
        let a2 = rs("A2");
        let t = CombTriple::with_labels(vec![p(&[1, 0], 0), p(&[0, 1], 1)], &[0, 0]).unwrap();
        let k = largest_torus(&a2, &t);
        assert_eq!(k.vanishing(), &[vec![1, -1]]);
        assert_eq!(k.rank_s(), 1);
        let a4 = rs("A4");
        let t = CombTriple::with_labels(vec![p(&[1, 1, 0, 0], 1), p(&[0, 0, 1, 1], 2)], &[0, 0]).unwrap();
        let k = largest_torus(&a4, &t);
        assert_eq!(k.vanishing(), &[vec![1, 1, -1, -1]]);
        assert_eq!(k.rank_s(), 3);
        let t = CombTriple::singletons(vec![p(&[1, 1, 1, 1], 0)]);
        assert_eq!(largest_torus(&a4, &t).rank_s(), 4);
    }

    #[test]
    fn codim_examples() {
        let a2 = rs("A2");
        assert_eq!(codims(&a2, &CombTriple::singletons(vec![p(&[1, 1], 0)])).unwrap(), (0, 2));
        let t = CombTriple::with_labels(vec![p(&[1, 0], 0), p(&[0, 1], 1)], &[0, 0]).unwrap();
        assert_eq!(codims(&a2, &t).unwrap(), (1, 1));
        let a4 = rs("A4");
        let all = (0..4).map(|i| p(&Root::simple(4, i).0, i)).collect();
        let t = CombTriple::with_labels(all, &[0, 0, 0, 0]).unwrap();
        assert_eq!(codims(&a4, &t).unwrap(), (3, 1));
        assert!(codims(&a2, &CombTriple::singletons(vec![p(&[1, 1], 0), p(&[0, 1], 1)])).is_err());
    }
}
