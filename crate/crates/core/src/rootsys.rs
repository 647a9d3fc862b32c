//! Root systems of (possibly decomposable) reductive groups: Cartan data,
//! positive roots, simple reflections and Chevalley structure constants.
//!
//! Simple roots are numbered per component as follows; each choice makes the
//! non-typical active roots exist as roots:
//! `B_n` has `α_n` short, `C_n` has `α_n` long, `D_n` branches at `α_{n-2}`,
//! `E_n` follows Bourbaki, `F_4` has `α_1, α_2` short, `G_2` has `α_1` short.
//! Short roots have squared length 2.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bit set of simple-root indices.
pub type Support = u32;

pub fn support_iter(s: Support) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

pub fn support_len(s: Support) -> usize {
    s.count_ones() as usize
}

/// Coefficients of a root in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Support {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |s, (i, _)| s | 1 << i)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    /// Index of the simple root this root equals, if any.
    pub fn as_simple(&self) -> Option<usize> {
        if self.height() == 1 && self.is_positive() {
            self.0.iter().position(|&c| c == 1)
        } else {
            None
        }
    }

    /// Sum of the simple roots in the support.
    pub fn is_typical(&self) -> bool {
        self.0.iter().all(|&c| c == 0 || c == 1)
    }

    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }

    pub fn add_simple(&self, i: usize, k: i32) -> Root {
        let mut v = self.0.clone();
        v[i] += k;
        Root(v)
    }
}

/// Canonical order: by height, then larger coefficient vectors first, so that
/// the simple roots come out as `α_1, …, α_n`.
impl Ord for Root {
    fn cmp(&self, o: &Self) -> Ordering {
        self.height().cmp(&o.height()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Kind {
    fn from_letter(c: char) -> Option<Kind> {
        Some(match c.to_ascii_uppercase() {
            'A' => Kind::A,
            'B' => Kind::B,
            'C' => Kind::C,
            'D' => Kind::D,
            'E' => Kind::E,
            'F' => Kind::F,
            'G' => Kind::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::B => 'B',
            Kind::C => 'C',
            Kind::D => 'D',
            Kind::E => 'E',
            Kind::F => 'F',
            Kind::G => 'G',
        }
    }

    fn valid_rank(self, n: usize) -> bool {
        match self {
            Kind::A => n >= 1,
            Kind::B | Kind::C => n >= 2,
            Kind::D => n >= 4,
            Kind::E => (6..=8).contains(&n),
            Kind::F => n == 4,
            Kind::G => n == 2,
        }
    }
}

/// A connected component of the Dynkin diagram. `nodes[k]` is the ambient
/// index of the component's simple root number `k + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Component {
    pub kind: Kind,
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.letter(), self.rank())
    }
}

/// Squared lengths and bonds of one connected Dynkin type in its own numbering.
fn component_data(kind: Kind, n: usize) -> (Vec<i64>, Vec<(usize, usize)>) {
    let chain: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    match kind {
        Kind::A => (vec![2; n], chain),
        Kind::B => {
            let mut l = vec![4; n];
            l[n - 1] = 2;
            (l, chain)
        }
        Kind::C => {
            let mut l = vec![2; n];
            l[n - 1] = 4;
            (l, chain)
        }
        Kind::D => {
            let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            (vec![2; n], e)
        }
        Kind::E => {
            let mut e = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
            e.extend((4..n - 1).map(|i| (i, i + 1)));
            (vec![2; n], e)
        }
        Kind::F => (vec![2, 2, 4, 4], chain),
        Kind::G => (vec![2, 6], chain),
    }
}

pub fn parse_label(label: &str) -> Result<Vec<(Kind, usize)>> {
    let bad = |why: &str| Error::BadLabel(label.to_string(), why.to_string());
    let cleaned = label.trim().replace(['×', '*'], "x");
    if cleaned.is_empty() {
        return Err(bad("empty label"));
    }
    let mut out = Vec::new();
    for part in cleaned.split(['x', 'X']) {
        let part = part.trim();
        let mut chars = part.chars();
        let kind = chars
            .next()
            .and_then(Kind::from_letter)
            .ok_or_else(|| bad(&format!("unknown type in {part:?}")))?;
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad(&format!("missing rank in {part:?}")))?;
        if !kind.valid_rank(n) {
            return Err(bad(&format!("{}{} is not a Dynkin type", kind.letter(), n)));
        }
        out.push((kind, n));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    gram: Vec<Vec<i64>>,
    components: Vec<Component>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    /// `sums[a * 2N + b]`: signed index of `root(a) + root(b)` when a root.
    sums: Vec<Option<usize>>,
    /// Chevalley structure constants on signed indices; zero when the sum is not a root.
    nconst: Vec<i64>,
}

impl RootSystem {
    pub fn from_label(label: &str) -> Result<RootSystem> {
        Ok(Self::build(&parse_label(label)?))
    }

    pub fn build(spec: &[(Kind, usize)]) -> RootSystem {
        let rank: usize = spec.iter().map(|&(_, n)| n).sum();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut components = Vec::new();
        let mut off = 0;
        for &(kind, n) in spec {
            let (len, edges) = component_data(kind, n);
            for i in 0..n {
                gram[off + i][off + i] = len[i];
            }
            for (i, j) in edges {
                let v = -len[i].max(len[j]) / 2;
                gram[off + i][off + j] = v;
                gram[off + j][off + i] = v;
            }
            components.push(Component {
                kind,
                nodes: (off..off + n).collect(),
            });
            off += n;
        }
        let label = components.iter().map(Component::name).collect::<Vec<_>>().join("x");
        Self::assemble(label, gram, components)
    }

    /// Root system with the given Gram matrix of simple roots; components are identified from the diagram.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> RootSystem {
        let rank = gram.len();
        let all: Support = if rank == 0 { 0 } else { (1u32 << rank) - 1 };
        let components: Vec<Component> = connected_parts(&gram, all)
            .into_iter()
            .map(|s| identify(&gram, s))
            .collect();
        let label = if components.is_empty() {
            "0".to_string()
        } else {
            components.iter().map(Component::name).collect::<Vec<_>>().join("x")
        };
        Self::assemble(label, gram, components)
    }

    fn assemble(label: String, gram: Vec<Vec<i64>>, components: Vec<Component>) -> RootSystem {
        let positive = positive_roots(&gram);
        let index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut rs = RootSystem {
            label,
            gram,
            components,
            positive,
            index,
            sums: Vec::new(),
            nconst: Vec::new(),
        };
        rs.fill_sums();
        rs.fill_structure_constants();
        rs
    }

    /// Roots supported in `subset`, as a system of rank `|subset|`; the
    /// returned vector maps new simple-root indices to ambient ones.
    pub fn subsystem(&self, subset: Support) -> (RootSystem, Vec<usize>) {
        let emb: Vec<usize> = support_iter(subset).filter(|&i| i < self.rank()).collect();
        let gram = emb
            .iter()
            .map(|&i| emb.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        (RootSystem::from_gram(gram), emb)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn full_support(&self) -> Support {
        if self.rank() == 0 {
            0
        } else {
            (1u32 << self.rank()) - 1
        }
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// Cartan integer `⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.gram[i][j] / self.gram[j][j]
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let mut s = 0;
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s += x as i64 * y as i64 * self.gram[i][j];
                }
            }
        }
        s
    }

    /// `⟨a, b^∨⟩ = 2(a,b)/(b,b)`.
    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        2 * self.inner(a, b) / self.inner(b, b)
    }

    pub fn check_coeffs(&self, a: &Root) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(Error::RankMismatch {
                got: a.rank(),
                want: self.rank(),
            });
        }
        Ok(())
    }

    /// Index of a positive root in the canonical order.
    pub fn index_of(&self, a: &Root) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_positive_root(&self, a: &Root) -> bool {
        self.index.contains_key(a)
    }

    pub fn is_root(&self, a: &Root) -> bool {
        self.index.contains_key(a) || self.index.contains_key(&a.neg())
    }

    /// Signed index: `i` for the i-th positive root, `N + i` for its negative.
    pub fn signed_index(&self, a: &Root) -> Option<usize> {
        self.index_of(a)
            .or_else(|| self.index_of(&a.neg()).map(|i| i + self.num_positive()))
    }

    pub fn signed_root(&self, k: usize) -> Root {
        let n = self.num_positive();
        if k < n {
            self.positive[k].clone()
        } else {
            self.positive[k - n].neg()
        }
    }

    fn negate_index(&self, k: usize) -> usize {
        let n = self.num_positive();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn reflect_unchecked(&self, a: &Root, i: usize) -> Root {
        let c = self.pairing(a, &self.simple_root(i));
        a.add_simple(i, -(c as i32))
    }

    /// Simple reflection `r_{α_i}(a) = a − ⟨a, α_i^∨⟩ α_i`.
    pub fn reflect(&self, a: &Root, i: usize) -> Result<Root> {
        self.check_coeffs(a)?;
        if i >= self.rank() {
            return Err(Error::BadIndex(i));
        }
        if !self.is_root(a) {
            return Err(Error::NotARoot(a.0.clone()));
        }
        Ok(self.reflect_unchecked(a, i))
    }

    /// Number of unordered pairs of positive roots summing to `a`.
    pub fn count_decompositions(&self, a: &Root) -> usize {
        self.positive
            .iter()
            .filter(|b| {
                let c = a.sub(b);
                b < &&c && self.is_positive_root(&c)
            })
            .count()
    }

    /// Two distinct simple roots are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.gram[i][j] != 0
    }

    /// Number of edges between two simple roots.
    pub fn bond(&self, i: usize, j: usize) -> i64 {
        if !self.adjacent(i, j) {
            return 0;
        }
        self.cartan(i, j) * self.cartan(j, i)
    }

    /// A multiple edge between `i` and `j` whose arrow points to `i` (`i` is the shorter root).
    pub fn arrow_toward(&self, i: usize, j: usize) -> bool {
        self.bond(i, j) >= 2 && self.gram[i][i] < self.gram[j][j]
    }

    pub fn degree_in(&self, i: usize, s: Support) -> usize {
        support_iter(s).filter(|&j| self.adjacent(i, j)).count()
    }

    /// `i ∈ s` and `i` is joined to exactly one other node of `s`.
    pub fn is_terminal(&self, i: usize, s: Support) -> bool {
        s >> i & 1 == 1 && self.degree_in(i, s) == 1
    }

    pub fn is_connected(&self, s: Support) -> bool {
        connected_parts(&self.gram, s).len() <= 1
    }

    pub fn connected_parts(&self, s: Support) -> Vec<Support> {
        connected_parts(&self.gram, s)
    }

    /// Type and canonical numbering of a connected set of simple roots.
    pub fn identify(&self, s: Support) -> Component {
        identify(&self.gram, s)
    }

    /// Sum of the simple roots in `s`.
    pub fn typical_root(&self, s: Support) -> Root {
        Root((0..self.rank()).map(|i| (s >> i & 1) as i32).collect())
    }

    /// Signed index of `root(a) + root(b)` if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * 2 * self.num_positive() + b]
    }

    /// `N_{a,b}` for signed indices (`[e_a, e_b] = N_{a,b} e_{a+b}`); zero if `a+b` is not a root.
    pub fn n_signed(&self, a: usize, b: usize) -> i64 {
        self.nconst[a * 2 * self.num_positive() + b]
    }

    /// Structure constant for two roots; zero when the sum is not a root.
    pub fn structure_constant(&self, a: &Root, b: &Root) -> i64 {
        match (self.signed_index(a), self.signed_index(b)) {
            (Some(i), Some(j)) => self.n_signed(i, j),
            _ => 0,
        }
    }

    /// `p = max{k : b − k a ∈ Δ}` for the `a`-string through `b`.
    pub fn string_below(&self, a: &Root, b: &Root) -> i64 {
        let mut k = 0;
        let mut cur = b.sub(a);
        while self.is_root(&cur) {
            k += 1;
            cur = cur.sub(a);
        }
        k
    }

    fn fill_sums(&mut self) {
        let t = 2 * self.num_positive();
        let mut sums = vec![None; t * t];
        for a in 0..t {
            let ra = self.signed_root(a);
            for b in 0..t {
                sums[a * t + b] = self.signed_index(&ra.add(&self.signed_root(b)));
            }
        }
        self.sums = sums;
    }

    fn len2(&self, k: usize) -> i64 {
        let r = self.signed_root(k);
        self.inner(&r, &r)
    }

    /// Extraspecial-pair construction: for each positive `ξ` the smallest
    /// positive `a` with `ξ − a ∈ Δ₊` gets `N_{a,ξ−a} = +(p+1)`; every other
    /// constant follows from the standard identities between structure constants.
    fn fill_structure_constants(&mut self) {
        let n = self.num_positive();
        let t = 2 * n;
        self.nconst = vec![0; t * t];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.positive[i].height());
        for &xi in &order {
            let pairs: Vec<(usize, usize)> = (0..n)
                .filter_map(|a| {
                    let b = self.index_of(&self.positive[xi].sub(&self.positive[a]))?;
                    Some((a, b))
                })
                .collect();
            let Some(&(a0, b0)) = pairs.first() else {
                continue;
            };
            let p = self.string_below(&self.positive[a0], &self.positive[b0]);
            self.nconst[a0 * t + b0] = p + 1;
            self.nconst[b0 * t + a0] = -(p + 1);
            let lx = self.len2(xi);
            let nes = p + 1;
            for &(a, b) in &pairs {
                if (a, b) == (a0, b0) || (a, b) == (b0, a0) {
                    continue;
                }
                let (na0, nb0) = (self.negate_index(a0), self.negate_index(b0));
                let mut acc = num_rational::Ratio::from_integer(0i64);
                if let Some(s) = self.sum_index(b, na0) {
                    let v = self.n_general(b, na0) * self.n_general(a, nb0);
                    acc += num_rational::Ratio::new(v, self.len2(s));
                }
                if let Some(s) = self.sum_index(a, na0) {
                    let v = self.n_general(na0, a) * self.n_general(b, nb0);
                    acc += num_rational::Ratio::new(v, self.len2(s));
                }
                let val = acc * lx / nes;
                assert!(val.is_integer(), "non-integral structure constant");
                self.nconst[a * t + b] = val.to_integer();
            }
        }
        for a in 0..t {
            for b in 0..t {
                if a < n && b < n {
                    continue;
                }
                if self.sum_index(a, b).is_some() {
                    let v = self.n_general(a, b);
                    self.nconst[a * t + b] = v;
                }
            }
        }
    }

    /// Structure constant for arbitrary signs, reduced to positive pairs already filled in.
    fn n_general(&self, x: usize, y: usize) -> i64 {
        let n = self.num_positive();
        let t = 2 * n;
        let z = self.sum_index(x, y).expect("sum must be a root");
        match (x < n, y < n) {
            (true, true) => self.nconst[x * t + y],
            (false, false) => -self.n_general(self.negate_index(x), self.negate_index(y)),
            (false, true) => -self.n_general(y, x),
            (true, false) => {
                let (num, den, v) = if z < n {
                    (-self.len2(z), self.len2(x), self.n_general(self.negate_index(y), z))
                } else {
                    (self.len2(z), self.len2(y), self.n_general(self.negate_index(z), x))
                };
                let w = num * v;
                assert_eq!(w % den, 0, "non-integral structure constant");
                w / den
            }
        }
    }

    /// Coroot of a signed root in the basis of simple coroots.
    pub fn coroot(&self, k: usize) -> Vec<i64> {
        let r = self.signed_root(k);
        let l = self.len2(k);
        (0..self.rank())
            .map(|i| r.0[i] as i64 * self.gram[i][i] / l)
            .collect()
    }
}

/// Positive roots by root strings, sorted canonically.
fn positive_roots(gram: &[Vec<i64>]) -> Vec<Root> {
    let n = gram.len();
    let pairing = |a: &Root, i: usize| -> i64 {
        let s: i64 = (0..n).map(|j| a.0[j] as i64 * gram[j][i]).sum();
        2 * s / gram[i][i]
    };
    let mut roots: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut known: std::collections::HashSet<Root> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for a in &layer {
            for i in 0..n {
                if a.as_simple() == Some(i) {
                    continue;
                }
                let mut p = 0;
                while known.contains(&a.add_simple(i, -(p + 1))) {
                    p += 1;
                }
                let q = p as i64 - pairing(a, i);
                if q > 0 {
                    let b = a.add_simple(i, 1);
                    if known.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort();
    roots
}

fn connected_parts(gram: &[Vec<i64>], s: Support) -> Vec<Support> {
    let mut left = s;
    let mut parts = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut part: Support = 1 << start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in support_iter(s) {
                if part >> j & 1 == 0 && gram[i][j] != 0 {
                    part |= 1 << j;
                    stack.push(j);
                }
            }
        }
        left &= !part;
        parts.push(part);
    }
    parts
}

/// Walk a path from `start` away from `prev` inside `s`.
fn walk(gram: &[Vec<i64>], s: Support, start: usize, prev: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let (mut cur, mut prev) = (start, prev);
    loop {
        let next = support_iter(s).find(|&j| j != cur && Some(j) != prev && gram[cur][j] != 0);
        match next {
            Some(j) => {
                out.push(j);
                prev = Some(cur);
                cur = j;
            }
            None => return out,
        }
    }
}

fn identify(gram: &[Vec<i64>], s: Support) -> Component {
    let nodes: Vec<usize> = support_iter(s).collect();
    let n = nodes.len();
    let deg = |i: usize| nodes.iter().filter(|&&j| j != i && gram[i][j] != 0).count();
    let len = |i: usize| gram[i][i];
    if n == 1 {
        return Component {
            kind: Kind::A,
            nodes,
        };
    }
    if let Some(&b) = nodes.iter().find(|&&i| deg(i) == 3) {
        let mut arms: Vec<Vec<usize>> = nodes
            .iter()
            .filter(|&&j| j != b && gram[b][j] != 0)
            .map(|&j| walk(gram, s, j, Some(b)))
            .collect();
        arms.sort_by_key(|a| (a.len(), a.clone()));
        if arms[1].len() == 1 {
            let long = (0..3).rev().min_by_key(|&k| (std::cmp::Reverse(arms[k].len()), arms[k][0])).unwrap();
            let a3 = arms.remove(long);
            arms.push(a3);
        }
        let (a1, a2, a3) = (&arms[0], &arms[1], &arms[2]);
        if a2.len() == 1 {
            let mut order: Vec<usize> = a3.iter().rev().copied().collect();
            order.push(b);
            order.push(a1[0]);
            order.push(a2[0]);
            return Component {
                kind: Kind::D,
                nodes: order,
            };
        }
        let mut order = vec![a2[1], a1[0], a2[0], b];
        order.extend(a3.iter().copied());
        return Component {
            kind: Kind::E,
            nodes: order,
        };
    }
    let ends: Vec<usize> = nodes.iter().copied().filter(|&i| deg(i) == 1).collect();
    let path_from = |e: usize| walk(gram, s, e, None);
    let multi = nodes
        .iter()
        .flat_map(|&i| nodes.iter().map(move |&j| (i, j)))
        .find(|&(i, j)| i < j && gram[i][j] != 0 && len(i) != len(j));
    let Some((i, j)) = multi else {
        return Component {
            kind: Kind::A,
            nodes: path_from(ends[0]),
        };
    };
    let (short, long) = if len(i) < len(j) { (i, j) } else { (j, i) };
    if len(long) == 3 * len(short) {
        return Component {
            kind: Kind::G,
            nodes: vec![short, long],
        };
    }
    if n == 2 {
        return Component {
            kind: Kind::B,
            nodes: vec![long, short],
        };
    }
    if deg(short) == 1 {
        let mut p = path_from(short);
        p.reverse();
        return Component {
            kind: Kind::B,
            nodes: p,
        };
    }
    if deg(long) == 1 {
        let mut p = path_from(long);
        p.reverse();
        return Component {
            kind: Kind::C,
            nodes: p,
        };
    }
    let short_end = *ends.iter().find(|&&e| len(e) < len(long)).unwrap();
    Component {
        kind: Kind::F,
        nodes: path_from(short_end),
    }
}

/// Exhaustive Jacobi check on the Chevalley basis `{e_α} ∪ {h_i}`; returns the
/// number of failing triples.
pub fn jacobi_violations(rs: &RootSystem) -> usize {
    let lie = ChevalleyAlgebra::new(rs);
    let dim = lie.dim();
    let mut bad = 0;
    for x in 0..dim {
        for y in x + 1..dim {
            let xy = lie.bracket_basis(x, y);
            for z in y + 1..dim {
                let mut acc = lie.bracket_vec_basis(&xy, z);
                let yz = lie.bracket_basis(y, z);
                add_into(&mut acc, &lie.bracket_vec_basis(&yz, x));
                let zx = lie.bracket_basis(z, x);
                add_into(&mut acc, &lie.bracket_vec_basis(&zx, y));
                if acc.iter().any(|&v| v != 0) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn add_into(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// The full Lie algebra on the Chevalley basis: indices `0..2N` are root
/// vectors (signed indices), `2N..2N+rank` the simple coroots.
struct ChevalleyAlgebra<'a> {
    rs: &'a RootSystem,
    t: usize,
}

impl<'a> ChevalleyAlgebra<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        ChevalleyAlgebra {
            rs,
            t: 2 * rs.num_positive(),
        }
    }

    fn dim(&self) -> usize {
        self.t + self.rs.rank()
    }

    fn bracket_basis(&self, x: usize, y: usize) -> Vec<i64> {
        let (rs, t) = (self.rs, self.t);
        let mut out = vec![0; self.dim()];
        match (x < t, y < t) {
            (true, true) => {
                if let Some(s) = rs.sum_index(x, y) {
                    out[s] = rs.n_signed(x, y);
                } else if rs.negate_index(x) == y {
                    for (i, c) in rs.coroot(x).into_iter().enumerate() {
                        out[t + i] = c;
                    }
                }
            }
            (false, true) => {
                let h = rs.simple_root(x - t);
                out[y] = rs.pairing(&rs.signed_root(y), &h);
            }
            (true, false) => {
                let h = rs.simple_root(y - t);
                out[x] = -rs.pairing(&rs.signed_root(x), &h);
            }
            (false, false) => {}
        }
        out
    }

    fn bracket_vec_basis(&self, v: &[i64], y: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (x, &c) in v.iter().enumerate() {
            if c != 0 {
                let b = self.bracket_basis(x, y);
                for (o, w) in out.iter_mut().zip(b) {
                    *o += c * w;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    /// Closure of the simple roots under simple reflections, positive part.
    fn reflection_closure(r: &RootSystem) -> HashSet<Root> {
        let mut seen: HashSet<Root> = (0..r.rank()).map(|i| r.simple_root(i)).collect();
        let mut stack: Vec<Root> = seen.iter().cloned().collect();
        while let Some(a) = stack.pop() {
            for i in 0..r.rank() {
                let b = r.reflect_unchecked(&a, i);
                if seen.insert(b.clone()) {
                    stack.push(b);
                }
            }
        }
        seen.into_iter().filter(Root::is_positive).collect()
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        for (label, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("B4", 16),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1xB2", 5),
        ] {
            assert_eq!(rs(label).num_positive(), count, "{label}");
        }
    }

    #[test]
    fn string_algorithm_agrees_with_reflection_closure() {
        for label in ["A3", "B3", "C4", "D4", "G2", "F4", "A1xG2", "E6"] {
            let r = rs(label);
            let closure = reflection_closure(&r);
            let listed: HashSet<Root> = r.positive_roots().iter().cloned().collect();
            assert_eq!(closure, listed, "{label}");
        }
    }

    #[test]
    fn g2_contains_highest_root() {
        let r = rs("G2");
        for c in [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]] {
            assert!(r.is_positive_root(&Root(c.to_vec())));
        }
    }

    #[test]
    fn canonical_order_starts_with_simple_roots() {
        let r = rs("A3");
        let p = r.positive_roots();
        assert_eq!(p[0], Root(vec![1, 0, 0]));
        assert_eq!(p[2], Root(vec![0, 0, 1]));
        assert_eq!(p[3], Root(vec![1, 1, 0]));
        assert_eq!(p[5], Root(vec![1, 1, 1]));
    }

    #[test]
    fn b2_reflections() {
        let r = rs("B2");
        let a = Root(vec![1, 1]);
        assert_eq!(r.reflect(&a, 1).unwrap(), a);
        assert_eq!(r.reflect(&a, 0).unwrap(), Root(vec![0, 1]));
        assert_eq!(r.reflect(&Root(vec![1, 0]), 0).unwrap(), Root(vec![-1, 0]));
        assert!(r.reflect(&Root(vec![2, 1]), 0).is_err());
        assert_eq!(r.cartan(1, 0), -1);
        assert_eq!(r.cartan(0, 1), -2);
    }

    #[test]
    fn labels_are_validated() {
        for bad in ["D2", "G3", "B1", "E9", "Q3", "A", ""] {
            assert!(RootSystem::from_label(bad).is_err(), "{bad}");
        }
        assert_eq!(rs("a1×b2").label(), "A1xB2");
    }

    #[test]
    fn orthogonal_components() {
        let r = rs("A1xA1");
        assert_eq!(r.num_positive(), 2);
        assert_eq!(r.inner(&r.simple_root(0), &r.simple_root(1)), 0);
    }

    #[test]
    fn subsystem_identifies_components() {
        let (s, emb) = rs("B4").subsystem(0b1101);
        assert_eq!(s.label(), "A1xB2");
        assert_eq!(emb, vec![0, 2, 3]);
        let (s, _) = rs("F4").subsystem(0b0110);
        assert_eq!(s.label(), "B2");
        let (s, _) = rs("F4").subsystem(0b0111);
        assert_eq!(s.label(), "C3");
        let (s, _) = rs("F4").subsystem(0b1110);
        assert_eq!(s.label(), "B3");
        let (s, emb) = rs("A3").subsystem(0b111);
        assert_eq!(s.label(), "A3");
        assert_eq!(emb, vec![0, 1, 2]);
        assert_eq!(rs("A3").subsystem(0).0.num_positive(), 0);
        for label in ["D5", "E6", "E7", "E8", "F4", "C4", "B3", "G2"] {
            let r = rs(label);
            assert_eq!(r.subsystem(r.full_support()).0.label(), label);
        }
    }

    #[test]
    fn count_decompositions_examples() {
        let a3 = rs("A3");
        assert_eq!(a3.count_decompositions(&Root(vec![1, 1, 1])), 2);
        assert_eq!(a3.count_decompositions(&Root(vec![0, 1, 0])), 0);
        assert_eq!(rs("G2").count_decompositions(&Root(vec![3, 2])), 2);
    }

    #[test]
    fn structure_constant_magnitudes() {
        let a2 = rs("A2");
        assert_eq!(a2.structure_constant(&Root(vec![1, 0]), &Root(vec![0, 1])).abs(), 1);
        let b2 = rs("B2");
        assert_eq!(b2.structure_constant(&Root(vec![0, 1]), &Root(vec![1, 1])).abs(), 2);
        for label in ["B3", "G2", "F4", "A1xC3"] {
            let r = rs(label);
            let t = 2 * r.num_positive();
            for a in 0..t {
                for b in 0..t {
                    let (ra, rb) = (r.signed_root(a), r.signed_root(b));
                    let n = r.n_signed(a, b);
                    assert_eq!(n, -r.n_signed(b, a));
                    if r.sum_index(a, b).is_some() {
                        assert_eq!(n.abs(), r.string_below(&ra, &rb) + 1, "{label} {ra} {rb}");
                    } else {
                        assert_eq!(n, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_holds_small() {
        for label in ["A2", "B2", "G2", "A3", "B3", "C3"] {
            assert_eq!(jacobi_violations(&rs(label)), 0, "{label}");
        }
    }
}
