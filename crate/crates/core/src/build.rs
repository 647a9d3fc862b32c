//! From combinatorial data to a subgroup: the active set `Ψ` with its
//! extended `π` and `∼`, the functionals `ξ_i`, the subalgebra `𝔫 ⊂ 𝔲`, and
//! the closure and sphericity checks on the result.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::active::{associated_simple, family_unchecked};
use crate::combdata::{root_i64, validate, CombTriple, TorusSpec};
use crate::error::{Error, Result};
use crate::linalg::{q, rank_z, Span, Q};
use crate::rootsys::{Root, RootSystem};

/// `Ψ = ⋃_{α∈M} F(α)` with `π` and `∼` extended to all of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveSet {
    /// Canonical root order.
    pub psi: Vec<Root>,
    pub pi: Vec<usize>,
    /// Blocks of indices into `psi`, each sorted; blocks sorted.
    pub classes: Vec<Vec<usize>>,
    pub in_m: Vec<bool>,
}

impl ActiveSet {
    pub fn position(&self, r: &Root) -> Option<usize> {
        self.psi.iter().position(|x| x == r)
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|b| b.contains(&i)).expect("partition")
    }

    /// Class lies inside `M`.
    pub fn is_top(&self, c: usize) -> bool {
        self.classes[c].iter().all(|&i| self.in_m[i])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn require_admissible(rs: &RootSystem, t: &CombTriple) -> Result<()> {
    let rep = validate(rs, t, None);
    if rep.admissible() {
        Ok(())
    } else {
        rep.into_result()
    }
}

pub fn expand_psi(rs: &RootSystem, t: &CombTriple) -> Result<ActiveSet> {
    require_admissible(rs, t)?;
    let m = t.pairs();
    let fams: Vec<Vec<Root>> = m.iter().map(|p| family_unchecked(rs, p)).collect();
    let mut psi: Vec<Root> = fams.iter().flatten().cloned().collect();
    psi.sort();
    psi.dedup();
    let index: HashMap<&Root, usize> = psi.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let set: HashSet<Root> = psi.iter().cloned().collect();
    let mut in_m = vec![false; psi.len()];
    let mut pi = vec![usize::MAX; psi.len()];
    for p in m {
        let i = index[&p.root];
        in_m[i] = true;
        pi[i] = p.pi;
    }
    for (i, r) in psi.iter().enumerate() {
        if !in_m[i] {
            pi[i] = associated_simple(rs, &set, r)
                .ok_or_else(|| Error::Malformed(format!("no associated simple root for {r}")))?;
        }
    }
    let mut parent: Vec<usize> = (0..psi.len()).collect();
    for block in t.classes() {
        for w in block.windows(2) {
            union(&mut parent, index[&m[w[0]].root], index[&m[w[1]].root]);
        }
    }
    for (a, fa) in m.iter().zip(&fams) {
        for (b, fb) in m.iter().zip(&fams) {
            for x in fa.iter().filter(|x| !in_m[index[x]]) {
                let d = a.root.sub(x);
                for y in fb.iter().filter(|y| !in_m[index[y]]) {
                    if b.root.sub(y) == d {
                        union(&mut parent, index[x], index[y]);
                    }
                }
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..psi.len() {
        blocks.entry(find(&mut parent, i)).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = blocks.into_values().collect();
    classes.sort();
    Ok(ActiveSet {
        psi,
        pi,
        classes,
        in_m,
    })
}

/// Pairs `(j, δ)` with `Ψ_i + δ ⊆ Ψ_j`, `j ≠ i`.
pub fn shifts(rs: &RootSystem, aset: &ActiveSet, i: usize) -> Vec<(usize, Root)> {
    let first = &aset.psi[aset.classes[i][0]];
    let mut out = Vec::new();
    for (k, r) in aset.psi.iter().enumerate() {
        let d = r.sub(first);
        if !rs.is_positive_root(&d) {
            continue;
        }
        let j = aset.class_of(k);
        if j == i {
            continue;
        }
        let all = aset.classes[i].iter().all(|&x| {
            aset.position(&aset.psi[x].add(&d))
                .is_some_and(|y| aset.class_of(y) == j)
        });
        if all {
            out.push((j, d));
        }
    }
    out
}

/// `x ↦ ξ_j([x, e_δ])` on the roots of class `i`.
fn pulled_back(rs: &RootSystem, aset: &ActiveSet, xi_j: &[Q], i: usize, j: usize, d: &Root) -> Vec<Q> {
    aset.classes[i]
        .iter()
        .map(|&x| {
            let a = &aset.psi[x];
            let y = aset.position(&a.add(d)).expect("shift lands in Psi");
            let k = aset.classes[j].iter().position(|&z| z == y).expect("shift lands in class");
            q(rs.structure_constant(a, d)) * xi_j[k]
        })
        .collect()
}

fn proportional(a: &[Q], b: &[Q]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[k].is_zero() {
        return false;
    }
    let c = b[k] / a[k];
    a.iter().zip(b).all(|(x, y)| *x * c == *y)
}

/// One functional per class of `Ψ`, as coefficients over the class's roots.
pub fn build_functionals(rs: &RootSystem, aset: &ActiveSet) -> Result<Vec<Vec<Q>>> {
    let k = aset.classes.len();
    let mut xi: Vec<Vec<Q>> = vec![Vec::new(); k];
    for i in 0..k {
        if aset.is_top(i) || aset.classes[i].len() == 1 {
            xi[i] = vec![Q::one(); aset.classes[i].len()];
        }
    }
    for i in 0..k {
        if !xi[i].is_empty() {
            continue;
        }
        let into_top: Vec<(usize, Root)> = shifts(rs, aset, i)
            .into_iter()
            .filter(|(j, _)| aset.is_top(*j))
            .collect();
        let [(j, d)] = &into_top[..] else {
            return Err(Error::Functionals(format!(
                "class {i} has {} shifts into M, expected one",
                into_top.len()
            )));
        };
        xi[i] = pulled_back(rs, aset, &xi[*j], i, *j, d);
        if xi[i].iter().any(Zero::is_zero) {
            return Err(Error::Functionals(format!("xi_{i} vanishes on a root space")));
        }
    }
    for i in 0..k {
        for (j, d) in shifts(rs, aset, i) {
            let row = pulled_back(rs, aset, &xi[j], i, j, &d);
            if !proportional(&xi[i], &row) {
                return Err(Error::Functionals(format!(
                    "xi_{i} is not proportional to xi_{j}([., e_{d}])"
                )));
            }
        }
    }
    Ok(xi)
}

/// `𝔫 = 𝔲₀ ⊕ ⨁ Ker ξ_i` inside `𝔲`, coordinates over the positive roots in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraModel {
    pub torus: TorusSpec,
    /// Classes of `Ψ` as positive-root indices.
    pub classes: Vec<Vec<usize>>,
    pub xi: Vec<Vec<Q>>,
    pub basis: Vec<Vec<Q>>,
}

impl SubalgebraModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Same subalgebra, different torus.
    pub fn with_torus(&self, torus: TorusSpec) -> SubalgebraModel {
        SubalgebraModel {
            torus,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|v| {
                let m: serde_json::Map<String, Value> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i.to_string(), Value::String(x.to_string())))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let xi: Vec<Vec<String>> = self.xi.iter().map(|r| r.iter().map(Q::to_string).collect()).collect();
        json!({
            "torus": {"vanishing": self.torus.vanishing(), "rank_S": self.torus.rank_s()},
            "classes": self.classes,
            "xi": xi,
            "basis": basis,
            "dim": self.dim(),
        })
    }
}

pub fn build_subalgebra(rs: &RootSystem, t: &CombTriple, torus: &TorusSpec) -> Result<SubalgebraModel> {
    validate(rs, t, Some(torus)).into_result()?;
    let aset = expand_psi(rs, t)?;
    let xi = build_functionals(rs, &aset)?;
    let n = rs.num_positive();
    let idx = |r: &Root| rs.index_of(r).expect("Psi consists of positive roots");
    let classes: Vec<Vec<usize>> = aset
        .classes
        .iter()
        .map(|b| b.iter().map(|&i| idx(&aset.psi[i])).collect())
        .collect();
    let in_psi: HashSet<usize> = aset.psi.iter().map(idx).collect();
    let unit = |i: usize| -> Vec<Q> { (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
    let mut basis: Vec<Vec<Q>> = (0..n).filter(|i| !in_psi.contains(i)).map(unit).collect();
    for (b, row) in classes.iter().zip(&xi) {
        let last = b.len() - 1;
        for k in 0..last {
            let mut v = unit(b[k]);
            v[b[last]] = -row[k] / row[last];
            basis.push(v);
        }
    }
    basis.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
    Ok(SubalgebraModel {
        torus: torus.clone(),
        classes,
        xi,
        basis,
    })
}

fn bracket(rs: &RootSystem, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = rs.num_positive();
    let mut out = vec![Q::zero(); n];
    for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if let Some(s) = rs.sum_index(a, b) {
                out[s] += *ca * *cb * q(rs.n_signed(a, b));
            }
        }
    }
    out
}

/// Groups positive-root indices by their image under `τ`.
fn weight_groups(rs: &RootSystem, torus: &TorusSpec) -> Vec<Vec<usize>> {
    let span = torus.span();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, r) in rs.positive_roots().iter().enumerate() {
        match groups
            .iter_mut()
            .find(|g| torus.same_weight(&span, &rs.positive_roots()[g[0]], r))
        {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

/// Each basis vector lies in a single `τ`-weight space, so `𝔫` is `S`-stable.
pub fn is_weight_basis(rs: &RootSystem, model: &SubalgebraModel) -> bool {
    let kspan = model.torus.span();
    let roots = rs.positive_roots();
    model.basis.iter().all(|v| {
        let sup: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        sup.iter()
            .all(|&i| model.torus.same_weight(&kspan, &roots[sup[0]], &roots[i]))
    })
}

/// `𝔫` is `S`-stable and `[x, y] ∈ 𝔫` for all basis pairs.
pub fn verify_closure(rs: &RootSystem, model: &SubalgebraModel) -> bool {
    if !is_weight_basis(rs, model) {
        return false;
    }
    let span = Span::new(rs.num_positive(), &model.basis);
    for (i, x) in model.basis.iter().enumerate() {
        for y in &model.basis[i + 1..] {
            if !span.contains(&bracket(rs, x, y)) {
                return false;
            }
        }
    }
    true
}

/// Open-orbit criterion: every `c_λ = codim(𝔫_λ ⊂ 𝔲_λ) ≤ 1`, and the weights
/// with `c_λ = 1` are linearly independent modulo `K ⊗ ℚ`.
pub fn check_sphericity(rs: &RootSystem, model: &SubalgebraModel) -> bool {
    let n = rs.num_positive();
    let nspan = Span::new(n, &model.basis);
    let mut ones: Vec<Vec<i64>> = Vec::new();
    for g in weight_groups(rs, &model.torus) {
        let units: Vec<Vec<Q>> = g
            .iter()
            .map(|&i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        let mut both = model.basis.clone();
        both.extend(units);
        let sum_dim = Span::new(n, &both).rank();
        let meet = nspan.rank() + g.len() - sum_dim;
        match g.len() - meet {
            0 => {}
            1 => ones.push(root_i64(&rs.positive_roots()[g[0]])),
            _ => return false,
        }
    }
    let k = model.torus.vanishing();
    let mut all = k.to_vec();
    all.extend(ones.iter().cloned());
    rank_z(&all) == rank_z(k) + ones.len()
}
