//! Exact linear algebra over ℚ and ℤ on small dense matrices.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..ncols {
                    let v = rows[r][j] * f;
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_z(rows: &[Vec<i64>]) -> usize {
    rank_q(&to_q(rows))
}

pub fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// A row space kept in reduced echelon form, for repeated membership tests.
#[derive(Clone, Debug)]
pub struct Span {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    dim: usize,
}

impl Span {
    pub fn new(dim: usize, gens: &[Vec<Q>]) -> Self {
        let mut rows = gens.to_vec();
        let pivots = rref(&mut rows);
        Span { rows, pivots, dim }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after elimination against the span.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let f = v[c];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= *y * f;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// ℤ-basis of `{x ∈ ℤⁿ : A x = 0}` via unimodular column operations.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    // u is stored column-major: u[c] is column c.
    let mut piv = 0;
    for r in 0..a.len() {
        if piv == n {
            break;
        }
        for c in piv + 1..n {
            let (x0, y0) = (a[r][piv], a[r][c]);
            if y0 == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x0, y0);
            let (p, qq) = (x0 / g, y0 / g);
            for row in a.iter_mut() {
                let (ci, cj) = (row[piv], row[c]);
                row[piv] = s * ci + t * cj;
                row[c] = -qq * ci + p * cj;
            }
            let (ci, cj) = (u[piv].clone(), u[c].clone());
            for k in 0..n {
                u[piv][k] = s * ci[k] + t * cj[k];
                u[c][k] = -qq * ci[k] + p * cj[k];
            }
        }
        if a[r][piv] != 0 {
            piv += 1;
        }
    }
    hermite_rows(&u[piv..])
}

/// Row Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let f = Integer::div_floor(&m[i][c], &m[r][c]);
                    for j in 0..ncols {
                        m[i][j] -= f * m[r][j];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let f = Integer::div_floor(&m[i][c], &m[r][c]);
            if f != 0 {
                for j in 0..ncols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Saturation `(ℚ·L) ∩ ℤⁿ` of the lattice generated by `gens`, in Hermite form.
pub fn saturate(gens: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let perp = integer_kernel(gens, n);
    integer_kernel(&perp, n)
}

/// True when `v` lies in the ℚ-span of `rows`.
pub fn in_span_z(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let n = v.len();
    Span::new(n, &to_q(rows)).contains(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
}
