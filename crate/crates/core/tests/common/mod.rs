#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use solvsph_core::enumerate::Table;
use solvsph_core::{CombTriple, RootSystem};

pub fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

pub struct GoldenRow {
    pub no: usize,
    pub triple: CombTriple,
    pub cells: Vec<String>,
    pub cs: usize,
    pub cn: usize,
}

pub struct Golden {
    pub systems: Vec<String>,
    pub rows: Vec<GoldenRow>,
    pub d0: Vec<usize>,
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(format!("{name}.txt"))
}

/// Cells corrected after transcription: `(table, row, column, cell)`. The
/// printed F4 entry of row 5 lists 42, but row 5 sits in the orbit of row 2,
/// whose entry (and those of rows 13, 23, 37, 52) list 52.
pub const ERRATA: [(&str, usize, usize, &str); 1] = [("rank4_a", 5, 3, "2(1),13,23,37(4),52")];

pub fn load(name: &str) -> Golden {
    let mut g = load_raw(name);
    for (table, no, col, cell) in ERRATA {
        if table == name {
            let row = g.rows.iter_mut().find(|r| r.no == no).unwrap();
            row.cells[col] = cell.to_string();
        }
    }
    g
}

/// `(row, column)` cells whose orbit disagrees with the cells of most rows they list.
pub fn asymmetric_cells(g: &Golden) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..g.systems.len() {
        let class = |no: usize| -> BTreeSet<usize> {
            let row = g.rows.iter().find(|r| r.no == no).unwrap();
            let mut s: BTreeSet<usize> = parse_cell(&row.cells[k]).into_iter().map(|x| x.0).collect();
            s.insert(no);
            s
        };
        for r in &g.rows {
            let c = class(r.no);
            if c.iter().filter(|&&j| class(j) != c).count() * 2 > c.len() - 1 {
                out.push((r.no, k));
            }
        }
    }
    out
}

pub fn load_raw(name: &str) -> Golden {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    let mut systems = Vec::new();
    let mut rows = Vec::new();
    let mut d0 = Vec::new();
    for line in text.lines() {
        let f: Vec<&str> = line.split('|').collect();
        if let Some(h) = line.strip_prefix('#') {
            systems = h.split('|').map(String::from).collect();
        } else if f[0] == "d0" {
            d0 = f[1..].iter().map(|x| x.parse().unwrap()).collect();
        } else {
            let rank = rs(&systems[0]).rank();
            let k = systems.len();
            rows.push(GoldenRow {
                no: f[0].parse().unwrap(),
                triple: CombTriple::parse_compact(rank, f[1], f[2]).unwrap(),
                cells: f[3..3 + k].iter().map(|s| s.to_string()).collect(),
                cs: f[3 + k].parse().unwrap(),
                cn: f[4 + k].parse().unwrap(),
            });
        }
    }
    Golden { systems, rows, d0 }
}

/// `"2,3(2)"` → `{(2, []), (3, [2])}`.
pub fn parse_cell(cell: &str) -> Vec<(usize, Vec<usize>)> {
    cell.split(',')
        .filter(|s| !s.is_empty())
        .map(|item| {
            let mut parts = item.split('(');
            let row = parts.next().unwrap().parse().unwrap();
            let centers = parts.map(|c| c.trim_end_matches(')').parse().unwrap()).collect();
            (row, centers)
        })
        .collect()
}

/// Mismatches between an emitted table and a transcribed one, and the number of cells compared.
pub fn compare(table: &Table, golden: &Golden) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let ours: BTreeSet<&CombTriple> = table.rows.iter().map(|r| &r.triple).collect();
    let theirs: BTreeSet<&CombTriple> = golden.rows.iter().map(|r| &r.triple).collect();
    if ours != theirs {
        bad.push(format!(
            "row sets differ: {} emitted, {} expected, {} extra, {} missing",
            ours.len(),
            theirs.len(),
            ours.difference(&theirs).count(),
            theirs.difference(&ours).count()
        ));
        return (bad, 0);
    }
    if table.d0 != golden.d0 {
        bad.push(format!("d0 {:?} != {:?}", table.d0, golden.d0));
    }
    let by_no: HashMap<usize, &CombTriple> = golden.rows.iter().map(|r| (r.no, &r.triple)).collect();
    let ours_by: HashMap<&CombTriple, usize> = table.rows.iter().enumerate().map(|(i, r)| (&r.triple, i)).collect();
    let mut cells = 0;
    for g in &golden.rows {
        let row = &table.rows[ours_by[&g.triple]];
        if (row.cs, row.cn) != (g.cs, g.cn) {
            bad.push(format!("row {}: codims ({},{}) != ({},{})", g.no, row.cs, row.cn, g.cs, g.cn));
        }
        for (k, cell) in g.cells.iter().enumerate() {
            cells += 1;
            let want: BTreeSet<(&CombTriple, Vec<usize>)> =
                parse_cell(cell).into_iter().map(|(r, c)| (by_no[&r], c)).collect();
            let got: BTreeSet<(&CombTriple, Vec<usize>)> = row.reach[k]
                .iter()
                .map(|(r, c)| (&table.rows[r - 1].triple, c.clone()))
                .collect();
            if want != got {
                bad.push(format!("row {} column {}: emitted {:?}, expected {:?}", g.no, golden.systems[k], row.reach_cell(k), cell));
            }
        }
    }
    (bad, cells)
}
