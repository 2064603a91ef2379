//! The five per-orbit tables: built-in transcriptions, rendering from the
//! contribution functions, and a row-level diff between the two.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::char_engine::{
    enumerate_configs, hakim_contribution, kaletha_contribution, prasad_contribution,
    zeta_contribution, CharContribution, ClassKey, Degree, Ramification, RootOrbitConfig, Symmetry,
};

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Table {
    pub id: u8,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("| {} |", padded.join(" | ")).trim_end().to_string()
        };
        let mut out = format!("Table {}: {}\n", self.id, self.title);
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}

const ONE: &str = "𝟙";
const OMEGA: &str = "ω_{E_α/F_α}∘ι_{F_α}∘α";
const SGN_E: &str = "sgn_{k_{E_α}^×}∘α";
const SGN_E1: &str = "sgn_{k_{E_α}^1}∘α";
const SGN_F: &str = "sgn_{k_{F_α}^×}∘α";

const TABLE1: [[&str; 2]; 3] = [["asym", ONE], ["sym ur", OMEGA], ["sym r", OMEGA]];

const TABLE2: [[&str; 5]; 10] = [
    ["1", "asym", "asym", "r/ur", ONE],
    ["2 ur", "asym", "asym", "r/ur", ONE],
    ["2 r", "asym", "asym", "r", SGN_E],
    ["1", "sym ur", "asym", "ur", ONE],
    ["1", "sym ur", "sym ur", "r/ur", ONE],
    ["2 r", "sym ur", "sym ur", "r", SGN_E1],
    ["1", "sym r", "asym", "r", SGN_E],
    ["1", "sym r", "sym r", "r/ur", ONE],
    ["2 ur", "sym r", "sym r", "r/ur", ONE],
    ["2 ur", "sym r", "sym ur", "r", SGN_E1],
];

const TABLE3: [[&str; 2]; 3] = [["asym", ONE], ["sym ur", ONE], ["sym r", SGN_F]];

const TABLE4: [[&str; 5]; 10] = [
    ["1", "asym", "asym", "r/ur", ONE],
    ["2 ur", "asym", "asym", "r/ur", ONE],
    ["2 r", "asym", "asym", "r", ONE],
    ["1", "sym ur", "asym", "ur", ONE],
    ["1", "sym ur", "sym ur", "r/ur", ONE],
    ["2 r", "sym ur", "sym ur", "r", ONE],
    ["1", "sym r", "asym", "r", SGN_E],
    ["1", "sym r", "sym r", "r/ur", ONE],
    ["2 ur", "sym r", "sym r", "r/ur", OMEGA],
    ["2 ur", "sym r", "sym ur", "r", OMEGA],
];

const TABLE5: [[&str; 5]; 10] = [
    ["1", "asym", "asym", "asym", "1"],
    ["2 ur", "asym", "asym", "sym ur", "1"],
    ["2 r", "asym", "asym", "sym r", "1"],
    ["1", "sym ur", "asym", "asym", "2 ur"],
    ["1", "sym ur", "sym ur", "sym ur", "1"],
    ["2 r", "sym ur", "sym ur", "sym r", "2 ur"],
    ["1", "sym r", "asym", "asym", "2 r"],
    ["1", "sym r", "sym r", "sym r", "1"],
    ["2 ur", "sym r", "sym r", "sym r", "2 ur"],
    ["2 ur", "sym r", "sym ur", "sym ur", "2 r"],
];

fn meta(id: u8) -> (&'static str, Vec<&'static str>) {
    match id {
        1 => ("Prasad's character", vec!["α/F", "contribution"]),
        2 => (
            "Kaletha's character",
            vec!["[E_α:F_α]", "α/F", "α/E", "E/F", "contribution"],
        ),
        3 => ("Hakim's character", vec!["α/F", "contribution"]),
        4 => (
            "character of the ζ-data",
            vec!["[E_α:F_{α^op}]", "α^op/F", "α/E", "E/F", "contribution"],
        ),
        5 => (
            "α against α^op",
            vec!["[E_α:F_α]", "α/F", "α/E", "α^op/F", "[E_α:F_{α^op}]"],
        ),
        _ => unreachable!("tables are numbered 1 to 5"),
    }
}

fn table<R: AsRef<[&'static str]>>(id: u8, rows: &[R]) -> Table {
    let (title, headers) = meta(id);
    Table {
        id,
        title: title.to_string(),
        headers: headers.into_iter().map(String::from).collect(),
        rows: rows
            .iter()
            .map(|r| r.as_ref().iter().map(|c| c.to_string()).collect())
            .collect(),
    }
}

/// Tables 1 to 5 as transcribed.
pub fn builtin_tables() -> Vec<Table> {
    vec![
        table(1, &TABLE1),
        table(2, &TABLE2),
        table(3, &TABLE3),
        table(4, &TABLE4),
        table(5, &TABLE5),
    ]
}

/// Row order: `α/F`, then degree, then `α/E` as asym, same type, other type.
fn row_order(key: &ClassKey) -> (Symmetry, Degree, u8) {
    let (d, f, e) = *key;
    let e_rank = if e == Symmetry::Asym {
        0
    } else if e == f {
        1
    } else {
        2
    };
    (f, d, e_rank)
}

fn ordered_keys(configs: &[RootOrbitConfig]) -> Vec<ClassKey> {
    let mut keys: Vec<ClassKey> = configs
        .iter()
        .map(|c| c.key())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    keys.sort_by_key(row_order);
    keys
}

fn ef_cell(configs: &[RootOrbitConfig], key: ClassKey) -> String {
    let efs: BTreeSet<Ramification> = configs
        .iter()
        .filter(|c| c.key() == key)
        .map(|c| c.ef)
        .collect();
    let mut names: Vec<&str> = efs.iter().rev().map(|r| r.name()).collect();
    names.dedup();
    names.join("/")
}

/// Every distinct value over the selected configurations; more than one shows up as a diff.
fn cell(values: impl Iterator<Item = CharContribution>) -> String {
    let set: BTreeSet<CharContribution> = values.collect();
    let parts: Vec<String> = set.iter().map(|c| c.to_string()).collect();
    parts.join(" | ")
}

fn open(c: &&RootOrbitConfig) -> bool {
    c.in_phi_half && c.ord_zero
}

/// Tables 1 to 5 recomputed from the contribution functions.
pub fn computed_tables() -> Vec<Table> {
    let configs = enumerate_configs();
    let keys = ordered_keys(&configs);
    let syms = Symmetry::ALL;
    let sym_cell = |f: &dyn Fn(&RootOrbitConfig) -> CharContribution,
                    s: Symmetry,
                    pick: &dyn Fn(&RootOrbitConfig) -> bool| {
        cell(
            configs
                .iter()
                .filter(open)
                .filter(|c| c.sym_f == s && pick(c))
                .map(f),
        )
    };

    let t1: Vec<Vec<String>> = syms
        .iter()
        .map(|&s| {
            vec![
                s.name().to_string(),
                sym_cell(&prasad_contribution, s, &|c| c.degree != Degree::One),
            ]
        })
        .collect();
    let t3: Vec<Vec<String>> = syms
        .iter()
        .map(|&s| {
            vec![
                s.name().to_string(),
                sym_cell(&hakim_contribution, s, &|c| c.ef == Ramification::Ram),
            ]
        })
        .collect();
    let label = |k: ClassKey| {
        vec![
            k.0.name().to_string(),
            k.1.name().to_string(),
            k.2.name().to_string(),
        ]
    };
    let t2: Vec<Vec<String>> = keys
        .iter()
        .map(|&k| {
            let mut row = label(k);
            row.push(ef_cell(&configs, k));
            row.push(cell(
                configs
                    .iter()
                    .filter(open)
                    .filter(|c| c.key() == k)
                    .map(kaletha_contribution),
            ));
            row
        })
        .collect();
    let t4: Vec<Vec<String>> = keys
        .iter()
        .map(|&k| {
            let mut row = label(k);
            row.push(ef_cell(&configs, k));
            row.push(cell(
                configs
                    .iter()
                    .filter(open)
                    .filter(|c| c.op_key() == k)
                    .map(zeta_contribution),
            ));
            row
        })
        .collect();
    let t5: Vec<Vec<String>> = keys
        .iter()
        .map(|&k| {
            let ops: BTreeSet<(Symmetry, Degree)> = configs
                .iter()
                .filter(|c| c.key() == k)
                .map(|c| (c.sym_fop, c.degree_op))
                .collect();
            let mut row = label(k);
            row.push(
                ops.iter()
                    .map(|o| o.0.name())
                    .collect::<Vec<_>>()
                    .join(" | "),
            );
            row.push(
                ops.iter()
                    .map(|o| o.1.name())
                    .collect::<Vec<_>>()
                    .join(" | "),
            );
            row
        })
        .collect();
    vec![
        table_owned(1, t1),
        table_owned(2, t2),
        table_owned(3, t3),
        table_owned(4, t4),
        table_owned(5, t5),
    ]
}

fn table_owned(id: u8, rows: Vec<Vec<String>>) -> Table {
    let (title, headers) = meta(id);
    Table {
        id,
        title: title.to_string(),
        headers: headers.into_iter().map(String::from).collect(),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RowDiff {
    pub table: u8,
    /// Zero-based row index.
    pub row: usize,
    pub expected: Option<Vec<String>>,
    pub got: Option<Vec<String>>,
}

pub fn diff_tables(expected: &[Table], got: &[Table]) -> Vec<RowDiff> {
    let mut out = Vec::new();
    for id in 1..=5u8 {
        let e = expected.iter().find(|t| t.id == id);
        let g = got.iter().find(|t| t.id == id);
        let er = e.map_or(&[][..], |t| &t.rows[..]);
        let gr = g.map_or(&[][..], |t| &t.rows[..]);
        for row in 0..er.len().max(gr.len()) {
            let (a, b) = (er.get(row), gr.get(row));
            if a != b {
                out.push(RowDiff {
                    table: id,
                    row,
                    expected: a.cloned(),
                    got: b.cloned(),
                });
            }
        }
    }
    out
}

/// Replaces the contribution of Table 2's third row, for exercising the diff path.
pub fn inject_wrong_row(tables: &mut [Table]) {
    if let Some(t) = tables.iter_mut().find(|t| t.id == 2) {
        if let Some(cell) = t.rows.get_mut(2).and_then(|r| r.last_mut()) {
            *cell = if cell == ONE {
                SGN_E.to_string()
            } else {
                ONE.to_string()
            };
        }
    }
}

pub fn render_diff(diffs: &[RowDiff]) -> String {
    let mut out = String::new();
    for d in diffs {
        let show = |r: &Option<Vec<String>>| {
            r.as_ref()
                .map_or("<missing>".to_string(), |r| r.join(" | "))
        };
        let _ = writeln!(
            out,
            "table {} row {}:\n  expected {}\n  got      {}",
            d.table,
            d.row + 1,
            show(&d.expected),
            show(&d.got)
        );
    }
    out
}
