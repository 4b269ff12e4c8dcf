//! JSON and LaTeX forms of complexes.
//!
//! The LaTeX layout draws one row per chain position, highest position on
//! top, with summands written as parity-sequence objects `E(I){-t}`. Arrows
//! go upward and carry the block of the differential between two rows;
//! blocks that skip rows bend to the right.

use std::collections::BTreeMap;

use serde::Serialize;

use super::build::{Complex, Regime};
use super::matrix::{EntryView, Matrix};
use super::object::Summand;
use crate::morph::NormalMorphism;
use crate::ring::Coeff;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct ComplexJson {
    pub n: usize,
    pub regime: Regime,
    pub summands: Vec<Summand>,
    pub entries: Vec<EntryView>,
}

pub fn to_json(c: &Complex) -> ComplexJson {
    ComplexJson {
        n: c.n(),
        regime: c.regime(),
        summands: c.object().summands().to_vec(),
        entries: c.diff().entry_views(),
    }
}

/// Plain-text listing: summands by position, then every nonzero entry.
pub fn to_text(c: &Complex) -> String {
    let mut out = format!("n = {}, regime {}\n", c.n(), c.regime());
    let obj = c.object();
    for p in obj.positions() {
        let parts: Vec<String> = obj
            .summands()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.position() == p)
            .map(|(k, s)| format!("[{k}] {s}"))
            .collect();
        out.push_str(&format!("p = {p}: {}\n", parts.join(", ")));
    }
    for (r, col, _) in c.diff().entries() {
        let m = c.diff().morphism(r, col).expect("entry exists");
        out.push_str(&format!("  {col} -> {r}: {m}\n"));
    }
    out
}

fn summand_latex(s: &Summand) -> String {
    let label = if s.stratum.is_empty() { "\\varnothing".to_string() } else { s.stratum.label() };
    match -s.twist {
        0 => format!("\\mathcal{{E}}({label})"),
        k => format!("\\mathcal{{E}}({label})\\{{{k}\\}}"),
    }
}

fn word_latex(m: &NormalMorphism) -> String {
    let mut letters = String::new();
    for i in 1..=m.source.n() {
        match (m.source.contains(i), m.target.contains(i)) {
            (true, false) => letters.push_str(&format!("\\dot\\epsilon_{{{i}}}")),
            (false, true) => letters.push_str(&format!("\\dot\\eta_{{{i}}}")),
            _ => {}
        }
    }
    if letters.is_empty() {
        "\\mathrm{id}".into()
    } else {
        letters
    }
}

fn entry_latex(m: &NormalMorphism, factored: bool) -> String {
    let word = word_latex(m);
    if factored {
        return word;
    }
    let s = &m.scalar;
    match s.as_constant() {
        Some(c) if c == Coeff::from_integer(1) => word,
        Some(c) if c == Coeff::from_integer(-1) => format!("-{word}"),
        _ if s.is_compound() => format!("({})\\cdot {word}", s.to_latex()),
        _ => format!("{}\\cdot {word}", s.to_latex()),
    }
}

fn block_latex(d: &Matrix, rows: &[usize], cols: &[usize]) -> String {
    let entries: Vec<(usize, usize, &Scalar)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| cols.iter().enumerate().filter_map(move |(j, &c)| d.get(r, c).map(|s| (i, j, s))))
        .collect();
    let common = entries.first().map(|e| e.2.clone()).filter(|s| {
        s.as_constant().is_none() && entries.iter().all(|e| e.2 == s)
    });
    let factored = common.is_some();
    let cell = |i: usize, j: usize| -> Option<String> {
        let m = d.morphism(rows[i], cols[j])?;
        Some(entry_latex(&m, factored))
    };
    let body = if rows.len() == 1 && cols.len() == 1 {
        cell(0, 0).unwrap_or_else(|| "0".into())
    } else {
        let row_empty: Vec<bool> = (0..rows.len()).map(|i| (0..cols.len()).all(|j| cell(i, j).is_none())).collect();
        let col_empty: Vec<bool> = (0..cols.len()).map(|j| (0..rows.len()).all(|i| cell(i, j).is_none())).collect();
        let lines: Vec<String> = (0..rows.len())
            .map(|i| {
                let cells: Vec<String> = (0..cols.len())
                    .map(|j| match cell(i, j) {
                        Some(t) => t,
                        None if row_empty[i] || col_empty[j] => "0".into(),
                        None => String::new(),
                    })
                    .collect();
                cells.join(" & ")
            })
            .collect();
        format!("\\left[\\begin{{smallmatrix}} {} \\end{{smallmatrix}}\\right]", lines.join(" \\\\ "))
    };
    match common {
        Some(s) if s.is_compound() => format!("({})\\cdot {body}", s.to_latex()),
        Some(s) => format!("{}\\cdot {body}", s.to_latex()),
        None => body,
    }
}

/// Deterministic tikz-cd source for a complex.
pub fn to_latex(c: &Complex) -> String {
    let obj = c.object();
    if obj.is_empty() {
        return "\\[\n0\n\\]\n".into();
    }
    let positions = obj.positions();
    let mut by_pos: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, s) in obj.summands().iter().enumerate() {
        by_pos.entry(s.position()).or_default().push(k);
    }
    let d = c.diff();
    let mut out = String::from("\\[\n\\begin{tikzcd}[row sep=large,ampersand replacement=\\&]\n");
    let top_down: Vec<i64> = positions.iter().rev().copied().collect();
    for (row_no, p) in top_down.iter().enumerate() {
        let cols = &by_pos[p];
        let names: Vec<String> = cols.iter().map(|&k| summand_latex(obj.get(k))).collect();
        out.push_str(&names.join(" \\oplus "));
        for q in positions.iter().filter(|q| **q > *p) {
            let rows = &by_pos[q];
            if !rows.iter().any(|&r| cols.iter().any(|&col| d.get(r, col).is_some())) {
                continue;
            }
            let steps = top_down.iter().position(|x| x == q).map_or(0, |k| row_no - k);
            let dir = "u".repeat(steps);
            let label = block_latex(d, rows, cols);
            if steps == 1 {
                out.push_str(&format!("\n  \\ar[{dir}, \"{{{label}}}\"]"));
            } else {
                out.push_str(&format!("\n  \\ar[{dir}, bend right=60, \"{{{label}}}\"']"));
            }
        }
        if row_no + 1 < top_down.len() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{tikzcd}\n\\]\n");
    out
}
