//! Sums of matrix products, evaluated with relation tracking.
//!
//! A product is expanded along paths `c → j → ⋯ → r`. Each time a letter is
//! undone by its partner the index is recorded as a loop instead of being
//! turned into `α_i` immediately. Once every term of a cell is in, loops are
//! resolved: if single loops cover all of `[n]` with one common coefficient
//! `c`, the cell gains `c·ξ` through the unit-sum relation; otherwise each
//! loop becomes `α_i` through its per-index relation. Either way the result
//! is the same scalar; only the ledger differs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

use super::matrix::Matrix;
use super::object::GradedObject;
use super::ComplexError;
use crate::exec;
use crate::morph::{loops, Relation, UsageLedger};
use crate::scalar::{Scalar, ScalarCtx};
use crate::strata::Subset;

type Loops = SmallVec<[u8; 4]>;
type Cell = BTreeMap<Loops, Scalar>;

#[derive(Debug, Clone)]
struct Term<'a> {
    coeff: Scalar,
    factors: Vec<&'a Matrix>,
}

/// `Σ coeff · M₁ M₂ ⋯ M_k`, where `M₁` is applied last.
#[derive(Debug, Clone, Default)]
pub struct MatExpr<'a> {
    terms: Vec<Term<'a>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

impl<'a> MatExpr<'a> {
    pub fn new() -> Self {
        MatExpr { terms: Vec::new() }
    }

    pub fn of(factors: &[&'a Matrix]) -> Self {
        MatExpr::new().plus(factors)
    }

    pub fn plus(self, factors: &[&'a Matrix]) -> Self {
        let ctx = factors.first().expect("a product needs a factor").ctx();
        self.scaled(Scalar::one(ctx), factors)
    }

    pub fn minus(self, factors: &[&'a Matrix]) -> Self {
        let ctx = factors.first().expect("a product needs a factor").ctx();
        self.scaled(Scalar::constant(ctx, -1), factors)
    }

    pub fn scaled(mut self, coeff: Scalar, factors: &[&'a Matrix]) -> Self {
        assert!(!factors.is_empty(), "a product needs a factor");
        self.terms.push(Term { coeff, factors: factors.to_vec() });
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn frame(&self) -> Option<(Arc<GradedObject>, Arc<GradedObject>, ScalarCtx)> {
        let t = self.terms.first()?;
        let last = t.factors.last().expect("nonempty");
        Some((last.src().clone(), t.factors[0].tgt().clone(), t.factors[0].ctx()))
    }

    /// Evaluates to a single matrix, recording every relation used.
    pub fn evaluate(&self, ledger: &mut UsageLedger) -> Result<Option<Matrix>, ComplexError> {
        let Some((src, tgt, ctx)) = self.frame() else {
            return Ok(None);
        };
        let mut plans = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            plans.push(Plan::new(t, &src, &tgt, ctx)?);
        }
        let rows = exec::map_indices(tgt.len(), |r| {
            let mut acc: BTreeMap<u32, Cell> = BTreeMap::new();
            for p in &plans {
                p.accumulate_row(r, &mut acc);
            }
            resolve_row(ctx, p_sources(&src), acc)
        });
        let mut out_rows = Vec::with_capacity(rows.len());
        for (row, row_ledger) in rows {
            out_rows.push(row);
            ledger.merge(row_ledger);
        }
        Ok(Some(Matrix::from_rows(ctx, src, tgt, out_rows)))
    }

    pub fn evaluate_untracked(&self) -> Result<Option<Matrix>, ComplexError> {
        self.evaluate(&mut UsageLedger::new())
    }
}

fn p_sources(src: &GradedObject) -> Vec<Subset> {
    src.summands().iter().map(|s| s.stratum).collect()
}

/// A validated product chain with cumulative shift offsets.
struct Plan<'t, 'a> {
    term: &'t Term<'a>,
    /// `offsets[t]`: total homological offset between factor 0 and factor t.
    offsets: Vec<i64>,
}

impl<'t, 'a> Plan<'t, 'a> {
    fn new(
        term: &'t Term<'a>,
        src: &GradedObject,
        tgt: &GradedObject,
        ctx: ScalarCtx,
    ) -> Result<Self, ComplexError> {
        let f = &term.factors;
        let mut offsets = vec![0i64];
        for t in 1..f.len() {
            if f[t].ctx() != ctx {
                return Err(ComplexError::ContextMismatch);
            }
            let (_, dh) = f[t - 1].src().offset_to(f[t].tgt()).ok_or_else(|| ComplexError::FrameMismatch {
                left: format!("factor {} source {}", t - 1, f[t - 1].src()),
                right: format!("factor {t} target {}", f[t].tgt()),
            })?;
            offsets.push(offsets[t - 1] + dh);
        }
        let last = f.last().expect("nonempty");
        if last.src().offset_to(src).is_none() || f[0].tgt().offset_to(tgt).is_none() {
            return Err(ComplexError::FrameMismatch {
                left: format!("{} -> {}", src, tgt),
                right: format!("{} -> {}", last.src(), f[0].tgt()),
            });
        }
        Ok(Plan { term, offsets })
    }

    fn accumulate_row(&self, r: usize, acc: &mut BTreeMap<u32, Cell>) {
        let f = &self.term.factors;
        let head = f[0];
        let target = head.tgt().get(r);
        let ir = target.stratum;
        let mut state: BTreeMap<u32, Cell> = BTreeMap::new();
        for (c, s) in head.row(r) {
            let mut cell = Cell::new();
            cell.insert(Loops::new(), s.clone());
            state.insert(*c, cell);
        }
        for t in 1..f.len() {
            if state.is_empty() {
                return;
            }
            let left = f[t - 1];
            let right = f[t];
            let mut next: BTreeMap<u32, Cell> = BTreeMap::new();
            for (j, cell) in &state {
                let mid = left.src().get(*j as usize);
                let ij = mid.stratum;
                let word_deg = ij.sym_diff(&ir).len() as i64 + mid.shift - target.shift - self.offsets[t - 1];
                let odd = word_deg.rem_euclid(2) == 1;
                for (c, s2) in right.row(*j as usize) {
                    let ic = right.src().get(*c as usize).stratum;
                    let step = loops(&ic, &ij, &ir);
                    let s2 = if odd { s2.flip_odd() } else { s2.clone() };
                    let dest = next.entry(*c).or_default();
                    for (lp, s1) in cell {
                        let prod = s1 * &s2;
                        if prod.is_zero() {
                            continue;
                        }
                        let mut key = lp.clone();
                        key.extend(step.iter().map(|i| i as u8));
                        key.sort_unstable();
                        add_into(dest, key, prod);
                    }
                }
            }
            state = next;
        }
        for (c, cell) in state {
            let dest = acc.entry(c).or_default();
            for (lp, s) in cell {
                let v = if self.term.coeff.is_one() { s } else { &self.term.coeff * &s };
                add_into(dest, lp, v);
            }
        }
    }
}

fn add_into(cell: &mut Cell, key: Loops, v: Scalar) {
    match cell.get_mut(&key) {
        Some(old) => {
            let s = &*old + &v;
            if s.is_zero() {
                cell.remove(&key);
            } else {
                *old = s;
            }
        }
        None => {
            if !v.is_zero() {
                cell.insert(key, v);
            }
        }
    }
}

fn resolve_row(
    ctx: ScalarCtx,
    sources: Vec<Subset>,
    acc: BTreeMap<u32, Cell>,
) -> (Vec<(u32, Scalar)>, UsageLedger) {
    let mut ledger = UsageLedger::new();
    let mut row = Vec::new();
    for (c, cell) in acc {
        let base = sources[c as usize];
        let v = resolve_cell(ctx, base, cell, &mut ledger);
        if !v.is_zero() {
            row.push((c, v));
        }
    }
    (row, ledger)
}

fn resolve_cell(ctx: ScalarCtx, base: Subset, cell: Cell, ledger: &mut UsageLedger) -> Scalar {
    let n = ctx.n;
    let mut total = Scalar::zero(ctx);
    let mut singles: Vec<(usize, Scalar)> = Vec::new();
    for (lp, s) in cell {
        match lp.len() {
            0 => total = &total + &s,
            1 => singles.push((lp[0] as usize, s)),
            _ => {
                let mut v = s;
                for &i in lp.iter() {
                    ledger.record(Relation::PerIndex(i as usize), base);
                    v = &v * &Scalar::alpha(ctx, i as usize);
                }
                total = &total + &v;
            }
        }
    }
    let full = n > 0 && singles.len() == n && singles.iter().all(|(_, s)| *s == singles[0].1);
    if full {
        ledger.record(Relation::UnitSum, base);
        total = &total + &(&singles[0].1 * &Scalar::xi(ctx));
    } else {
        for (i, s) in singles {
            ledger.record(Relation::PerIndex(i), base);
            total = &total + &(&s * &Scalar::alpha(ctx, i));
        }
    }
    total
}

/// Evaluates both sides and reports the first cell (row-major) where they
/// differ. An empty side stands for zero.
pub fn check_equal(
    lhs: &MatExpr<'_>,
    rhs: &MatExpr<'_>,
    ledger: &mut UsageLedger,
) -> Result<Option<Mismatch>, ComplexError> {
    let a = lhs.evaluate(ledger)?;
    let b = rhs.evaluate(ledger)?;
    Ok(match (a, b) {
        (None, None) => None,
        (Some(a), None) => first_nonzero(&a, false),
        (None, Some(b)) => first_nonzero(&b, true),
        (Some(a), Some(b)) => {
            a.frame_check(&b)?;
            first_difference(&a, &b)
        }
    })
}

fn first_nonzero(m: &Matrix, is_rhs: bool) -> Option<Mismatch> {
    m.entries().next().map(|(r, c, s)| {
        let (lhs, rhs) = if is_rhs { ("0".into(), s.to_string()) } else { (s.to_string(), "0".into()) };
        Mismatch { row: r, col: c, lhs, rhs }
    })
}

pub fn first_difference(a: &Matrix, b: &Matrix) -> Option<Mismatch> {
    for r in 0..a.nrows() {
        if a.row(r) == b.row(r) {
            continue;
        }
        let cols: std::collections::BTreeSet<u32> =
            a.row(r).iter().chain(b.row(r)).map(|e| e.0).collect();
        for c in cols {
            let x = a.get(r, c as usize);
            let y = b.get(r, c as usize);
            if x != y {
                let show = |s: Option<&Scalar>| s.map_or("0".to_string(), |s| s.to_string());
                return Some(Mismatch { row: r, col: c as usize, lhs: show(x), rhs: show(y) });
            }
        }
    }
    None
}

/// Untracked product `a · b`.
pub fn mul(a: &Matrix, b: &Matrix) -> Result<Matrix, ComplexError> {
    Ok(MatExpr::of(&[a, b]).evaluate_untracked()?.expect("one term"))
}
