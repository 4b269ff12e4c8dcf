use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use super::object::GradedObject;
use super::ComplexError;
use crate::morph::NormalMorphism;
use crate::ring::Coeff;
use crate::scalar::{Bidegree, Scalar, ScalarCtx};

/// A sparse matrix of normal-form morphisms. Entry `(r, c)` maps source
/// summand `c` to target summand `r`; rows are sorted by column and hold no
/// zero scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    src: Arc<GradedObject>,
    tgt: Arc<GradedObject>,
    ctx: ScalarCtx,
    rows: Vec<Vec<(u32, Scalar)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryView {
    pub row: usize,
    pub col: usize,
    pub scalar: String,
    pub word: String,
}

impl Matrix {
    pub fn zero(ctx: ScalarCtx, src: Arc<GradedObject>, tgt: Arc<GradedObject>) -> Matrix {
        let rows = vec![Vec::new(); tgt.len()];
        Matrix { src, tgt, ctx, rows }
    }

    pub fn identity(ctx: ScalarCtx, obj: Arc<GradedObject>) -> Matrix {
        Matrix::scalar_identity(ctx, obj, Scalar::one(ctx))
    }

    pub fn scalar_identity(ctx: ScalarCtx, obj: Arc<GradedObject>, s: Scalar) -> Matrix {
        let mut b = MatrixBuilder::new(ctx, obj.clone(), obj.clone());
        for k in 0..obj.len() {
            b.add(k, k, s.clone());
        }
        b.build()
    }

    /// Same entries, reinterpreted between the given objects. The strata must
    /// agree; twists and shifts are free.
    pub fn reframe(&self, src: Arc<GradedObject>, tgt: Arc<GradedObject>) -> Result<Matrix, ComplexError> {
        if self.src.offset_to(&src).is_none() || self.tgt.offset_to(&tgt).is_none() {
            return Err(ComplexError::FrameMismatch {
                left: format!("{} -> {}", self.src, self.tgt),
                right: format!("{src} -> {tgt}"),
            });
        }
        Ok(Matrix { src, tgt, ctx: self.ctx, rows: self.rows.clone() })
    }

    pub(crate) fn from_rows(
        ctx: ScalarCtx,
        src: Arc<GradedObject>,
        tgt: Arc<GradedObject>,
        rows: Vec<Vec<(u32, Scalar)>>,
    ) -> Matrix {
        debug_assert_eq!(rows.len(), tgt.len());
        Matrix { src, tgt, ctx, rows }
    }

    pub fn ctx(&self) -> ScalarCtx {
        self.ctx
    }

    pub fn src(&self) -> &Arc<GradedObject> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<GradedObject> {
        &self.tgt
    }

    pub fn nrows(&self) -> usize {
        self.tgt.len()
    }

    pub fn ncols(&self) -> usize {
        self.src.len()
    }

    pub fn row(&self, r: usize) -> &[(u32, Scalar)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        let row = &self.rows[r];
        row.binary_search_by_key(&(c as u32), |e| e.0).ok().map(|k| &row[k].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, s)| (r, *c as usize, s)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn morphism(&self, r: usize, c: usize) -> Option<NormalMorphism> {
        self.get(r, c)
            .map(|s| NormalMorphism::new(self.src.get(c).stratum, self.tgt.get(r).stratum, s.clone()))
    }

    /// Bidegree of every term of entry `(r, c)`; all terms must agree.
    pub fn entry_bidegree(&self, r: usize, c: usize) -> Option<Result<Bidegree, ComplexError>> {
        let s = self.get(r, c)?;
        let (from, to) = (self.src.get(c), self.tgt.get(r));
        let l = from.stratum.sym_diff(&to.stratum).len() as i64;
        let dp = to.position() - from.position();
        let dt = to.twist - from.twist;
        let word = Bidegree::new(dp + l + dt, l + dt);
        Some(
            s.bidegree()
                .map(|b| word + b)
                .map_err(|_| ComplexError::Inhomogeneous { row: r, col: c, scalar: s.to_string() }),
        )
    }

    /// Checks that every entry has the given bidegree.
    pub fn check_bidegree(&self, want: Bidegree) -> Result<(), ComplexError> {
        for (r, c, _) in self.entries() {
            let got = self.entry_bidegree(r, c).expect("entry exists")?;
            if got != want {
                return Err(ComplexError::Degree { row: r, col: c, found: got, expected: want });
            }
        }
        Ok(())
    }

    /// The common bidegree of all entries, if any entry exists and they agree.
    pub fn uniform_bidegree(&self) -> Result<Option<Bidegree>, ComplexError> {
        let mut found = None;
        for (r, c, _) in self.entries() {
            let got = self.entry_bidegree(r, c).expect("entry exists")?;
            match found {
                None => found = Some(got),
                Some(b) if b != got => {
                    return Err(ComplexError::Degree { row: r, col: c, found: got, expected: b })
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// Parity of the first degree of the bare word in entry `(r, c)`.
    pub fn word_parity(&self, r: usize, c: usize) -> bool {
        let (from, to) = (self.src.get(c), self.tgt.get(r));
        let l = from.stratum.sym_diff(&to.stratum).len() as i64;
        (l + from.shift - to.shift).rem_euclid(2) == 1
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, s)| {
                        let v = f(s);
                        (!v.is_zero()).then_some((*c, v))
                    })
                    .collect()
            })
            .collect();
        Matrix { src: self.src.clone(), tgt: self.tgt.clone(), ctx: self.ctx, rows }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map_scalars(|x| s * x)
    }

    pub fn neg(&self) -> Matrix {
        self.map_scalars(|x| -x)
    }

    /// Entrywise sum; the frames must match up to a uniform offset.
    pub fn add(&self, o: &Matrix) -> Result<Matrix, ComplexError> {
        self.frame_check(o)?;
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| merge_rows(a, b))
            .collect();
        Ok(Matrix { src: self.src.clone(), tgt: self.tgt.clone(), ctx: self.ctx, rows })
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix, ComplexError> {
        self.add(&o.neg())
    }

    pub(crate) fn frame_check(&self, o: &Matrix) -> Result<(), ComplexError> {
        if self.ctx != o.ctx {
            return Err(ComplexError::ContextMismatch);
        }
        if self.src.offset_to(&o.src).is_none() || self.tgt.offset_to(&o.tgt).is_none() {
            return Err(ComplexError::FrameMismatch {
                left: format!("{} -> {}", self.src, self.tgt),
                right: format!("{} -> {}", o.src, o.tgt),
            });
        }
        Ok(())
    }

    /// `κ(a + ξ̄b) = ξb`, entrywise.
    pub fn kappa(&self) -> Result<Matrix, ComplexError> {
        if let Some((r, c, _)) = self.entries().find(|(_, _, s)| s.has_r()) {
            return Err(ComplexError::RegimeEntry { row: r, col: c, reason: "r is not allowed under kappa" });
        }
        let xi = Scalar::xi(self.ctx);
        Ok(self.map_scalars(|s| &xi * &s.split_xi_bar().1))
    }

    pub fn entry_views(&self) -> Vec<EntryView> {
        self.entries()
            .map(|(r, c, s)| EntryView {
                row: r,
                col: c,
                scalar: s.to_string(),
                word: self.morphism(r, c).expect("entry exists").word(),
            })
            .collect()
    }

    /// Rows `rows` and columns `cols` of `self`, placed between new objects.
    pub fn submatrix(
        &self,
        rows: &[usize],
        cols: &[usize],
        src: Arc<GradedObject>,
        tgt: Arc<GradedObject>,
    ) -> Matrix {
        let mut inv = vec![u32::MAX; self.ncols()];
        for (k, &c) in cols.iter().enumerate() {
            inv[c] = k as u32;
        }
        let mut b = MatrixBuilder::new(self.ctx, src, tgt);
        for (k, &r) in rows.iter().enumerate() {
            for (c, s) in &self.rows[r] {
                let nc = inv[*c as usize];
                if nc != u32::MAX {
                    b.add(k, nc as usize, s.clone());
                }
            }
        }
        b.build()
    }
}

fn merge_rows(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                let s = &x.1 + &y.1;
                if !s.is_zero() {
                    out.push((x.0, s));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Accumulates entries; repeated positions add up.
#[derive(Debug)]
pub struct MatrixBuilder {
    ctx: ScalarCtx,
    src: Arc<GradedObject>,
    tgt: Arc<GradedObject>,
    rows: Vec<Vec<(u32, Scalar)>>,
}

impl MatrixBuilder {
    pub fn new(ctx: ScalarCtx, src: Arc<GradedObject>, tgt: Arc<GradedObject>) -> Self {
        let rows = vec![Vec::new(); tgt.len()];
        MatrixBuilder { ctx, src, tgt, rows }
    }

    pub fn add(&mut self, r: usize, c: usize, s: Scalar) -> &mut Self {
        assert!(r < self.tgt.len() && c < self.src.len(), "entry ({r}, {c}) out of bounds");
        if !s.is_zero() {
            self.rows[r].push((c as u32, s));
        }
        self
    }

    pub fn add_int(&mut self, r: usize, c: usize, v: i128) -> &mut Self {
        let s = Scalar::constant(self.ctx, v);
        self.add(r, c, s)
    }

    /// Adds `coeff · block`, sending block row `i` to `row_map[i]` and block
    /// column `j` to `col_map[j]`.
    pub fn place(&mut self, block: &Matrix, row_map: &[usize], col_map: &[usize], coeff: &Scalar) -> &mut Self {
        assert_eq!(row_map.len(), block.nrows());
        assert_eq!(col_map.len(), block.ncols());
        let unit = coeff.as_constant().is_some_and(|c| c == Coeff::one());
        for (r, c, s) in block.entries() {
            let v = if unit { s.clone() } else { coeff * s };
            self.add(row_map[r], col_map[c], v);
        }
        self
    }

    pub fn build(self) -> Matrix {
        let rows = self
            .rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(row.len());
                for (c, s) in row {
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 = &last.1 + &s,
                        _ => out.push((c, s)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Matrix { src: self.src, tgt: self.tgt, ctx: self.ctx, rows }
    }
}
