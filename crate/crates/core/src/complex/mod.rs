//! Graded parity objects, matrix morphisms and differential complexes.

mod build;
mod expr;
mod matrix;
mod object;
pub mod render;

use std::sync::Arc;

use thiserror::Error;

pub use build::{box_product, cone, homotopy_check, is_chain_map, mon, BoxSigns, Complex, Regime, DIFFERENTIAL};
pub use expr::{check_equal, first_difference, mul, MatExpr, Mismatch};
pub use matrix::{EntryView, Matrix, MatrixBuilder};
pub use object::{DirectSum, GradedObject, Summand};

use crate::scalar::{Bidegree, Scalar, ScalarCtx};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("entry ({row}, {col}) has bidegree {found}, expected {expected}")]
    Degree { row: usize, col: usize, found: Bidegree, expected: Bidegree },
    #[error("entry ({row}, {col}) scalar {scalar} is not bihomogeneous")]
    Inhomogeneous { row: usize, col: usize, scalar: String },
    #[error("entry ({row}, {col}): {reason}")]
    RegimeEntry { row: usize, col: usize, reason: &'static str },
    #[error("{regime} condition fails at ({row}, {col}): {lhs} != {rhs}", row = .mismatch.row, col = .mismatch.col, lhs = .mismatch.lhs, rhs = .mismatch.rhs)]
    Condition { regime: Regime, mismatch: Mismatch },
    #[error("not a chain map at ({row}, {col}): {lhs} != {rhs}", row = .0.row, col = .0.col, lhs = .0.lhs, rhs = .0.rhs)]
    NotChainMap(Mismatch),
    #[error("incompatible frames: {left} vs {right}")]
    FrameMismatch { left: String, right: String },
    #[error("scalar contexts differ")]
    ContextMismatch,
    #[error("expected regime {expected}, found {found}")]
    WrongRegime { expected: Regime, found: Regime },
    #[error("differential must be an endomorphism")]
    NotEndomorphism,
    #[error("entry ({row}, {col}) is not a constant multiple of its word")]
    NonConstant { row: usize, col: usize },
}

/// A direct sum of objects with the canonical index of each block's summands.
#[derive(Debug, Clone)]
pub struct BlockLayout {
    pub obj: Arc<GradedObject>,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockLayout {
    pub fn new(n: usize, parts: &[&GradedObject]) -> BlockLayout {
        let mut ds = DirectSum::new();
        for p in parts {
            ds.push(p.summands());
        }
        let (obj, blocks) = ds.finish(n);
        BlockLayout { obj: Arc::new(obj), blocks }
    }

    pub fn single(obj: Arc<GradedObject>) -> BlockLayout {
        let idx = (0..obj.len()).collect();
        BlockLayout { obj, blocks: vec![idx] }
    }
}

/// One block `(row block, column block, matrix, coefficient)` of a block matrix.
pub type Block<'a> = (usize, usize, &'a Matrix, Scalar);

/// Assembles a block matrix from placed blocks.
pub fn assemble(ctx: ScalarCtx, src: &BlockLayout, tgt: &BlockLayout, blocks: &[Block<'_>]) -> Matrix {
    let mut b = MatrixBuilder::new(ctx, src.obj.clone(), tgt.obj.clone());
    for (rb, cb, m, coeff) in blocks {
        b.place(m, &tgt.blocks[*rb], &src.blocks[*cb], coeff);
    }
    b.build()
}
