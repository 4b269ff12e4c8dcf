//! Objects built from whole levels `Eᵒ(k) = ⊕_{|I|=k} E(I)` and maps given
//! by one letter per pair of levels.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{BlockLayout, DirectSum, GradedObject, Matrix, MatrixBuilder, Summand};
use crate::scalar::{Scalar, ScalarCtx};
use crate::strata::Subset;

/// The level-to-level maps every block entry is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Id,
    /// Signed counits `Eᵒ(k) → Eᵒ(k-1)`.
    Eps,
    /// Signed units `Eᵒ(k-1) → Eᵒ(k)`.
    Eta,
}

/// `Eᵒ(level)⟨twist⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub level: usize,
    pub twist: i64,
}

/// A direct sum of pieces together with where each piece landed.
#[derive(Debug, Clone)]
pub struct PieceObject {
    pub pieces: Vec<Piece>,
    pub layout: BlockLayout,
}

impl PieceObject {
    pub fn new(n: usize, pieces: Vec<Piece>) -> PieceObject {
        let mut ds = DirectSum::new();
        for p in &pieces {
            let parts: Vec<Summand> =
                level_sets(n, p.level).into_iter().map(|s| Summand::new(s, p.twist, 0)).collect();
            ds.push(&parts);
        }
        let (obj, blocks) = ds.finish(n);
        PieceObject { pieces, layout: BlockLayout { obj: Arc::new(obj), blocks } }
    }

    pub fn obj(&self) -> &Arc<GradedObject> {
        &self.layout.obj
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Subsets of size `k` in the canonical order used inside every piece.
pub fn level_sets(n: usize, k: usize) -> Vec<Subset> {
    Subset::of_size(n, k)
}

/// `(-1)^{#{j < i : j ∉ I}}`, with `I` the larger of the two strata.
pub fn letter_sign(larger: &Subset, i: usize) -> i128 {
    let below_outside = (i - 1) - larger.count_below(i);
    if below_outside.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The three letters realized on untwisted levels, shared by every piece map.
#[derive(Debug)]
pub struct Atoms {
    ctx: ScalarCtx,
    levels: Vec<Arc<GradedObject>>,
    id: Vec<Matrix>,
    eps: Vec<Option<Matrix>>,
    eta: Vec<Option<Matrix>>,
}

impl Atoms {
    pub fn new(ctx: ScalarCtx) -> Atoms {
        let n = ctx.n;
        let levels: Vec<Arc<GradedObject>> = (0..=n)
            .map(|k| {
                let parts = level_sets(n, k).into_iter().map(|s| Summand::new(s, 0, 0)).collect();
                Arc::new(GradedObject::new(n, parts).0)
            })
            .collect();
        let index: Vec<HashMap<Subset, usize>> = levels
            .iter()
            .map(|o| o.summands().iter().enumerate().map(|(k, s)| (s.stratum, k)).collect())
            .collect();
        let id = levels.iter().map(|o| Matrix::identity(ctx, o.clone())).collect();
        let mut eps = vec![None];
        let mut eta = vec![None];
        for k in 1..=n {
            let mut e = MatrixBuilder::new(ctx, levels[k].clone(), levels[k - 1].clone());
            let mut h = MatrixBuilder::new(ctx, levels[k - 1].clone(), levels[k].clone());
            for (&big, &col) in &index[k] {
                for i in big.iter() {
                    let small = big.without(i);
                    let row = index[k - 1][&small];
                    let sign = letter_sign(&big, i);
                    e.add_int(row, col, sign);
                    h.add_int(col, row, sign);
                }
            }
            eps.push(Some(e.build()));
            eta.push(Some(h.build()));
        }
        Atoms { ctx, levels, id, eps, eta }
    }

    pub fn ctx(&self) -> ScalarCtx {
        self.ctx
    }

    pub fn level(&self, k: usize) -> &Arc<GradedObject> {
        &self.levels[k]
    }

    /// The letter from level `src` to level `tgt`.
    pub fn get(&self, letter: Letter, src: usize, tgt: usize) -> &Matrix {
        match letter {
            Letter::Id if src == tgt => &self.id[src],
            Letter::Eps if src == tgt + 1 => self.eps[src].as_ref().expect("level in range"),
            Letter::Eta if tgt == src + 1 => self.eta[tgt].as_ref().expect("level in range"),
            _ => panic!("letter {letter:?} cannot go from level {src} to level {tgt}"),
        }
    }
}

/// One block entry `scalar · letter` from source piece `col` to target piece `row`.
#[derive(Debug, Clone)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub letter: Letter,
    pub scalar: Scalar,
}

/// A block matrix over pieces.
#[derive(Debug, Clone)]
pub struct PieceMap {
    pub src: Arc<PieceObject>,
    pub tgt: Arc<PieceObject>,
    pub entries: Vec<Entry>,
}

impl PieceMap {
    pub fn new(src: Arc<PieceObject>, tgt: Arc<PieceObject>) -> PieceMap {
        PieceMap { src, tgt, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, letter: Letter, scalar: Scalar) {
        debug_assert!(row < self.tgt.len() && col < self.src.len());
        self.entries.push(Entry { row, col, letter, scalar });
    }

    pub fn realize(&self, atoms: &Atoms) -> Matrix {
        let mut b = MatrixBuilder::new(atoms.ctx(), self.src.obj().clone(), self.tgt.obj().clone());
        for e in &self.entries {
            let from = self.src.pieces[e.col].level;
            let to = self.tgt.pieces[e.row].level;
            let block = atoms.get(e.letter, from, to);
            b.place(block, &self.tgt.layout.blocks[e.row], &self.src.layout.blocks[e.col], &e.scalar);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::Subset;

    #[test]
    fn signs_count_missing_indices_below() {
        let n = 3;
        let s = |v: &[usize]| Subset::new(n, v.iter().copied()).unwrap();
        assert_eq!(letter_sign(&s(&[1, 2]), 2), 1);
        assert_eq!(letter_sign(&s(&[1, 3]), 3), -1);
        assert_eq!(letter_sign(&s(&[2, 3]), 3), -1);
        assert_eq!(letter_sign(&s(&[3]), 3), 1);
    }

    #[test]
    fn pieces_keep_level_order() {
        let obj = PieceObject::new(2, vec![Piece { level: 0, twist: -1 }, Piece { level: 0, twist: 1 }]);
        assert_eq!(obj.obj().len(), 2);
        assert_eq!(obj.layout.blocks.len(), 2);
    }
}
