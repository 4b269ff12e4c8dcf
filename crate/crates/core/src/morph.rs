//! Normal-form morphisms `E(I) → E(J){d}` between elementary objects.
//!
//! Between `E(I)` and `E(J)` there is one canonical word: a counit letter
//! `e_i` for each `i ∈ I∖J` and a unit letter `h_i` for each `i ∈ J∖I`.
//! Letters with distinct indices commute, and the two per-index relations
//! `e_i h_i = α_i` and `h_i e_i = α_i` push everything else into the scalar.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Bidegree, Scalar, ScalarCtx, ScalarError};
use crate::strata::{acceptable_orders, block_decomposition, Block, StrataError, Subset};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MorphError {
    #[error("cannot compose: inner target {inner} differs from outer source {outer}")]
    NotComposable { inner: Subset, outer: Subset },
    #[error("generator index {index} is not valid from {source_set}")]
    BadGenerator { index: usize, source_set: Subset },
    #[error("block {block} does not fit {set}: {reason}")]
    BlockMismatch { block: String, set: Subset, reason: &'static str },
    #[error("word '{found}' does not match the canonical word '{expected}'")]
    WordMismatch { found: String, expected: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Strata(#[from] StrataError),
}

/// `scalar · word(source → target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalMorphism {
    pub source: Subset,
    pub target: Subset,
    pub scalar: Scalar,
}

impl NormalMorphism {
    pub fn new(source: Subset, target: Subset, scalar: Scalar) -> Self {
        debug_assert_eq!(source.n(), target.n());
        NormalMorphism { source, target, scalar }
    }

    pub fn identity(ctx: ScalarCtx, set: Subset) -> Self {
        NormalMorphism::new(set, set, Scalar::one(ctx))
    }

    /// The counit `E(I) → E(I∖{i}){1}`.
    pub fn epsilon(ctx: ScalarCtx, source: Subset, i: usize) -> Result<Self, MorphError> {
        if !source.contains(i) {
            return Err(MorphError::BadGenerator { index: i, source_set: source });
        }
        Ok(NormalMorphism::new(source, source.without(i), Scalar::one(ctx)))
    }

    /// The unit `E(I){-1} → E(I ∪ {i})`, for `i ∉ I`.
    pub fn eta(ctx: ScalarCtx, source: Subset, i: usize) -> Result<Self, MorphError> {
        if i == 0 || i > source.n() || source.contains(i) {
            return Err(MorphError::BadGenerator { index: i, source_set: source });
        }
        Ok(NormalMorphism::new(source, source.with(i), Scalar::one(ctx)))
    }

    pub fn word_len(&self) -> usize {
        self.source.sym_diff(&self.target).len()
    }

    /// `|I △ J| + 2·(polynomial degree)`, ignoring `r` and `ξ̄` factors.
    pub fn sheaf_degree(&self) -> Option<i64> {
        let mut degs = self.scalar.shapes().map(|s| s.poly_degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(self.word_len() as i64 + 2 * d as i64)
    }

    /// Bidegree in `Hom(E(I), E(J))`; the word alone sits in `(ℓ, ℓ)`.
    pub fn bidegree(&self) -> Result<Bidegree, ScalarError> {
        let l = self.word_len() as i64;
        Ok(Bidegree::new(l, l) + self.scalar.bidegree()?)
    }

    /// `g ∘ f`. Matching letters cancel into `α_i`; an odd word on the left
    /// flips the `ξ̄` part of the right scalar.
    pub fn compose(g: &NormalMorphism, f: &NormalMorphism) -> Result<NormalMorphism, MorphError> {
        if f.target != g.source {
            return Err(MorphError::NotComposable { inner: f.target, outer: g.source });
        }
        let ctx = f.scalar.ctx();
        let mut scalar = if g.word_len() % 2 == 1 { f.scalar.flip_odd() } else { f.scalar.clone() };
        scalar = g.scalar.try_mul(&scalar)?;
        for i in loops(&f.source, &f.target, &g.target).iter() {
            scalar = &scalar * &Scalar::alpha(ctx, i);
        }
        Ok(NormalMorphism::new(f.source, g.target, scalar))
    }

    /// Canonical word, letters sorted by index, e.g. `e1*h2`; `id` if empty.
    pub fn word(&self) -> String {
        word_text(&self.source, &self.target)
    }

    pub fn parse(ctx: ScalarCtx, source: Subset, target: Subset, text: &str) -> Result<Self, MorphError> {
        let (word, scalar) = text.split_once(" @ ").unwrap_or((text, "1"));
        let expected = word_text(&source, &target);
        if word.trim() != expected {
            return Err(MorphError::WordMismatch { found: word.trim().into(), expected });
        }
        Ok(NormalMorphism::new(source, target, Scalar::parse(ctx, scalar)?))
    }
}

/// Indices whose letters cancel when composing `I → J → K`.
pub fn loops(i: &Subset, j: &Subset, k: &Subset) -> Subset {
    i.sym_diff(j).intersect(&j.sym_diff(k))
}

fn word_text(source: &Subset, target: &Subset) -> String {
    let mut letters = Vec::new();
    for i in 1..=source.n() {
        match (source.contains(i), target.contains(i)) {
            (true, false) => letters.push(format!("e{i}")),
            (false, true) => letters.push(format!("h{i}")),
            _ => {}
        }
    }
    if letters.is_empty() {
        "id".into()
    } else {
        letters.join("*")
    }
}

impl fmt::Display for NormalMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.is_compound() {
            write!(f, "{} @ ({})", self.word(), self.scalar)
        } else {
            write!(f, "{} @ {}", self.word(), self.scalar)
        }
    }
}

/// Which relation was invoked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "relation", content = "index")]
pub enum Relation {
    /// `Σ_{i∉I} e_i h_i + Σ_{i∈I} h_i e_i = ξ`.
    UnitSum,
    /// `e_i h_i = α_i` or `h_i e_i = α_i` for a single index.
    PerIndex(usize),
}

/// Append-only record of relation invocations, keyed by the object they act on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsageLedger {
    entries: BTreeSet<(Relation, Subset)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerSummary {
    pub unit_sum_count: usize,
    pub per_index_count: usize,
    pub max_unit_sum_size: Option<usize>,
    pub unit_sum_sizes: Vec<usize>,
}

impl UsageLedger {
    pub fn new() -> Self {
        UsageLedger::default()
    }

    pub fn record(&mut self, rel: Relation, on: Subset) {
        self.entries.insert((rel, on));
    }

    pub fn merge(&mut self, other: UsageLedger) {
        self.entries.extend(other.entries);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Relation, Subset)> {
        self.entries.iter()
    }

    pub fn unit_sum_sets(&self) -> impl Iterator<Item = &Subset> {
        self.entries.iter().filter(|(r, _)| *r == Relation::UnitSum).map(|(_, s)| s)
    }

    pub fn has_per_index(&self) -> bool {
        self.entries.iter().any(|(r, _)| matches!(r, Relation::PerIndex(_)))
    }

    /// Only the unit-sum relation, and only on strata with `|I| ≤ n - 2`.
    pub fn within_restricted(&self, n: usize) -> bool {
        !self.has_per_index() && self.unit_sum_sets().all(|s| s.len() + 2 <= n)
    }

    pub fn summary(&self) -> LedgerSummary {
        let sizes: BTreeSet<usize> = self.unit_sum_sets().map(|s| s.len()).collect();
        LedgerSummary {
            unit_sum_count: self.unit_sum_sets().count(),
            per_index_count: self.entries.iter().filter(|(r, _)| matches!(r, Relation::PerIndex(_))).count(),
            max_unit_sum_size: sizes.iter().max().copied(),
            unit_sum_sizes: sizes.into_iter().collect(),
        }
    }
}

/// Evaluates `Σ_{i∉I} e_i∘h_i + Σ_{i∈I} h_i∘e_i` by composition.
pub fn unit_sum(ctx: ScalarCtx, set: &Subset) -> Result<NormalMorphism, MorphError> {
    let mut acc = Scalar::zero(ctx);
    for i in 1..=set.n() {
        let loop_map = round_trip(ctx, set, i)?;
        acc = &acc + &loop_map.scalar;
    }
    Ok(NormalMorphism::new(*set, *set, acc))
}

/// `e_i∘h_i` or `h_i∘e_i` on `E(I)`, whichever is defined.
fn round_trip(ctx: ScalarCtx, set: &Subset, i: usize) -> Result<NormalMorphism, MorphError> {
    if set.contains(i) {
        let e = NormalMorphism::epsilon(ctx, *set, i)?;
        let h = NormalMorphism::eta(ctx, e.target, i)?;
        NormalMorphism::compose(&h, &e)
    } else {
        let h = NormalMorphism::eta(ctx, *set, i)?;
        let e = NormalMorphism::epsilon(ctx, h.target, i)?;
        NormalMorphism::compose(&e, &h)
    }
}

pub fn unit_sum_check(ctx: ScalarCtx, set: &Subset, ledger: &mut UsageLedger) -> Result<bool, MorphError> {
    let lhs = unit_sum(ctx, set)?;
    ledger.record(Relation::UnitSum, *set);
    Ok(lhs.scalar == Scalar::xi(ctx))
}

/// `e_j∘h_j + Σ_{b∈core} h_b∘e_b = (Σ_{b∈B} α_b)·id` on `E(I)`, with tail `j`.
pub fn block_unit_sum_check(ctx: ScalarCtx, block: &Block, set: &Subset) -> Result<bool, MorphError> {
    let mismatch = |reason| MorphError::BlockMismatch { block: block.to_string(), set: *set, reason };
    if set.intersect(&block.as_set()) != block.core_set() {
        return Err(mismatch("I ∩ B differs from the core"));
    }
    let core = block.core();
    let starts_with_core = acceptable_orders(set)?.iter().any(|o| o.starts_with(core));
    if !starts_with_core {
        return Err(mismatch("no acceptable order starts with the core"));
    }
    let mut lhs = Scalar::zero(ctx);
    for &b in block.elems() {
        lhs = &lhs + &round_trip(ctx, set, b)?.scalar;
    }
    let mut rhs = Scalar::zero(ctx);
    for &b in block.elems() {
        rhs = &rhs + &Scalar::alpha(ctx, b);
    }
    Ok(lhs == rhs)
}

/// Sums the block identities over the decomposition of `I`; the result is the
/// unit-sum left side.
pub fn unit_sum_via_blocks(ctx: ScalarCtx, set: &Subset) -> Result<Scalar, MorphError> {
    let mut acc = Scalar::zero(ctx);
    for block in block_decomposition(set)? {
        if !block_unit_sum_check(ctx, &block, set)? {
            return Ok(Scalar::zero(ctx));
        }
        for &b in block.elems() {
            acc = &acc + &Scalar::alpha(ctx, b);
        }
    }
    Ok(acc)
}

/// Rank of the degree-`d` part of `Hom(E(I), E(J){d})`.
pub fn hom_dimension(n: usize, source: &Subset, target: &Subset, d: i64) -> u128 {
    let l = source.sym_diff(target).len() as i64;
    if d < l || (d - l) % 2 != 0 {
        return 0;
    }
    let k = ((d - l) / 2) as u128;
    let vars = n.max(1) as u128;
    binomial(k + vars - 1, vars - 1)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn per_index_relations() {
        let c = ScalarCtx::integers(2);
        let h = NormalMorphism::eta(c, s(2, &[]), 1).unwrap();
        let e = NormalMorphism::epsilon(c, s(2, &[1]), 1).unwrap();
        let eh = NormalMorphism::compose(&e, &h).unwrap();
        assert_eq!(eh.to_string(), "id @ a1");
        let he = NormalMorphism::compose(&h, &e).unwrap();
        assert_eq!(he.source, s(2, &[1]));
        assert_eq!(he.scalar, Scalar::alpha(c, 1));
    }

    #[test]
    fn distinct_letters_do_not_interact() {
        let c = ScalarCtx::integers(2);
        let h2 = NormalMorphism::eta(c, s(2, &[1]), 2).unwrap();
        let e1 = NormalMorphism::epsilon(c, s(2, &[1, 2]), 1).unwrap();
        let m = NormalMorphism::compose(&e1, &h2).unwrap();
        assert_eq!(m.to_string(), "e1*h2 @ 1");
        assert_eq!(m.sheaf_degree(), Some(2));
        assert!(NormalMorphism::compose(&h2, &e1).is_err());
    }

    #[test]
    fn unit_sum_small_cases() {
        let mut ledger = UsageLedger::new();
        assert!(unit_sum_check(ScalarCtx::integers(2), &s(2, &[1]), &mut ledger).unwrap());
        assert!(unit_sum_check(ScalarCtx::integers(1), &s(1, &[]), &mut ledger).unwrap());
        assert!(unit_sum_check(ScalarCtx::integers(3), &s(3, &[1, 2, 3]), &mut ledger).unwrap());
        assert_eq!(ledger.summary().unit_sum_sizes, vec![0, 1, 3]);
    }

    #[test]
    fn block_identities() {
        let c = ScalarCtx::integers(3);
        let b = Block::new(3, vec![2, 1]).unwrap();
        assert!(block_unit_sum_check(c, &b, &s(3, &[2])).unwrap());
        assert!(block_unit_sum_check(c, &b, &s(3, &[1])).is_err());
        let single = Block::new(3, vec![3]).unwrap();
        assert!(block_unit_sum_check(c, &single, &s(3, &[1])).unwrap());
        let c4 = ScalarCtx::integers(4);
        let b4 = Block::new(4, vec![3, 2]).unwrap();
        assert!(block_unit_sum_check(c4, &b4, &s(4, &[1, 3])).unwrap());
    }

    #[test]
    fn hom_dimensions() {
        let e = s(2, &[]);
        assert_eq!(hom_dimension(2, &e, &e, 0), 1);
        assert_eq!(hom_dimension(2, &s(2, &[1]), &e, 1), 1);
        assert_eq!(hom_dimension(2, &e, &e, 1), 0);
        assert_eq!(hom_dimension(3, &e, &e, 4), 6);
    }

    #[test]
    fn text_round_trip() {
        let c = ScalarCtx::integers(2);
        let m = NormalMorphism::new(s(2, &[1]), s(2, &[2]), Scalar::parse(c, "a1 + x").unwrap());
        let text = m.to_string();
        assert_eq!(text, "e1*h2 @ (a1 + x)");
        assert_eq!(NormalMorphism::parse(c, m.source, m.target, &text).unwrap(), m);
        assert!(NormalMorphism::parse(c, m.source, m.target, "e1 @ 1").is_err());
    }

    #[test]
    fn odd_word_flips_xi_bar() {
        let c = ScalarCtx::integers(1);
        let f = NormalMorphism::new(s(1, &[1]), s(1, &[1]), Scalar::xi_bar(c));
        let g = NormalMorphism::epsilon(c, s(1, &[1]), 1).unwrap();
        let gf = NormalMorphism::compose(&g, &f).unwrap();
        assert_eq!(gf.scalar, -&Scalar::xi_bar(c));
    }
}
