//! Subsets of `[n]` on the cyclic diagram `1 - 2 - ⋯ - n - 1`.
//!
//! Clockwise reading goes `n, n-1, …, 2, 1, n, …`, so the clockwise successor
//! of `i` is `i - 1` and its counterclockwise neighbour is `i + 1` (mod n).

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

pub const MAX_N: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("n = {0} is outside 0..={MAX_N}")]
    BadN(usize),
    #[error("element {elem} is outside 1..={n}")]
    OutOfRange { elem: usize, n: usize },
    #[error("{0} is not a proper subset")]
    NotProper(Subset),
    #[error("the block decomposition of {0} does not exist: it needs |I| <= n - 2")]
    NoBlockDecomposition(Subset),
    #[error("{0:?} is not a cyclically consecutive block")]
    NotBlock(Vec<usize>),
}

/// A subset `I ⊆ [n]`, stored as a bitmask (bit `i-1` for element `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: u8,
    bits: u32,
}

impl Subset {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, StrataError> {
        let mut s = Subset::empty(n)?;
        for elem in members {
            if elem == 0 || elem > n {
                return Err(StrataError::OutOfRange { elem, n });
            }
            s.bits |= 1 << (elem - 1);
        }
        Ok(s)
    }

    pub fn empty(n: usize) -> Result<Self, StrataError> {
        if n > MAX_N {
            return Err(StrataError::BadN(n));
        }
        Ok(Subset { n: n as u8, bits: 0 })
    }

    pub fn full(n: usize) -> Result<Self, StrataError> {
        let mut s = Subset::empty(n)?;
        s.bits = mask(n);
        Ok(s)
    }

    pub(crate) fn from_bits(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_N && bits & !mask(n) == 0);
        Subset { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_proper(&self) -> bool {
        self.bits != mask(self.n())
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits & (1 << (i - 1)) != 0
    }

    pub fn with(&self, i: usize) -> Subset {
        assert!(i >= 1 && i <= self.n());
        Subset { n: self.n, bits: self.bits | (1 << (i - 1)) }
    }

    pub fn without(&self, i: usize) -> Subset {
        assert!(i >= 1 && i <= self.n());
        Subset { n: self.n, bits: self.bits & !(1 << (i - 1)) }
    }

    pub fn complement(&self) -> Subset {
        Subset { n: self.n, bits: !self.bits & mask(self.n()) }
    }

    pub fn sym_diff(&self, o: &Subset) -> Subset {
        debug_assert_eq!(self.n, o.n);
        Subset { n: self.n, bits: self.bits ^ o.bits }
    }

    pub fn intersect(&self, o: &Subset) -> Subset {
        debug_assert_eq!(self.n, o.n);
        Subset { n: self.n, bits: self.bits & o.bits }
    }

    pub fn minus(&self, o: &Subset) -> Subset {
        debug_assert_eq!(self.n, o.n);
        Subset { n: self.n, bits: self.bits & !o.bits }
    }

    pub fn is_subset_of(&self, o: &Subset) -> bool {
        self.bits & !o.bits == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.n()).filter(move |i| bits & (1 << (i - 1)) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly below `i`.
    pub fn count_below(&self, i: usize) -> usize {
        (self.bits & ((1u32 << (i - 1)) - 1)).count_ones() as usize
    }

    /// `I ⊔ (J + n)` as a subset of `[n + m]`.
    pub fn concat(&self, o: &Subset) -> Subset {
        let n = self.n() + o.n();
        assert!(n <= MAX_N);
        Subset { n: n as u8, bits: self.bits | (o.bits << self.n) }
    }

    /// All subsets of `[n]` with exactly `k` members, in lexicographic order.
    pub fn of_size(n: usize, k: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> =
            (0..1u32 << n).filter(|b| b.count_ones() as usize == k).map(|b| Subset::from_bits(n, b)).collect();
        out.sort();
        out
    }

    pub fn all(n: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..1u32 << n).map(|b| Subset::from_bits(n, b)).collect();
        out.sort();
        out
    }

    /// Comma-separated members, e.g. `1,3`; empty for `∅`.
    pub fn label(&self) -> String {
        self.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Lexicographic on the sorted member lists (so `{1,2} < {1,3} < {2}`).
impl Ord for Subset {
    fn cmp(&self, o: &Subset) -> Ordering {
        self.n.cmp(&o.n).then_with(|| self.iter().cmp(o.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, o: &Subset) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label())
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

/// Clockwise neighbour of `i` on the cyclic diagram.
pub fn clockwise(n: usize, i: usize) -> usize {
    if i == 1 {
        n
    } else {
        i - 1
    }
}

/// Counterclockwise neighbour of `i` on the cyclic diagram.
pub fn counterclockwise(n: usize, i: usize) -> usize {
    if i == n {
        1
    } else {
        i + 1
    }
}

/// All acceptable orders on a proper subset, by starting element ascending.
pub fn acceptable_orders(set: &Subset) -> Result<Vec<Vec<usize>>, StrataError> {
    if !set.is_proper() {
        return Err(StrataError::NotProper(*set));
    }
    if set.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let n = set.n();
    let mut out = Vec::new();
    for start in set.iter() {
        if set.contains(counterclockwise(n, start)) {
            continue;
        }
        let mut order = Vec::with_capacity(set.len());
        let mut i = start;
        while order.len() < set.len() {
            if set.contains(i) {
                order.push(i);
            }
            i = clockwise(n, i);
        }
        out.push(order);
    }
    Ok(out)
}

/// The two-condition characterization: the counterclockwise neighbour of the
/// first entry is absent, and exactly one of `i₁ > i₂ > ⋯ > i_k > i₁` fails.
pub fn is_acceptable(set: &Subset, order: &[usize]) -> bool {
    let n = set.n();
    if !set.is_proper() || order.len() != set.len() {
        return false;
    }
    let mut seen = Subset { n: set.n, bits: 0 };
    for &i in order {
        if !set.contains(i) || seen.contains(i) {
            return false;
        }
        seen = seen.with(i);
    }
    let Some(&first) = order.first() else {
        return true;
    };
    if set.contains(counterclockwise(n, first)) {
        return false;
    }
    let k = order.len();
    let failures = (0..k).filter(|&t| order[t] <= order[(t + 1) % k]).count();
    failures == 1
}

/// A cyclically consecutive run read clockwise: `core` then `tail`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    n: usize,
    elems: Vec<usize>,
}

impl Block {
    pub fn new(n: usize, elems: Vec<usize>) -> Result<Self, StrataError> {
        let ok = !elems.is_empty()
            && elems.len() < n
            && elems.iter().all(|&e| e >= 1 && e <= n)
            && elems.windows(2).all(|w| w[1] == clockwise(n, w[0]));
        if ok {
            Ok(Block { n, elems })
        } else {
            Err(StrataError::NotBlock(elems))
        }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn core(&self) -> &[usize] {
        &self.elems[..self.elems.len() - 1]
    }

    pub fn tail(&self) -> usize {
        *self.elems.last().expect("blocks are nonempty")
    }

    pub fn core_set(&self) -> Subset {
        Subset::new(self.n, self.core().iter().copied()).expect("block members are in range")
    }

    pub fn as_set(&self) -> Subset {
        Subset::new(self.n, self.elems.iter().copied()).expect("block members are in range")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The unique decomposition of `[n]` into blocks whose cores cover `I`.
///
/// One block per tail `j ∉ I`; blocks are listed by tail descending.
pub fn block_decomposition(set: &Subset) -> Result<Vec<Block>, StrataError> {
    let n = set.n();
    if n < 2 || set.len() + 2 > n {
        return Err(StrataError::NoBlockDecomposition(*set));
    }
    let mut blocks = Vec::new();
    for tail in (1..=n).rev().filter(|j| !set.contains(*j)) {
        let mut run = vec![tail];
        let mut i = counterclockwise(n, tail);
        while set.contains(i) {
            run.push(i);
            i = counterclockwise(n, i);
        }
        run.reverse();
        blocks.push(Block { n, elems: run });
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn orders_read_clockwise() {
        assert_eq!(acceptable_orders(&s(4, &[1, 3])).unwrap(), vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(acceptable_orders(&s(3, &[1, 2])).unwrap(), vec![vec![2, 1]]);
        assert_eq!(acceptable_orders(&s(3, &[])).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(acceptable_orders(&s(4, &[4, 1])).unwrap(), vec![vec![1, 4]]);
        assert!(acceptable_orders(&s(2, &[1, 2])).is_err());
    }

    #[test]
    fn two_condition_form_agrees() {
        for n in 1..=6 {
            for set in Subset::all(n).into_iter().filter(|x| x.is_proper()) {
                let orders = acceptable_orders(&set).unwrap();
                assert!(!orders.is_empty());
                for o in &orders {
                    assert!(is_acceptable(&set, o), "{set} {o:?}");
                }
                let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
                for _ in 0..set.len() {
                    let mut next = Vec::new();
                    for p in &perms {
                        for i in set.iter().filter(|i| !p.contains(i)) {
                            let mut q = p.clone();
                            q.push(i);
                            next.push(q);
                        }
                    }
                    perms = next;
                }
                let direct: Vec<_> = perms.into_iter().filter(|p| is_acceptable(&set, p)).collect();
                assert_eq!(direct.len(), orders.len(), "{set}");
            }
        }
    }

    #[test]
    fn blocks_of_small_sets() {
        let b = block_decomposition(&s(4, &[1, 3])).unwrap();
        let shown: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["(1,4)", "(3,2)"]);
        assert_eq!(b[0].tail(), 4);
        assert_eq!(b[0].core(), &[1]);
        let e = block_decomposition(&s(3, &[])).unwrap();
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|x| x.core().is_empty()));
        assert!(matches!(
            block_decomposition(&s(3, &[1, 2])),
            Err(StrataError::NoBlockDecomposition(_))
        ));
    }

    #[test]
    fn lexicographic_order() {
        let mut v = [s(3, &[2]), s(3, &[1, 3]), s(3, &[]), s(3, &[1, 2]), s(3, &[1])];
        v.sort();
        let labels: Vec<String> = v.iter().map(|x| x.label()).collect();
        assert_eq!(labels, ["", "1", "1,2", "1,3", "2"]);
    }

    #[test]
    fn concat_shifts_second_factor() {
        assert_eq!(s(1, &[1]).concat(&s(2, &[2])), s(3, &[1, 3]));
        assert_eq!(Subset::empty(0).unwrap().concat(&s(2, &[1])), s(2, &[1]));
    }

    #[test]
    fn block_validation() {
        assert!(Block::new(4, vec![1, 4]).is_ok());
        assert!(Block::new(4, vec![1, 2]).is_err());
        assert!(Block::new(3, vec![3, 2]).is_ok());
        assert!(Block::new(3, vec![3, 2, 1]).is_err());
    }
}
