use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::strata::Subset;

/// `E(I)⟨t⟩[h]`, sitting in chain position `p = -(t + h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Summand {
    #[serde(rename = "I")]
    pub stratum: Subset,
    #[serde(rename = "t")]
    pub twist: i64,
    #[serde(rename = "h")]
    pub shift: i64,
}

impl Summand {
    pub fn new(stratum: Subset, twist: i64, shift: i64) -> Self {
        Summand { stratum, twist, shift }
    }

    pub fn position(&self) -> i64 {
        -(self.twist + self.shift)
    }

    pub fn twisted(&self, k: i64) -> Summand {
        Summand { twist: self.twist + k, ..*self }
    }

    pub fn shifted(&self, m: i64) -> Summand {
        Summand { shift: self.shift + m, ..*self }
    }

    fn canonical_cmp(&self, o: &Summand) -> Ordering {
        self.position()
            .cmp(&o.position())
            .then(self.twist.cmp(&o.twist))
            .then(self.stratum.len().cmp(&o.stratum.len()))
            .then(self.stratum.cmp(&o.stratum))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stratum.is_empty() {
            f.write_str("E(∅)")?;
        } else {
            write!(f, "E({})", self.stratum.label())?;
        }
        if self.twist != 0 {
            write!(f, "<{}>", self.twist)?;
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// A finite direct sum of summands in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedObject {
    n: usize,
    summands: Vec<Summand>,
}

impl GradedObject {
    /// Sorts into canonical order. `map[k]` is the new index of input `k`.
    pub fn new(n: usize, parts: Vec<Summand>) -> (GradedObject, Vec<usize>) {
        debug_assert!(parts.iter().all(|s| s.stratum.n() == n));
        let mut order: Vec<usize> = (0..parts.len()).collect();
        order.sort_by(|&a, &b| parts[a].canonical_cmp(&parts[b]));
        let mut map = vec![0; parts.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let summands = order.iter().map(|&k| parts[k]).collect();
        (GradedObject { n, summands }, map)
    }

    pub fn zero(n: usize) -> GradedObject {
        GradedObject { n, summands: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn get(&self, k: usize) -> &Summand {
        &self.summands[k]
    }

    pub fn twisted(&self, k: i64) -> GradedObject {
        GradedObject { n: self.n, summands: self.summands.iter().map(|s| s.twisted(k)).collect() }
    }

    pub fn shifted(&self, m: i64) -> GradedObject {
        GradedObject { n: self.n, summands: self.summands.iter().map(|s| s.shifted(m)).collect() }
    }

    /// The uniform `(Δt, Δh)` taking `self` to `other`, if the strata agree.
    pub fn offset_to(&self, other: &GradedObject) -> Option<(i64, i64)> {
        if self.n != other.n || self.len() != other.len() {
            return None;
        }
        let Some((a, b)) = self.summands.first().zip(other.summands.first()) else {
            return Some((0, 0));
        };
        let off = (b.twist - a.twist, b.shift - a.shift);
        self.summands
            .iter()
            .zip(&other.summands)
            .all(|(x, y)| x.stratum == y.stratum && (y.twist - x.twist, y.shift - x.shift) == off)
            .then_some(off)
    }

    /// Distinct chain positions in increasing order.
    pub fn positions(&self) -> Vec<i64> {
        let mut p: Vec<i64> = self.summands.iter().map(|s| s.position()).collect();
        p.dedup();
        p
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Collects blocks of summands and remembers where each block lands after
/// canonical sorting.
#[derive(Debug, Default)]
pub struct DirectSum {
    parts: Vec<Summand>,
    starts: Vec<usize>,
}

impl DirectSum {
    pub fn new() -> Self {
        DirectSum::default()
    }

    /// Appends a block; returns its block number.
    pub fn push(&mut self, block: &[Summand]) -> usize {
        self.starts.push(self.parts.len());
        self.parts.extend_from_slice(block);
        self.starts.len() - 1
    }

    /// The object and, per block, the canonical index of each of its summands.
    pub fn finish(self, n: usize) -> (GradedObject, Vec<Vec<usize>>) {
        let (obj, map) = GradedObject::new(n, self.parts);
        let mut blocks = Vec::with_capacity(self.starts.len());
        for (b, &start) in self.starts.iter().enumerate() {
            let end = self.starts.get(b + 1).copied().unwrap_or(map.len());
            blocks.push(map[start..end].to_vec());
        }
        (obj, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn twist_is_shift_and_degree() {
        let e = Summand::new(s(1, &[]), 1, 0);
        assert_eq!(e.position(), -1);
        assert_eq!(e.to_string(), "E(∅)<1>");
    }

    #[test]
    fn canonical_order_and_maps() {
        let parts = vec![
            Summand::new(s(2, &[]), -1, 0),
            Summand::new(s(2, &[]), 1, 0),
            Summand::new(s(2, &[2]), 0, 0),
            Summand::new(s(2, &[1]), 0, 0),
        ];
        let (obj, map) = GradedObject::new(2, parts);
        assert_eq!(obj.to_string(), "E(∅)<1> + E(1) + E(2) + E(∅)<-1>");
        assert_eq!(map, vec![3, 0, 2, 1]);
        assert_eq!(obj.positions(), vec![-1, 0, 1]);
    }

    #[test]
    fn offsets() {
        let (a, _) = GradedObject::new(1, vec![Summand::new(s(1, &[1]), 0, 0), Summand::new(s(1, &[]), -1, 0)]);
        assert_eq!(a.offset_to(&a.twisted(2).shifted(1)), Some((2, 1)));
        assert_eq!(a.offset_to(&GradedObject::zero(1)), None);
    }

    #[test]
    fn direct_sum_blocks() {
        let mut ds = DirectSum::new();
        ds.push(&[Summand::new(s(1, &[]), 0, 0)]);
        ds.push(&[Summand::new(s(1, &[1]), 0, 1), Summand::new(s(1, &[]), 0, -1)]);
        let (obj, blocks) = ds.finish(1);
        assert_eq!(obj.len(), 3);
        assert_eq!(blocks, vec![vec![1], vec![0, 2]]);
    }
}
