//! The monodromy filtration of `𝒁` with respect to the nilpotent `bN`.
//!
//! `bN` is a direct sum of identity superdiagonal Jordan blocks on `E◇`, so
//! it acts on summand indices as a partial injection and every kernel, image
//! and layer is a coordinate subobject: a set of summands.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Complex, GradedObject, Matrix, Summand};
use crate::exec;
use crate::linalg::{self, Dense, Field, Subspace};
use crate::morph::UsageLedger;
use crate::nearby::{NearbyError, NearbyKit};
use crate::report::Certificate;
use crate::ring::{BaseRing, Coeff};

pub type SummandSet = BTreeSet<usize>;

#[derive(Debug, thiserror::Error)]
pub enum MonodromyError {
    #[error(transparent)]
    Nearby(#[from] NearbyError),
    #[error("entry ({row}, {col}) of the nilpotent is not a nonzero constant between equal strata")]
    NotCoordinate { row: usize, col: usize },
    #[error("the nilpotent hits summand {0} twice or leaves it twice")]
    NotInjective(usize),
    #[error("the nilpotent is not nilpotent")]
    NotNilpotent,
    #[error("target summand {0} is not a twist of a source summand")]
    Unmatched(String),
    #[error("the differential maps {from} in M_{k} to {to} outside it")]
    NotPreserved { k: i64, from: String, to: String },
}

/// A nilpotent endomorphism `X → X⟨twist⟩` that sends each summand to at
/// most one summand by a nonzero constant.
#[derive(Debug, Clone)]
pub struct Nilpotent {
    object: Arc<GradedObject>,
    next: Vec<Option<(usize, Coeff)>>,
    order: usize,
}

impl Nilpotent {
    pub fn from_matrix(m: &Matrix, twist: i64) -> Result<Nilpotent, MonodromyError> {
        let object = m.src().clone();
        let index: HashMap<Summand, usize> = object.summands().iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let len = object.len();
        let mut next = vec![None; len];
        let mut hit = vec![false; len];
        for (r, c, s) in m.entries() {
            let target = m.tgt().get(r).twisted(-twist);
            let row = *index.get(&target).ok_or_else(|| MonodromyError::Unmatched(target.to_string()))?;
            let coeff = s.as_constant().filter(|c| *c != Coeff::from_integer(0));
            let coeff = match coeff {
                Some(k) if object.get(c).stratum == target.stratum => k,
                _ => return Err(MonodromyError::NotCoordinate { row: r, col: c }),
            };
            if next[c].is_some() {
                return Err(MonodromyError::NotInjective(c));
            }
            if std::mem::replace(&mut hit[row], true) {
                return Err(MonodromyError::NotInjective(row));
            }
            next[c] = Some((row, coeff));
        }
        let mut nil = Nilpotent { object, next, order: 0 };
        nil.order = (0..=len).find(|&k| nil.kernel(k).len() == len).ok_or(MonodromyError::NotNilpotent)?;
        Ok(nil)
    }

    pub fn object(&self) -> &Arc<GradedObject> {
        &self.object
    }

    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    /// The least `m` with `N^m = 0`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The summand `N^i` sends `c` to, if any.
    pub fn apply(&self, c: usize, i: usize) -> Option<usize> {
        (0..i).try_fold(c, |c, _| self.next[c].map(|(r, _)| r))
    }

    pub fn everything(&self) -> SummandSet {
        (0..self.len()).collect()
    }

    pub fn kernel(&self, i: usize) -> SummandSet {
        (0..self.len()).filter(|&c| self.apply(c, i).is_none()).collect()
    }

    pub fn image(&self, i: usize) -> SummandSet {
        (0..self.len()).filter_map(|c| self.apply(c, i)).collect()
    }

    /// `{c : N^i c ∈ set}`, where `N^i c = 0` counts as lying in every set.
    pub fn preimage(&self, i: usize, set: &SummandSet) -> SummandSet {
        (0..self.len()).filter(|&c| self.apply(c, i).is_none_or(|r| set.contains(&r))).collect()
    }

    pub fn push(&self, i: usize, set: &SummandSet) -> SummandSet {
        set.iter().filter_map(|&c| self.apply(c, i)).collect()
    }

    /// The matrix of `N` over `field`, in summand coordinates.
    pub fn dense(&self, field: Field) -> Dense {
        let mut d = Dense::zero(self.len(), self.len());
        for (c, e) in self.next.iter().enumerate() {
            if let Some((r, k)) = e {
                d.data[*r][c] = field.ring().normalize(*k).expect("unit constant");
            }
        }
        d
    }
}

/// `M_k` for `lo ≤ k ≤ hi`; empty below and everything above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    lo: i64,
    layers: Vec<SummandSet>,
    total: usize,
}

/// One layer with readable summand labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationLayer {
    pub k: i64,
    pub summands: Vec<String>,
}

impl Filtration {
    /// Builds from `f(k)` on `lo..=hi`.
    pub fn tabulate(lo: i64, hi: i64, total: usize, f: impl Fn(i64) -> SummandSet + Sync + Send) -> Filtration {
        let width = (hi - lo + 1).max(0) as usize;
        let layers = exec::map_indices(width, |j| f(lo + j as i64));
        Filtration { lo, layers, total }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.layers.len() as i64 - 1
    }

    pub fn get(&self, k: i64) -> SummandSet {
        if k < self.lo {
            SummandSet::new()
        } else if k > self.hi() {
            (0..self.total).collect()
        } else {
            self.layers[(k - self.lo) as usize].clone()
        }
    }

    /// `M_k ∖ M_{k-1}`, the summands of `gr_k`.
    pub fn graded(&self, k: i64) -> SummandSet {
        let below = self.get(k - 1);
        self.get(k).difference(&below).copied().collect()
    }

    pub fn is_increasing(&self) -> bool {
        (self.lo..=self.hi() + 1).all(|k| self.get(k - 1).is_subset(&self.get(k)))
    }

    /// Replaces one layer; used to build deliberately broken filtrations.
    pub fn with_layer(&self, k: i64, set: SummandSet) -> Filtration {
        let mut out = self.clone();
        if k >= self.lo && k <= self.hi() {
            out.layers[(k - self.lo) as usize] = set;
        }
        out
    }

    pub fn labelled(&self, obj: &GradedObject) -> Vec<FiltrationLayer> {
        (self.lo..=self.hi())
            .map(|k| FiltrationLayer { k, summands: self.get(k).iter().map(|&c| obj.get(c).to_string()).collect() })
            .collect()
    }
}

/// `M_k = Σ_{p-q=k} ker N^{p+1} ∩ im N^q`, on `-m ≤ k ≤ m-1`.
pub fn filtration_from_formula(nil: &Nilpotent) -> Filtration {
    let m = nil.order() as i64;
    Filtration::tabulate(-m, m - 1, nil.len(), |k| {
        let mut out = SummandSet::new();
        for p in k.max(0)..=m {
            let q = p - k;
            let ker = nil.kernel(p as usize + 1);
            let im = nil.image(q as usize);
            out.extend(ker.intersection(&im));
        }
        out
    })
}

/// The filtration rebuilt from its characterization: `M_k = 0` for
/// `k ≤ -m`, `M_i = (N^{i+1})^{-1} M_{-i-2}` and `M_{-i} = N^i M_i` for
/// `i ≥ 0`.
pub fn filtration_by_recursion(nil: &Nilpotent) -> Filtration {
    fn layer(nil: &Nilpotent, k: i64, memo: &mut BTreeMap<i64, SummandSet>) -> SummandSet {
        let m = nil.order() as i64;
        if k <= -m {
            return SummandSet::new();
        }
        if let Some(s) = memo.get(&k) {
            return s.clone();
        }
        let out = if k >= 0 {
            let below = layer(nil, -k - 2, memo);
            nil.preimage(k as usize + 1, &below)
        } else {
            let above = layer(nil, -k, memo);
            nil.push((-k) as usize, &above)
        };
        memo.insert(k, out.clone());
        out
    }
    let m = nil.order() as i64;
    let mut memo = BTreeMap::new();
    let layers: Vec<SummandSet> = (-m..m).map(|k| layer(nil, k, &mut memo)).collect();
    Filtration { lo: -m, layers, total: nil.len() }
}

/// The formula evaluated with generic exact linear algebra, compared layer
/// by layer with the coordinate spans of `filt`. Returns the first `k` that
/// disagrees.
pub fn linear_algebra_disagreement(nil: &Nilpotent, filt: &Filtration, ring: BaseRing) -> Option<i64> {
    let f = Field::of(ring);
    let d = nil.len();
    let n_mat = nil.dense(f);
    let m = nil.order() as i64;
    if !n_mat.pow(m as usize, f).is_zero() {
        return Some(m);
    }
    let powers: Vec<Dense> = (0..=m as usize + 1).map(|k| n_mat.pow(k, f)).collect();
    let kernels: Vec<Subspace> = powers.iter().map(|p| linalg::kernel(p, f)).collect();
    let images: Vec<Subspace> = powers.iter().map(|p| linalg::image(p, f)).collect();
    (filt.lo()..=filt.hi()).find(|&k| {
        let mut acc = Subspace::zero(d);
        for p in k.max(0)..=m {
            let q = (p - k) as usize;
            if q > m as usize {
                continue;
            }
            acc = acc.sum(&kernels[p as usize + 1].intersect(&images[q], f), f);
        }
        acc != Subspace::coordinate(d, filt.get(k), f)
    })
}

/// Checks that every differential entry leaving `M_k` lands in `M_k`.
pub fn check_preserved(z: &Complex, filt: &Filtration) -> Result<(), MonodromyError> {
    let obj = z.object();
    for k in filt.lo()..=filt.hi() {
        let layer = filt.get(k);
        for (r, c, _) in z.diff().entries() {
            if layer.contains(&c) && !layer.contains(&r) {
                return Err(MonodromyError::NotPreserved {
                    k,
                    from: obj.get(c).to_string(),
                    to: obj.get(r).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `N(M_i) ⊂ M_{i-2}`, and `N^i` restricts to a bijection from the summands
/// of `gr_i` onto those of `gr_{-i}` that keeps strata and lowers the twist
/// by `2i`.
pub fn verify_filtration_axioms(nil: &Nilpotent, filt: &Filtration) -> Certificate {
    let obj = nil.object();
    let mut cert = Certificate::new("monodromy-axioms", obj.n());
    let (lo, hi) = (filt.lo() - 1, filt.hi() + 1);
    cert.assert("increasing", filt.is_increasing(), || "some layer is not contained in the next".into());
    for i in lo..=hi {
        let src = filt.get(i);
        let tgt = filt.get(i - 2);
        let stray = src.iter().find_map(|&c| nil.apply(c, 1).filter(|r| !tgt.contains(r)).map(|r| (c, r)));
        cert.assert(format!("lowers/{i}"), stray.is_none(), || {
            let (c, r) = stray.expect("failure has a witness");
            format!("{} maps to {} outside M_{}", obj.get(c), obj.get(r), i - 2)
        });
    }
    for i in 0..=hi.max(0) {
        let top = filt.graded(i);
        let bottom = filt.graded(-i);
        let mut hit = SummandSet::new();
        let mut problem = None;
        for &c in &top {
            match nil.apply(c, i as usize) {
                Some(r) if bottom.contains(&r) => {
                    let (a, b) = (obj.get(c), obj.get(r));
                    if a.stratum != b.stratum || a.twist - b.twist != 2 * i {
                        problem.get_or_insert_with(|| format!("{a} maps to {b}"));
                    }
                    hit.insert(r);
                }
                Some(r) => {
                    problem.get_or_insert_with(|| format!("{} maps to {} outside gr_{}", obj.get(c), obj.get(r), -i));
                }
                None => {
                    problem.get_or_insert_with(|| format!("{} is killed", obj.get(c)));
                }
            }
        }
        if problem.is_none() && hit != bottom {
            let missed = bottom.difference(&hit).next().expect("unequal sets");
            problem = Some(format!("{} is not reached", obj.get(*missed)));
        }
        cert.assert(format!("iso/{i}"), problem.is_none(), || problem.clone().unwrap_or_default());
    }
    cert
}

/// Everything computed about the filtration of `𝒁` for one `n`.
#[derive(Debug, Clone)]
pub struct MonodromyFiltration {
    pub z: Complex,
    pub nilpotent: Nilpotent,
    pub filtration: Filtration,
}

impl MonodromyFiltration {
    pub fn order(&self) -> usize {
        self.nilpotent.order()
    }

    pub fn object(&self) -> &Arc<GradedObject> {
        self.nilpotent.object()
    }

    pub fn layers(&self) -> Vec<FiltrationLayer> {
        self.filtration.labelled(self.object())
    }

    pub fn kernel_image(&self, i: usize) -> KernelImage {
        let obj = self.object();
        let label = |s: SummandSet| s.into_iter().map(|c| obj.get(c).to_string()).collect();
        KernelImage { i, kernel: label(self.nilpotent.kernel(i)), image: label(self.nilpotent.image(i)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelImage {
    pub i: usize,
    pub kernel: Vec<String>,
    pub image: Vec<String>,
}

/// Validates `𝒁`, extracts `bN` and computes `M_•` by the kernel/image
/// formula, checking that the differential preserves every layer.
pub fn monodromy_filtration(kit: &NearbyKit) -> Result<MonodromyFiltration, MonodromyError> {
    let z = kit.z()?;
    z.validate(&mut UsageLedger::new()).map_err(NearbyError::from)?;
    let nil_map = kit.realize(&kit.bold_nilpotent());
    let nilpotent = Nilpotent::from_matrix(&nil_map, 2)?;
    debug_assert_eq!(nilpotent.object(), z.object());
    let filtration = filtration_from_formula(&nilpotent);
    check_preserved(&z, &filtration)?;
    Ok(MonodromyFiltration { z, nilpotent, filtration })
}

/// One cell of a multiplicity table: how many `E(I)` with `|I| = size`
/// occur in `gr_k`, sitting at twist `twist`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub k: i64,
    pub size: usize,
    pub twist: i64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetCell {
    pub k: i64,
    pub subset: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub n: usize,
    /// Added to `k` to get the displayed twist: `0`, or `-1` for the
    /// nearby-cycles normalization.
    pub twist_offset: i64,
    /// Nonzero cells, ordered by `(k, size)`.
    pub cells: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_subset: Option<Vec<SubsetCell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub k: i64,
    pub size: usize,
    pub got: usize,
    pub want: usize,
}

impl MultiplicityTable {
    pub fn get(&self, k: i64, size: usize) -> usize {
        self.cells.iter().find(|c| c.k == k && c.size == size).map_or(0, |c| c.multiplicity)
    }

    pub fn total(&self) -> usize {
        self.cells.iter().map(|c| c.multiplicity).sum()
    }

    pub fn k_range(&self) -> Option<(i64, i64)> {
        let lo = self.cells.iter().map(|c| c.k).min()?;
        let hi = self.cells.iter().map(|c| c.k).max()?;
        Some((lo, hi))
    }

    /// The same table with twists `k - 1`.
    pub fn psi_normalized(&self) -> MultiplicityTable {
        let shift = -1 - self.twist_offset;
        MultiplicityTable {
            twist_offset: -1,
            cells: self.cells.iter().map(|c| Cell { twist: c.twist + shift, ..*c }).collect(),
            ..self.clone()
        }
    }

    /// Every cell where `self` and `want` differ, over the union of their supports.
    pub fn compare(&self, want: &MultiplicityTable) -> Vec<TableMismatch> {
        let keys: BTreeSet<(i64, usize)> = self.cells.iter().chain(&want.cells).map(|c| (c.k, c.size)).collect();
        keys.into_iter()
            .filter_map(|(k, size)| {
                let (got, want) = (self.get(k, size), want.get(k, size));
                (got != want).then_some(TableMismatch { k, size, got, want })
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..=self.n).map(|s| format!("|I|={s}")).collect();
        let width = header.iter().map(String::len).max().unwrap_or(5).max(5);
        let _ = write!(out, "{:>4} {:>6}", "k", "twist");
        for h in &header {
            let _ = write!(out, " {h:>width$}");
        }
        out.push('\n');
        if let Some((lo, hi)) = self.k_range() {
            for k in lo..=hi {
                let _ = write!(out, "{k:>4} {:>6}", k + self.twist_offset);
                for s in 0..=self.n {
                    let _ = write!(out, " {:>width$}", self.get(k, s));
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "total {}", self.total());
        if let Some(rows) = &self.by_subset {
            for r in rows {
                let _ = writeln!(out, "{:>4} E({}) x{}", r.k, r.subset, r.multiplicity);
            }
        }
        out
    }
}

impl fmt::Display for MultiplicityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn table_from_counts(n: usize, counts: BTreeMap<(i64, usize), usize>) -> MultiplicityTable {
    let cells = counts
        .into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|((k, size), multiplicity)| Cell { k, size, twist: k, multiplicity })
        .collect();
    MultiplicityTable { n, twist_offset: 0, cells, by_subset: None }
}

/// Multiplicities of `gr_k` read off the computed filtration.
pub fn associated_graded(mf: &MonodromyFiltration, refine: bool) -> MultiplicityTable {
    let obj = mf.object();
    let filt = &mf.filtration;
    let mut counts = BTreeMap::new();
    let mut subsets: BTreeMap<(i64, String), usize> = BTreeMap::new();
    for k in filt.lo()..=filt.hi() + 1 {
        for c in filt.graded(k) {
            let s = obj.get(c);
            *counts.entry((k, s.stratum.len())).or_insert(0) += 1;
            if refine {
                *subsets.entry((k, s.stratum.label())).or_insert(0) += 1;
            }
        }
    }
    let mut table = table_from_counts(obj.n(), counts);
    if refine {
        table.by_subset = Some(
            subsets.into_iter().map(|((k, subset), multiplicity)| SubsetCell { k, subset, multiplicity }).collect(),
        );
    }
    table
}

/// `gr_k ≅ ⊕_{r,s ≥ 0, r-s=k} Eᵒ(n-1-r-s)⟨k⟩`.
pub fn closed_form(n: usize) -> MultiplicityTable {
    let mut counts = BTreeMap::new();
    let top = n as i64 - 1;
    for r in 0..=top {
        for s in 0..=top - r {
            let level = (top - r - s) as usize;
            *counts.entry((r - s, level)).or_insert(0) += binomial(n, level);
        }
    }
    table_from_counts(n, counts)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Whether every summand of `gr_k` has twist exactly `k`.
pub fn is_pure(mf: &MonodromyFiltration) -> bool {
    let filt = &mf.filtration;
    (filt.lo()..=filt.hi() + 1).all(|k| filt.graded(k).iter().all(|&c| mf.object().get(c).twist == k))
}

/// The full battery for one `n`: differential compatibility, both axioms,
/// agreement with the recursive characterization and with generic linear
/// algebra, the closed-form table, symmetry and purity.
pub fn verify_monodromy(kit: &NearbyKit, oracles: bool) -> Result<(Certificate, MultiplicityTable), MonodromyError> {
    let n = kit.n();
    let mut cert = Certificate::new("monodromy", n);
    let mf = match monodromy_filtration(kit) {
        Ok(mf) => mf,
        Err(e @ MonodromyError::NotPreserved { .. }) => {
            cert.assert("differential-preserves", false, || e.to_string());
            return Err(e);
        }
        Err(e) => return Err(e),
    };
    cert.assert("differential-preserves", true, String::new);
    let nil = &mf.nilpotent;
    let m = nil.order();
    cert.assert("order", m == n, || format!("nilpotency order {m}, expected {n}"));
    cert.absorb(verify_filtration_axioms(nil, &mf.filtration));

    if oracles {
        let rec = filtration_by_recursion(nil);
        let first = (rec.lo().min(mf.filtration.lo())..=rec.hi().max(mf.filtration.hi()))
            .find(|&k| rec.get(k) != mf.filtration.get(k));
        cert.assert("oracle/recursion", first.is_none(), || format!("layers differ at k = {}", first.unwrap_or(0)));
        let bad = linear_algebra_disagreement(nil, &mf.filtration, kit.ctx().ring);
        cert.assert("oracle/linear-algebra", bad.is_none(), || format!("layers differ at k = {}", bad.unwrap_or(0)));
    }

    let table = associated_graded(&mf, false);
    let diff = table.compare(&closed_form(n));
    cert.assert("table/closed-form", diff.is_empty(), || {
        let d = diff[0];
        format!("gr_{} at |I| = {}: {} vs {}", d.k, d.size, d.got, d.want)
    });
    let total: usize = (0..n).map(|i| (n - i) * binomial(n, i)).sum();
    cert.assert("table/total", table.total() == total, || format!("{} vs {total}", table.total()));
    let symmetric = table.cells.iter().all(|c| table.get(-c.k, c.size) == c.multiplicity);
    cert.assert("table/symmetric", symmetric, || "gr_k and gr_{-k} differ".into());
    let within = table.k_range().is_none_or(|(lo, hi)| lo > -(n as i64) && hi < n as i64);
    cert.assert("table/range", within, || format!("{:?}", table.k_range()));
    cert.assert("pure", is_pure(&mf), || "some gr_k has a summand off twist k".into());
    Ok((cert, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(n: usize) -> MonodromyFiltration {
        monodromy_filtration(&NearbyKit::new(n, BaseRing::Integers).unwrap()).unwrap()
    }

    fn labels(mf: &MonodromyFiltration, k: i64) -> Vec<String> {
        mf.filtration.get(k).iter().map(|&c| mf.object().get(c).to_string()).collect()
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    fn sorted_labels(mf: &MonodromyFiltration, k: i64) -> Vec<String> {
        let mut v = labels(mf, k);
        v.sort();
        v
    }

    #[test]
    fn n2_layers() {
        let f = mf(2);
        assert_eq!(f.order(), 2);
        assert_eq!(sorted_labels(&f, -2), Vec::<String>::new());
        assert_eq!(sorted_labels(&f, -1), sorted(&["E(∅)<-1>"]));
        assert_eq!(sorted_labels(&f, 0), sorted(&["E(∅)<-1>", "E(1)", "E(2)"]));
        assert_eq!(f.filtration.get(1).len(), 4);
    }

    #[test]
    fn n1_is_trivial() {
        let f = mf(1);
        assert_eq!(f.order(), 1);
        assert!(f.filtration.get(-1).is_empty());
        assert_eq!(f.filtration.get(0).len(), 1);
    }

    #[test]
    fn kernel_and_image() {
        let f = mf(2);
        let ki = f.kernel_image(1);
        assert!(ki.kernel.contains(&"E(∅)<-1>".to_string()));
        assert!(!ki.kernel.contains(&"E(∅)<1>".to_string()));
        assert_eq!(f.kernel_image(2).kernel.len(), 4);
        assert_eq!(f.kernel_image(0).image.len(), 4);
    }

    #[test]
    fn n3_degree_zero() {
        let f = mf(3);
        let gr: Vec<String> = {
            let mut v: Vec<String> = f.filtration.graded(0).iter().map(|&c| f.object().get(c).to_string()).collect();
            v.sort();
            v
        };
        assert_eq!(gr, sorted(&["E(∅)", "E(1,2)", "E(1,3)", "E(2,3)"]));
    }

    #[test]
    fn top_degree_is_the_open_stratum() {
        for n in 1..=5 {
            let f = mf(n);
            let k = n as i64 - 1;
            let gr: Vec<String> = f.filtration.graded(k).iter().map(|&c| f.object().get(c).to_string()).collect();
            let want = if k == 0 { "E(∅)".to_string() } else { format!("E(∅)<{k}>") };
            assert_eq!(gr, vec![want]);
        }
    }

    #[test]
    fn battery_passes() {
        for n in 1..=5 {
            let kit = NearbyKit::new(n, BaseRing::Integers).unwrap();
            let (cert, _) = verify_monodromy(&kit, true).unwrap();
            assert!(cert.passed(), "{cert}");
        }
    }

    #[test]
    fn moving_one_summand_breaks_the_isomorphism() {
        let f = mf(2);
        let nil = &f.nilpotent;
        let m0 = f.filtration.get(0);
        let gr0 = f.filtration.graded(0);
        let dropped: SummandSet = m0.iter().copied().filter(|c| Some(c) != gr0.iter().next()).collect();
        let broken = f.filtration.with_layer(0, dropped);
        let cert = verify_filtration_axioms(nil, &broken);
        assert!(cert.first_failure().is_some_and(|c| c.id.starts_with("iso/")), "{cert}");

        let gr1 = f.filtration.graded(1);
        let mut grown = m0.clone();
        grown.extend(gr1);
        let broken = f.filtration.with_layer(0, grown);
        assert!(!verify_filtration_axioms(nil, &broken).passed());
    }

    #[test]
    fn psi_normalization_lowers_twist() {
        let t = associated_graded(&mf(2), true).psi_normalized();
        assert!(t.cells.iter().all(|c| c.twist == c.k - 1));
        assert!(t.by_subset.is_some());
        assert!(t.to_text().contains("|I|=2"));
    }

    #[test]
    fn closed_form_small() {
        let t = closed_form(2);
        assert_eq!(t.get(1, 0), 1);
        assert_eq!(t.get(0, 1), 2);
        assert_eq!(t.get(-1, 0), 1);
        assert_eq!(t.total(), 4);
    }
}
