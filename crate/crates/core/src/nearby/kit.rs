//! The two rounds of direct sums on `𝔸ⁿ` and every map between them.
//!
//! Level objects: `Eᵒ(k) = ⊕_{|I|=k} E(I)` for `0 ≤ k ≤ n`. Jordan objects:
//! `Eᴶ(i)` is `n - i` copies of `Eᵒ(i)`, copy `a` twisted by `-(n-i) + 1 + 2a`.
//! Out-of-range levels are zero objects, so every map below exists for every
//! integer index and simply vanishes where its source or target does.
//!
//! The bold layer stacks levels into `E◁ = ⊕ Eᵒ(k)⟨k-n⟩`, `E▷ = ⊕ Eᵒ(k)⟨n-k⟩`
//! and the Jordan objects into `E◇ = ⊕_{i<n} Eᴶ(i)`.

use std::sync::Arc;

use super::pieces::{Atoms, Letter, Piece, PieceMap, PieceObject};
use super::NearbyError;
use crate::complex::{cone, mon, BlockLayout, Complex, Matrix, Regime};
use crate::morph::UsageLedger;
use crate::ring::BaseRing;
use crate::scalar::{Scalar, ScalarCtx};

#[derive(Debug)]
pub struct NearbyKit {
    n: usize,
    ctx: ScalarCtx,
    atoms: Atoms,
    lhd: Arc<PieceObject>,
    rhd: Arc<PieceObject>,
    /// First piece of `Eᴶ(i)` inside `E◇`.
    dia_offsets: Vec<usize>,
}

/// A mon-regime cone together with the indices of its two blocks.
#[derive(Debug, Clone)]
pub struct LaidOut {
    pub complex: Complex,
    pub layout: BlockLayout,
}

fn embed(dst: &mut PieceMap, part: &PieceMap, row_off: usize, col_off: usize) {
    for e in &part.entries {
        dst.push(row_off + e.row, col_off + e.col, e.letter, e.scalar.clone());
    }
}

impl NearbyKit {
    pub fn new(n: usize, ring: BaseRing) -> Result<NearbyKit, NearbyError> {
        if n == 0 || n > super::MAX_N {
            return Err(NearbyError::BadN(n));
        }
        let ctx = ScalarCtx::new(n, ring);
        let atoms = Atoms::new(ctx);
        let ni = n as i64;
        let lhd = (0..=n).map(|k| Piece { level: k, twist: k as i64 - ni }).collect();
        let rhd = (0..=n).map(|k| Piece { level: k, twist: ni - k as i64 }).collect();
        let mut dia_offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for i in 0..=n {
            dia_offsets.push(acc);
            acc += n - i;
        }
        Ok(NearbyKit {
            n,
            ctx,
            atoms,
            lhd: Arc::new(PieceObject::new(n, lhd)),
            rhd: Arc::new(PieceObject::new(n, rhd)),
            dia_offsets,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> ScalarCtx {
        self.ctx
    }

    pub fn realize(&self, m: &PieceMap) -> Matrix {
        m.realize(&self.atoms)
    }

    fn one(&self) -> Scalar {
        Scalar::one(self.ctx)
    }

    fn r_pow(&self, k: usize) -> Scalar {
        Scalar::r_pow(self.ctx, k as u32)
    }

    fn level_ok(&self, k: isize) -> bool {
        k >= 0 && k as usize <= self.n
    }

    /// Number of copies in `Eᴶ(i)`: `n - i` for `0 ≤ i < n`, else zero.
    pub fn copies(&self, i: isize) -> usize {
        if i >= 0 && (i as usize) < self.n {
            self.n - i as usize
        } else {
            0
        }
    }

    /// `Eᵒ(k)⟨twist⟩`.
    pub fn level(&self, k: isize, twist: i64) -> Arc<PieceObject> {
        let pieces = if self.level_ok(k) { vec![Piece { level: k as usize, twist }] } else { Vec::new() };
        Arc::new(PieceObject::new(self.n, pieces))
    }

    /// `Eᴶ(i)⟨twist⟩`.
    pub fn jordan(&self, i: isize, twist: i64) -> Arc<PieceObject> {
        Arc::new(PieceObject::new(self.n, self.jordan_pieces(i, twist)))
    }

    fn jordan_pieces(&self, i: isize, twist: i64) -> Vec<Piece> {
        let m = self.copies(i) as i64;
        (0..m).map(|a| Piece { level: i as usize, twist: twist - m + 1 + 2 * a }).collect()
    }

    pub fn lhd(&self) -> &Arc<PieceObject> {
        &self.lhd
    }

    pub fn rhd(&self) -> &Arc<PieceObject> {
        &self.rhd
    }

    /// `E◇⟨twist⟩`.
    pub fn diamond(&self, twist: i64) -> Arc<PieceObject> {
        let pieces = (0..self.n as isize).flat_map(|i| self.jordan_pieces(i, twist)).collect();
        Arc::new(PieceObject::new(self.n, pieces))
    }

    fn off(&self, i: usize) -> usize {
        self.dia_offsets[i]
    }

    fn m(&self, i: isize) -> i64 {
        self.n as i64 - i as i64
    }

    // First round.

    /// `ε: Eᵒ(k) → Eᵒ(k-1){1}`.
    pub fn eps(&self, k: isize) -> PieceMap {
        let mut f = PieceMap::new(self.level(k, 0), self.level(k - 1, -1));
        if self.level_ok(k) && self.level_ok(k - 1) {
            f.push(0, 0, Letter::Eps, self.one());
        }
        f
    }

    /// `η: Eᵒ(k-1){-1} → Eᵒ(k)`.
    pub fn eta(&self, k: isize) -> PieceMap {
        let mut f = PieceMap::new(self.level(k - 1, 1), self.level(k, 0));
        if self.level_ok(k) && self.level_ok(k - 1) {
            f.push(0, 0, Letter::Eta, self.one());
        }
        f
    }

    /// The nilpotent `N: Eᴶ(i) → Eᴶ(i)⟨2⟩`, copy `a+1` onto copy `a`.
    pub fn nilpotent(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i, 0), self.jordan(i, 2));
        for a in 1..self.copies(i) {
            f.push(a - 1, a, Letter::Id, self.one());
        }
        f
    }

    /// `ε` copy by copy, `Eᴶ(i) → Eᴶ(i-1)[1]`.
    pub fn jordan_eps(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i, 0), self.jordan(i - 1, 0));
        if self.copies(i - 1) > 0 {
            for a in 0..self.copies(i) {
                f.push(a, a, Letter::Eps, self.one());
            }
        }
        f
    }

    /// `η` from copy `a+1` to copy `a`, `Eᴶ(i-1)[-1] → Eᴶ(i)`.
    pub fn jordan_eta(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i - 1, 0), self.jordan(i, 0));
        if self.copies(i - 1) > 0 {
            for a in 0..self.copies(i) {
                f.push(a, a + 1, Letter::Eta, self.one());
            }
        }
        f
    }

    /// `[id; r; …; r^{m-1}]: Eᵒ(i)⟨-m⟩ → Eᴶ(i)⟨-1⟩`.
    pub fn iota_left(&self, i: isize) -> PieceMap {
        let m = self.m(i);
        let mut f = PieceMap::new(self.level(i, -m), self.jordan(i, -1));
        for a in 0..self.copies(i) {
            f.push(a, 0, Letter::Id, self.r_pow(a));
        }
        f
    }

    /// `[0; …; 0; id]: Eᵒ(i)⟨m⟩ → Eᴶ(i)⟨1⟩`.
    pub fn iota_right(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.level(i, self.m(i)), self.jordan(i, 1));
        let c = self.copies(i);
        if c > 0 {
            f.push(c - 1, 0, Letter::Id, self.one());
        }
        f
    }

    /// `[0; …; 0; ε]: Eᵒ(i)⟨m⟩ → Eᴶ(i-1)⟨-1⟩[1]`.
    pub fn eps_right(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.level(i, self.m(i)), self.jordan(i - 1, -1));
        let c = self.copies(i - 1);
        if c > 0 && self.level_ok(i) {
            f.push(c - 1, 0, Letter::Eps, self.one());
        }
        f
    }

    /// `r^m: Eᵒ(i)⟨-m⟩ → Eᵒ(i)⟨m⟩`.
    pub fn rho(&self, i: isize) -> PieceMap {
        let m = self.m(i);
        let mut f = PieceMap::new(self.level(i, -m), self.level(i, m));
        if self.level_ok(i) {
            f.push(0, 0, Letter::Id, self.r_pow(m as usize));
        }
        f
    }

    /// `[id 0 … 0]: Eᴶ(i)⟨-1⟩ → Eᵒ(i)⟨-m⟩`.
    pub fn p_left(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i, -1), self.level(i, -self.m(i)));
        if self.copies(i) > 0 {
            f.push(0, 0, Letter::Id, self.one());
        }
        f
    }

    /// `[r^{m-1} … r id]: Eᴶ(i)⟨1⟩ → Eᵒ(i)⟨m⟩`.
    pub fn p_right(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i, 1), self.level(i, self.m(i)));
        let c = self.copies(i);
        for a in 0..c {
            f.push(0, a, Letter::Id, self.r_pow(c - 1 - a));
        }
        f
    }

    /// `[η 0 … 0]: Eᴶ(i-1)⟨1⟩[-1] → Eᵒ(i)⟨-m⟩`.
    pub fn eta_left(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i - 1, 1), self.level(i, -self.m(i)));
        if self.copies(i - 1) > 0 && self.level_ok(i) {
            f.push(0, 0, Letter::Eta, self.one());
        }
        f
    }

    /// Strictly lower triangular `r^{a-b-1}` from copy `b` to copy `a`,
    /// `Eᴶ(i)⟨1⟩ → Eᴶ(i)⟨-1⟩`.
    pub fn jordan_homotopy(&self, i: isize) -> PieceMap {
        let mut f = PieceMap::new(self.jordan(i, 1), self.jordan(i, -1));
        let c = self.copies(i);
        for a in 0..c {
            for b in 0..a {
                f.push(a, b, Letter::Id, self.r_pow(a - b - 1));
            }
        }
        f
    }

    // Bold layer.

    fn levels_of(&self, obj: &Arc<PieceObject>) -> isize {
        obj.len() as isize
    }

    /// Superdiagonal `ε` on `E◁` or `E▷`.
    pub fn bold_eps(&self, obj: &Arc<PieceObject>) -> PieceMap {
        let mut f = PieceMap::new(obj.clone(), obj.clone());
        for k in 1..self.levels_of(obj) {
            embed(&mut f, &self.eps(k), k as usize - 1, k as usize);
        }
        f
    }

    /// Subdiagonal `η` on `E◁` or `E▷`.
    pub fn bold_eta(&self, obj: &Arc<PieceObject>) -> PieceMap {
        let mut f = PieceMap::new(obj.clone(), obj.clone());
        for k in 1..self.levels_of(obj) {
            embed(&mut f, &self.eta(k), k as usize, k as usize - 1);
        }
        f
    }

    /// Block-diagonal `N: E◇ → E◇⟨2⟩`.
    pub fn bold_nilpotent(&self) -> PieceMap {
        let mut f = PieceMap::new(self.diamond(0), self.diamond(2));
        for i in 0..self.n {
            embed(&mut f, &self.nilpotent(i as isize), self.off(i), self.off(i));
        }
        f
    }

    pub fn bold_jordan_eps(&self) -> PieceMap {
        let d = self.diamond(0);
        let mut f = PieceMap::new(d.clone(), d);
        for i in 1..self.n {
            embed(&mut f, &self.jordan_eps(i as isize), self.off(i - 1), self.off(i));
        }
        f
    }

    pub fn bold_jordan_eta(&self) -> PieceMap {
        let d = self.diamond(0);
        let mut f = PieceMap::new(d.clone(), d);
        for i in 1..self.n {
            embed(&mut f, &self.jordan_eta(i as isize), self.off(i), self.off(i - 1));
        }
        f
    }

    /// `E◁ → E◇⟨-1⟩`, `ι◁` on the diagonal, zero on the last level.
    pub fn bold_iota_left(&self) -> PieceMap {
        let mut f = PieceMap::new(self.lhd.clone(), self.diamond(-1));
        for i in 0..self.n {
            embed(&mut f, &self.iota_left(i as isize), self.off(i), i);
        }
        f
    }

    /// `E▷ → E◇⟨1⟩`.
    pub fn bold_iota_right(&self) -> PieceMap {
        let mut f = PieceMap::new(self.rhd.clone(), self.diamond(1));
        for i in 0..self.n {
            embed(&mut f, &self.iota_right(i as isize), self.off(i), i);
        }
        f
    }

    /// `E▷ → E◇⟨-1⟩[1]`, `ε▷` one step above the diagonal.
    pub fn bold_eps_right(&self) -> PieceMap {
        let mut f = PieceMap::new(self.rhd.clone(), self.diamond(-1));
        for i in 1..=self.n {
            embed(&mut f, &self.eps_right(i as isize), self.off(i - 1), i);
        }
        f
    }

    /// `diag(rⁿ, …, r, id): E◁ → E▷`.
    pub fn bold_rho(&self) -> PieceMap {
        let mut f = PieceMap::new(self.lhd.clone(), self.rhd.clone());
        for k in 0..=self.n {
            embed(&mut f, &self.rho(k as isize), k, k);
        }
        f
    }

    /// `E◇⟨-1⟩ → E◁`.
    pub fn bold_p_left(&self) -> PieceMap {
        let mut f = PieceMap::new(self.diamond(-1), self.lhd.clone());
        for i in 0..self.n {
            embed(&mut f, &self.p_left(i as isize), i, self.off(i));
        }
        f
    }

    /// `E◇⟨1⟩ → E▷`.
    pub fn bold_p_right(&self) -> PieceMap {
        let mut f = PieceMap::new(self.diamond(1), self.rhd.clone());
        for i in 0..self.n {
            embed(&mut f, &self.p_right(i as isize), i, self.off(i));
        }
        f
    }

    /// `E◇⟨1⟩[-1] → E◁`, `η◁` one step below the diagonal.
    pub fn bold_eta_left(&self) -> PieceMap {
        let mut f = PieceMap::new(self.diamond(1), self.lhd.clone());
        for i in 1..=self.n {
            embed(&mut f, &self.eta_left(i as isize), i, self.off(i - 1));
        }
        f
    }

    /// Projection onto the top level `Eᵒ(n)`, between any two of `E◁`, `E▷`.
    pub fn top_projection(&self, src: &Arc<PieceObject>, tgt: &Arc<PieceObject>) -> PieceMap {
        let mut f = PieceMap::new(src.clone(), tgt.clone());
        f.push(self.n, self.n, Letter::Id, self.one());
        f
    }

    /// Block-diagonal Jordan homotopy `E◇⟨1⟩ → E◇⟨-1⟩`.
    pub fn bold_homotopy(&self) -> PieceMap {
        let mut f = PieceMap::new(self.diamond(1), self.diamond(-1));
        for i in 0..self.n {
            embed(&mut f, &self.jordan_homotopy(i as isize), self.off(i), self.off(i));
        }
        f
    }

    // Complexes.

    fn sum(&self, src: &Arc<PieceObject>, parts: &[(&PieceMap, Scalar)]) -> Matrix {
        let mut f = PieceMap::new(src.clone(), src.clone());
        for (m, s) in parts {
            for e in &m.entries {
                f.push(e.row, e.col, e.letter, &e.scalar * s);
            }
        }
        self.realize(&f)
    }

    /// `(E◁, bε)`: the extension by zero.
    pub fn j_shriek(&self) -> Result<Complex, NearbyError> {
        let d = self.realize(&self.bold_eps(&self.lhd));
        Ok(Complex::new(d, Regime::Gm)?)
    }

    /// `(E▷, bη)`: the full pushforward.
    pub fn j_star(&self) -> Result<Complex, NearbyError> {
        let d = self.realize(&self.bold_eta(&self.rhd));
        Ok(Complex::new(d, Regime::Gm)?)
    }

    /// `(E◁, bε + r·bη)`.
    pub fn j_shriek_mon(&self) -> Result<Complex, NearbyError> {
        let r = Scalar::r(self.ctx);
        let d = self.sum(&self.lhd, &[(&self.bold_eps(&self.lhd), self.one()), (&self.bold_eta(&self.lhd), r)]);
        Ok(Complex::new(d, Regime::Mon)?)
    }

    /// `(E▷, bη + r·bε)`.
    pub fn j_star_mon(&self) -> Result<Complex, NearbyError> {
        let r = Scalar::r(self.ctx);
        let d = self.sum(&self.rhd, &[(&self.bold_eta(&self.rhd), self.one()), (&self.bold_eps(&self.rhd), r)]);
        Ok(Complex::new(d, Regime::Mon)?)
    }

    /// `cone(bρ: (E◁, bε + r·bη) → (E▷, bη + r·bε)) = E▷ ⊕ E◁[1]`.
    pub fn restricted_cone(&self, ledger: &mut UsageLedger) -> Result<LaidOut, NearbyError> {
        let x = self.j_shriek_mon()?;
        let y = self.j_star_mon()?;
        let rho = self.realize(&self.bold_rho());
        let (complex, layout) = cone(&rho, &x, &y, ledger)?;
        Ok(LaidOut { complex, layout })
    }

    /// `(E◇, bε̲ + bη̲ - ξ̄·bN)`.
    pub fn z(&self) -> Result<Complex, NearbyError> {
        let d = self.diamond(0);
        let xb = -&Scalar::xi_bar(self.ctx);
        let nil = self.bold_nilpotent();
        let d = self.sum(
            &d,
            &[(&self.bold_jordan_eps(), self.one()), (&self.bold_jordan_eta(), self.one()), (&nil, xb)],
        );
        Ok(Complex::new(d, Regime::Mix)?)
    }

    /// `Mon(𝒁) = E◇ ⊕ E◇⟨-2⟩[1]`.
    pub fn mon_z(&self) -> Result<LaidOut, NearbyError> {
        let (complex, layout) = mon(&self.z()?)?;
        Ok(LaidOut { complex, layout })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DIFFERENTIAL;
    use crate::scalar::Bidegree;

    fn kit(n: usize) -> NearbyKit {
        NearbyKit::new(n, BaseRing::Integers).unwrap()
    }

    #[test]
    fn object_sizes() {
        for n in 1..=5 {
            let k = kit(n);
            assert_eq!(k.lhd().obj().len(), 1 << n);
            assert_eq!(k.rhd().obj().len(), 1 << n);
            let want: usize = (0..n).map(|i| (n - i) * crate::morph::binomial(n as u128, i as u128) as usize).sum();
            assert_eq!(k.diamond(0).obj().len(), want);
            for i in 0..n {
                assert_eq!(k.jordan(i as isize, 0).len(), n - i);
            }
            assert!(k.jordan(n as isize, 0).is_empty());
        }
    }

    #[test]
    fn first_round_bidegrees() {
        let k = kit(3);
        let zero = Bidegree::new(0, 0);
        for i in 0..=3isize {
            assert!(k.realize(&k.iota_left(i)).check_bidegree(zero).is_ok());
            assert!(k.realize(&k.iota_right(i)).check_bidegree(zero).is_ok());
            assert!(k.realize(&k.p_left(i)).check_bidegree(zero).is_ok());
            assert!(k.realize(&k.p_right(i)).check_bidegree(zero).is_ok());
            assert!(k.realize(&k.rho(i)).check_bidegree(zero).is_ok());
            assert!(k.realize(&k.eps(i)).check_bidegree(DIFFERENTIAL).is_ok());
            assert!(k.realize(&k.eps_right(i)).check_bidegree(DIFFERENTIAL).is_ok());
        }
    }

    #[test]
    fn nilpotent_order() {
        let k = kit(4);
        let n0 = k.realize(&k.nilpotent(0));
        let mut p = n0.clone();
        for _ in 1..4 {
            assert!(!p.is_zero());
            p = crate::complex::mul(&n0, &p).unwrap();
        }
        assert!(p.is_zero());
    }

    #[test]
    fn complexes_validate() {
        for n in 1..=4 {
            let k = kit(n);
            let mut led = UsageLedger::new();
            k.j_shriek().unwrap().validate(&mut led).unwrap();
            k.j_star().unwrap().validate(&mut led).unwrap();
            k.j_shriek_mon().unwrap().validate(&mut led).unwrap();
            k.j_star_mon().unwrap().validate(&mut led).unwrap();
            k.restricted_cone(&mut led).unwrap().complex.validate(&mut led).unwrap();
            k.z().unwrap().validate(&mut led).unwrap();
            k.mon_z().unwrap().complex.validate(&mut led).unwrap();
        }
    }

    #[test]
    fn z_for_one_coordinate_is_a_point() {
        let z = kit(1).z().unwrap();
        assert_eq!(z.object().len(), 1);
        assert!(z.diff().is_zero());
    }
}
