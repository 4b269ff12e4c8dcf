use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::expr::{check_equal, MatExpr, Mismatch};
use super::matrix::{Matrix, MatrixBuilder};
use super::object::{GradedObject, Summand};
use super::{assemble, BlockLayout, ComplexError};
use crate::morph::UsageLedger;
use crate::scalar::{Bidegree, Scalar, ScalarCtx};

/// Which square-zero condition the differential satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `δ² = 0`
    Gm,
    /// `δ² + κ(δ) = 0`; entries may contain `ξ̄` but not `r`.
    Mix,
    /// `δ² = rξ·id`; entries may contain `r` but not `ξ̄`.
    Mon,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Gm => "Gm",
            Regime::Mix => "mix",
            Regime::Mon => "mon",
        })
    }
}

pub const DIFFERENTIAL: Bidegree = Bidegree::new(1, 0);

#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    object: Arc<GradedObject>,
    diff: Matrix,
    regime: Regime,
}

impl Complex {
    pub fn new(diff: Matrix, regime: Regime) -> Result<Complex, ComplexError> {
        if diff.src() != diff.tgt() {
            return Err(ComplexError::NotEndomorphism);
        }
        Ok(Complex { object: diff.src().clone(), diff, regime })
    }

    pub fn zero(ctx: ScalarCtx, object: Arc<GradedObject>, regime: Regime) -> Complex {
        let diff = Matrix::zero(ctx, object.clone(), object.clone());
        Complex { object, diff, regime }
    }

    pub fn object(&self) -> &Arc<GradedObject> {
        &self.object
    }

    pub fn diff(&self) -> &Matrix {
        &self.diff
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn ctx(&self) -> ScalarCtx {
        self.diff.ctx()
    }

    pub fn n(&self) -> usize {
        self.object.n()
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.ctx(), self.object.clone())
    }

    /// Entry bidegrees, entry-level regime constraints, then the regime's
    /// square condition.
    pub fn validate(&self, ledger: &mut UsageLedger) -> Result<(), ComplexError> {
        self.diff.check_bidegree(DIFFERENTIAL)?;
        for (r, c, s) in self.diff.entries() {
            let bad = match self.regime {
                Regime::Gm if s.has_r() || s.has_xi_bar() => Some("Gm entries must avoid r and xb"),
                Regime::Mix if s.has_r() => Some("mix entries must avoid r"),
                Regime::Mon if s.has_xi_bar() => Some("mon entries must avoid xb"),
                _ => None,
            };
            if let Some(reason) = bad {
                return Err(ComplexError::RegimeEntry { row: r, col: c, reason });
            }
        }
        let d = &self.diff;
        let lhs = MatExpr::of(&[d, d]);
        let mismatch = match self.regime {
            Regime::Gm => check_equal(&lhs, &MatExpr::new(), ledger)?,
            Regime::Mix => {
                let k = d.kappa()?;
                check_equal(&lhs.plus(&[&k]), &MatExpr::new(), ledger)?
            }
            Regime::Mon => {
                let ctx = self.ctx();
                let id = self.identity();
                let rx = &Scalar::r(ctx) * &Scalar::xi(ctx);
                check_equal(&lhs, &MatExpr::new().scaled(rx, &[&id]), ledger)?
            }
        };
        match mismatch {
            None => Ok(()),
            Some(mismatch) => Err(ComplexError::Condition { regime: self.regime, mismatch }),
        }
    }

    /// `C[m]`: every summand shifted, differential multiplied by `(-1)^m`.
    pub fn shift(&self, m: i64) -> Complex {
        let object = Arc::new(self.object.shifted(m));
        let diff = if m % 2 == 0 { self.diff.clone() } else { self.diff.neg() };
        let diff = diff.reframe(object.clone(), object.clone()).expect("same strata");
        Complex { object, diff, regime: self.regime }
    }

    /// `C⟨k⟩`: every summand twisted, differential scalars unchanged.
    pub fn twist(&self, k: i64) -> Complex {
        let object = Arc::new(self.object.twisted(k));
        let diff = self.diff.reframe(object.clone(), object.clone()).expect("same strata");
        Complex { object, diff, regime: self.regime }
    }

    /// Same differential in another regime (for example a `Gm` complex seen
    /// as `mix`).
    pub fn with_regime(&self, regime: Regime) -> Complex {
        Complex { regime, ..self.clone() }
    }
}

/// `φ ∘ δ_X = δ_Y ∘ φ`.
pub fn is_chain_map(
    phi: &Matrix,
    x: &Complex,
    y: &Complex,
    ledger: &mut UsageLedger,
) -> Result<Option<Mismatch>, ComplexError> {
    let lhs = MatExpr::of(&[phi, x.diff()]);
    let rhs = MatExpr::of(&[y.diff(), phi]);
    check_equal(&lhs, &rhs, ledger)
}

/// `δ_Y H + H δ_X = target` for `H: X → Y` of first degree `-1`.
pub fn homotopy_check(
    x: &Complex,
    y: &Complex,
    h: &Matrix,
    target: &Matrix,
    ledger: &mut UsageLedger,
) -> Result<Option<Mismatch>, ComplexError> {
    let want_tate = target.uniform_bidegree()?.map_or(0, |b| b.tate);
    h.check_bidegree(Bidegree::new(-1, want_tate))?;
    let lhs = MatExpr::of(&[y.diff(), h]).plus(&[h, x.diff()]);
    check_equal(&lhs, &MatExpr::of(&[target]), ledger)
}

/// The cone `Y ⊕ X[1]` with differential `[[δ_Y, φ], [0, -δ_X]]`, plus the
/// canonical indices of the `Y` and `X[1]` blocks.
pub fn cone(
    phi: &Matrix,
    x: &Complex,
    y: &Complex,
    ledger: &mut UsageLedger,
) -> Result<(Complex, BlockLayout), ComplexError> {
    if x.regime() != y.regime() {
        return Err(ComplexError::WrongRegime { expected: y.regime(), found: x.regime() });
    }
    if let Some(m) = is_chain_map(phi, x, y, ledger)? {
        return Err(ComplexError::NotChainMap(m));
    }
    let ctx = y.ctx();
    let xs = x.object().shifted(1);
    let layout = BlockLayout::new(y.n(), &[y.object(), &xs]);
    let one = Scalar::one(ctx);
    let minus = Scalar::constant(ctx, -1);
    let diff = assemble(
        ctx,
        &layout,
        &layout,
        &[(0, 0, y.diff(), one.clone()), (0, 1, phi, one), (1, 1, x.diff(), minus)],
    );
    Ok((Complex::new(diff, y.regime())?, layout))
}

/// `C ⊕ C⟨-2⟩[1]` with `[[a, r + b], [ξ, -a]]` where `δ_C = a + ξ̄b`.
pub fn mon(c: &Complex) -> Result<(Complex, BlockLayout), ComplexError> {
    if c.regime() == Regime::Mon {
        return Err(ComplexError::WrongRegime { expected: Regime::Mix, found: Regime::Mon });
    }
    if let Some((row, col, _)) = c.diff().entries().find(|(_, _, s)| s.has_r()) {
        return Err(ComplexError::RegimeEntry { row, col, reason: "mon needs an r-free differential" });
    }
    let ctx = c.ctx();
    let a = c.diff().map_scalars(|s| s.split_xi_bar().0);
    let b = c.diff().map_scalars(|s| s.split_xi_bar().1);
    let lower = c.object().twisted(-2).shifted(1);
    let layout = BlockLayout::new(c.n(), &[c.object(), &lower]);
    let id = c.identity();
    let one = Scalar::one(ctx);
    let diff = assemble(
        ctx,
        &layout,
        &layout,
        &[
            (0, 0, &a, one.clone()),
            (0, 1, &id, Scalar::r(ctx)),
            (0, 1, &b, one),
            (1, 0, &id, Scalar::xi(ctx)),
            (1, 1, &a, Scalar::constant(ctx, -1)),
        ],
    );
    Ok((Complex::new(diff, Regime::Mon)?, layout))
}

/// Sign rule for the total complex of an external product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxSigns {
    /// `δ'⊠id + (-1)^{p'} id⊠δ''`.
    Koszul,
    /// `δ'⊠id + id⊠δ''`, which is not a differential in general.
    Naive,
}

/// External product of two `Gm` complexes with constant entries. Strata
/// concatenate as `I' ⊔ (I'' + n')`.
pub fn box_product(a: &Complex, b: &Complex, signs: BoxSigns) -> Result<Complex, ComplexError> {
    for c in [a, b] {
        if c.regime() != Regime::Gm {
            return Err(ComplexError::WrongRegime { expected: Regime::Gm, found: c.regime() });
        }
        if c.ctx().ring != a.ctx().ring {
            return Err(ComplexError::ContextMismatch);
        }
    }
    let n = a.n() + b.n();
    let ctx = ScalarCtx::new(n, a.ctx().ring);
    let (oa, ob) = (a.object(), b.object());
    let mut parts = Vec::with_capacity(oa.len() * ob.len());
    for x in oa.summands() {
        for y in ob.summands() {
            parts.push(Summand::new(x.stratum.concat(&y.stratum), x.twist + y.twist, x.shift + y.shift));
        }
    }
    let (obj, map) = GradedObject::new(n, parts);
    let obj = Arc::new(obj);
    let at = |i: usize, j: usize| map[i * ob.len() + j];
    let constant = |r: usize, c: usize, s: &Scalar| {
        s.as_constant().map(|v| Scalar::from_coeff(ctx, v)).ok_or(ComplexError::NonConstant { row: r, col: c })
    };
    let mut builder = MatrixBuilder::new(ctx, obj.clone(), obj.clone());
    for (r, c, s) in a.diff().entries() {
        let v = constant(r, c, s)?;
        for j in 0..ob.len() {
            builder.add(at(r, j), at(c, j), v.clone());
        }
    }
    for (r, c, s) in b.diff().entries() {
        let v = constant(r, c, s)?;
        for (i, x) in oa.summands().iter().enumerate() {
            let sign = signs == BoxSigns::Koszul && x.position().rem_euclid(2) == 1;
            builder.add(at(i, r), at(i, c), if sign { -&v } else { v.clone() });
        }
    }
    Complex::new(builder.build(), Regime::Gm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::Subset;

    fn s(n: usize, m: &[usize]) -> Subset {
        Subset::new(n, m.iter().copied()).unwrap()
    }

    /// `E(1) --e1--> E()⟨-1⟩` on the line.
    fn line() -> Complex {
        let ctx = ScalarCtx::integers(1);
        let (obj, _) = GradedObject::new(1, vec![Summand::new(s(1, &[1]), 0, 0), Summand::new(s(1, &[]), -1, 0)]);
        let obj = Arc::new(obj);
        let mut b = MatrixBuilder::new(ctx, obj.clone(), obj.clone());
        b.add_int(1, 0, 1);
        Complex::new(b.build(), Regime::Gm).unwrap()
    }

    #[test]
    fn line_complex_validates() {
        let c = line();
        assert_eq!(c.object().to_string(), "E(1) + E(∅)<-1>");
        c.validate(&mut UsageLedger::new()).unwrap();
    }

    #[test]
    fn shift_twice_is_identity() {
        let c = line();
        let back = c.shift(1).shift(1).shift(-2);
        assert_eq!(back, c);
        assert_eq!(c.shift(1).diff().get(1, 0).unwrap().to_string(), "-1");
        c.shift(1).validate(&mut UsageLedger::new()).unwrap();
        c.twist(3).validate(&mut UsageLedger::new()).unwrap();
    }

    #[test]
    fn wrong_degree_is_reported() {
        let c = line();
        let mut b = MatrixBuilder::new(c.ctx(), c.object().clone(), c.object().clone());
        b.add_int(0, 1, 1);
        let bad = Complex::new(b.build(), Regime::Gm).unwrap();
        assert!(matches!(bad.validate(&mut UsageLedger::new()), Err(ComplexError::Degree { row: 0, col: 1, .. })));
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let c = line();
        let mut ledger = UsageLedger::new();
        let (k, layout) = cone(&c.identity(), &c, &c, &mut ledger).unwrap();
        k.validate(&mut ledger).unwrap();
        let ctx = c.ctx();
        let id_x_to_y = c.identity();
        let h = assemble(ctx, &layout, &layout, &[(1, 0, &id_x_to_y, Scalar::one(ctx))]);
        let target = k.identity();
        assert_eq!(homotopy_check(&k, &k, &h, &target, &mut ledger).unwrap(), None);
    }

    #[test]
    fn mon_of_gm_complex() {
        let c = line().with_regime(Regime::Mix);
        let (m, _) = mon(&c).unwrap();
        assert_eq!(m.object().len(), 4);
        let mut ledger = UsageLedger::new();
        m.validate(&mut ledger).unwrap();
    }

    #[test]
    fn box_unit_is_neutral() {
        let ctx0 = ScalarCtx::integers(0);
        let (unit, _) = GradedObject::new(0, vec![Summand::new(Subset::empty(0).unwrap(), 0, 0)]);
        let unit = Complex::zero(ctx0, Arc::new(unit), Regime::Gm);
        let c = line();
        assert_eq!(box_product(&unit, &c, BoxSigns::Koszul).unwrap(), c);
    }

    #[test]
    fn box_signs_matter() {
        let c = line();
        let good = box_product(&c, &c, BoxSigns::Koszul).unwrap();
        good.validate(&mut UsageLedger::new()).unwrap();
        let bad = box_product(&c, &c, BoxSigns::Naive).unwrap();
        assert!(matches!(bad.validate(&mut UsageLedger::new()), Err(ComplexError::Condition { .. })));
    }
}
