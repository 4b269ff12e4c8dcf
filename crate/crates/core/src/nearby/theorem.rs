//! End-to-end certificates: the monodromic extension by zero, the
//! equivalence between the restricted cone and `Mon(𝒁)⟨1⟩`, the product
//! recursion for the extension by zero, and the relation-usage report.

use serde::Serialize;

use super::kit::{LaidOut, NearbyKit};
use super::suite::{bold_jordan_suite, homotopy_suite};
use super::NearbyError;
use crate::complex::{
    assemble, box_product, check_equal, cone, first_difference, homotopy_check, is_chain_map, mon, BlockLayout,
    BoxSigns, Complex, MatExpr, Matrix,
};
use crate::morph::{LedgerSummary, UsageLedger};
use crate::report::Certificate;
use crate::ring::BaseRing;
use crate::scalar::Scalar;

fn validate(cert: &mut Certificate, id: &str, c: &Complex, ledger: &mut UsageLedger) {
    let out = c.validate(ledger).map(|()| None);
    cert.record(id, out);
}

/// `cone(r: F⟨-2⟩ → F) ≅ Mon(j_!E)` for `F = (E◁, bε + r·bη)`, through the
/// explicit mutually inverse chain maps `[[id, 0], [±bη, id]]`.
pub fn verify_extension_by_zero(kit: &NearbyKit) -> Result<Certificate, NearbyError> {
    let mut cert = Certificate::new("extension-by-zero", kit.n());
    let mut ledger = UsageLedger::new();
    let ctx = kit.ctx();
    let f_mon = kit.j_shriek_mon()?;
    let lowered = f_mon.twist(-2);
    let r_id = Matrix::scalar_identity(ctx, f_mon.object().clone(), Scalar::r(ctx))
        .reframe(lowered.object().clone(), f_mon.object().clone())?;
    let (g, g_layout) = cone(&r_id, &lowered, &f_mon, &mut ledger)?;
    let (m, m_layout) = mon(&kit.j_shriek()?)?;
    validate(&mut cert, "cone", &g, &mut ledger);
    validate(&mut cert, "mon", &m, &mut ledger);

    let id = Matrix::identity(ctx, kit.lhd().obj().clone());
    let eta = kit.realize(&kit.bold_eta(kit.lhd()));
    let one = Scalar::one(ctx);
    let f = assemble(ctx, &g_layout, &m_layout, &[(0, 0, &id, one.clone()), (1, 0, &eta, one.clone()), (1, 1, &id, one.clone())]);
    let f_bar = assemble(
        ctx,
        &m_layout,
        &g_layout,
        &[(0, 0, &id, one.clone()), (1, 0, &eta, Scalar::constant(ctx, -1)), (1, 1, &id, one)],
    );
    cert.record("f.chain-map", is_chain_map(&f, &g, &m, &mut ledger));
    cert.record("f-bar.chain-map", is_chain_map(&f_bar, &m, &g, &mut ledger));
    let id_g = g.identity();
    let id_m = m.identity();
    cert.record("f.f-bar", check_equal(&MatExpr::of(&[&f, &f_bar]), &MatExpr::of(&[&id_m]), &mut ledger));
    cert.record("f-bar.f", check_equal(&MatExpr::of(&[&f_bar, &f]), &MatExpr::of(&[&id_g]), &mut ledger));
    cert.set_ledger(&ledger);
    Ok(cert)
}

/// The objects of the equivalence, with their block layouts.
#[derive(Debug, Clone)]
pub struct Equivalence {
    /// `E▷ ⊕ E◁[1]`.
    pub cone: LaidOut,
    /// `E◇⟨1⟩ ⊕ E◇⟨-1⟩[1]`.
    pub mon_z: LaidOut,
    /// `ι = [[bι▷, 0], [bε▷, bι◁]]`.
    pub iota: Matrix,
    /// `p = [[bp▷, 0], [-bη◁, bp◁]]`.
    pub p: Matrix,
}

fn retwist(l: &LaidOut, k: i64) -> LaidOut {
    let complex = l.complex.twist(k);
    let layout = BlockLayout { obj: complex.object().clone(), blocks: l.layout.blocks.clone() };
    LaidOut { complex, layout }
}

pub fn equivalence(kit: &NearbyKit, ledger: &mut UsageLedger) -> Result<Equivalence, NearbyError> {
    let ctx = kit.ctx();
    let cone = kit.restricted_cone(ledger)?;
    let mon_z = retwist(&kit.mon_z()?, 1);
    let one = Scalar::one(ctx);
    let ir = kit.realize(&kit.bold_iota_right());
    let er = kit.realize(&kit.bold_eps_right());
    let il = kit.realize(&kit.bold_iota_left());
    let iota = assemble(
        ctx,
        &cone.layout,
        &mon_z.layout,
        &[(0, 0, &ir, one.clone()), (1, 0, &er, one.clone()), (1, 1, &il, one.clone())],
    );
    let pr = kit.realize(&kit.bold_p_right());
    let hl = kit.realize(&kit.bold_eta_left());
    let pl = kit.realize(&kit.bold_p_left());
    let p = assemble(
        ctx,
        &mon_z.layout,
        &cone.layout,
        &[(0, 0, &pr, one.clone()), (1, 0, &hl, Scalar::constant(ctx, -1)), (1, 1, &pl, one)],
    );
    Ok(Equivalence { cone, mon_z, iota, p })
}

/// Chain maps, homotopies and auxiliary identities showing that `ι` and `p`
/// are mutually inverse up to homotopy, and that the monodromy `r` on
/// `Mon(𝒁)` is homotopic to `bN`.
pub fn verify_equivalence(kit: &NearbyKit) -> Result<Certificate, NearbyError> {
    let mut cert = Certificate::new("equivalence", kit.n());
    let mut ledger = UsageLedger::new();
    let ctx = kit.ctx();
    let one = Scalar::one(ctx);

    let z = kit.z()?;
    validate(&mut cert, "valid/z", &z, &mut ledger);
    let j_shriek = kit.j_shriek_mon()?;
    let j_star = kit.j_star_mon()?;
    validate(&mut cert, "valid/j-shriek", &j_shriek, &mut ledger);
    validate(&mut cert, "valid/j-star", &j_star, &mut ledger);

    let rho = kit.realize(&kit.bold_rho());
    cert.record("chain/rho", is_chain_map(&rho, &j_shriek, &j_star, &mut ledger));

    let eq = equivalence(kit, &mut ledger)?;
    let (c1, c2) = (&eq.cone.complex, &eq.mon_z.complex);
    validate(&mut cert, "valid/cone", c1, &mut ledger);
    validate(&mut cert, "valid/mon-z", c2, &mut ledger);
    cert.record("chain/iota", is_chain_map(&eq.iota, c1, c2, &mut ledger));
    cert.record("chain/p", is_chain_map(&eq.p, c2, c1, &mut ledger));

    let g = kit.realize(&kit.top_projection(kit.rhd(), kit.lhd()));
    let h1 = assemble(ctx, &eq.cone.layout, &eq.cone.layout, &[(1, 0, &g, one.clone())]);
    let id1 = c1.identity();
    let target1 = MatExpr::of(&[&id1]).minus(&[&eq.p, &eq.iota]).evaluate(&mut ledger)?.expect("nonempty");
    cert.record("homotopy/cone", homotopy_check(c1, c1, &h1, &target1, &mut ledger));

    let bh = kit.realize(&kit.bold_homotopy());
    let h2 = assemble(ctx, &eq.mon_z.layout, &eq.mon_z.layout, &[(1, 0, &bh, one.clone())]);
    let id2 = c2.identity();
    let target2 = MatExpr::of(&[&eq.iota, &eq.p]).minus(&[&id2]).evaluate(&mut ledger)?.expect("nonempty");
    cert.record("homotopy/mon-z", homotopy_check(c2, c2, &h2, &target2, &mut ledger));

    let plain = kit.mon_z()?;
    let raised = retwist(&plain, 2);
    let id_dia = Matrix::identity(ctx, kit.diamond(0).obj().clone());
    let nil = kit.realize(&kit.bold_nilpotent());
    let r = Scalar::r(ctx);
    let minus = Scalar::constant(ctx, -1);
    let monodromy = assemble(
        ctx,
        &plain.layout,
        &raised.layout,
        &[
            (0, 0, &id_dia, r.clone()),
            (0, 0, &nil, minus.clone()),
            (1, 1, &id_dia, r),
            (1, 1, &nil, minus),
        ],
    );
    cert.record("chain/monodromy", is_chain_map(&monodromy, &plain.complex, &raised.complex, &mut ledger));
    let h3 = assemble(ctx, &plain.layout, &raised.layout, &[(1, 0, &id_dia, one)]);
    cert.record("homotopy/monodromy", homotopy_check(&plain.complex, &raised.complex, &h3, &monodromy, &mut ledger));

    let (aux, aux_ledger) = homotopy_suite(kit);
    cert.absorb(aux);
    ledger.merge(aux_ledger);
    cert.set_ledger(&ledger);
    Ok(cert)
}

/// `j_!E` on `𝔸ⁿ` is the Koszul-signed external product of the one- and
/// `(n-1)`-dimensional versions; the unsigned product is not a complex.
pub fn verify_recursion(n: usize, ring: BaseRing) -> Result<Certificate, NearbyError> {
    if n < 2 {
        return Err(NearbyError::BadN(n));
    }
    let mut cert = Certificate::new("recursion", n);
    let line = NearbyKit::new(1, ring)?.j_shriek()?;
    let rest = NearbyKit::new(n - 1, ring)?.j_shriek()?;
    let want = NearbyKit::new(n, ring)?.j_shriek()?;
    let got = box_product(&line, &rest, BoxSigns::Koszul)?;
    let same_object = got.object() == want.object();
    cert.assert("object", same_object, || format!("{} vs {}", got.object(), want.object()));
    if same_object {
        cert.record::<NearbyError>("differential", Ok(first_difference(got.diff(), want.diff())));
    }
    let naive = box_product(&line, &rest, BoxSigns::Naive)?;
    let broken = naive.validate(&mut UsageLedger::new()).is_err();
    cert.assert("unsigned-product-fails", broken, || "the unsigned product squared to zero".into());
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct UsageReport {
    pub n: usize,
    pub ledger: LedgerSummary,
    /// No per-index relation and no unit sum on strata with `|I| > n - 2`.
    pub within_bound: bool,
}

/// Relations consumed by the square condition of `𝒁` and the Jordan-level
/// bold identities.
pub fn usage_report(kit: &NearbyKit) -> Result<UsageReport, NearbyError> {
    let mut ledger = UsageLedger::new();
    kit.z()?.validate(&mut ledger)?;
    let (cert, suite_ledger) = bold_jordan_suite(kit);
    if let Some(c) = cert.first_failure() {
        return Err(NearbyError::Identity(c.id.clone()));
    }
    ledger.merge(suite_ledger);
    let n = kit.n();
    let within_bound = n < 2 || ledger.within_restricted(n);
    Ok(UsageReport { n, ledger: ledger.summary(), within_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kit(n: usize) -> NearbyKit {
        NearbyKit::new(n, BaseRing::Integers).unwrap()
    }

    #[test]
    fn extension_by_zero_small() {
        for n in 1..=3 {
            let c = verify_extension_by_zero(&kit(n)).unwrap();
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn equivalence_small() {
        for n in 1..=3 {
            let c = verify_equivalence(&kit(n)).unwrap();
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn recursion_small() {
        for n in 2..=4 {
            let c = verify_recursion(n, BaseRing::Integers).unwrap();
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn usage_bounds() {
        let r1 = usage_report(&kit(1)).unwrap();
        assert_eq!(r1.ledger.unit_sum_count, 0);
        let r2 = usage_report(&kit(2)).unwrap();
        assert_eq!(r2.ledger.unit_sum_sizes, vec![0]);
        let r3 = usage_report(&kit(3)).unwrap();
        assert_eq!(r3.ledger.max_unit_sum_size, Some(1));
        assert!(r3.within_bound);
    }
}
