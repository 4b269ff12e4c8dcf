//! Identity suites for the maps of [`NearbyKit`]. Every identity is
//! evaluated as a literal matrix equation; index ranges run over all levels
//! `0..=n`, with out-of-range objects vanishing.

use super::kit::NearbyKit;
use super::pieces::PieceMap;
use crate::complex::{check_equal, MatExpr, Matrix};
use crate::morph::UsageLedger;
use crate::report::Certificate;
use crate::scalar::Scalar;

struct Run<'k> {
    kit: &'k NearbyKit,
    cert: Certificate,
    ledger: UsageLedger,
}

impl<'k> Run<'k> {
    fn new(kit: &'k NearbyKit, subject: &str) -> Self {
        Run { kit, cert: Certificate::new(subject, kit.n()), ledger: UsageLedger::new() }
    }

    fn m(&self, f: PieceMap) -> Matrix {
        self.kit.realize(&f)
    }

    fn id(&self, f: &PieceMap) -> Matrix {
        Matrix::identity(self.kit.ctx(), f.src.obj().clone())
    }

    fn xi(&self) -> Scalar {
        Scalar::xi(self.kit.ctx())
    }

    fn r(&self) -> Scalar {
        Scalar::r(self.kit.ctx())
    }

    fn eq(&mut self, id: String, lhs: MatExpr<'_>, rhs: MatExpr<'_>) {
        let out = check_equal(&lhs, &rhs, &mut self.ledger);
        self.cert.record(id, out);
    }

    fn finish(mut self) -> (Certificate, UsageLedger) {
        self.cert.set_ledger(&self.ledger);
        (self.cert, self.ledger)
    }
}

fn zero<'a>() -> MatExpr<'a> {
    MatExpr::new()
}

fn levels(kit: &NearbyKit) -> impl Iterator<Item = isize> {
    0..=kit.n() as isize
}

/// `εε = 0`, `ηη = 0`, `εη + ηε = ξ` on each level.
pub fn level_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "level");
    for k in levels(kit) {
        let (e0, e1, e2) = (run.m(kit.eps(k - 1)), run.m(kit.eps(k)), run.m(kit.eps(k + 1)));
        let (h0, h1) = (run.m(kit.eta(k)), run.m(kit.eta(k + 1)));
        run.eq(format!("eps-eps/{k}"), MatExpr::of(&[&e0, &e1]), zero());
        run.eq(format!("eta-eta/{k}"), MatExpr::of(&[&h1, &h0]), zero());
        let id = run.id(&kit.eps(k));
        let xi = run.xi();
        run.eq(
            format!("eps-eta/{k}"),
            MatExpr::of(&[&e2, &h1]).plus(&[&h0, &e1]),
            MatExpr::new().scaled(xi, &[&id]),
        );
    }
    run.finish()
}

/// The same three identities copy by copy, plus commutation with `N`.
pub fn jordan_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "jordan");
    for i in levels(kit) {
        let e = |j| run.m(kit.jordan_eps(j));
        let (e0, e1, e2) = (e(i - 1), e(i), e(i + 1));
        let h = |j| run.m(kit.jordan_eta(j));
        let (h1, h2) = (h(i), h(i + 1));
        let (n0, n1) = (run.m(kit.nilpotent(i - 1)), run.m(kit.nilpotent(i)));
        run.eq(format!("eps-eps/{i}"), MatExpr::of(&[&e0, &e1]), zero());
        run.eq(format!("eta-eta/{i}"), MatExpr::of(&[&h2, &h1]), zero());
        run.eq(format!("eps-n/{i}"), MatExpr::of(&[&e1, &n1]), MatExpr::of(&[&n0, &e1]));
        run.eq(format!("eta-n/{i}"), MatExpr::of(&[&h1, &n0]), MatExpr::of(&[&n1, &h1]));
        let xi = run.xi();
        run.eq(
            format!("eps-eta/{i}"),
            MatExpr::of(&[&e2, &h2]).plus(&[&h1, &e1]),
            MatExpr::new().scaled(xi, &[&n1]),
        );
    }
    run.finish()
}

/// How the inclusions `ι◁`, `ι▷`, `ε▷` and the projections `p◁`, `p▷`, `η◁`
/// interact with `ε`, `η`, `N` and `ρ`.
pub fn interface_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "interface");
    let r = run.r();
    for i in levels(kit) {
        let eps = |j| run.m(kit.eps(j));
        let eta = |j| run.m(kit.eta(j));
        let (eps_i, eps_i1) = (eps(i), eps(i + 1));
        let (eta_i, eta_i1) = (eta(i), eta(i + 1));
        let (je_i, je_i1) = (run.m(kit.jordan_eps(i)), run.m(kit.jordan_eps(i - 1)));
        let (jh_i, jh_i1) = (run.m(kit.jordan_eta(i)), run.m(kit.jordan_eta(i - 1)));
        let (n_i, n_prev) = (run.m(kit.nilpotent(i)), run.m(kit.nilpotent(i - 1)));
        let (il_i, il_prev) = (run.m(kit.iota_left(i)), run.m(kit.iota_left(i - 1)));
        let (ir_i, ir_prev) = (run.m(kit.iota_right(i)), run.m(kit.iota_right(i - 1)));
        let (er_i, er_next) = (run.m(kit.eps_right(i)), run.m(kit.eps_right(i + 1)));
        let rho = run.m(kit.rho(i));
        let (pl_i, pl_prev) = (run.m(kit.p_left(i)), run.m(kit.p_left(i - 1)));
        let (pr_i, pr_prev) = (run.m(kit.p_right(i)), run.m(kit.p_right(i - 1)));
        let (hl_i, hl_next) = (run.m(kit.eta_left(i)), run.m(kit.eta_left(i + 1)));
        let xi = run.xi();

        run.eq(format!("eps-right.eps/{i}"), MatExpr::of(&[&er_i, &eps_i1]), zero());
        run.eq(format!("jordan-eps.eps-right/{i}"), MatExpr::of(&[&je_i1, &er_i]), zero());
        run.eq(format!("iota-right.eps/{i}"), MatExpr::of(&[&ir_prev, &eps_i]), MatExpr::of(&[&er_i]));
        run.eq(format!("iota-right.eta/{i}"), MatExpr::of(&[&ir_i, &eta_i]), MatExpr::of(&[&jh_i, &ir_prev]));
        run.eq(
            format!("iota-right.rho/{i}"),
            MatExpr::of(&[&ir_i, &rho]).plus(&[&n_i, &il_i]),
            MatExpr::new().scaled(r.clone(), &[&il_i]),
        );
        run.eq(
            format!("eps-right.eta/{i}"),
            MatExpr::of(&[&er_next, &eta_i1]).plus(&[&jh_i, &er_i]),
            MatExpr::new().scaled(xi.clone(), &[&ir_i]),
        );
        run.eq(format!("jordan-eps.iota-right/{i}"), MatExpr::of(&[&je_i, &ir_i]), MatExpr::of(&[&n_prev, &er_i]));
        run.eq(
            format!("iota-left.eta/{i}"),
            MatExpr::new().scaled(r.clone(), &[&il_i, &eta_i]),
            MatExpr::of(&[&jh_i, &il_prev]),
        );
        run.eq(
            format!("eps-right.rho/{i}"),
            MatExpr::of(&[&er_i, &rho]).plus(&[&je_i, &il_i]),
            MatExpr::of(&[&il_prev, &eps_i]),
        );

        run.eq(format!("eta-left.jordan-eta/{i}"), MatExpr::of(&[&hl_i, &jh_i1]), zero());
        run.eq(format!("eta.eta-left/{i}"), MatExpr::of(&[&eta_i1, &hl_i]), zero());
        run.eq(format!("eta-left.factor/{i}"), MatExpr::of(&[&hl_i]), MatExpr::of(&[&eta_i, &pl_prev]));
        run.eq(format!("p-left.jordan-eps/{i}"), MatExpr::of(&[&pl_prev, &je_i]), MatExpr::of(&[&eps_i, &pl_i]));
        run.eq(
            format!("p-right.n/{i}"),
            MatExpr::of(&[&pr_i, &n_i]).plus(&[&rho, &pl_i]),
            MatExpr::new().scaled(r.clone(), &[&pr_i]),
        );
        run.eq(
            format!("eta-left.jordan-eps/{i}"),
            MatExpr::of(&[&hl_i, &je_i]).plus(&[&eps_i1, &hl_next]),
            MatExpr::new().scaled(xi, &[&pl_i]),
        );
        run.eq(format!("eta-left.n/{i}"), MatExpr::of(&[&hl_i, &n_prev]), MatExpr::of(&[&pl_i, &jh_i]));
        run.eq(
            format!("p-right.jordan-eps/{i}"),
            MatExpr::of(&[&pr_prev, &je_i]),
            MatExpr::new().scaled(r.clone(), &[&eps_i, &pr_i]),
        );
        run.eq(
            format!("p-right.jordan-eta/{i}"),
            MatExpr::of(&[&pr_i, &jh_i]).plus(&[&rho, &hl_i]),
            MatExpr::of(&[&eta_i, &pr_prev]),
        );
    }
    run.finish()
}

/// The bold identities on `E◁`, `E▷` and between them and `E◇`.
pub fn bold_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "bold");
    let (lhd, rhd) = (kit.lhd().clone(), kit.rhd().clone());
    let r = run.r();
    let xi = run.xi();
    for (name, obj) in [("left", &lhd), ("right", &rhd)] {
        let e = run.m(kit.bold_eps(obj));
        let h = run.m(kit.bold_eta(obj));
        let id = run.id(&kit.bold_eps(obj));
        run.eq(format!("{name}/eps-eps"), MatExpr::of(&[&e, &e]), zero());
        run.eq(format!("{name}/eta-eta"), MatExpr::of(&[&h, &h]), zero());
        run.eq(format!("{name}/eps-eta"), MatExpr::of(&[&e, &h]).plus(&[&h, &e]), MatExpr::new().scaled(xi.clone(), &[&id]));
    }
    let (el, er) = (run.m(kit.bold_eps(&lhd)), run.m(kit.bold_eps(&rhd)));
    let (hl, hr) = (run.m(kit.bold_eta(&lhd)), run.m(kit.bold_eta(&rhd)));
    let rho = run.m(kit.bold_rho());
    let nil = run.m(kit.bold_nilpotent());
    let je = run.m(kit.bold_jordan_eps());
    let jh = run.m(kit.bold_jordan_eta());
    let il = run.m(kit.bold_iota_left());
    let ir = run.m(kit.bold_iota_right());
    let epr = run.m(kit.bold_eps_right());
    let pl = run.m(kit.bold_p_left());
    let pr = run.m(kit.bold_p_right());
    let etl = run.m(kit.bold_eta_left());

    run.eq("rho.eps".into(), MatExpr::of(&[&rho, &el]), MatExpr::new().scaled(r.clone(), &[&er, &rho]));
    run.eq("rho.eta".into(), MatExpr::of(&[&hr, &rho]), MatExpr::new().scaled(r.clone(), &[&rho, &hl]));

    run.eq("eps-right.eps".into(), MatExpr::of(&[&epr, &er]), zero());
    run.eq("jordan-eps.eps-right".into(), MatExpr::of(&[&je, &epr]), zero());
    run.eq("iota-right.eps".into(), MatExpr::of(&[&ir, &er]), MatExpr::of(&[&epr]));
    run.eq("iota-right.eta".into(), MatExpr::of(&[&ir, &hr]), MatExpr::of(&[&jh, &ir]));
    run.eq(
        "iota-right.rho".into(),
        MatExpr::of(&[&ir, &rho]).plus(&[&nil, &il]),
        MatExpr::new().scaled(r.clone(), &[&il]),
    );
    run.eq(
        "eps-right.eta".into(),
        MatExpr::of(&[&epr, &hr]).plus(&[&jh, &epr]),
        MatExpr::new().scaled(xi.clone(), &[&ir]),
    );
    run.eq("jordan-eps.iota-right".into(), MatExpr::of(&[&je, &ir]), MatExpr::of(&[&nil, &epr]));
    run.eq("iota-left.eta".into(), MatExpr::new().scaled(r.clone(), &[&il, &hl]), MatExpr::of(&[&jh, &il]));
    run.eq(
        "eps-right.rho".into(),
        MatExpr::of(&[&epr, &rho]).plus(&[&je, &il]),
        MatExpr::of(&[&il, &el]),
    );

    run.eq("eta-left.jordan-eta".into(), MatExpr::of(&[&etl, &jh]), zero());
    run.eq("eta.eta-left".into(), MatExpr::of(&[&hl, &etl]), zero());
    run.eq("eta-left.factor".into(), MatExpr::of(&[&etl]), MatExpr::of(&[&hl, &pl]));
    run.eq("p-left.jordan-eps".into(), MatExpr::of(&[&pl, &je]), MatExpr::of(&[&el, &pl]));
    run.eq(
        "p-right.n".into(),
        MatExpr::of(&[&pr, &nil]).plus(&[&rho, &pl]),
        MatExpr::new().scaled(r.clone(), &[&pr]),
    );
    run.eq(
        "eta-left.jordan-eps".into(),
        MatExpr::of(&[&etl, &je]).plus(&[&el, &etl]),
        MatExpr::new().scaled(xi, &[&pl]),
    );
    run.eq("eta-left.n".into(), MatExpr::of(&[&etl, &nil]), MatExpr::of(&[&pl, &jh]));
    run.eq("p-right.jordan-eps".into(), MatExpr::of(&[&pr, &je]), MatExpr::new().scaled(r, &[&er, &pr]));
    run.eq(
        "p-right.jordan-eta".into(),
        MatExpr::of(&[&pr, &jh]).plus(&[&rho, &etl]),
        MatExpr::of(&[&hr, &pr]),
    );
    run.finish()
}

/// `bε̲² = bη̲² = 0`, both commute with `bN`, `bε̲bη̲ + bη̲bε̲ = ξ·bN`.
pub fn bold_jordan_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "bold-jordan");
    let je = run.m(kit.bold_jordan_eps());
    let jh = run.m(kit.bold_jordan_eta());
    let nil = run.m(kit.bold_nilpotent());
    let xi = run.xi();
    run.eq("eps-eps".into(), MatExpr::of(&[&je, &je]), zero());
    run.eq("eta-eta".into(), MatExpr::of(&[&jh, &jh]), zero());
    run.eq("eps-n".into(), MatExpr::of(&[&je, &nil]), MatExpr::of(&[&nil, &je]));
    run.eq("eta-n".into(), MatExpr::of(&[&jh, &nil]), MatExpr::of(&[&nil, &jh]));
    run.eq("eps-eta".into(), MatExpr::of(&[&je, &jh]).plus(&[&jh, &je]), MatExpr::new().scaled(xi, &[&nil]));
    run.finish()
}

/// The projection and Jordan-homotopy identities behind the two homotopies
/// of the equivalence.
pub fn homotopy_suite(kit: &NearbyKit) -> (Certificate, UsageLedger) {
    let mut run = Run::new(kit, "homotopy");
    let r = run.r();
    for i in levels(kit) {
        let h = run.m(kit.jordan_homotopy(i));
        let h_prev = run.m(kit.jordan_homotopy(i - 1));
        let id = run.id(&kit.nilpotent(i));
        let n_i = run.m(kit.nilpotent(i));
        let (il, ir) = (run.m(kit.iota_left(i)), run.m(kit.iota_right(i)));
        let (pl, pr) = (run.m(kit.p_left(i)), run.m(kit.p_right(i)));
        let (je, jh) = (run.m(kit.jordan_eps(i)), run.m(kit.jordan_eta(i)));
        let (er, hl) = (run.m(kit.eps_right(i)), run.m(kit.eta_left(i)));
        run.eq(
            format!("r-h.n-h/{i}"),
            MatExpr::new().scaled(r.clone(), &[&h]).minus(&[&n_i, &h]),
            MatExpr::of(&[&ir, &pr]).minus(&[&id]),
        );
        run.eq(
            format!("r-h.h-n/{i}"),
            MatExpr::new().scaled(r.clone(), &[&h]).minus(&[&h, &n_i]),
            MatExpr::of(&[&il, &pl]).minus(&[&id]),
        );
        run.eq(format!("h.jordan-eps/{i}"), MatExpr::of(&[&h_prev, &je]).minus(&[&je, &h]), MatExpr::of(&[&er, &pr]));
        run.eq(
            format!("h.jordan-eta/{i}"),
            MatExpr::of(&[&h, &jh]).minus(&[&jh, &h_prev]),
            MatExpr::new().minus(&[&il, &hl]),
        );
    }

    let (lhd, rhd) = (kit.lhd().clone(), kit.rhd().clone());
    let bh = run.m(kit.bold_homotopy());
    let nil = run.m(kit.bold_nilpotent());
    let id_dia = run.id(&kit.bold_nilpotent());
    let (il, ir) = (run.m(kit.bold_iota_left()), run.m(kit.bold_iota_right()));
    let (pl, pr) = (run.m(kit.bold_p_left()), run.m(kit.bold_p_right()));
    let (je, jh) = (run.m(kit.bold_jordan_eps()), run.m(kit.bold_jordan_eta()));
    let (epr, etl) = (run.m(kit.bold_eps_right()), run.m(kit.bold_eta_left()));
    run.eq(
        "bold/r-h.n-h".into(),
        MatExpr::new().scaled(r.clone(), &[&bh]).minus(&[&nil, &bh]),
        MatExpr::of(&[&ir, &pr]).minus(&[&id_dia]),
    );
    run.eq(
        "bold/r-h.h-n".into(),
        MatExpr::new().scaled(r, &[&bh]).minus(&[&bh, &nil]),
        MatExpr::of(&[&il, &pl]).minus(&[&id_dia]),
    );
    run.eq("bold/h.jordan-eps".into(), MatExpr::of(&[&bh, &je]).minus(&[&je, &bh]), MatExpr::of(&[&epr, &pr]));
    run.eq(
        "bold/h.jordan-eta".into(),
        MatExpr::of(&[&bh, &jh]).minus(&[&jh, &bh]),
        MatExpr::new().minus(&[&il, &etl]),
    );

    let ql = run.m(kit.top_projection(&lhd, &lhd));
    let qr = run.m(kit.top_projection(&rhd, &rhd));
    let g = run.m(kit.top_projection(&rhd, &lhd));
    let id_l = run.id(&kit.bold_eps(&lhd));
    let id_r = run.id(&kit.bold_eps(&rhd));
    let rho = run.m(kit.bold_rho());
    let (el, hl) = (run.m(kit.bold_eps(&lhd)), run.m(kit.bold_eta(&lhd)));
    let (er, hr) = (run.m(kit.bold_eps(&rhd)), run.m(kit.bold_eta(&rhd)));
    run.eq("q-left".into(), MatExpr::of(&[&ql]), MatExpr::of(&[&id_l]).minus(&[&pl, &il]));
    run.eq("q-right".into(), MatExpr::of(&[&qr]), MatExpr::of(&[&id_r]).minus(&[&pr, &ir]));
    run.eq("g.rho".into(), MatExpr::of(&[&g, &rho]), MatExpr::of(&[&ql]));
    run.eq("rho.g".into(), MatExpr::of(&[&rho, &g]), MatExpr::of(&[&qr]));
    run.eq("g.eps".into(), MatExpr::of(&[&g, &er]), zero());
    run.eq("eta.g".into(), MatExpr::of(&[&hl, &g]), zero());
    run.eq(
        "g.eta-eps.g".into(),
        MatExpr::of(&[&g, &hr]).minus(&[&el, &g]),
        MatExpr::of(&[&etl, &ir]).minus(&[&pl, &epr]),
    );
    run.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseRing;

    #[test]
    fn every_suite_passes_up_to_five() {
        for n in 1..=5 {
            let kit = NearbyKit::new(n, BaseRing::Integers).unwrap();
            for (cert, _) in [
                level_suite(&kit),
                jordan_suite(&kit),
                interface_suite(&kit),
                bold_suite(&kit),
                bold_jordan_suite(&kit),
                homotopy_suite(&kit),
            ] {
                assert!(cert.passed(), "{cert}");
            }
        }
    }

    #[test]
    fn suite_sizes() {
        let kit = NearbyKit::new(3, BaseRing::Integers).unwrap();
        assert_eq!(level_suite(&kit).0.checks.len(), 3 * 4);
        assert_eq!(interface_suite(&kit).0.checks.len(), 18 * 4);
        assert_eq!(bold_suite(&kit).0.checks.len(), 6 + 2 + 18);
    }

    #[test]
    fn a_wrong_sign_is_caught() {
        let kit = NearbyKit::new(3, BaseRing::Integers).unwrap();
        let il = kit.realize(&kit.bold_iota_left());
        let nil = kit.realize(&kit.bold_nilpotent());
        let ir = kit.realize(&kit.bold_iota_right());
        let rho = kit.realize(&kit.bold_rho());
        let r = Scalar::r(kit.ctx());
        let mut ledger = UsageLedger::new();
        let lhs = MatExpr::of(&[&ir, &rho]).minus(&[&nil, &il]);
        let rhs = MatExpr::new().scaled(r, &[&il]);
        assert!(check_equal(&lhs, &rhs, &mut ledger).unwrap().is_some());
    }
}
