use proptest::prelude::*;

use parity_psi_core::geometry::Poly;
use parity_psi_core::monodromy::{filtration_by_recursion, monodromy_filtration};
use parity_psi_core::nearby::NearbyKit;
use parity_psi_core::ring::BaseRing;
use parity_psi_core::scalar::{Scalar, ScalarCtx};
use parity_psi_core::weyl::{reduced_word, ExtAffine};

// Scalars.

#[derive(Debug, Clone)]
struct Term {
    coeff: i128,
    alphas: Vec<usize>,
    xi: u32,
    r: u32,
    xb: bool,
}

fn term(n: usize) -> impl Strategy<Value = Term> {
    (-4i128..=4, prop::collection::vec(1..=n, 0..3), 0u32..2, 0u32..2, any::<bool>())
        .prop_map(|(coeff, alphas, xi, r, xb)| Term { coeff, alphas, xi, r, xb })
}

fn build(ctx: ScalarCtx, terms: &[Term]) -> Scalar {
    terms.iter().fold(Scalar::zero(ctx), |acc, t| {
        let mut s = Scalar::constant(ctx, t.coeff);
        for &i in &t.alphas {
            s = &s * &Scalar::alpha(ctx, i);
        }
        s = &(&s * &Scalar::xi(ctx).pow(t.xi)) * &Scalar::r_pow(ctx, t.r);
        if t.xb {
            s = &s * &Scalar::xi_bar(ctx);
        }
        &acc + &s
    })
}

fn ring() -> impl Strategy<Value = BaseRing> {
    prop_oneof![Just(BaseRing::Integers), Just(BaseRing::Rationals), Just(BaseRing::PrimeField(5))]
}

fn three_scalars() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (1usize..=4, ring()).prop_flat_map(|(n, ring)| {
        let ctx = ScalarCtx::new(n, ring);
        let s = move || prop::collection::vec(term(n), 0..4).prop_map(move |t| build(ctx, &t));
        (s(), s(), s())
    })
}

proptest! {
    #[test]
    fn scalar_ring_laws((a, b, c) in three_scalars()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Scalar::one(a.ctx()), a.clone());
    }

    #[test]
    fn flip_odd_is_an_involutive_ring_map((a, b, _) in three_scalars()) {
        prop_assert_eq!(a.flip_odd().flip_odd(), a.clone());
        prop_assert_eq!((&a * &b).flip_odd(), &a.flip_odd() * &b.flip_odd());
        prop_assert_eq!((&a + &b).flip_odd(), &a.flip_odd() + &b.flip_odd());
    }

    #[test]
    fn odd_part_squares_to_zero((a, _, _) in three_scalars()) {
        let (_, odd) = a.split_xi_bar();
        let odd = &odd * &Scalar::xi_bar(a.ctx());
        prop_assert!((&odd * &odd).is_zero());
    }

    #[test]
    fn display_parses_back((a, _, _) in three_scalars()) {
        let text = a.to_string();
        let back = Scalar::parse(a.ctx(), &text);
        prop_assert_eq!(back, Ok(a), "{}", text);
    }
}

#[test]
fn alphas_sum_to_xi() {
    for n in 1..=6 {
        let ctx = ScalarCtx::integers(n);
        let sum = (1..=n).fold(Scalar::zero(ctx), |acc, i| &acc + &Scalar::alpha(ctx, i));
        assert_eq!(sum, Scalar::xi(ctx));
    }
}

// Extended affine Weyl group.

fn element(n: usize) -> impl Strategy<Value = ExtAffine> {
    (Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(-3i64..=3, n))
        .prop_map(|(p, c)| ExtAffine::new(&p, &c).unwrap())
}

fn weyl_triple() -> impl Strategy<Value = (ExtAffine, ExtAffine, ExtAffine)> {
    (1usize..=6).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #[test]
    fn group_laws((x, y, z) in weyl_triple()) {
        let e = ExtAffine::identity(x.n());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&x.inv()).unwrap(), e.clone());
        prop_assert_eq!(x.inv().mul(&x).unwrap(), e.clone());
        prop_assert_eq!(x.mul(&e).unwrap(), x.clone());
    }

    #[test]
    fn length_behaves((x, y, _) in weyl_triple(), i in 1usize..=6) {
        let n = x.n();
        prop_assert_eq!(x.length(), x.inv().length());
        prop_assert!(x.mul(&y).unwrap().length() <= x.length() + y.length());
        prop_assert_eq!(x.mul(&y).unwrap().omega_power(), (x.omega_power() + y.omega_power()) % n);
        if n >= 2 {
            let s = ExtAffine::simple(n, (i - 1) % n + 1).unwrap();
            let (l, sl) = (x.length(), s.mul(&x).unwrap().length());
            prop_assert!(sl + 1 == l || l + 1 == sl, "{} -> {}", l, sl);
        }
    }

    #[test]
    fn reduced_words_realize_length((x, _, _) in weyl_triple()) {
        let w = reduced_word(&x);
        prop_assert_eq!(w.product(), x.clone());
        prop_assert_eq!(w.len(), x.length());
        prop_assert!(w.is_reduced());
    }
}

// Laurent polynomials.

fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), -3i128..=3), 0..5).prop_map(move |ts| {
        ts.into_iter().fold(Poly::zero(nvars), |acc, (e, c)| &acc + &Poly::monomial(nvars, e, c))
    })
}

proptest! {
    #[test]
    fn poly_ring_laws(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn monomial_substitution_is_a_ring_map(a in poly(2), b in poly(2), e in prop::collection::vec(-2i32..=2, 4)) {
        let images = [Poly::monomial(2, vec![e[0], e[1]], 1), Poly::monomial(2, vec![e[2], e[3]], -1)];
        let sub = |p: &Poly| p.substitute_monomials(&images);
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }
}

// Monodromy filtration.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filtration_is_monotone_and_lowered_by_two(n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let kit = NearbyKit::new(n, BaseRing::Integers).unwrap();
        let mf = monodromy_filtration(&kit).unwrap();
        let f = &mf.filtration;
        prop_assert!(f.is_increasing());
        prop_assert_eq!(f, &filtration_by_recursion(&mf.nilpotent));
        let c = pick.index(mf.nilpotent.len());
        for k in f.lo()..=f.hi() {
            if f.get(k).contains(&c) {
                if let Some(d) = mf.nilpotent.apply(c, 1) {
                    prop_assert!(f.get(k - 2).contains(&d), "N moves {} out of M_{}", c, k - 2);
                }
            }
        }
    }
}
