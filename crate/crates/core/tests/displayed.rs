#[path = "support/displayed.rs"]
mod displayed;

use parity_psi_core::complex::render;
use parity_psi_core::nearby::NearbyKit;
use parity_psi_core::ring::BaseRing;

#[test]
fn hand_transcribed_entries_match() {
    for n in 1..=3 {
        assert_eq!(displayed::compare(n), None, "n = {n}");
    }
}

#[test]
fn summand_counts_match_the_drawings() {
    assert_eq!(displayed::computed(1).0.len(), 1);
    assert_eq!(displayed::computed(2).0.len(), 4);
    assert_eq!(displayed::computed(3).0.len(), 12);
}

#[test]
fn a_flipped_sign_is_noticed() {
    let (_, got) = displayed::computed(2);
    let flipped = ("E(1)".to_string(), "E(∅)<-1>".to_string(), "e1 @ (-1)".to_string());
    assert!(!got.contains(&flipped));
}

#[test]
fn golden_latex_is_byte_exact() {
    let golden = [
        include_str!("golden/z_n1.tex"),
        include_str!("golden/z_n2.tex"),
        include_str!("golden/z_n3.tex"),
    ];
    for (k, want) in golden.iter().enumerate() {
        let n = k + 1;
        let z = NearbyKit::new(n, BaseRing::Integers).unwrap().z().unwrap();
        assert_eq!(render::to_latex(&z), *want, "n = {n}");
    }
}
