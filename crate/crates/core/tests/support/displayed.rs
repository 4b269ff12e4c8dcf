//! The complexes for n ≤ 3, transcribed by hand from drawings and keyed by
//! summand label so that summand order does not matter.
//! `E(I)<t>` is drawn as `E(I){-t}`; `e`/`h` are the counit/unit letters.

use std::collections::BTreeSet;

use parity_psi_core::nearby::NearbyKit;
use parity_psi_core::ring::BaseRing;

pub type Entry = (&'static str, &'static str, &'static str);

pub const N1: &[Entry] = &[];

pub const N2: &[Entry] = &[
    ("E(∅)<1>", "E(1)", "h1 @ 1"),
    ("E(∅)<1>", "E(2)", "h2 @ (-1)"),
    ("E(∅)<1>", "E(∅)<-1>", "id @ (-xb)"),
    ("E(1)", "E(∅)<-1>", "e1 @ 1"),
    ("E(2)", "E(∅)<-1>", "e2 @ (-1)"),
];

pub const N3: &[Entry] = &[
    ("E(∅)<2>", "E(1)<1>", "h1 @ 1"),
    ("E(∅)<2>", "E(2)<1>", "h2 @ (-1)"),
    ("E(∅)<2>", "E(3)<1>", "h3 @ 1"),
    ("E(∅)<2>", "E(∅)", "id @ (-xb)"),
    ("E(1)<1>", "E(1,2)", "h2 @ 1"),
    ("E(2)<1>", "E(1,2)", "h1 @ 1"),
    ("E(1)<1>", "E(1,3)", "h3 @ (-1)"),
    ("E(3)<1>", "E(1,3)", "h1 @ 1"),
    ("E(2)<1>", "E(2,3)", "h3 @ (-1)"),
    ("E(3)<1>", "E(2,3)", "h2 @ (-1)"),
    ("E(1)<1>", "E(∅)", "e1 @ 1"),
    ("E(2)<1>", "E(∅)", "e2 @ (-1)"),
    ("E(3)<1>", "E(∅)", "e3 @ 1"),
    ("E(1)<1>", "E(1)<-1>", "id @ (-xb)"),
    ("E(2)<1>", "E(2)<-1>", "id @ (-xb)"),
    ("E(3)<1>", "E(3)<-1>", "id @ (-xb)"),
    ("E(1,2)", "E(1)<-1>", "e2 @ 1"),
    ("E(1,3)", "E(1)<-1>", "e3 @ (-1)"),
    ("E(∅)", "E(1)<-1>", "h1 @ 1"),
    ("E(1,2)", "E(2)<-1>", "e1 @ 1"),
    ("E(2,3)", "E(2)<-1>", "e3 @ (-1)"),
    ("E(∅)", "E(2)<-1>", "h2 @ (-1)"),
    ("E(1,3)", "E(3)<-1>", "e1 @ 1"),
    ("E(2,3)", "E(3)<-1>", "e2 @ (-1)"),
    ("E(∅)", "E(3)<-1>", "h3 @ 1"),
    ("E(∅)", "E(∅)<-2>", "id @ (-xb)"),
    ("E(1)<-1>", "E(∅)<-2>", "e1 @ 1"),
    ("E(2)<-1>", "E(∅)<-2>", "e2 @ (-1)"),
    ("E(3)<-1>", "E(∅)<-2>", "e3 @ 1"),
];

pub fn expected(n: usize) -> &'static [Entry] {
    match n {
        1 => N1,
        2 => N2,
        3 => N3,
        _ => panic!("no drawing for n = {n}"),
    }
}

/// Every differential entry of the computed complex as `(source, target, morphism)`.
pub fn computed(n: usize) -> (BTreeSet<String>, BTreeSet<(String, String, String)>) {
    let z = NearbyKit::new(n, BaseRing::Integers).unwrap().z().unwrap();
    let obj = z.object();
    let labels = obj.summands().iter().map(|s| s.to_string()).collect();
    let entries = z
        .diff()
        .entries()
        .map(|(r, c, _)| {
            let m = z.diff().morphism(r, c).unwrap();
            (obj.get(c).to_string(), obj.get(r).to_string(), m.to_string())
        })
        .collect();
    (labels, entries)
}

/// `None` when the computed complex has exactly the transcribed entries.
pub fn compare(n: usize) -> Option<String> {
    let (labels, got) = computed(n);
    let want: BTreeSet<(String, String, String)> =
        expected(n).iter().map(|(s, t, m)| (s.to_string(), t.to_string(), m.to_string())).collect();
    for (s, t, _) in &want {
        if !labels.contains(s) || !labels.contains(t) {
            return Some(format!("summand {s} or {t} is missing"));
        }
    }
    let extra: Vec<_> = got.difference(&want).collect();
    let missing: Vec<_> = want.difference(&got).collect();
    if extra.is_empty() && missing.is_empty() {
        None
    } else {
        Some(format!("unexpected {extra:?}, missing {missing:?}"))
    }
}
