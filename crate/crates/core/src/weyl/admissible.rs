//! Elements below some `t_{e_i}`, and their labelling by proper subsets.

use std::collections::BTreeSet;

use serde::Serialize;

use super::bruhat::bruhat_leq_lifting;
use super::element::ExtAffine;
use super::word::{fundamental_translation, length_ball, Word};
use super::WeylError;
use crate::exec;
use crate::strata::{acceptable_orders, Subset};

/// The `n` reduced words for `t_{e_1}, …, t_{e_n}`.
pub fn extreme_words(n: usize) -> Result<Vec<Word>, WeylError> {
    (1..=n).map(|i| fundamental_translation(n, i).map(|(_, w)| w)).collect()
}

/// Every subexpression of every extreme word.
pub fn admissible_set(n: usize) -> Result<BTreeSet<ExtAffine>, WeylError> {
    let words = extreme_words(n)?;
    let parts = exec::map_indices(words.len(), |k| words[k].subexpressions());
    Ok(parts.into_iter().flatten().collect())
}

/// `w_I = s_{i₁}⋯s_{i_k}·ω` for an acceptable order, checked to be the same
/// for every acceptable order. Returns the element and the first word.
pub fn w_subset(set: &Subset) -> Result<(ExtAffine, Word), WeylError> {
    let n = set.n();
    let orders = acceptable_orders(set).map_err(|e| WeylError::Subset(e.to_string()))?;
    let mut words = orders.into_iter().map(|o| Word::new(n, o, 1));
    let first = words.next().expect("every proper subset has an acceptable order")?;
    let x = first.product();
    for w in words {
        let w = w?;
        let y = w.product();
        if y != x {
            return Err(WeylError::OrderDependent { subset: set.label(), a: first.to_string(), b: w.to_string() });
        }
    }
    Ok((x, first))
}

#[derive(Debug, Clone, Serialize)]
pub struct Admissible {
    pub subset: String,
    pub element: ExtAffine,
    pub word: String,
    pub length: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdmissibleReport {
    pub n: usize,
    pub count: usize,
    pub elements: Vec<Admissible>,
}

/// Enumerates the admissible set and checks that `I ↦ w_I` is a bijection
/// from proper subsets onto it, with `ℓ(w_I) = |I|` and reduced words.
pub fn admissible_elements(n: usize) -> Result<AdmissibleReport, WeylError> {
    if n == 0 {
        return Err(WeylError::BadN(n));
    }
    let set = admissible_set(n)?;
    let want = (1usize << n) - 1;
    if set.len() != want {
        return Err(WeylError::Bijection(format!("{} admissible elements, expected {want}", set.len())));
    }
    let mut elements = Vec::with_capacity(want);
    let mut image = BTreeSet::new();
    for subset in Subset::all(n).into_iter().filter(Subset::is_proper) {
        let (x, word) = w_subset(&subset)?;
        if x.length() != subset.len() || !word.is_reduced() {
            return Err(WeylError::Bijection(format!("w_{{{}}} = {word} has length {}", subset.label(), x.length())));
        }
        if !set.contains(&x) {
            return Err(WeylError::Bijection(format!("w_{{{}}} = {word} is not admissible", subset.label())));
        }
        if !image.insert(x.clone()) {
            return Err(WeylError::Bijection(format!("w_{{{}}} = {word} is hit twice", subset.label())));
        }
        elements.push(Admissible { subset: subset.label(), length: x.length(), element: x, word: word.to_string() });
    }
    Ok(AdmissibleReport { n, count: set.len(), elements })
}

/// The admissible set recomputed from the definition: all `x = uω` with
/// `ℓ(u) ≤ n-1` lying below some `t_{e_i}`, decided by the lifting property.
pub fn admissible_by_bruhat(n: usize) -> Result<BTreeSet<ExtAffine>, WeylError> {
    let tops: Vec<ExtAffine> = (1..=n).map(|i| fundamental_translation(n, i).map(|(t, _)| t)).collect::<Result<_, _>>()?;
    let omega = ExtAffine::omega(n);
    let ball: Vec<ExtAffine> = length_ball(n, n.saturating_sub(1)).into_keys().collect();
    let keep = exec::map_indices(ball.len(), |k| {
        let x = ball[k].mul_unchecked(&omega);
        tops.iter().any(|t| bruhat_leq_lifting(&x, t)).then_some(x)
    });
    Ok(keep.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = admissible_elements(2).unwrap();
        assert_eq!(r.count, 3);
        let words: BTreeSet<String> = r.elements.iter().map(|a| a.word.clone()).collect();
        assert_eq!(words, ["ω", "s1 ω", "s2 ω"].into_iter().map(String::from).collect());
        assert_eq!(admissible_elements(3).unwrap().count, 7);
        assert_eq!(admissible_elements(1).unwrap().count, 1);
    }

    #[test]
    fn commuting_orders_agree() {
        let s = Subset::new(4, [1, 3]).unwrap();
        let (x, _) = w_subset(&s).unwrap();
        assert_eq!(x, Word::new(4, vec![3, 1], 1).unwrap().product());
        assert_eq!(x, Word::new(4, vec![1, 3], 1).unwrap().product());
    }

    #[test]
    fn definition_oracle_agrees() {
        for n in 1..=4 {
            assert_eq!(admissible_set(n).unwrap(), admissible_by_bruhat(n).unwrap(), "n={n}");
        }
    }
}
