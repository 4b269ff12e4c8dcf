//! Bruhat order on `W_ext`, comparing Coxeter parts only when the powers of
//! `ω` agree.

use std::collections::HashSet;

use super::element::ExtAffine;
use super::word::reduced_word;

/// Subword property against one reduced word of `y`.
pub fn bruhat_leq(x: &ExtAffine, y: &ExtAffine) -> bool {
    if x.n() != y.n() || x.omega_power() != y.omega_power() || x.length() > y.length() {
        return false;
    }
    let word = reduced_word(y);
    word.subexpressions().contains(x)
}

/// All `u ≤ y`, as the set of subword products.
pub fn bruhat_interval(y: &ExtAffine) -> HashSet<ExtAffine> {
    reduced_word(y).subexpressions().into_iter().collect()
}

/// The lifting property: for a left descent `s` of `v`, `u ≤ v` iff
/// `su ≤ sv` when `s` also descends `u`, and iff `u ≤ sv` otherwise.
pub fn bruhat_leq_lifting(x: &ExtAffine, y: &ExtAffine) -> bool {
    if x.n() != y.n() || x.omega_power() != y.omega_power() {
        return false;
    }
    leq(x.coxeter_part(), y.coxeter_part())
}

fn leq(u: ExtAffine, v: ExtAffine) -> bool {
    let (lu, lv) = (u.length(), v.length());
    if lu > lv {
        return false;
    }
    if lv == 0 {
        return u == v;
    }
    let n = v.n();
    let (s, sv) = (1..=n)
        .map(|i| ExtAffine::simple(n, i).expect("in range"))
        .map(|s| {
            let sv = s.mul_unchecked(&v);
            (s, sv)
        })
        .find(|(_, sv)| sv.length() < lv)
        .expect("positive length has a descent");
    let su = s.mul_unchecked(&u);
    if su.length() < lu {
        leq(su, sv)
    } else {
        leq(u, sv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::word::{fundamental_translation, length_ball, Word};

    #[test]
    fn examples() {
        let n = 4;
        let x = Word::new(n, vec![1], 1).unwrap().product();
        let y = Word::new(n, vec![1, 3], 1).unwrap().product();
        assert!(bruhat_leq(&x, &y));
        assert!(!bruhat_leq(&y, &x));
        let omega = ExtAffine::omega(n);
        for i in 1..=n {
            let t = fundamental_translation(n, i).unwrap().0;
            assert!(bruhat_leq(&omega, &t));
        }
        let t1 = fundamental_translation(n, 1).unwrap().0;
        let t2 = fundamental_translation(n, 2).unwrap().0;
        assert!(!bruhat_leq(&t1, &t2));
        assert!(!bruhat_leq(&ExtAffine::identity(n), &t1));
    }

    #[test]
    fn subword_and_lifting_agree() {
        let n = 3;
        let ball: Vec<ExtAffine> = length_ball(n, 3).into_keys().collect();
        for x in &ball {
            for y in &ball {
                assert_eq!(bruhat_leq(x, y), bruhat_leq_lifting(x, y), "{x} vs {y}");
            }
        }
    }
}
