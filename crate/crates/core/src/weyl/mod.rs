//! The extended affine Weyl group of `PGL_n`: arithmetic, lengths, reduced
//! words, Bruhat order, admissible elements and Hecke products.

mod admissible;
mod bruhat;
mod element;
mod hecke;
mod word;

pub use admissible::{
    admissible_by_bruhat, admissible_elements, admissible_set, extreme_words, w_subset, Admissible, AdmissibleReport,
};
pub use bruhat::{bruhat_interval, bruhat_leq, bruhat_leq_lifting};
pub use element::ExtAffine;
pub use hecke::{hecke_subexpression_check, subexpression_product, HeckeElement, HeckeTerm, QPoly};
pub use word::{ball_length, fundamental_translation, length_ball, omega_conjugate, reduced_word, Word};

use crate::report::Certificate;
use crate::strata::{acceptable_orders, Subset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("n = {0} is out of range")]
    BadN(usize),
    #[error("sizes {0} and {1} differ")]
    SizeMismatch(usize, usize),
    #[error("generator index {i} is outside 1..={n}")]
    BadIndex { i: usize, n: usize },
    #[error("{0:?} is not a permutation")]
    NotPermutation(Vec<usize>),
    #[error("{0} is not a simple reflection")]
    NotSimple(String),
    #[error("{word} multiplies to {got}, expected {want}")]
    WordMismatch { word: String, got: String, want: String },
    #[error("w_{{{subset}}} depends on the order: {a} vs {b}")]
    OrderDependent { subset: String, a: String, b: String },
    #[error("{0}")]
    Subset(String),
    #[error("subset labelling is not a bijection: {0}")]
    Bijection(String),
}

/// Largest `n` for which the oracle cross-checks run by default.
pub const ORACLE_MAX_N: usize = 5;

/// Group laws, the extreme translations, the admissible bijection and the
/// Hecke subexpression criterion; with `oracles`, also the breadth-first
/// length and definition-based admissibility cross-checks.
pub fn verify_weyl(n: usize, oracles: bool) -> Result<Certificate, WeylError> {
    if n == 0 {
        return Err(WeylError::BadN(n));
    }
    let mut cert = Certificate::new("weyl", n);
    let omega = ExtAffine::omega(n);
    cert.assert("omega/length", omega.length() == 0, || format!("length {}", omega.length()));
    cert.assert("omega/order", omega.pow(n as i64).is_identity(), || "ω^n is not the identity".into());
    for i in 1..=n {
        let j = omega_conjugate(n, i);
        let want = if n == 1 { 1 } else { i % n + 1 };
        cert.assert(format!("omega/conjugate/{i}"), j.as_ref().is_ok_and(|&j| j == want), || format!("{j:?}"));
    }
    let product = (1..=n).try_fold(ExtAffine::identity(n), |acc, i| acc.mul(&ExtAffine::unit_translation(n, i)?))?;
    cert.assert("translations/product", product.is_identity(), || product.to_string());

    for i in 1..=n {
        match fundamental_translation(n, i) {
            Ok((t, w)) => {
                let ok = w.is_reduced() && t.length() + 1 == n.max(1);
                cert.assert(format!("extreme/{i}"), ok, || format!("{w} has length {}", t.length()));
                let (_, all_one) = hecke_subexpression_check(&w);
                cert.assert(format!("hecke/extreme/{i}"), all_one, || format!("{w}"));
            }
            Err(e) => {
                cert.assert(format!("extreme/{i}"), false, || e.to_string());
            }
        }
    }

    match admissible_elements(n) {
        Ok(r) => {
            cert.assert("admissible/count", r.count + 1 == 1 << n, || r.count.to_string());
        }
        Err(e) => {
            cert.assert("admissible/count", false, || e.to_string());
        }
    }
    let mut order_words = 0;
    let mut failures = 0;
    let mut bad = None;
    for subset in Subset::all(n).into_iter().filter(Subset::is_proper) {
        let orders = acceptable_orders(&subset).map_err(|e| WeylError::Subset(e.to_string()))?;
        for o in orders {
            let w = Word::new(n, o, 1)?;
            order_words += 1;
            if !hecke_subexpression_check(&w).1 {
                failures += 1;
                bad.get_or_insert_with(|| w.to_string());
            }
        }
    }
    cert.assert("hecke/acceptable-orders", bad.is_none(), || {
        format!("{failures} of {order_words} words fail, first {}", bad.clone().unwrap_or_default())
    });
    if n >= 2 {
        let w = Word::new(n, vec![1, 1], 0)?;
        let c = subexpression_product(&w).coefficient(&ExtAffine::simple(n, 1)?);
        cert.assert("hecke/repetition-control", c == &QPoly::constant(1) + &QPoly::q(), || format!("coefficient {c}"));
    }

    if oracles {
        let ball = length_ball(n, n);
        let agree = ball.iter().all(|(x, &d)| x.length() == d);
        cert.assert("oracle/length", agree, || "inversion count differs from word length".into());
        let by_def = admissible_by_bruhat(n)?;
        let by_words = admissible_set(n)?;
        cert.assert("oracle/admissible", by_def == by_words, || {
            format!("{} by definition, {} by subexpressions", by_def.len(), by_words.len())
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_small() {
        for n in 1..=5 {
            let c = verify_weyl(n, true).unwrap();
            assert!(c.passed(), "{c}");
        }
    }
}
