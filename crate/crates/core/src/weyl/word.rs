//! Expressions `s_{i₁}⋯s_{i_k}·ω^m` and length oracles.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::element::{check_index, ExtAffine};
use super::WeylError;

/// `s_{letters[0]} ⋯ s_{letters[k-1]}·ω^omega`, indices one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    pub n: usize,
    pub letters: Vec<usize>,
    pub omega: usize,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>, omega: usize) -> Result<Word, WeylError> {
        for &i in &letters {
            check_index(n, i)?;
        }
        Ok(Word { n, letters, omega: omega % n.max(1) })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> ExtAffine {
        let n = self.n;
        let mut acc = ExtAffine::identity(n);
        for &i in &self.letters {
            acc = acc.mul_unchecked(&ExtAffine::simple(n, i).expect("checked on construction"));
        }
        acc.mul_unchecked(&ExtAffine::omega(n).pow(self.omega as i64))
    }

    pub fn is_reduced(&self) -> bool {
        self.product().length() == self.len()
    }

    /// Keeps the letters at the positions set in `mask`, and the power of `ω`.
    pub fn subword(&self, mask: u64) -> Word {
        let letters = self.letters.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        Word { n: self.n, letters, omega: self.omega }
    }

    /// Products of all `2^k` subexpressions, in mask order.
    pub fn subexpressions(&self) -> Vec<ExtAffine> {
        assert!(self.len() < 64, "word too long to enumerate subexpressions");
        (0..1u64 << self.len()).map(|mask| self.subword(mask).product()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        match self.omega {
            0 if parts.is_empty() => parts.push("e".into()),
            0 => {}
            1 => parts.push("ω".into()),
            m => parts.push(format!("ω^{m}")),
        }
        f.write_str(&parts.join(" "))
    }
}

/// A reduced expression, found by peeling left descents off the Coxeter part.
pub fn reduced_word(x: &ExtAffine) -> Word {
    let n = x.n();
    let m = x.omega_power();
    let mut u = x.coxeter_part();
    let mut letters = Vec::new();
    while u.length() > 0 {
        let (i, next) = (1..=n)
            .map(|i| (i, ExtAffine::simple(n, i).expect("in range").mul_unchecked(&u)))
            .find(|(_, v)| v.length() < u.length())
            .expect("an element of positive length has a left descent");
        letters.push(i);
        u = next;
    }
    Word { n, letters, omega: m }
}

/// The `j` with `ω·s_i·ω⁻¹ = s_j`, found by comparing against every generator.
pub fn omega_conjugate(n: usize, i: usize) -> Result<usize, WeylError> {
    let s = ExtAffine::simple(n, i)?;
    let w = ExtAffine::omega(n);
    let conj = w.mul_unchecked(&s).mul_unchecked(&w.inv());
    (1..=n)
        .find(|&j| ExtAffine::simple(n, j).is_ok_and(|t| t == conj))
        .ok_or(WeylError::NotSimple(conj.to_string()))
}

/// `t_{e_i} = s_{i-1} s_{i-2} ⋯ s_{i+1}·ω` (indices mod `n`), checked.
pub fn fundamental_translation(n: usize, i: usize) -> Result<(ExtAffine, Word), WeylError> {
    let t = ExtAffine::unit_translation(n, i)?;
    let letters = (1..n).map(|k| (i + n - 1 - k) % n + 1).collect();
    let word = Word::new(n, letters, 1)?;
    let got = word.product();
    if got != t {
        return Err(WeylError::WordMismatch { word: word.to_string(), got: got.to_string(), want: t.to_string() });
    }
    Ok((t, word))
}

/// Breadth-first ball of radius `r` in the Coxeter part, with word lengths.
pub fn length_ball(n: usize, r: usize) -> HashMap<ExtAffine, usize> {
    let gens: Vec<ExtAffine> = (1..=n).map(|i| ExtAffine::simple(n, i).expect("in range")).collect();
    let mut dist = HashMap::new();
    dist.insert(ExtAffine::identity(n), 0);
    let mut frontier = vec![ExtAffine::identity(n)];
    for d in 1..=r {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = s.mul_unchecked(x);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Word length of `x` when its Coxeter part lies within `ball`.
pub fn ball_length(ball: &HashMap<ExtAffine, usize>, x: &ExtAffine) -> Option<usize> {
    ball.get(&x.coxeter_part()).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_rotates_generators() {
        assert_eq!(omega_conjugate(3, 1).unwrap(), 2);
        assert_eq!(omega_conjugate(3, 3).unwrap(), 1);
        for n in 2..=6 {
            for i in 1..=n {
                assert_eq!(omega_conjugate(n, i).unwrap(), i % n + 1);
            }
        }
    }

    #[test]
    fn extreme_translations() {
        let (t, w) = fundamental_translation(3, 3).unwrap();
        assert_eq!(w.letters, vec![2, 1]);
        assert_eq!(t, ExtAffine::translation(&[0, 0, 1]));
        let (_, w) = fundamental_translation(3, 1).unwrap();
        assert_eq!(w.letters, vec![3, 2]);
        let (t, w) = fundamental_translation(1, 1).unwrap();
        assert!(w.is_empty());
        assert_eq!(t, ExtAffine::omega(1));
        for n in 1..=8 {
            for i in 1..=n {
                let (t, w) = fundamental_translation(n, i).unwrap();
                assert_eq!(t.length(), n - 1);
                assert!(w.is_reduced());
            }
        }
    }

    #[test]
    fn inversion_length_matches_word_length() {
        for n in 2..=5 {
            let ball = length_ball(n, n);
            for (x, &d) in &ball {
                assert_eq!(x.length(), d, "n={n} x={x}");
                let xw = x.mul_unchecked(&ExtAffine::omega(n));
                assert_eq!(ball_length(&ball, &xw), Some(d));
            }
        }
    }

    #[test]
    fn greedy_words_are_reduced() {
        let n = 4;
        for x in length_ball(n, 4).keys() {
            let x = x.mul_unchecked(&ExtAffine::omega(n).pow(3));
            let w = reduced_word(&x);
            assert_eq!(w.product(), x);
            assert!(w.is_reduced());
        }
    }
}
