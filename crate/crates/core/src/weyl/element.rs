//! Elements `w·t_λ` of `S_n ⋉ ℤⁿ/ℤ(1,…,1)`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::WeylError;

/// `w·t_λ` with `w` a permutation of `[n]` and `λ` a coweight stored with
/// minimum entry zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffine {
    /// `perm[i] = w(i)`, zero-based.
    perm: Vec<usize>,
    coweight: Vec<i64>,
}

fn normalized(mut v: Vec<i64>) -> Vec<i64> {
    if let Some(&m) = v.iter().min() {
        v.iter_mut().for_each(|x| *x -= m);
    }
    v
}

impl ExtAffine {
    pub fn identity(n: usize) -> ExtAffine {
        ExtAffine { perm: (0..n).collect(), coweight: vec![0; n] }
    }

    /// Builds from a one-line permutation (one-based) and any coweight representative.
    pub fn new(perm_one_line: &[usize], coweight: &[i64]) -> Result<ExtAffine, WeylError> {
        let n = perm_one_line.len();
        if coweight.len() != n {
            return Err(WeylError::SizeMismatch(n, coweight.len()));
        }
        let mut seen = vec![false; n];
        for &p in perm_one_line {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(WeylError::NotPermutation(perm_one_line.to_vec()));
            }
        }
        Ok(ExtAffine { perm: perm_one_line.iter().map(|p| p - 1).collect(), coweight: normalized(coweight.to_vec()) })
    }

    pub fn translation(coweight: &[i64]) -> ExtAffine {
        ExtAffine { perm: (0..coweight.len()).collect(), coweight: normalized(coweight.to_vec()) }
    }

    /// `t_{e_i}`, one-based.
    pub fn unit_translation(n: usize, i: usize) -> Result<ExtAffine, WeylError> {
        check_index(n, i)?;
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Ok(ExtAffine::translation(&v))
    }

    fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        p
    }

    /// `s_i` for `1 ≤ i ≤ n`; `s_n = s_{α₀}·t_{-α₀}` is the affine reflection.
    pub fn simple(n: usize, i: usize) -> Result<ExtAffine, WeylError> {
        check_index(n, i)?;
        if n == 1 {
            return Ok(ExtAffine::identity(1));
        }
        if i < n {
            return Ok(ExtAffine { perm: Self::transposition(n, i - 1, i), coweight: vec![0; n] });
        }
        let mut minus_root = vec![0; n];
        minus_root[0] = -1;
        minus_root[n - 1] = 1;
        Ok(ExtAffine { perm: Self::transposition(n, 0, n - 1), coweight: normalized(minus_root) })
    }

    /// `ω = s_1 s_2 ⋯ s_{n-1}·t_{e_n}`.
    pub fn omega(n: usize) -> ExtAffine {
        let perm = (0..n).map(|i| (i + 1) % n).collect();
        let mut v = vec![0; n];
        v[n - 1] = 1;
        ExtAffine { perm, coweight: normalized(v) }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm_one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn coweight(&self) -> &[i64] {
        &self.coweight
    }

    pub fn is_identity(&self) -> bool {
        *self == ExtAffine::identity(self.n())
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// `(wλ)_{w(i)} = λ_i`.
    fn act(perm: &[usize], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = v[i];
        }
        out
    }

    /// `(w t_λ)(v t_μ) = wv·t_{v⁻¹λ + μ}`.
    pub fn mul(&self, o: &ExtAffine) -> Result<ExtAffine, WeylError> {
        if self.n() != o.n() {
            return Err(WeylError::SizeMismatch(self.n(), o.n()));
        }
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &ExtAffine) -> ExtAffine {
        let perm = o.perm.iter().map(|&j| self.perm[j]).collect();
        let pulled = Self::act(&o.inverse_perm(), &self.coweight);
        let coweight = pulled.iter().zip(&o.coweight).map(|(a, b)| a + b).collect();
        ExtAffine { perm, coweight: normalized(coweight) }
    }

    /// `(w t_λ)⁻¹ = w⁻¹·t_{-wλ}`.
    pub fn inv(&self) -> ExtAffine {
        let moved = Self::act(&self.perm, &self.coweight);
        ExtAffine { perm: self.inverse_perm(), coweight: normalized(moved.iter().map(|x| -x).collect()) }
    }

    pub fn pow(&self, k: i64) -> ExtAffine {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(ExtAffine::identity(self.n()), |acc, _| acc.mul_unchecked(&base))
    }

    /// The `m` with `x ∈ W_aff·ω^m`: the coweight sum mod `n`.
    pub fn omega_power(&self) -> usize {
        let s: i64 = self.coweight.iter().sum();
        s.rem_euclid(self.n() as i64) as usize
    }

    /// `x·ω^{-m}`, which lies in the affine Weyl group.
    pub fn coxeter_part(&self) -> ExtAffine {
        self.mul_unchecked(&ExtAffine::omega(self.n()).pow(-(self.omega_power() as i64)))
    }

    /// Length by counting affine inversions: writing `x = t_μ·w`,
    /// `ℓ(x) = Σ_{i<j} |μ_i - μ_j - [w⁻¹(i) > w⁻¹(j)]|`.
    pub fn length(&self) -> usize {
        let mu = Self::act(&self.perm, &self.coweight);
        let inv = self.inverse_perm();
        let n = self.n();
        let mut total = 0;
        for i in 0..n {
            for j in i + 1..n {
                let descent = i64::from(inv[i] > inv[j]);
                total += (mu[i] - mu[j] - descent).unsigned_abs() as usize;
            }
        }
        total
    }
}

pub(crate) fn check_index(n: usize, i: usize) -> Result<(), WeylError> {
    if i == 0 || i > n {
        Err(WeylError::BadIndex { i, n })
    } else {
        Ok(())
    }
}

impl Serialize for ExtAffine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExtAffine", 3)?;
        st.serialize_field("perm", &self.perm_one_line())?;
        st.serialize_field("coweight", &self.coweight)?;
        st.serialize_field("omega", &self.omega_power())?;
        st.end()
    }
}

impl fmt::Display for ExtAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.perm_one_line().iter().map(ToString::to_string).collect();
        let c: Vec<String> = self.coweight.iter().map(ToString::to_string).collect();
        write!(f, "[{}; {}]", p.join(" "), c.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_involutions() {
        for n in 2..=5 {
            for i in 1..=n {
                let s = ExtAffine::simple(n, i).unwrap();
                assert!(s.mul(&s).unwrap().is_identity(), "n={n} i={i}");
                assert_eq!(s.length(), 1);
            }
        }
    }

    #[test]
    fn omega_has_order_n_and_length_zero() {
        for n in 1..=6 {
            let w = ExtAffine::omega(n);
            assert_eq!(w.length(), 0);
            assert!(w.pow(n as i64).is_identity());
            for k in 1..n {
                assert!(!w.pow(k as i64).is_identity());
            }
        }
    }

    #[test]
    fn unit_translations_multiply_to_one() {
        for n in 1..=6 {
            let prod = (1..=n).fold(ExtAffine::identity(n), |acc, i| acc.mul(&ExtAffine::unit_translation(n, i).unwrap()).unwrap());
            assert!(prod.is_identity());
        }
    }

    #[test]
    fn conjugating_a_translation_moves_it() {
        let w = ExtAffine::new(&[2, 4, 1, 3], &[0; 4]).unwrap();
        let t = ExtAffine::translation(&[3, 0, 1, 0]);
        let conj = w.mul(&t).unwrap().mul(&w.inv()).unwrap();
        assert_eq!(conj, ExtAffine::translation(&[1, 3, 0, 0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExtAffine::new(&[1, 1], &[0, 0]).is_err());
        assert!(ExtAffine::simple(3, 4).is_err());
        assert!(ExtAffine::identity(2).mul(&ExtAffine::identity(3)).is_err());
    }
}
