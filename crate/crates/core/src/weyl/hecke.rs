//! Standard-basis products in the Iwahori–Hecke algebra, normalized by
//! `(T_s - q)(T_s + 1) = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

use super::element::ExtAffine;
use super::word::Word;

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QPoly(Vec<i64>);

impl QPoly {
    pub fn constant(c: i64) -> QPoly {
        QPoly(vec![c]).trimmed()
    }

    pub fn q() -> QPoly {
        QPoly(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    fn trimmed(mut self) -> QPoly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let len = self.0.len().max(o.0.len());
        let v = (0..len).map(|k| self.0.get(k).unwrap_or(&0) + o.0.get(k).unwrap_or(&0)).collect();
        QPoly(v).trimmed()
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::default();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly(v).trimmed()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            let mag = c.unsigned_abs();
            let body = match (d, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".into(),
                (1, m) => format!("{m}q"),
                (d, 1) => format!("q^{d}"),
                (d, m) => format!("{m}q^{d}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite combination `Σ c_x(q)·T_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<ExtAffine, QPoly>,
}

impl HeckeElement {
    pub fn basis(x: ExtAffine) -> HeckeElement {
        let n = x.n();
        HeckeElement { n, terms: BTreeMap::from([(x, QPoly::constant(1))]) }
    }

    pub fn one(n: usize) -> HeckeElement {
        HeckeElement::basis(ExtAffine::identity(n))
    }

    pub fn terms(&self) -> &BTreeMap<ExtAffine, QPoly> {
        &self.terms
    }

    pub fn coefficient(&self, x: &ExtAffine) -> QPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, x: ExtAffine, c: QPoly) {
        let entry = self.terms.entry(x).or_default();
        *entry = &*entry + &c;
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// `T_s·h` by `T_s T_w = T_{sw}` when `sw > w`, else `(q-1)T_w + q T_{sw}`.
    pub fn left_mul_simple(&self, i: usize) -> HeckeElement {
        let s = ExtAffine::simple(self.n, i).expect("generator index in range");
        let q_minus_one = QPoly(vec![-1, 1]);
        let mut out = HeckeElement { n: self.n, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let sw = s.mul_unchecked(w);
            if sw.length() > w.length() {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(w.clone(), &q_minus_one * c);
                out.add_term(sw, &QPoly::q() * c);
            }
        }
        out
    }

    /// `(T_s + 1)·h`.
    pub fn left_mul_simple_plus_one(&self, i: usize) -> HeckeElement {
        let mut out = self.left_mul_simple(i);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// `h·T_{ω^m}`; length-zero elements just relabel.
    pub fn right_mul_length_zero(&self, z: &ExtAffine) -> HeckeElement {
        debug_assert_eq!(z.length(), 0);
        let terms = self.terms.iter().map(|(w, c)| (w.mul_unchecked(z), c.clone())).collect();
        HeckeElement { n: self.n, terms }
    }
}

/// One coefficient of a product, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeTerm {
    pub element: ExtAffine,
    pub coefficient: QPoly,
}

/// `(T_{s_{i₁}} + 1)⋯(T_{s_{i_k}} + 1)·T_{ω^m}`.
pub fn subexpression_product(word: &Word) -> HeckeElement {
    let n = word.n;
    let mut h = HeckeElement::one(n);
    for &i in word.letters.iter().rev() {
        h = h.left_mul_simple_plus_one(i);
    }
    h.right_mul_length_zero(&ExtAffine::omega(n).pow(word.omega as i64))
}

/// All coefficients of the product, and whether it equals `Σ_u T_u` over
/// subexpressions `u` with every coefficient `1`.
pub fn hecke_subexpression_check(word: &Word) -> (Vec<HeckeTerm>, bool) {
    let h = subexpression_product(word);
    let terms: Vec<HeckeTerm> =
        h.terms().iter().map(|(x, c)| HeckeTerm { element: x.clone(), coefficient: c.clone() }).collect();
    let subs = word.subexpressions();
    let distinct: std::collections::BTreeSet<&ExtAffine> = subs.iter().collect();
    let ok = distinct.len() == subs.len()
        && terms.len() == subs.len()
        && terms.iter().all(|t| t.coefficient.is_one() && distinct.contains(&t.element));
    (terms, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation() {
        let n = 3;
        let s = ExtAffine::simple(n, 1).unwrap();
        let h = HeckeElement::basis(s.clone()).left_mul_simple(1);
        assert_eq!(h.coefficient(&s), QPoly(vec![-1, 1]));
        assert_eq!(h.coefficient(&ExtAffine::identity(n)), QPoly::q());
    }

    #[test]
    fn commuting_pair_has_unit_coefficients() {
        let w = Word::new(4, vec![1, 3], 0).unwrap();
        let (terms, ok) = hecke_subexpression_check(&w);
        assert!(ok);
        assert_eq!(terms.len(), 4);
    }

    #[test]
    fn repetition_is_caught() {
        let w = Word::new(3, vec![1, 1], 0).unwrap();
        let h = subexpression_product(&w);
        let s = ExtAffine::simple(3, 1).unwrap();
        assert_eq!(h.coefficient(&s), QPoly(vec![1, 1]));
        assert_eq!(h.coefficient(&ExtAffine::identity(3)), QPoly(vec![1, 1]));
        assert!(!hecke_subexpression_check(&w).1);
        assert_eq!(QPoly(vec![1, 1]).to_string(), "q + 1");
    }

    #[test]
    fn poly_display() {
        assert_eq!(QPoly(vec![-1, 0, 3]).to_string(), "3q^2 - 1");
        assert_eq!(QPoly::default().to_string(), "0");
    }
}
