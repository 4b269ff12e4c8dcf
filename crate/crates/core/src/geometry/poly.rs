//! Sparse Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a monomial; negative entries are allowed.
pub type Exponents = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, i128>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> Poly {
        Poly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, 1)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: i128) -> Poly {
        debug_assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    /// The variable with index `v`, raised to `power`.
    pub fn var_pow(nvars: usize, v: usize, power: i32) -> Poly {
        let mut e = vec![0; nvars];
        e[v] = power;
        Poly::monomial(nvars, e, 1)
    }

    pub fn var(nvars: usize, v: usize) -> Poly {
        Poly::var_pow(nvars, v, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Poly::one(self.nvars)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, i128)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn insert(&mut self, e: Exponents, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        self.terms.retain(|_, c| *c != 0);
    }

    /// Replaces every variable `v` by the monomial `images[v]`.
    pub fn substitute_monomials(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        self.terms.iter().fold(Poly::zero(self.nvars), |acc, (e, c)| {
            let mono = e.iter().enumerate().fold(Poly::constant(self.nvars, *c), |m, (v, &k)| {
                let base = &images[v];
                &m * &base.pow(k)
            });
            &acc + &mono
        })
    }

    /// `self^k` for a monomial or `k ≥ 0`.
    pub fn pow(&self, k: i32) -> Poly {
        if k >= 0 {
            return (0..k).fold(Poly::one(self.nvars), |acc, _| &acc * self);
        }
        let (e, c) = self.terms.iter().next().expect("nonzero monomial");
        assert!(self.terms.len() == 1 && c.abs() == 1, "only unit monomials have inverses");
        let inv = Poly::monomial(self.nvars, e.iter().map(|x| -x).collect(), *c);
        (0..-k).fold(Poly::one(self.nvars), |acc, _| &acc * &inv)
    }

    /// Sets the listed variables to `1`.
    pub fn specialize_to_one(&self, vars: &[usize]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &v in vars {
                e[v] = 0;
            }
            out.insert(e, *c);
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(v, &p)| if p == 1 { names[v].clone() } else { format!("{}^{p}", names[v]) })
                .collect();
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if k > 0 {
                out.push(' ');
            }
            let mag = c.unsigned_abs();
            match (mag, mono.is_empty()) {
                (m, true) => out.push_str(&m.to_string()),
                (1, false) => out.push_str(&mono.join("")),
                (m, false) => out.push_str(&format!("{m}{}", mono.join(""))),
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), *c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.insert(e, ca.checked_mul(*cb).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|v| format!("v{}", v + 1)).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_on_small_cases() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        assert_eq!(&s * &d, &(&x * &x) - &(&y * &y));
        assert!((&s - &s).is_zero());
        assert_eq!((&x * &x).degree(), Some(2));
    }

    #[test]
    fn laurent_inverse() {
        let x = Poly::var(1, 0);
        assert!((&x * &x.pow(-1)).is_one());
    }

    #[test]
    fn substitution() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &x) + &Poly::constant(2, 3);
        let q = p.substitute_monomials(&[&x * &y, y.clone()]);
        assert_eq!(q, &(&(&x * &x) * &(&y * &y)) + &Poly::constant(2, 3));
        assert_eq!(q.specialize_to_one(&[1]), p);
    }
}
