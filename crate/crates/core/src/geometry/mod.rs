//! The open chart `u: 𝔸ⁿ → Gr` of the global Schubert variety for the first
//! fundamental coweight, checked as exact polynomial identities.
//!
//! A point is `(y, L₁, …, L_n)` with `g_i(y)L_i ⊂ L_{i+1}` cyclically, where
//! `g_i(y)` scales the `i`-th coordinate by `y`. Proportionality of two
//! projective vectors is decided by the vanishing of all 2×2 minors.

mod poly;

pub use poly::{Exponents, Poly};

use serde::Serialize;

use crate::exec;
use crate::report::Certificate;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("n = {0} is out of range")]
    BadN(usize),
    #[error("index ({j}, {k}) is outside 1..={n}")]
    BadIndex { j: usize, k: usize, n: usize },
}

/// Largest `n` accepted; variable exponents stay far from overflow.
pub const MAX_N: usize = 16;

/// Variable layout shared by every polynomial: `x₁…x_n`, then the torus
/// coordinates `y₁…y_n`, then the loop parameter `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vars {
    pub n: usize,
}

impl Vars {
    pub fn count(self) -> usize {
        2 * self.n + 1
    }

    pub fn x(self, i: usize) -> Poly {
        Poly::var(self.count(), i - 1)
    }

    pub fn y(self, i: usize) -> Poly {
        Poly::var(self.count(), self.n + i - 1)
    }

    pub fn z(self) -> Poly {
        Poly::var(self.count(), 2 * self.n)
    }

    pub fn one(self) -> Poly {
        Poly::one(self.count())
    }

    pub fn names(self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        v.extend((1..=self.n).map(|i| format!("y{i}")));
        v.push("z".into());
        v
    }

    pub fn show(self, p: &Poly) -> String {
        p.fmt_with(&self.names())
    }

    /// `x₁⋯x_n`.
    pub fn full_product(self) -> Poly {
        (1..=self.n).fold(self.one(), |acc, i| &acc * &self.x(i))
    }
}

/// The product of `x_j, x_{j+1}, …, x_k` taken cyclically, with the empty
/// product in place of the full one.
pub fn p_poly(j: usize, k: usize, n: usize) -> Result<Poly, GeometryError> {
    if n == 0 || j == 0 || k == 0 || j > n || k > n {
        return Err(GeometryError::BadIndex { j, k, n });
    }
    let vars = Vars { n };
    let steps = (k + n - j) % n + 1;
    if steps == n {
        return Ok(vars.one());
    }
    Ok((0..steps).fold(vars.one(), |acc, s| &acc * &vars.x((j - 1 + s) % n + 1)))
}

/// `u(x) = (x₁⋯x_n, u₁, …, u_n)` with `u_k = [p_{k,n} : p_{k,1} : ⋯ : p_{k,n-1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub vars: Vars,
    pub y: Poly,
    /// `lines[k-1][c-1]` is the `c`-th homogeneous coordinate `a_{kc}` of `L_k`.
    pub lines: Vec<Vec<Poly>>,
}

impl Chart {
    pub fn new(n: usize) -> Result<Chart, GeometryError> {
        if n == 0 || n > MAX_N {
            return Err(GeometryError::BadN(n));
        }
        let vars = Vars { n };
        let lines = (1..=n)
            .map(|k| (1..=n).map(|c| p_poly(k, (c + n - 2) % n + 1, n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chart { vars, y: vars.full_product(), lines })
    }

    pub fn n(&self) -> usize {
        self.vars.n
    }

    pub fn show_line(&self, k: usize) -> String {
        let parts: Vec<String> = self.lines[k - 1].iter().map(|p| self.vars.show(p)).collect();
        format!("[{}]", parts.join(" : "))
    }

    /// `v(u(x))`: `a_{k,k+1}/a_{kk}` for each `k` (cyclically), or `y` itself
    /// on the line, where the single coordinate ratio is trivially one.
    pub fn inverse_coordinates(&self) -> Vec<(Poly, Poly)> {
        let n = self.n();
        if n == 1 {
            return vec![(self.y.clone(), self.vars.one())];
        }
        (1..=n).map(|k| (self.lines[k - 1][k % n].clone(), self.lines[k - 1][k - 1].clone())).collect()
    }
}

/// `g_i(y)·v`.
pub fn apply_g(i: usize, y: &Poly, v: &[Poly]) -> Vec<Poly> {
    v.iter().enumerate().map(|(c, p)| if c + 1 == i { y * p } else { p.clone() }).collect()
}

/// The first nonvanishing 2×2 minor of the pair, as `(a, b, minor)`.
pub fn first_nonzero_minor(u: &[Poly], v: &[Poly]) -> Option<(usize, usize, Poly)> {
    let d = u.len();
    for a in 0..d {
        for b in a + 1..d {
            let m = &(&u[a] * &v[b]) - &(&u[b] * &v[a]);
            if !m.is_zero() {
                return Some((a + 1, b + 1, m));
            }
        }
    }
    None
}

pub fn proportional(u: &[Poly], v: &[Poly]) -> bool {
    first_nonzero_minor(u, v).is_none()
}

/// The torus images `x_i ↦ α_i·x_i` with `α_i = y_{i+1}/y_i` for `i < n` and
/// `α_n = z·y₁/y_n`, as monomial substitutions on every variable.
fn character_substitution(vars: Vars) -> Vec<Poly> {
    let n = vars.n;
    let mut images: Vec<Poly> = (1..=n)
        .map(|i| {
            let alpha = if i < n {
                &vars.y(i + 1) * &vars.y(i).pow(-1)
            } else {
                &(&vars.z() * &vars.y(1)) * &vars.y(n).pow(-1)
            };
            &alpha * &vars.x(i)
        })
        .collect();
    images.extend((1..=n).map(|i| vars.y(i)));
    images.push(vars.z());
    images
}

/// `(t, z)·(y, L₁, …, L_n) = (zy, tL₁, t·g₁(z)L₂, …, t·g₁(z)⋯g_{n-1}(z)L_n)`.
fn acted_line(vars: Vars, k: usize, line: &[Poly]) -> Vec<Poly> {
    line.iter()
        .enumerate()
        .map(|(c, p)| {
            let scaled = &vars.y(c + 1) * p;
            if c + 1 < k {
                &vars.z() * &scaled
            } else {
                scaled
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LineSummary {
    pub k: usize,
    pub line: String,
}

/// Every chart identity for one `n`.
pub fn verify_chart(n: usize) -> Result<(Certificate, Vec<LineSummary>), GeometryError> {
    let chart = Chart::new(n)?;
    let vars = chart.vars;
    let mut cert = Certificate::new("chart", n);

    let mut degree_ok = true;
    let mut top = 0;
    for j in 1..=n {
        for k in 1..=n {
            let d = p_poly(j, k, n)?.degree().unwrap_or(0);
            degree_ok &= d < n as i32;
            top = top.max(d);
        }
    }
    cert.assert("p/degree", degree_ok && top == n as i32 - 1, || format!("largest degree {top}"));

    for k in 1..=n {
        let ones: Vec<usize> = (1..=n).filter(|&c| chart.lines[k - 1][c - 1].is_one()).collect();
        cert.assert(format!("unit-coordinate/{k}"), ones == [k], || format!("constant coordinates {ones:?}"));
    }

    let membership = exec::map_indices(n, |i| {
        let next = &chart.lines[(i + 1) % n];
        first_nonzero_minor(&apply_g(i + 1, &chart.y, &chart.lines[i]), next)
    });
    for (i, m) in membership.into_iter().enumerate() {
        cert.assert(format!("membership/{}", i + 1), m.is_none(), || {
            let (a, b, p) = m.clone().expect("failure has a minor");
            format!("minor ({a}, {b}) = {}", vars.show(&p))
        });
    }

    for (k, (num, den)) in chart.inverse_coordinates().into_iter().enumerate() {
        let ok = num == &vars.x(k + 1) * &den && !den.is_zero();
        cert.assert(format!("inverse/{}", k + 1), ok, || format!("{} / {}", vars.show(&num), vars.show(&den)));
    }
    cert.assert("f-of-u", chart.y == vars.full_product(), || vars.show(&chart.y));

    let subst = character_substitution(vars);
    let torus: Vec<usize> = (n..vars.count()).collect();
    let moved_y = chart.y.substitute_monomials(&subst);
    cert.assert("equivariance/y", moved_y == &vars.z() * &chart.y, || vars.show(&moved_y));
    let lines = exec::map_indices(n, |k| {
        let moved: Vec<Poly> = chart.lines[k].iter().map(|p| p.substitute_monomials(&subst)).collect();
        let acted = acted_line(vars, k + 1, &chart.lines[k]);
        let minor = first_nonzero_minor(&moved, &acted);
        let at_identity: Vec<Poly> = moved.iter().map(|p| p.specialize_to_one(&torus)).collect();
        (minor, at_identity == chart.lines[k])
    });
    for (k, (minor, fixed)) in lines.into_iter().enumerate() {
        cert.assert(format!("equivariance/{}", k + 1), minor.is_none(), || {
            let (a, b, p) = minor.clone().expect("failure has a minor");
            format!("minor ({a}, {b}) = {}", vars.show(&p))
        });
        cert.assert(format!("equivariance/identity/{}", k + 1), fixed, || "not fixed by the identity".into());
    }

    let summary = (1..=n).map(|k| LineSummary { k, line: chart.show_line(k) }).collect();
    Ok((cert, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(n: usize, p: &Poly) -> String {
        Vars { n }.show(p)
    }

    #[test]
    fn p_examples() {
        assert!(p_poly(2, 1, 3).unwrap().is_one());
        assert_eq!(show(4, &p_poly(1, 2, 4).unwrap()), "x1x2");
        assert_eq!(show(4, &p_poly(3, 1, 4).unwrap()), "x1x3x4");
        assert!(p_poly(1, 4, 4).unwrap().is_one());
        assert!(p_poly(0, 1, 4).is_err());
    }

    #[test]
    fn displayed_chart_for_four() {
        let c = Chart::new(4).unwrap();
        let want = [
            "[1 : x1 : x1x2 : x1x2x3]",
            "[x2x3x4 : 1 : x2 : x2x3]",
            "[x3x4 : x1x3x4 : 1 : x3]",
            "[x4 : x1x4 : x1x2x4 : 1]",
        ];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(c.show_line(k + 1), *w);
        }
    }

    #[test]
    fn two_dimensional_minor() {
        let c = Chart::new(2).unwrap();
        let moved = apply_g(1, &c.y, &c.lines[0]);
        assert_eq!(show(2, &moved[0]), "x1x2");
        assert!(proportional(&moved, &c.lines[1]));
        let inv = c.inverse_coordinates();
        assert_eq!(inv[1].0, c.vars.x(2));
    }

    #[test]
    fn all_identities_hold() {
        for n in 1..=6 {
            let (cert, _) = verify_chart(n).unwrap();
            assert!(cert.passed(), "{cert}");
        }
    }

    #[test]
    fn a_wrong_line_is_caught() {
        let mut c = Chart::new(3).unwrap();
        c.lines[1][0] = c.vars.x(1);
        let moved = apply_g(1, &c.y, &c.lines[0]);
        assert!(!proportional(&moved, &c.lines[1]));
    }
}
