//! The super-bigraded coefficient algebra `k[α₁..α_{n-1}, ξ] ⊗ k[r] ⊗ k[ξ̄]/(ξ̄²)`.
//!
//! `α_n` is never stored: it is rewritten as `ξ − α₁ − ⋯ − α_{n-1}` on input.
//! Only `ξ̄` is odd, and `ξ̄² = 0`, so the product is commutative on the nose;
//! signs from moving `ξ̄` past odd morphisms are applied by the matrix layer.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::ring::{BaseRing, Coeff, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalar context mismatch: {0:?} vs {1:?}")]
    ContextMismatch(ScalarCtx, ScalarCtx),
    #[error("scalar {0} is not bihomogeneous")]
    NotHomogeneous(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Number of strata coordinates together with the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarCtx {
    pub n: usize,
    pub ring: BaseRing,
}

impl ScalarCtx {
    pub fn new(n: usize, ring: BaseRing) -> Self {
        ScalarCtx { n, ring }
    }

    pub fn integers(n: usize) -> Self {
        ScalarCtx::new(n, BaseRing::Integers)
    }

    /// Polynomial variables: `α₁..α_{n-1}` followed by `ξ`.
    fn nvars(&self) -> usize {
        self.n.max(1)
    }

    fn xi_var(&self) -> usize {
        self.nvars() - 1
    }
}

/// First (homological) and second (Tate) degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Bidegree {
    pub hom: i64,
    pub tate: i64,
}

impl Bidegree {
    pub const fn new(hom: i64, tate: i64) -> Self {
        Bidegree { hom, tate }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.hom + o.hom, self.tate + o.tate)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.hom, self.tate)
    }
}

type Exps = SmallVec<[u16; 8]>;

/// A monomial `ξ̄^e r^m α^a ξ^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    xb: bool,
    r: u32,
    exps: Exps,
}

impl Mono {
    fn unit(ctx: &ScalarCtx) -> Self {
        Mono { xb: false, r: 0, exps: SmallVec::from_elem(0, ctx.nvars()) }
    }

    fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn is_unit(&self) -> bool {
        !self.xb && self.r == 0 && self.exps.iter().all(|&e| e == 0)
    }

    fn times(&self, o: &Mono) -> Option<Mono> {
        if self.xb && o.xb {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Some(Mono { xb: self.xb || o.xb, r: self.r + o.r, exps })
    }

    fn prefix_cmp(&self, o: &Mono) -> Ordering {
        self.xb.cmp(&o.xb).then(self.r.cmp(&o.r))
    }
}

/// Display order: `(ξ̄, r)` prefix ascending, then graded-lex descending with
/// `α₁ > α₂ > ⋯ > ξ`.
impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.prefix_cmp(o)
            .then_with(|| o.degree().cmp(&self.degree()))
            .then_with(|| o.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Shape of a single term, enough to compute its bidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermShape {
    pub xi_bar: bool,
    pub r_power: u32,
    pub poly_degree: u32,
}

impl TermShape {
    pub fn bidegree(&self) -> Bidegree {
        let d = self.poly_degree as i64;
        let e = self.xi_bar as i64;
        let m = self.r_power as i64;
        Bidegree::new(2 * d + e, 2 * d - 2 * m + 2 * e)
    }
}

/// An element of the coefficient algebra in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ctx: ScalarCtx,
    terms: Vec<(Mono, Coeff)>,
}

impl Scalar {
    pub fn zero(ctx: ScalarCtx) -> Self {
        Scalar { ctx, terms: Vec::new() }
    }

    pub fn one(ctx: ScalarCtx) -> Self {
        Scalar::constant(ctx, 1)
    }

    pub fn constant(ctx: ScalarCtx, c: i128) -> Self {
        Scalar::from_coeff(ctx, ctx.ring.from_int(c))
    }

    pub fn from_coeff(ctx: ScalarCtx, c: Coeff) -> Self {
        Scalar::from_terms(ctx, vec![(Mono::unit(&ctx), c)])
    }

    /// `α_i` for `1 ≤ i ≤ n`; `α_n` is returned in expanded form.
    pub fn alpha(ctx: ScalarCtx, i: usize) -> Self {
        assert!(i >= 1 && i <= ctx.n, "alpha index {i} out of range for n = {}", ctx.n);
        if i == ctx.n {
            return Scalar::expand_alpha_n(ctx);
        }
        Scalar::var(ctx, i - 1)
    }

    pub fn xi(ctx: ScalarCtx) -> Self {
        Scalar::var(ctx, ctx.xi_var())
    }

    pub fn xi_bar(ctx: ScalarCtx) -> Self {
        let mut m = Mono::unit(&ctx);
        m.xb = true;
        Scalar::from_terms(ctx, vec![(m, Coeff::one())])
    }

    pub fn r(ctx: ScalarCtx) -> Self {
        Scalar::r_pow(ctx, 1)
    }

    pub fn r_pow(ctx: ScalarCtx, k: u32) -> Self {
        let mut m = Mono::unit(&ctx);
        m.r = k;
        Scalar::from_terms(ctx, vec![(m, Coeff::one())])
    }

    /// `ξ − α₁ − ⋯ − α_{n-1}`.
    pub fn expand_alpha_n(ctx: ScalarCtx) -> Self {
        let mut acc = Scalar::xi(ctx);
        for i in 0..ctx.n.saturating_sub(1) {
            acc = &acc - &Scalar::var(ctx, i);
        }
        acc
    }

    fn var(ctx: ScalarCtx, v: usize) -> Self {
        let mut m = Mono::unit(&ctx);
        m.exps[v] = 1;
        Scalar::from_terms(ctx, vec![(m, Coeff::one())])
    }

    fn from_terms(ctx: ScalarCtx, mut terms: Vec<(Mono, Coeff)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ctx.ring.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Scalar { ctx, terms: out }
    }

    pub fn ctx(&self) -> ScalarCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this scalar lies in the base ring.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_unit() => Some(*c),
            _ => None,
        }
    }

    pub fn has_xi_bar(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.xb)
    }

    pub fn has_r(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.r > 0)
    }

    pub fn shapes(&self) -> impl Iterator<Item = TermShape> + '_ {
        self.terms.iter().map(|(m, _)| TermShape {
            xi_bar: m.xb,
            r_power: m.r,
            poly_degree: m.degree(),
        })
    }

    pub fn bidegree(&self) -> Result<Bidegree, ScalarError> {
        let mut degs = self.shapes().map(|s| s.bidegree());
        let first = degs.next().ok_or_else(|| ScalarError::NotHomogeneous("0".into()))?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(ScalarError::NotHomogeneous(self.to_string()))
        }
    }

    /// Splits `self = a + ξ̄·b` with `a`, `b` free of `ξ̄`.
    pub fn split_xi_bar(&self) -> (Scalar, Scalar) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (m, c) in &self.terms {
            if m.xb {
                let mut m = m.clone();
                m.xb = false;
                b.push((m, *c));
            } else {
                a.push((m.clone(), *c));
            }
        }
        (Scalar::from_terms(self.ctx, a), Scalar::from_terms(self.ctx, b))
    }

    /// Negates the `ξ̄` part: the effect of moving this scalar past an odd map.
    pub fn flip_odd(&self) -> Scalar {
        let ring = self.ctx.ring;
        Scalar {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.xb { ring.neg(c) } else { *c }))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Scalar {
        let ring = self.ctx.ring;
        Scalar::from_terms(
            self.ctx,
            self.terms.iter().map(|(m, d)| (m.clone(), ring.mul(c, d))).collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one(self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_ctx(&self, o: &Scalar) -> Result<(), ScalarError> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(ScalarError::ContextMismatch(self.ctx, o.ctx))
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ctx(o)?;
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Ok(Scalar::from_terms(self.ctx, terms))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_ctx(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Scalar::zero(self.ctx));
        }
        if let Some(c) = o.as_constant() {
            return Ok(self.scale(&c));
        }
        if let Some(c) = self.as_constant() {
            return Ok(o.scale(&c));
        }
        let ring = self.ctx.ring;
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some(m) = ma.times(mb) {
                    terms.push((m, ring.mul(ca, cb)));
                }
            }
        }
        Ok(Scalar::from_terms(self.ctx, terms))
    }

    /// Rebuilds the scalar in a different context with the same `n` and
    /// re-reduced coefficients.
    pub fn with_ring(&self, ring: BaseRing) -> Result<Scalar, ScalarError> {
        let ctx = ScalarCtx::new(self.ctx.n, ring);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), ring.normalize(*c)?));
        }
        Ok(Scalar::from_terms(ctx, terms))
    }

    pub fn parse(ctx: ScalarCtx, text: &str) -> Result<Scalar, ScalarError> {
        parse::Parser::new(ctx, text).parse()
    }

    fn var_name(&self, v: usize) -> String {
        if v == self.ctx.xi_var() {
            "x".into()
        } else {
            format!("a{}", v + 1)
        }
    }

    fn mono_text(&self, m: &Mono, with_prefix: bool, with_poly: bool) -> Vec<String> {
        let mut parts = Vec::new();
        if with_prefix {
            if m.xb {
                parts.push("xb".to_string());
            }
            match m.r {
                0 => {}
                1 => parts.push("r".into()),
                k => parts.push(format!("r^{k}")),
            }
        }
        if with_poly {
            for (v, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.var_name(v)),
                    e => parts.push(format!("{}^{e}", self.var_name(v))),
                }
            }
        }
        parts
    }

    fn groups(&self) -> Vec<&[(Mono, Coeff)]> {
        self.terms
            .chunk_by(|a, b| a.0.prefix_cmp(&b.0) == Ordering::Equal)
            .collect()
    }

    fn render(&self, style: Style) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let ring = self.ctx.ring;
        // (negative, body) pieces joined with binary plus/minus.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for group in self.groups() {
            let head = &group[0].0;
            let prefix = style.join(&self.styled(head, true, false, style));
            if prefix.is_empty() || group.len() == 1 {
                for (m, c) in group {
                    let neg = ring.is_negative(c);
                    let abs = if neg { ring.neg(c) } else { *c };
                    let mut factors = Vec::new();
                    let body_parts = self.styled(m, true, true, style);
                    if !ring.is_one(&abs) || body_parts.is_empty() {
                        factors.push(style.coeff(&abs));
                    }
                    factors.extend(body_parts);
                    pieces.push((neg, style.join(&factors)));
                }
            } else {
                let inner = Scalar {
                    ctx: self.ctx,
                    terms: group
                        .iter()
                        .map(|(m, c)| {
                            let mut m = m.clone();
                            m.xb = false;
                            m.r = 0;
                            (m, *c)
                        })
                        .collect(),
                };
                let body = format!("{}{}", prefix, style.wrap(&inner.render(style)));
                pieces.push((false, body));
            }
        }
        let mut out = String::new();
        for (k, (neg, body)) in pieces.into_iter().enumerate() {
            match (k, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }

    fn styled(&self, m: &Mono, with_prefix: bool, with_poly: bool, style: Style) -> Vec<String> {
        match style {
            Style::Text => self.mono_text(m, with_prefix, with_poly),
            Style::Latex => self.mono_latex(m, with_prefix, with_poly),
        }
    }

    fn mono_latex(&self, m: &Mono, with_prefix: bool, with_poly: bool) -> Vec<String> {
        let mut parts = Vec::new();
        if with_prefix {
            if m.xb {
                parts.push("\\bar\\xi".to_string());
            }
            match m.r {
                0 => {}
                1 => parts.push("\\mathsf{r}".into()),
                k => parts.push(format!("\\mathsf{{r}}^{{{k}}}")),
            }
        }
        if with_poly {
            for (v, &e) in m.exps.iter().enumerate() {
                let name = if v == self.ctx.xi_var() {
                    "\\xi".to_string()
                } else {
                    format!("\\alpha_{{{}}}", v + 1)
                };
                match e {
                    0 => {}
                    1 => parts.push(name),
                    e => parts.push(format!("{name}^{{{e}}}")),
                }
            }
        }
        parts
    }

    pub fn to_latex(&self) -> String {
        self.render(Style::Latex)
    }

    /// True when the rendered form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.render(Style::Text).contains([' ', '+'])
            || (self.terms.len() == 1 && self.ctx.ring.is_negative(&self.terms[0].1))
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

impl Style {
    fn join(self, parts: &[String]) -> String {
        match self {
            Style::Text => parts.join("*"),
            Style::Latex => parts.join(" "),
        }
    }

    fn wrap(self, s: &str) -> String {
        match self {
            Style::Text => format!("*({s})"),
            Style::Latex => format!("({s})"),
        }
    }

    fn coeff(self, c: &Coeff) -> String {
        match self {
            Style::Text => c.to_string(),
            Style::Latex if c.is_integer() => c.to_string(),
            Style::Latex => format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Text))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.try_add(&-o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let ring = self.ctx.ring;
        Scalar {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }
}

mod parse {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(i128),
        Ident(String),
        Sym(char),
    }

    pub(super) struct Parser {
        ctx: ScalarCtx,
        toks: Vec<(usize, Tok)>,
        pos: usize,
        len: usize,
    }

    impl Parser {
        pub(super) fn new(ctx: ScalarCtx, text: &str) -> Self {
            let mut toks = Vec::new();
            let bytes: Vec<char> = text.chars().collect();
            let mut i = 0;
            while i < bytes.len() {
                let c = bytes[i];
                if c.is_whitespace() {
                    i += 1;
                } else if c.is_ascii_digit() {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = bytes[start..i].iter().collect();
                    match s.parse::<i128>() {
                        Ok(v) => toks.push((start, Tok::Num(v))),
                        Err(_) => toks.push((start, Tok::Sym('#'))),
                    }
                } else if c.is_ascii_alphabetic() {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    toks.push((start, Tok::Ident(bytes[start..i].iter().collect())));
                } else {
                    toks.push((i, Tok::Sym(c)));
                    i += 1;
                }
            }
            Parser { ctx, toks, pos: 0, len: text.len() }
        }

        fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
            let pos = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len);
            Err(ScalarError::Parse { pos, msg: msg.into() })
        }

        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos).map(|t| &t.1)
        }

        fn eat(&mut self, c: char) -> bool {
            if self.peek() == Some(&Tok::Sym(c)) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        pub(super) fn parse(mut self) -> Result<Scalar, ScalarError> {
            let v = self.expr()?;
            if self.pos != self.toks.len() {
                return self.err("trailing input");
            }
            Ok(v)
        }

        fn expr(&mut self) -> Result<Scalar, ScalarError> {
            let negate = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let mut acc = self.term()?;
            if negate {
                acc = -&acc;
            }
            loop {
                if self.eat('+') {
                    acc = &acc + &self.term()?;
                } else if self.eat('-') {
                    acc = &acc - &self.term()?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn term(&mut self) -> Result<Scalar, ScalarError> {
            let mut acc = self.factor()?;
            loop {
                if self.eat('*') {
                    acc = &acc * &self.factor()?;
                } else if self.eat('/') {
                    let d = self.factor()?;
                    let Some(dc) = d.as_constant() else {
                        return self.err("division by a non-constant");
                    };
                    let ring = self.ctx.ring;
                    let mut terms = Vec::new();
                    for (m, c) in &acc.terms {
                        terms.push((m.clone(), ring.div(c, &dc)?));
                    }
                    acc = Scalar::from_terms(self.ctx, terms);
                } else {
                    return Ok(acc);
                }
            }
        }

        fn factor(&mut self) -> Result<Scalar, ScalarError> {
            let base = self.atom()?;
            if self.eat('^') {
                match self.peek().cloned() {
                    Some(Tok::Num(k)) if k >= 0 && k <= u32::MAX as i128 => {
                        self.pos += 1;
                        Ok(base.pow(k as u32))
                    }
                    _ => self.err("expected a nonnegative exponent"),
                }
            } else {
                Ok(base)
            }
        }

        fn atom(&mut self) -> Result<Scalar, ScalarError> {
            let ctx = self.ctx;
            match self.peek().cloned() {
                Some(Tok::Num(v)) => {
                    self.pos += 1;
                    Ok(Scalar::constant(ctx, v))
                }
                Some(Tok::Ident(name)) => {
                    let v = match name.as_str() {
                        "x" => Scalar::xi(ctx),
                        "xb" => Scalar::xi_bar(ctx),
                        "r" => Scalar::r(ctx),
                        other => match other.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
                            Some(i) if i >= 1 && i <= ctx.n => Scalar::alpha(ctx, i),
                            _ => return self.err(format!("unknown variable '{other}'")),
                        },
                    };
                    self.pos += 1;
                    Ok(v)
                }
                Some(Tok::Sym('(')) => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected ')'");
                    }
                    Ok(v)
                }
                Some(_) => self.err("unexpected token"),
                None => self.err("unexpected end of input"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> ScalarCtx {
        ScalarCtx::integers(n)
    }

    #[test]
    fn xi_bar_squares_to_zero() {
        let xb = Scalar::xi_bar(z(3));
        assert!((&xb * &xb).is_zero());
    }

    #[test]
    fn generator_bidegrees() {
        let c = z(3);
        assert_eq!(Scalar::xi(c).bidegree().unwrap(), Bidegree::new(2, 2));
        assert_eq!(Scalar::alpha(c, 1).bidegree().unwrap(), Bidegree::new(2, 2));
        assert_eq!(Scalar::r(c).bidegree().unwrap(), Bidegree::new(0, -2));
        assert_eq!(Scalar::xi_bar(c).bidegree().unwrap(), Bidegree::new(1, 2));
        let rx = &Scalar::r(c) * &Scalar::xi(c);
        assert_eq!(rx.bidegree().unwrap(), Bidegree::new(2, 0));
        let xbr = &Scalar::xi_bar(c) * &Scalar::r(c);
        assert_eq!(xbr.bidegree().unwrap(), Bidegree::new(1, 0));
        let mixed = &Scalar::r(c) + &Scalar::xi(c);
        assert!(mixed.bidegree().is_err());
    }

    #[test]
    fn alpha_n_is_eliminated() {
        assert_eq!(Scalar::expand_alpha_n(z(1)).to_string(), "x");
        assert_eq!(Scalar::expand_alpha_n(z(2)).to_string(), "-a1 + x");
        assert_eq!(Scalar::expand_alpha_n(z(3)).to_string(), "-a1 - a2 + x");
        let c = z(3);
        let sum = &(&Scalar::alpha(c, 1) + &Scalar::alpha(c, 2)) + &Scalar::alpha(c, 3);
        assert_eq!(sum, Scalar::xi(c));
    }

    #[test]
    fn canonical_text_matches_reference_shape() {
        let c = z(2);
        let s = Scalar::parse(c, "xb*r^2*(a1^2*x + 3*a1)").unwrap();
        assert_eq!(s.to_string(), "xb*r^2*(a1^2*x + 3*a1)");
        assert_eq!(Scalar::parse(c, "-xb").unwrap().to_string(), "-xb");
        assert_eq!(Scalar::parse(c, "r - 2*xb*a1").unwrap().to_string(), "r - 2*xb*a1");
        assert_eq!(Scalar::zero(c).to_string(), "0");
        assert_eq!(Scalar::one(c).to_string(), "1");
        assert_eq!(Scalar::parse(c, "a2").unwrap().to_string(), "-a1 + x");
    }

    #[test]
    fn rationals_and_prime_fields_render() {
        let q = ScalarCtx::new(2, BaseRing::Rationals);
        let s = Scalar::parse(q, "a1/2 - 3/4*x").unwrap();
        assert_eq!(s.to_string(), "1/2*a1 - 3/4*x");
        assert_eq!(Scalar::parse(q, &s.to_string()).unwrap(), s);
        let f = ScalarCtx::new(2, BaseRing::PrimeField(5));
        let t = Scalar::parse(f, "-a1").unwrap();
        assert_eq!(t.to_string(), "4*a1");
        assert!(Scalar::parse(z(2), "a1/2").is_err());
    }

    #[test]
    fn parse_errors_are_located() {
        let err = Scalar::parse(z(2), "a1 + a5").unwrap_err();
        assert!(matches!(err, ScalarError::Parse { pos: 5, .. }));
        assert!(Scalar::parse(z(2), "(a1").is_err());
        assert!(Scalar::parse(z(2), "a1 a2").is_err());
        assert!(Scalar::parse(z(2), "a1/x").is_err());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Scalar::xi(z(2));
        let b = Scalar::xi(z(3));
        assert!(matches!(a.try_mul(&b), Err(ScalarError::ContextMismatch(..))));
        let c = Scalar::xi(ScalarCtx::new(2, BaseRing::Rationals));
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn split_and_flip() {
        let c = z(2);
        let s = Scalar::parse(c, "a1 - xb*r").unwrap();
        let (a, b) = s.split_xi_bar();
        assert_eq!(a.to_string(), "a1");
        assert_eq!(b.to_string(), "-r");
        assert_eq!(s.flip_odd().to_string(), "a1 + xb*r");
    }

    #[test]
    fn latex_form() {
        let c = z(2);
        let s = Scalar::parse(c, "-xb*r^2 + a1").unwrap();
        assert_eq!(s.to_latex(), "\\alpha_{1} - \\bar\\xi \\mathsf{r}^{2}");
    }
}
