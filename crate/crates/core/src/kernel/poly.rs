//! Multivariate polynomials over the exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by monomials under graded lexicographic
//! order and zero coefficients are dropped on every write, so structural
//! equality is semantic equality. All arithmetic is exact; nothing here
//! rounds, truncates, or normalizes degrees.

use crate::error::{Error, Result};
use crate::kernel::rational::{format_rational, parse_rational, rat_int, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Shared, ordered variable list. Cloning is pointer-cheap; equality is by
/// contents so structurally identical bases interoperate.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Vars {
        Vars(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then left-to-right exponent comparison (so with variables `x, y`:
/// `1 < y < x < y^2 < x*y < x^2 < ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n_vars: usize) -> Monomial {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, j: usize) -> Monomial {
        let mut e = vec![0; n_vars];
        e[j] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Poly {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Poly {
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Poly {
        Poly::constant(vars, rat_int(1))
    }

    pub fn int(vars: &Vars, n: i64) -> Poly {
        Poly::constant(vars, rat_int(n))
    }

    pub fn variable(vars: &Vars, j: usize) -> Poly {
        assert!(j < vars.len(), "variable index out of range");
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::var(vars.len(), j), rat_int(1));
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one(self.vars.len()))
                .map_or(false, |c| c.is_one())
    }

    /// Returns the constant value if the polynomial has degree 0, else None.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(rat_int(0));
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one(self.vars.len())) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.vars.names().join(","),
                right: other.vars.names().join(","),
            })
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut out = Poly::zero(&self.vars);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn partial_derivative(&self, j: usize) -> Poly {
        assert!(j < self.vars.len(), "variable index out of range");
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[j] = e - 1;
            out.add_term(dm, c * rat_int(e as i64));
        }
        out
    }

    /// Simultaneous substitution x_j := images[j]. Images must share this
    /// polynomial's variable list.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::shape(format!(
                "substitution needs {} images, got {}",
                self.vars.len(),
                images.len()
            )));
        }
        for im in images {
            self.check_vars(im)?;
        }
        // Cache powers of each image up to the exponent actually used.
        let mut max_exp = vec![0u32; self.vars.len()];
        for m in self.terms.keys() {
            for (j, e) in m.0.iter().enumerate() {
                max_exp[j] = max_exp[j].max(*e);
            }
        }
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.vars.len());
        for (j, im) in images.iter().enumerate() {
            let mut ps = vec![Poly::one(&self.vars)];
            for _ in 0..max_exp[j] {
                ps.push(ps.last().unwrap().try_mul(im)?);
            }
            powers.push(ps);
        }
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&self.vars, c.clone());
            for (j, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = t.try_mul(&powers[j][*e as usize])?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Parses `3*x^2 - 1/2*x*y + 1`. Whitespace is insignificant; every
    /// product needs an explicit `*`; exponents are non-negative integers.
    pub fn parse(input: &str, vars: &Vars) -> Result<Poly> {
        Parser {
            input,
            chars: input.char_indices().peekable(),
            vars,
        }
        .parse()
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial variable lists differ")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial variable lists differ")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial variable lists differ")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading term first: iterate the canonical order in reverse.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl Poly {
    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (j, e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.names()[j].clone()),
                _ => parts.push(format!("{}^{}", self.vars.names()[j], e)),
            }
        }
        parts.join("*")
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn pos(&mut self) -> usize {
        self.chars
            .peek()
            .map(|(i, _)| *i)
            .unwrap_or(self.input.len())
    }

    fn parse(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.vars);
        loop {
            self.skip_ws();
            let mut sign = 1i64;
            while let Some((_, c)) = self.chars.peek().copied() {
                match c {
                    '+' => {
                        self.chars.next();
                    }
                    '-' => {
                        sign = -sign;
                        self.chars.next();
                    }
                    _ => break,
                }
                self.skip_ws();
            }
            let term = self.parse_term()?;
            acc = acc.try_add(&if sign < 0 { term.neg() } else { term })?;
            self.skip_ws();
            match self.chars.peek().copied() {
                None => return Ok(acc),
                Some((_, '+' | '-')) => continue,
                Some((i, c)) => {
                    return Err(Error::parse(
                        i,
                        format!("expected `+`, `-`, or end, found `{c}`"),
                    ))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek().copied() {
                Some((_, '*')) => {
                    self.chars.next();
                    self.skip_ws();
                    let f = self.parse_factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        let start = self.pos();
        match self.chars.peek().copied() {
            Some((_, c)) if c.is_ascii_digit() => {
                let num = self.take_while(|c| c.is_ascii_digit());
                self.skip_ws();
                let lit = if matches!(self.chars.peek(), Some((_, '/'))) {
                    self.chars.next();
                    self.skip_ws();
                    let den_start = self.pos();
                    let den = self.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        return Err(Error::parse(den_start, "expected denominator digits"));
                    }
                    format!("{num}/{den}")
                } else {
                    num
                };
                let r = parse_rational(&lit, start)?;
                Ok(Poly::constant(self.vars, r))
            }
            Some((_, c)) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                let j = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::parse(start, format!("unknown variable `{name}`")))?;
                let mut p = Poly::variable(self.vars, j);
                self.skip_ws();
                if matches!(self.chars.peek(), Some((_, '^'))) {
                    self.chars.next();
                    self.skip_ws();
                    let exp_start = self.pos();
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    if digits.is_empty() {
                        return Err(Error::parse(exp_start, "expected exponent digits"));
                    }
                    let e: u32 = digits
                        .parse()
                        .map_err(|_| Error::parse(exp_start, "exponent out of range"))?;
                    let mut q = Poly::one(self.vars);
                    for _ in 0..e {
                        q = q.try_mul(&p)?;
                    }
                    p = q;
                }
                Ok(p)
            }
            Some((i, c)) => Err(Error::parse(i, format!("unexpected character `{c}`"))),
            None => Err(Error::parse(self.input.len(), "unexpected end of input")),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some((_, c)) = self.chars.peek().copied() {
            if pred(c) {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }
}
