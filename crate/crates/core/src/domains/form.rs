//! Closed-form chain descriptors.
//!
//! A chain form is a degree-one rational function `(a·n + b) / (c·n + d)` of
//! the index `n`. Forms are parsed from ordinary arithmetic such as
//! `"1/(n+2)"`, `"n/(n+1)"`, `"1/2 - 1/(n+1)"` or `"-n"`, expanded to
//! polynomial quotients, reduced by their gcd, and rejected if either side
//! still has degree above one.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A point of the extended rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("inf"),
            Extended::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl std::str::FromStr for Extended {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(Extended::PosInf),
            "-inf" | "-infinity" => Ok(Extended::NegInf),
            other => Ok(Extended::Finite(other.parse()?)),
        }
    }
}

/// `(a·n + b) / (c·n + d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainForm {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl ChainForm {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if c.is_zero() && d.is_zero() {
            return Err(Error::InvalidDomain("form has a zero denominator".into()));
        }
        // Scale so the denominator's leading coefficient is one.
        let lead = if c.is_zero() { d.clone() } else { c.clone() };
        Ok(ChainForm { a: &a / &lead, b: &b / &lead, c: &c / &lead, d: &d / &lead })
    }

    pub fn parse(src: &str) -> Result<Self> {
        let frac = Parser::new(src).parse()?;
        let (num, den) = frac.reduced();
        if num.degree().unwrap_or(0) > 1 || den.degree().unwrap_or(0) > 1 {
            return Err(Error::Parse(format!(
                "{src:?} is not a ratio of affine functions of n"
            )));
        }
        ChainForm::new(num.coeff(1), num.coeff(0), den.coeff(1), den.coeff(0))
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `ad - bc`; positive for increasing forms, negative for decreasing ones.
    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Zero of the denominator, if the form has one.
    pub fn pole(&self) -> Option<Rational> {
        if self.c.is_zero() {
            None
        } else {
            Some(-(&self.d / &self.c))
        }
    }

    pub fn eval(&self, n: &Rational) -> Option<Rational> {
        let den = &self.c * n + &self.d;
        if den.is_zero() {
            None
        } else {
            Some((&self.a * n + &self.b) / den)
        }
    }

    /// Limit as `n -> +inf`.
    pub fn limit(&self) -> Extended {
        if !self.c.is_zero() {
            Extended::Finite(&self.a / &self.c)
        } else if (&self.a / &self.d).is_positive() {
            Extended::PosInf
        } else if self.a.is_zero() {
            Extended::Finite(&self.b / &self.d)
        } else {
            Extended::NegInf
        }
    }

    /// The index `n` with `form(n) = v`, if one exists (not necessarily an integer).
    pub fn preimage(&self, v: &Rational) -> Option<Rational> {
        let slope = &self.a - v * &self.c;
        if slope.is_zero() {
            return None;
        }
        let n = (v * &self.d - &self.b) / slope;
        // The form might not be defined there.
        (self.eval(&n).as_ref() == Some(v)).then_some(n)
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &ChainForm) -> Result<ChainForm> {
        let (a, b, c, d) = (&outer.a, &outer.b, &outer.c, &outer.d);
        ChainForm::new(
            a * &self.a + b * &self.c,
            a * &self.b + b * &self.d,
            c * &self.a + d * &self.c,
            c * &self.b + d * &self.d,
        )
    }
}

impl fmt::Display for ChainForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn affine(f: &mut fmt::Formatter<'_>, slope: &Rational, icpt: &Rational) -> fmt::Result {
            let coef = |r: &Rational| {
                if r.is_integer() {
                    r.to_string()
                } else {
                    format!("({r})")
                }
            };
            match (slope.is_zero(), icpt.is_zero()) {
                (true, _) => write!(f, "{}", coef(icpt)),
                (false, true) if *slope == 1 => f.write_str("n"),
                (false, true) if *slope == -1 => f.write_str("-n"),
                (false, true) => write!(f, "{}*n", coef(slope)),
                (false, false) => {
                    let lead = match () {
                        _ if *slope == 1 => "n".to_string(),
                        _ if *slope == -1 => "-n".to_string(),
                        _ => format!("{}*n", coef(slope)),
                    };
                    if icpt.is_negative() {
                        write!(f, "{lead}-{}", coef(&-icpt))
                    } else {
                        write!(f, "{lead}+{}", coef(icpt))
                    }
                }
            }
        }
        if self.c.is_zero() && self.d == 1 {
            return affine(f, &self.a, &self.b);
        }
        f.write_str("(")?;
        affine(f, &self.a, &self.b)?;
        f.write_str(")/(")?;
        affine(f, &self.c, &self.d)?;
        f.write_str(")")
    }
}

/// Dense polynomial over the rationals, lowest coefficient first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<Rational>);

impl Poly {
    fn constant(c: Rational) -> Self {
        Poly(vec![c]).trimmed()
    }

    fn var() -> Self {
        Poly(vec![Rational::zero(), Rational::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_default()
    }

    fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect()).trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly(out).trimmed()
    }

    fn scale(&self, k: &Rational) -> Poly {
        Poly(self.0.iter().map(|c| c * k).collect()).trimmed()
    }

    fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let k = rem.lead() / divisor.lead();
            let shift = rd - dd;
            quot[shift] = k.clone();
            let mut sub = vec![Rational::zero(); shift];
            sub.extend(divisor.0.iter().map(|c| c * &k));
            rem = rem.add(&Poly(sub).neg());
        }
        (Poly(quot).trimmed(), rem)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        let lead = a.lead();
        if lead.is_zero() {
            a
        } else {
            a.scale(&lead.recip())
        }
    }
}

#[derive(Debug, Clone)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn add(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    fn div(&self, o: &Frac) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Frac { num: self.num.mul(&o.den), den: self.den.mul(&o.num) })
    }

    fn reduced(&self) -> (Poly, Poly) {
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) == 0 {
            return (self.num.clone(), self.den.clone());
        }
        (self.num.divrem(&g).0, self.den.divrem(&g).0)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn parse(mut self) -> Result<Frac> {
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                // Implicit product: `2n`, `3(n+1)`.
                Some(c) if c == '(' || is_var(c) => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Frac> {
        let one = Poly::constant(Rational::one());
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if is_var(c) => {
                self.bump();
                Ok(Frac { num: Poly::var(), den: one })
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let len = self.src[start..]
                    .find(|ch: char| !(ch.is_ascii_digit() || ch == '.'))
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                let value: Rational =
                    self.src[start..start + len].parse().map_err(|_| self.err("bad number"))?;
                Ok(Frac { num: Poly::constant(value), den: one })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn is_var(c: char) -> bool {
    matches!(c, 'n' | 't' | 'x')
}
