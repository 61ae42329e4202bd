//! Symbolic elements of the algebra: formal sums of words in the atoms
//! `E0..E4` (dual idempotents), `A0..A4` (adjacency matrices), `J` and `I`,
//! with coefficients that are rational functions of the group order `n`.
//!
//! Text syntax:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor+                      juxtaposition is multiplication
//! factor := atom | integer | '{' coeff '}' | '(' expr ')'
//! atom   := 'E' idx | 'A' idx | 'J' | 'I' | 'O'
//! idx    := '0'..'4' | a bound letter such as 'g', 'h', 'i'
//! coeff  := integer arithmetic over 'n' with + - * / ^ and parentheses
//! ```
//!
//! `O` is the zero matrix. Whitespace between atoms is optional, so
//! `E4A1E2A3E4` and `E4 A1 E2 A3 E4` parse identically.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Dual idempotent `E_a*` of the basepoint.
    E(u8),
    /// Adjacency matrix `A_b`.
    A(u8),
    J,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::E(a) => write!(f, "E{a}"),
            Atom::A(b) => write!(f, "A{b}"),
            Atom::J => write!(f, "J"),
        }
    }
}

/// Integer polynomial in `n`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn constant(c: i64) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn n() -> Self {
        Poly(vec![0, 1])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let c = (0..len)
            .map(|i| self.0.get(i).unwrap_or(&0) + o.0.get(i).unwrap_or(&0))
            .collect();
        Poly(c).trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(vec![]);
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly(c).trimmed()
    }

    pub fn eval_int(&self, n: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * n + c)
    }

    pub fn eval_mod(&self, n: u64, m: PrimeModulus) -> Scalar {
        let x = m.scalar(n);
        self.0
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| m.add(m.mul(acc, x), m.reduce_i64(c)))
    }

    fn is_one(&self) -> bool {
        self.0 == [1]
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.unsigned_abs();
            let body = match (d, a) {
                (0, _) => a.to_string(),
                (1, 1) => "n".into(),
                (1, _) => format!("{a}*n"),
                (_, 1) => format!("n^{d}"),
                _ => format!("{a}*n^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// A rational function `num / den` of `n`, reduced mod p on evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    num: Poly,
    den: Poly,
}

impl Coeff {
    pub fn int(c: i64) -> Self {
        Coeff {
            num: Poly::constant(c),
            den: Poly::constant(1),
        }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn n() -> Self {
        Coeff {
            num: Poly::n(),
            den: Poly::constant(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, o: &Coeff) -> Coeff {
        if self.den == o.den {
            return Coeff {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        Coeff {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    fn neg(&self) -> Coeff {
        Coeff {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        Coeff {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    fn div(&self, o: &Coeff) -> Result<Coeff> {
        if o.num.is_zero() {
            return Err(Error::Parse {
                offset: 0,
                message: "division by zero coefficient".into(),
            });
        }
        Ok(Coeff {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        })
    }

    /// Value in GF(p) at group order `n`.
    pub fn eval(&self, n: u64, m: PrimeModulus) -> Result<Scalar> {
        let num = self.num.eval_mod(n, m);
        let den = self.den.eval_mod(n, m);
        let inv = m.inv(den).ok_or_else(|| Error::NotInvertible {
            expr: self.to_string(),
            p: m.value(),
        })?;
        Ok(m.mul(num, inv))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if p.0.iter().filter(|&&c| c != 0).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    /// Product of atoms; the empty word is the identity matrix.
    pub word: Vec<Atom>,
}

/// A formal linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgExpr {
    terms: Vec<Term>,
}

impl AlgExpr {
    pub fn zero() -> Self {
        AlgExpr { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(word: Vec<Atom>) -> Self {
        AlgExpr {
            terms: vec![Term {
                coeff: Coeff::one(),
                word,
            }],
        }
    }

    pub fn atom(a: Atom) -> Self {
        Self::word(vec![a])
    }

    /// `E_a A_b E_c`.
    pub fn triple(a: u8, b: u8, c: u8) -> Self {
        Self::word(vec![Atom::E(a), Atom::A(b), Atom::E(c)])
    }

    /// `E_a J E_b`.
    pub fn ej(a: u8, b: u8) -> Self {
        Self::word(vec![Atom::E(a), Atom::J, Atom::E(b)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &AlgExpr) -> AlgExpr {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        AlgExpr { terms }
    }

    pub fn neg(&self) -> AlgExpr {
        AlgExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    word: t.word.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, o: &AlgExpr) -> AlgExpr {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coeff) -> AlgExpr {
        AlgExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(c),
                    word: t.word.clone(),
                })
                .filter(|t| !t.coeff.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, o: &AlgExpr) -> AlgExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                let coeff = a.coeff.mul(&b.coeff);
                if coeff.is_zero() {
                    continue;
                }
                let mut word = a.word.clone();
                word.extend_from_slice(&b.word);
                terms.push(Term { coeff, word });
            }
        }
        AlgExpr { terms }
    }

    /// Formal transpose: every atom is symmetric, so words reverse.
    pub fn transpose(&self) -> AlgExpr {
        AlgExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    word: t.word.iter().rev().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn parse(src: &str) -> Result<AlgExpr> {
        Self::parse_with(src, &[])
    }

    /// Parses with letter indices bound to values, e.g. `[('g', 1), ('h', 2)]`.
    pub fn parse_with(src: &str, bindings: &[(char, u8)]) -> Result<AlgExpr> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            bindings,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("unexpected trailing input");
        }
        Ok(e)
    }
}

impl fmt::Display for AlgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "O");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, c) = if t.coeff.num.0.last().is_some_and(|&c| c < 0) && t.coeff.den.is_one() {
                (true, t.coeff.neg())
            } else {
                (false, t.coeff.clone())
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word: Vec<String> = t.word.iter().map(Atom::to_string).collect();
            let word = if word.is_empty() {
                "I".to_string()
            } else {
                word.join(" ")
            };
            if c.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{{{c}}}{word}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for AlgExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    bindings: &'a [(char, u8)],
}

impl Parser<'_> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<AlgExpr> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgExpr> {
        let mut acc: Option<AlgExpr> = None;
        loop {
            match self.peek() {
                Some(b'*') if acc.is_some() => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c == b'(' || c == b'{' || c.is_ascii_digit() || b"EAJIO".contains(&c) => {
                    let f = self.factor()?;
                    acc = Some(match acc {
                        None => f,
                        Some(a) => a.mul(&f),
                    });
                }
                _ => break,
            }
        }
        match acc {
            Some(a) => Ok(a),
            None => self.err("expected a term"),
        }
    }

    fn index(&mut self) -> Result<u8> {
        let Some(&c) = self.src.get(self.pos) else {
            return self.err("missing index");
        };
        self.pos += 1;
        let v = match c {
            b'0'..=b'4' => c - b'0',
            _ => match self.bindings.iter().find(|(k, _)| *k as u8 == c) {
                Some(&(_, v)) => v,
                None => return self.err(&format!("unbound index '{}'", c as char)),
            },
        };
        if v > 4 {
            return self.err("index out of range");
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<AlgExpr> {
        let c = self.peek().expect("checked by caller");
        match c {
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            b'{' => {
                self.pos += 1;
                let k = self.coeff_expr()?;
                self.expect(b'}')?;
                Ok(AlgExpr::identity().scale(&k))
            }
            b'0'..=b'9' => {
                let v = self.integer()?;
                Ok(AlgExpr::identity().scale(&Coeff::int(v)))
            }
            b'E' => {
                self.pos += 1;
                Ok(AlgExpr::atom(Atom::E(self.index()?)))
            }
            b'A' => {
                self.pos += 1;
                Ok(AlgExpr::atom(Atom::A(self.index()?)))
            }
            b'J' => {
                self.pos += 1;
                Ok(AlgExpr::atom(Atom::J))
            }
            b'I' => {
                self.pos += 1;
                Ok(AlgExpr::identity())
            }
            b'O' => {
                self.pos += 1;
                Ok(AlgExpr::zero())
            }
            _ => self.err("unexpected character"),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.err("bad integer"), Ok)
    }

    fn coeff_expr(&mut self) -> Result<Coeff> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.coeff_term()?.neg()
        } else {
            self.coeff_term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.coeff_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.coeff_term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn coeff_term(&mut self) -> Result<Coeff> {
        let mut acc = self.coeff_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.coeff_factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    acc = acc.div(&self.coeff_factor()?).map_err(|_| Error::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn coeff_factor(&mut self) -> Result<Coeff> {
        let base = self.coeff_atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.integer()?;
        if e > 16 {
            return self.err("exponent too large");
        }
        Ok((0..e).fold(Coeff::one(), |acc, _| acc.mul(&base)))
    }

    fn coeff_atom(&mut self) -> Result<Coeff> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let c = self.coeff_expr()?;
                self.expect(b')')?;
                Ok(c)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(Coeff::n())
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.coeff_factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => Ok(Coeff::int(self.integer()?)),
            _ => self.err("expected a coefficient"),
        }
    }
}
