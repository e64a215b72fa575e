//! Homogeneous polynomials in three variables with exact coefficients.
//!
//! Two sides of the Macaulay pairing share one representation: the ring
//! R = k[x,y,z] of operators and the dual S = k[X,Y,Z]. The global
//! monomial order is graded reverse-lexicographic with z > y > x
//! (equivalently Z > Y > X); it drives display, basis enumeration and
//! elimination pivoting everywhere in the crate.

use crate::field::{Field, FieldElem};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Side {
    Ring,
    Dual,
}

impl Side {
    pub fn letters(&self) -> [char; 3] {
        match self {
            Side::Ring => ['x', 'y', 'z'],
            Side::Dual => ['X', 'Y', 'Z'],
        }
    }
}

/// Exponent triple (e_x, e_y, e_z).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    pub exps: [u32; 3],
}

impl Monomial {
    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial { exps: [ex, ey, ez] }
    }

    pub fn one() -> Self {
        Monomial { exps: [0, 0, 0] }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: [
                self.exps[0] + other.exps[0],
                self.exps[1] + other.exps[1],
                self.exps[2] + other.exps[2],
            ],
        }
    }

    /// Componentwise quotient, or None if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0u32; 3];
        for (i, slot) in e.iter_mut().enumerate() {
            if self.exps[i] < other.exps[i] {
                return None;
            }
            *slot = self.exps[i] - other.exps[i];
        }
        Some(Monomial { exps: e })
    }

    fn fmt_side(&self, side: Side) -> String {
        if self.degree() == 0 {
            return String::new();
        }
        let letters = side.letters();
        let mut s = String::new();
        for (i, &letter) in letters.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => s.push(letter),
                e => {
                    s.push(letter);
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
        s
    }
}

/// Graded reverse-lexicographic with z > y > x: compare total degree first,
/// then the monomial with the smaller x-exponent is larger; ties fall to y.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.exps[0].cmp(&self.exps[0]))
            .then(other.exps[1].cmp(&self.exps[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree, largest first in the monomial order.
pub fn monomial_basis(deg: u32) -> Vec<Monomial> {
    let mut v = Vec::with_capacity(((deg + 1) * (deg + 2) / 2) as usize);
    for ex in 0..=deg {
        for ey in 0..=(deg - ex) {
            v.push(Monomial::new(ex, ey, deg - ex - ey));
        }
    }
    v.sort();
    v.reverse();
    v
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    DegreeMismatch,
    NonHomogeneous,
    SideMismatch,
    UnsupportedCoefficient,
    ZeroLinearForm,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DegreeMismatch => write!(f, "polynomials have different degrees"),
            PolyError::NonHomogeneous => write!(f, "terms of mixed degree"),
            PolyError::SideMismatch => write!(f, "mixing ring-side and dual-side polynomials"),
            PolyError::UnsupportedCoefficient => {
                write!(f, "divided power requires coefficients in {{0,1}}")
            }
            PolyError::ZeroLinearForm => write!(f, "linear form must be nonzero"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Homogeneous polynomial; the zero polynomial has no terms and no degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    side: Side,
    field: Field,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero(field: Field, side: Side) -> Self {
        Poly {
            side,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: Field, side: Side, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut map: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m, c) in terms {
            if field.is_zero(&c) {
                continue;
            }
            match map.remove(&m) {
                Some(old) => {
                    let s = field.add(&old, &c);
                    if !field.is_zero(&s) {
                        map.insert(m, s);
                    }
                }
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut deg = None;
        for m in map.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(PolyError::NonHomogeneous),
                _ => {}
            }
        }
        Ok(Poly {
            side,
            field,
            terms: map,
        })
    }

    pub fn monomial(field: Field, side: Side, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        Poly { side, field, terms }
    }

    pub fn constant(field: Field, side: Side, c: FieldElem) -> Self {
        Poly::from_terms(field, side, [(Monomial::one(), c)]).unwrap()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Dense coefficient vector over `monomial_basis(deg)`; the exchange
    /// format with the linear algebra layer.
    pub fn coeff_vector(&self, deg: u32) -> Vec<FieldElem> {
        monomial_basis(deg).iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coeff_vector(
        field: Field,
        side: Side,
        deg: u32,
        v: &[FieldElem],
    ) -> Result<Self, PolyError> {
        let basis = monomial_basis(deg);
        assert_eq!(basis.len(), v.len());
        Poly::from_terms(field, side, basis.into_iter().zip(v.iter().cloned()))
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.side != other.side {
            return Err(PolyError::SideMismatch);
        }
        if let (Some(d1), Some(d2)) = (self.degree(), other.degree()) {
            if d1 != d2 {
                return Err(PolyError::DegreeMismatch);
            }
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.remove(m) {
                Some(old) => {
                    let s = self.field.add(&old, c);
                    if !self.field.is_zero(&s) {
                        terms.insert(*m, s);
                    }
                }
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        Ok(Poly {
            side: self.side,
            field: self.field,
            terms,
        })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(self.field, self.side);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, self.field.mul(a, c)))
            .collect();
        Poly {
            side: self.side,
            field: self.field,
            terms,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.side, other.side, "mixing sides in product");
        let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.field.mul(c1, c2);
                match acc.remove(&m) {
                    Some(old) => {
                        let s = self.field.add(&old, &c);
                        if !self.field.is_zero(&s) {
                            acc.insert(m, s);
                        }
                    }
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            side: self.side,
            field: self.field,
            terms: acc,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.field, self.side, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading monomial in the global order.
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }
}

/// Contraction action of R on S: x^i ∘ X^m = X^{m-i} when m >= i, else 0,
/// per variable, extended bilinearly. Degree overshoot contracts to zero.
pub fn contract(h: &Poly, f: &Poly) -> Poly {
    assert_eq!(h.side(), Side::Ring, "contraction operator must lie in R");
    assert_eq!(f.side(), Side::Dual, "contraction target must lie in S");
    let field = f.field();
    let mut acc: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
    for (mh, ch) in h.terms() {
        for (mf, cf) in f.terms() {
            if let Some(m) = mf.checked_div(mh) {
                let c = field.mul(ch, cf);
                match acc.remove(&m) {
                    Some(old) => {
                        let s = field.add(&old, &c);
                        if !field.is_zero(&s) {
                            acc.insert(m, s);
                        }
                    }
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
    }
    Poly {
        side: Side::Dual,
        field,
        terms: acc,
    }
}

/// A nonzero linear form in R_1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    field: Field,
    coeffs: [FieldElem; 3],
}

impl LinearForm {
    pub fn new(field: Field, coeffs: [FieldElem; 3]) -> Result<Self, PolyError> {
        if coeffs.iter().all(|c| field.is_zero(c)) {
            return Err(PolyError::ZeroLinearForm);
        }
        Ok(LinearForm { field, coeffs })
    }

    pub fn from_ints(field: Field, c: [i64; 3]) -> Result<Self, PolyError> {
        LinearForm::new(
            field,
            [
                field.from_i64(c[0]),
                field.from_i64(c[1]),
                field.from_i64(c[2]),
            ],
        )
    }

    pub fn coeffs(&self) -> &[FieldElem; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn as_poly(&self) -> Poly {
        Poly::from_terms(
            self.field,
            Side::Ring,
            [
                (Monomial::new(1, 0, 0), self.coeffs[0].clone()),
                (Monomial::new(0, 1, 0), self.coeffs[1].clone()),
                (Monomial::new(0, 0, 1), self.coeffs[2].clone()),
            ],
        )
        .unwrap()
    }

    pub fn from_poly(p: &Poly) -> Result<Self, PolyError> {
        if p.side() != Side::Ring || p.degree() != Some(1) {
            return Err(PolyError::ZeroLinearForm);
        }
        LinearForm::new(
            p.field(),
            [
                p.coeff(&Monomial::new(1, 0, 0)),
                p.coeff(&Monomial::new(0, 1, 0)),
                p.coeff(&Monomial::new(0, 0, 1)),
            ],
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

/// The divided power L^{[deg]} of a 0/1 linear form: the coefficient-1 sum of
/// all degree-`deg` monomials supported on the variables appearing in L.
pub fn divided_power(l: &LinearForm, deg: u32) -> Result<Poly, PolyError> {
    let field = l.field();
    let mut support = [false; 3];
    for (i, c) in l.coeffs().iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        if *c != field.one() {
            return Err(PolyError::UnsupportedCoefficient);
        }
        support[i] = true;
    }
    let terms = monomial_basis(deg)
        .into_iter()
        .filter(|m| (0..3).all(|i| support[i] || m.exps[i] == 0))
        .map(|m| (m, field.one()));
    Poly::from_terms(field, Side::Dual, terms)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = self.field.is_negative(c);
            let mag = self.field.abs(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let ms = m.fmt_side(self.side);
            if ms.is_empty() {
                write!(f, "{}", self.field.fmt_elem(&mag))?;
            } else if mag == self.field.one() {
                write!(f, "{}", ms)?;
            } else {
                write!(f, "{}{}", self.field.fmt_elem(&mag), ms)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError {
                pos: start,
                msg: "expected an integer".into(),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                msg: "integer out of range".into(),
            })
    }
}

fn var_index(b: u8, side: Side) -> Option<usize> {
    let letters = side.letters();
    letters.iter().position(|&c| c as u8 == b)
}

/// Parse the term grammar: terms joined by `+`/`-`; a term is an optional
/// integer (or integer/integer) coefficient followed by variable factors with
/// optional `^e` exponents; `*` is optional between factors; whitespace is
/// ignored. Letter case must match `side`.
pub fn parse_poly(text: &str, side: Side, field: Field) -> Result<Poly, ParseError> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Monomial, FieldElem)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.pos >= cur.bytes.len() {
            if first {
                return Err(ParseError {
                    pos: cur.pos,
                    msg: "empty input".into(),
                });
            }
            break;
        }
        let term_pos = cur.pos;
        let mut sign = 1i64;
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
            }
            Some(b'-') => {
                sign = -1;
                cur.bump();
            }
            _ if first => {}
            Some(c) => {
                return Err(ParseError {
                    pos: cur.pos,
                    msg: format!("expected '+' or '-', found '{}'", c as char),
                })
            }
            None => break,
        }
        first = false;

        // optional coefficient
        let mut coeff = field.from_i64(sign);
        if let Some(b) = cur.peek() {
            if b.is_ascii_digit() {
                let n = cur.integer()?;
                if cur.peek() == Some(b'/') {
                    cur.bump();
                    let d = cur.integer()?;
                    if d == 0 {
                        return Err(ParseError {
                            pos: cur.pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    coeff = field.from_ratio(sign * n, d);
                } else {
                    coeff = field.from_i64(sign * n);
                }
            }
        }

        // variable factors
        let mut mono = Monomial::one();
        loop {
            match cur.peek() {
                Some(b'*') => {
                    cur.bump();
                }
                Some(b) if var_index(b, side).is_some() => {
                    let idx = var_index(b, side).unwrap();
                    cur.bump();
                    let mut e = 1u32;
                    if cur.peek() == Some(b'^') {
                        cur.bump();
                        let n = cur.integer()?;
                        if n < 0 {
                            return Err(ParseError {
                                pos: cur.pos,
                                msg: "negative exponent".into(),
                            });
                        }
                        e = n as u32;
                    }
                    mono.exps[idx] += e;
                }
                Some(b) if b.is_ascii_alphabetic() => {
                    return Err(ParseError {
                        pos: cur.pos,
                        msg: format!(
                            "unexpected variable '{}' (wrong side or unknown)",
                            b as char
                        ),
                    });
                }
                _ => break,
            }
        }
        let _ = term_pos;
        terms.push((mono, coeff));
    }
    Poly::from_terms(field, side, terms).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

pub fn parse_linear_form(text: &str, field: Field) -> Result<LinearForm, ParseError> {
    let p = parse_poly(text, Side::Ring, field)?;
    LinearForm::from_poly(&p).map_err(|_| ParseError {
        pos: 0,
        msg: "expected a nonzero linear form in x, y, z".into(),
    })
}
