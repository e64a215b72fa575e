//! Machine-readable fixtures for the dual-generator families (appendix
//! tables), plus a verifier instantiating each entry at concrete socle
//! degrees.
//!
//! Fixtures are data, not code: one JSON record per table row with the JDT
//! expression in subscript notation, the generator template, the linear form and
//! the applicability range, so rows can be diffed against the source tables
//! directly. Expressions are affine in the socle degree j.

use crate::apolarity::{quotient_hilbert, socle_dimension, GradedIdeal};
use crate::field::Field;
use crate::jordan::{jdt_of_rank_matrix, rank_matrix, rank_matrix_from_ideal, Jdt, RankMatrix};
use crate::poly::{divided_power, parse_linear_form, LinearForm, Monomial, Poly, PolyError, Side};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TablesError {
    OutOfRange { id: String, j: usize },
    Expr { pos: usize, msg: String },
    UnknownTable(String),
    UnsupportedPair { s: usize, k: usize },
    Poly(PolyError),
    OccupancyMismatch { id: String, j: usize },
}

impl fmt::Display for TablesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TablesError::OutOfRange { id, j } => {
                write!(f, "entry {} is not applicable at j = {}", id, j)
            }
            TablesError::Expr { pos, msg } => write!(f, "expression error at {}: {}", pos, msg),
            TablesError::UnknownTable(t) => write!(f, "unknown table id {}", t),
            TablesError::UnsupportedPair { s, k } => {
                write!(f, "no identification data for s = {}, k = {}", s, k)
            }
            TablesError::Poly(e) => write!(f, "{}", e),
            TablesError::OccupancyMismatch { id, j } => write!(
                f,
                "entry {} at j = {}: expected JDT does not reconstruct T",
                id, j
            ),
        }
    }
}

impl std::error::Error for TablesError {}

impl From<PolyError> for TablesError {
    fn from(e: PolyError) -> Self {
        TablesError::Poly(e)
    }
}

fn err_at(pos: usize, msg: impl Into<String>) -> TablesError {
    TablesError::Expr {
        pos,
        msg: msg.into(),
    }
}

// ---------------------------------------------------------------------------
// Affine expressions in j (and a summation index i for generator templates).
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Aff {
    pub j: i64,
    pub i: i64,
    pub c: i64,
}

impl Aff {
    fn constant(c: i64) -> Self {
        Aff { j: 0, i: 0, c }
    }

    fn eval(&self, j: i64, i: i64) -> i64 {
        self.j * j + self.i * i + self.c
    }
}

struct Chars {
    v: Vec<char>,
    pos: usize,
}

impl Chars {
    fn new(s: &str) -> Self {
        Chars {
            v: s.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&mut self) -> Option<char> {
        while self.v.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.v.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> Result<(), TablesError> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            got => Err(err_at(
                self.pos,
                format!("expected '{}', found {:?}", c, got),
            )),
        }
    }

    fn try_eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, TablesError> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(err_at(start, "expected an integer"));
        }
        s.parse().map_err(|_| err_at(start, "integer out of range"))
    }

    /// Affine combination of integers and the symbols j (and i when allowed):
    /// e.g. "j-1", "3i+1", "5", "j-3i".
    fn affine(&mut self, allow_i: bool) -> Result<Aff, TablesError> {
        let mut acc = Aff::constant(0);
        let mut first = true;
        loop {
            let mut sign = 1i64;
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ if first => {}
                _ => break,
            }
            // term: integer, symbol, or integer*symbol
            let mut coeff = 1i64;
            let mut saw_number = false;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = self.integer()?;
                saw_number = true;
            }
            match self.peek() {
                Some('j') => {
                    self.pos += 1;
                    acc.j += sign * coeff;
                }
                Some('i') if allow_i => {
                    self.pos += 1;
                    acc.i += sign * coeff;
                }
                _ if saw_number => acc.c += sign * coeff,
                got => {
                    return Err(err_at(
                        self.pos,
                        format!("expected a term, found {:?}", got),
                    ))
                }
            }
            first = false;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// JDT expressions in subscript notation, affine in j.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum JdtItem {
    /// Part length at each listed initial degree: `p_{a,b,...}` or `p_a`.
    Part { p: Aff, nus: Vec<Aff> },
    /// Ladder `p↑_lo^hi`: one part per degree lo..=hi (empty when hi < lo).
    Ladder { p: Aff, lo: Aff, hi: Aff },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JdtExpr {
    items: Vec<(JdtItem, u32)>,
    source: String,
}

impl fmt::Display for JdtExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

impl JdtExpr {
    pub fn instantiate(&self, j: usize) -> Result<Jdt, TablesError> {
        let jj = j as i64;
        let mut parts = Vec::new();
        for (item, mult) in &self.items {
            let emitted: Vec<(i64, i64)> = match item {
                JdtItem::Part { p, nus } => nus
                    .iter()
                    .map(|nu| (p.eval(jj, 0), nu.eval(jj, 0)))
                    .collect(),
                JdtItem::Ladder { p, lo, hi } => {
                    let (l, h) = (lo.eval(jj, 0), hi.eval(jj, 0));
                    (l..=h).map(|nu| (p.eval(jj, 0), nu)).collect()
                }
            };
            for (p, nu) in emitted {
                if p < 1 || nu < 0 {
                    return Err(err_at(
                        0,
                        format!("part {}_{} out of range at j = {}", p, nu, j),
                    ));
                }
                for _ in 0..*mult {
                    parts.push((p as usize, nu as usize));
                }
            }
        }
        Ok(Jdt::new(parts))
    }
}

/// Parse subscript-notation JDT expressions: `(j+1)_0`, `((j-1)_1)^2`,
/// `1↑_1^{j-1}`, `2_{1,2,j-3,j-2}`, joined by commas, optionally wrapped in
/// one outer pair of parentheses.
pub fn parse_jdt_expr(text: &str) -> Result<JdtExpr, TablesError> {
    let mut cur = Chars::new(text);
    let outer = cur.try_eat('(') && {
        // lookahead: an outer wrapper only if the matching ')' is the last char
        let mut depth = 1usize;
        let mut k = cur.pos;
        let mut is_wrapper = false;
        while k < cur.v.len() {
            match cur.v[k] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        is_wrapper = cur.v[k + 1..].iter().all(|c| c.is_whitespace());
                        break;
                    }
                }
                _ => {}
            }
            k += 1;
        }
        if !is_wrapper {
            cur.pos -= 1; // not a wrapper, rewind
        }
        is_wrapper
    };
    let mut items = Vec::new();
    loop {
        items.push(parse_item(&mut cur)?);
        if cur.try_eat(',') {
            continue;
        }
        break;
    }
    if outer {
        cur.eat(')')?;
    }
    if cur.peek().is_some() {
        return Err(err_at(cur.pos, "trailing input"));
    }
    Ok(JdtExpr {
        items,
        source: text.trim().to_string(),
    })
}

fn parse_item(cur: &mut Chars) -> Result<(JdtItem, u32), TablesError> {
    // either "( atom )^m" or a bare atom
    if cur.peek() == Some('(') {
        // decide: parenthesized length-expression "(j-1)_..." vs group "(...)^m"
        let save = cur.pos;
        cur.bump();
        let mut depth = 1usize;
        let mut k = cur.pos;
        while k < cur.v.len() && depth > 0 {
            match cur.v[k] {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            k += 1;
        }
        // peek past the matching ')': '^' means a multiplicity group,
        // unless the parens close a length expression followed by '_' or '↑'
        let after = cur.v.get(k).copied();
        cur.pos = save;
        if after == Some('^') {
            cur.eat('(')?;
            let atom = parse_atom(cur)?;
            cur.eat(')')?;
            cur.eat('^')?;
            let m = cur.integer()?;
            if m < 1 {
                return Err(err_at(cur.pos, "multiplicity must be positive"));
            }
            return Ok((atom, m as u32));
        }
    }
    Ok((parse_atom(cur)?, 1))
}

fn parse_atom(cur: &mut Chars) -> Result<JdtItem, TablesError> {
    let p = if cur.try_eat('(') {
        let a = cur.affine(false)?;
        cur.eat(')')?;
        a
    } else {
        cur.affine(false)?
    };
    if cur.try_eat('↑') {
        cur.eat('_')?;
        let lo = parse_subexpr(cur)?;
        cur.eat('^')?;
        let hi = parse_subexpr(cur)?;
        return Ok(JdtItem::Ladder { p, lo, hi });
    }
    cur.eat('_')?;
    if cur.try_eat('{') {
        let mut nus = vec![cur.affine(false)?];
        while cur.try_eat(',') {
            nus.push(cur.affine(false)?);
        }
        cur.eat('}')?;
        Ok(JdtItem::Part { p, nus })
    } else {
        let nu = cur.affine(false)?;
        Ok(JdtItem::Part { p, nus: vec![nu] })
    }
}

fn parse_subexpr(cur: &mut Chars) -> Result<Aff, TablesError> {
    if cur.try_eat('{') {
        let a = cur.affine(false)?;
        cur.eat('}')?;
        Ok(a)
    } else {
        cur.affine(false)
    }
}

// ---------------------------------------------------------------------------
// Generator templates: monomial products, sums, divided powers, affine in j.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum TFactor {
    Var {
        idx: usize,
        exp: Aff,
    },
    /// Parenthesized polynomial, optionally raised to an ordinary power or a
    /// divided power `^[e]`.
    Group {
        body: TPoly,
        exp: Option<Aff>,
        divided: bool,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum TAtom {
    Term {
        coeff: i64,
        factors: Vec<TFactor>,
    },
    /// `sum_{i=0}^{bound}(body)` with bound = floor((aff)/den).
    Sigma {
        sign: i64,
        num: Aff,
        den: i64,
        body: TPoly,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct TPoly(Vec<TAtom>);

/// A dual-generator or ideal-generator template, evaluated at concrete j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorTemplate {
    body: TPoly,
    side: Side,
    source: String,
}

impl fmt::Display for GeneratorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

impl GeneratorTemplate {
    pub fn instantiate(&self, j: usize, field: Field) -> Result<Poly, TablesError> {
        eval_tpoly(&self.body, j as i64, None, self.side, field)
    }
}

fn eval_tpoly(
    tp: &TPoly,
    j: i64,
    i: Option<i64>,
    side: Side,
    field: Field,
) -> Result<Poly, TablesError> {
    let mut acc = Poly::zero(field, side);
    for atom in &tp.0 {
        let v = match atom {
            TAtom::Term { coeff, factors } => {
                let mut term = Poly::constant(field, side, field.from_i64(*coeff));
                for f in factors {
                    let factor = eval_tfactor(f, j, i, side, field)?;
                    term = term.mul(&factor);
                }
                term
            }
            TAtom::Sigma {
                sign,
                num,
                den,
                body,
            } => {
                let hi_num = num.eval(j, i.unwrap_or(0));
                let hi = hi_num.div_euclid(*den);
                let mut sum = Poly::zero(field, side);
                for idx in 0..=hi {
                    let part = eval_tpoly(body, j, Some(idx), side, field)?;
                    sum = sum.add(&part).map_err(TablesError::from)?;
                }
                sum.scale(&field.from_i64(*sign))
            }
        };
        acc = acc.add(&v).map_err(TablesError::from)?;
    }
    Ok(acc)
}

fn eval_tfactor(
    f: &TFactor,
    j: i64,
    i: Option<i64>,
    side: Side,
    field: Field,
) -> Result<Poly, TablesError> {
    match f {
        TFactor::Var { idx, exp } => {
            let e = exp.eval(j, i.unwrap_or(0));
            if e < 0 {
                return Err(err_at(0, format!("negative exponent {} at j = {}", e, j)));
            }
            let mut exps = [0u32; 3];
            exps[*idx] = e as u32;
            Ok(Poly::monomial(field, side, Monomial { exps }))
        }
        TFactor::Group { body, exp, divided } => {
            if *divided {
                let e = exp.unwrap().eval(j, i.unwrap_or(0));
                if e < 0 {
                    return Err(err_at(0, "negative divided power".to_string()));
                }
                let base = eval_tpoly(body, j, i, Side::Ring, field)?;
                let lf = LinearForm::from_poly(&base).map_err(TablesError::from)?;
                return divided_power(&lf, e as u32).map_err(TablesError::from);
            }
            let base = eval_tpoly(body, j, i, side, field)?;
            match exp {
                None => Ok(base),
                Some(a) => {
                    let e = a.eval(j, i.unwrap_or(0));
                    if e < 0 {
                        return Err(err_at(0, "negative exponent".to_string()));
                    }
                    Ok(base.pow(e as u32))
                }
            }
        }
    }
}

pub fn parse_generator_template(text: &str, side: Side) -> Result<GeneratorTemplate, TablesError> {
    let mut cur = Chars::new(text);
    let body = parse_tpoly(&mut cur, side)?;
    if cur.peek().is_some() {
        return Err(err_at(cur.pos, "trailing input in generator template"));
    }
    Ok(GeneratorTemplate {
        body,
        side,
        source: text.trim().to_string(),
    })
}

fn parse_tpoly(cur: &mut Chars, side: Side) -> Result<TPoly, TablesError> {
    let mut atoms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = 1i64;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                sign = -1;
                cur.bump();
            }
            _ if first => {}
            Some(')') | None => break,
            Some(',') | Some('}') => break,
            Some(c) => return Err(err_at(cur.pos, format!("expected '+' or '-', got '{}'", c))),
        }
        first = false;
        atoms.push(parse_tatom(cur, side, sign)?);
        match cur.peek() {
            Some('+') | Some('-') => continue,
            _ => break,
        }
    }
    if atoms.is_empty() {
        return Err(err_at(cur.pos, "empty polynomial template"));
    }
    Ok(TPoly(atoms))
}

fn parse_tatom(cur: &mut Chars, side: Side, sign: i64) -> Result<TAtom, TablesError> {
    // summation block?
    if cur.peek() == Some('s') {
        let save = cur.pos;
        let word: String = cur.v[cur.pos..cur.v.len().min(cur.pos + 3)]
            .iter()
            .collect();
        if word == "sum" {
            cur.pos += 3;
            cur.eat('_')?;
            cur.eat('{')?;
            cur.eat('i')?;
            cur.eat('=')?;
            let lo = cur.integer()?;
            if lo != 0 {
                return Err(err_at(cur.pos, "summation must start at i = 0"));
            }
            cur.eat('}')?;
            cur.eat('^')?;
            cur.eat('{')?;
            let num = if cur.try_eat('(') {
                let a = cur.affine(false)?;
                cur.eat(')')?;
                a
            } else {
                cur.affine(false)?
            };
            let den = if cur.try_eat('/') { cur.integer()? } else { 1 };
            if den <= 0 {
                return Err(err_at(
                    cur.pos,
                    "summation bound denominator must be positive",
                ));
            }
            cur.eat('}')?;
            cur.eat('(')?;
            let body = parse_tpoly(cur, side)?;
            cur.eat(')')?;
            return Ok(TAtom::Sigma {
                sign,
                num,
                den,
                body,
            });
        }
        cur.pos = save;
    }

    let mut coeff = sign;
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        coeff *= cur.integer()?;
    }
    let mut factors = Vec::new();
    loop {
        match cur.peek() {
            Some('*') => {
                cur.bump();
            }
            Some('(') => {
                cur.bump();
                let body = parse_tpoly(cur, side)?;
                cur.eat(')')?;
                let mut exp = None;
                let mut divided = false;
                if cur.try_eat('^') {
                    if cur.try_eat('[') {
                        exp = Some(cur.affine(true)?);
                        cur.eat(']')?;
                        divided = true;
                    } else {
                        exp = Some(parse_exponent(cur)?);
                    }
                }
                factors.push(TFactor::Group { body, exp, divided });
            }
            Some(c) if side.letters().contains(&c) => {
                cur.bump();
                let idx = side.letters().iter().position(|&l| l == c).unwrap();
                let exp = if cur.try_eat('^') {
                    parse_exponent(cur)?
                } else {
                    Aff::constant(1)
                };
                factors.push(TFactor::Var { idx, exp });
            }
            _ => break,
        }
    }
    Ok(TAtom::Term { coeff, factors })
}

fn parse_exponent(cur: &mut Chars) -> Result<Aff, TablesError> {
    if cur.try_eat('{') {
        let a = cur.affine(true)?;
        cur.eat('}')?;
        Ok(a)
    } else if cur.peek() == Some('j') {
        cur.bump();
        Ok(Aff { j: 1, i: 0, c: 0 })
    } else if cur.peek() == Some('i') {
        cur.bump();
        Ok(Aff { j: 0, i: 1, c: 0 })
    } else {
        Ok(Aff::constant(cur.integer()?))
    }
}

pub fn parse_ideal_template(gens: &[String]) -> Result<Vec<GeneratorTemplate>, TablesError> {
    gens.iter()
        .map(|g| parse_generator_template(g, Side::Ring))
        .collect()
}

// ---------------------------------------------------------------------------
// Fixtures.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum TableId {
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
}

impl TableId {
    pub fn parse(s: &str) -> Result<TableId, TablesError> {
        match s {
            "T7" => Ok(TableId::T7),
            "T8" => Ok(TableId::T8),
            "T9" | "T-s5k1" => Ok(TableId::T9),
            "T10" | "T-s5k2" => Ok(TableId::T10),
            "T11" => Ok(TableId::T11),
            "T12" => Ok(TableId::T12),
            other => Err(TablesError::UnknownTable(other.to_string())),
        }
    }

    /// Sperner number of the table's family.
    pub fn sperner(&self) -> usize {
        match self {
            TableId::T7 => 3,
            TableId::T8 => 4,
            _ => 5,
        }
    }

    /// The family Hilbert function at socle degree j.
    pub fn hilbert(&self, j: usize) -> Vec<usize> {
        let s = self.sperner();
        if s == 3 {
            let mut t = vec![1];
            t.extend(std::iter::repeat_n(3, j - 1));
            t.push(1);
            t
        } else {
            let mut t = vec![1, 3];
            t.extend(std::iter::repeat_n(s, j - 3));
            t.push(3);
            t.push(1);
            t
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableId::T7 => write!(f, "T7"),
            TableId::T8 => write!(f, "T8"),
            TableId::T9 => write!(f, "T9"),
            TableId::T10 => write!(f, "T10"),
            TableId::T11 => write!(f, "T11"),
            TableId::T12 => write!(f, "T12"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Generator {
    Dual(GeneratorTemplate),
    Ideal(Vec<GeneratorTemplate>),
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub table: TableId,
    pub id: u32,
    pub jdt: JdtExpr,
    pub generator: Generator,
    pub ell: String,
    /// Smallest j at which the generator realizes the JDT.
    pub min_j: usize,
    /// Some(j) when the entry is a single concrete socle degree.
    pub fixed_j: Option<usize>,
    /// For the s=5, k=2 table: matching entries of the j-parametric tables.
    pub crossrefs: Vec<u32>,
    pub notes: String,
}

impl TableEntry {
    pub fn applicable(&self, j: usize) -> bool {
        match self.fixed_j {
            Some(fj) => j == fj,
            None => j >= self.min_j,
        }
    }

    pub fn key(&self) -> String {
        format!("{}#{}", self.table, self.id)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawGenerator {
    Dual(String),
    Ideal(Vec<String>),
}

#[derive(Deserialize)]
struct RawEntry {
    table: String,
    id: u32,
    jdt: String,
    generator: RawGenerator,
    #[serde(default)]
    ell: Option<String>,
    #[serde(default)]
    min_j: Option<usize>,
    #[serde(default)]
    fixed_j: Option<usize>,
    #[serde(default)]
    crossrefs: Vec<u32>,
    #[serde(default)]
    notes: String,
}

const TABLES_JSON: &str = include_str!("../fixtures/tables.json");

static TABLES: OnceLock<Vec<TableEntry>> = OnceLock::new();

/// All fixture rows, parsed once.
pub fn builtin_tables() -> &'static [TableEntry] {
    TABLES.get_or_init(|| {
        let raw: Vec<RawEntry> =
            serde_json::from_str(TABLES_JSON).expect("fixtures/tables.json is well-formed");
        raw.into_iter()
            .map(|r| {
                let table = TableId::parse(&r.table).expect("known table id");
                let jdt = parse_jdt_expr(&r.jdt)
                    .unwrap_or_else(|e| panic!("bad jdt for {}#{}: {}", r.table, r.id, e));
                let generator = match r.generator {
                    RawGenerator::Dual(s) => {
                        Generator::Dual(parse_generator_template(&s, Side::Dual).unwrap_or_else(
                            |e| panic!("bad generator for {}#{}: {}", r.table, r.id, e),
                        ))
                    }
                    RawGenerator::Ideal(gens) => {
                        Generator::Ideal(parse_ideal_template(&gens).unwrap_or_else(|e| {
                            panic!("bad ideal for {}#{}: {}", r.table, r.id, e)
                        }))
                    }
                };
                let min_j = r.min_j.or(r.fixed_j).expect("min_j or fixed_j present");
                TableEntry {
                    table,
                    id: r.id,
                    jdt,
                    generator,
                    ell: r.ell.unwrap_or_else(|| "x".to_string()),
                    min_j,
                    fixed_j: r.fixed_j,
                    crossrefs: r.crossrefs,
                    notes: r.notes,
                }
            })
            .collect()
    })
}

pub fn table_entries(id: TableId) -> Vec<&'static TableEntry> {
    builtin_tables().iter().filter(|e| e.table == id).collect()
}

// ---------------------------------------------------------------------------
// Instantiation and verification.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum InstantiatedGenerator {
    Dual(Poly),
    Ideal(GradedIdeal),
}

/// Concrete generator, linear form and expected JDT of an entry at socle
/// degree j. The expected JDT is validated against the family Hilbert
/// function (occupancy).
pub fn instantiate(
    entry: &TableEntry,
    j: usize,
    field: Field,
) -> Result<(InstantiatedGenerator, LinearForm, Jdt), TablesError> {
    if !entry.applicable(j) {
        return Err(TablesError::OutOfRange { id: entry.key(), j });
    }
    let expected = instantiate_jdt(entry, j)?;
    let ell = parse_linear_form(&entry.ell, field).map_err(|e| err_at(e.pos, e.msg))?;
    let gen = match &entry.generator {
        Generator::Dual(t) => InstantiatedGenerator::Dual(t.instantiate(j, field)?),
        Generator::Ideal(ts) => {
            let gens: Result<Vec<Poly>, TablesError> =
                ts.iter().map(|t| t.instantiate(j, field)).collect();
            InstantiatedGenerator::Ideal(
                GradedIdeal::new(gens?, j as u32 + 1).expect("ideal generators nonzero"),
            )
        }
    };
    Ok((gen, ell, expected))
}

/// Expected JDT of an entry at j (expression only, no generator), with the
/// occupancy check against the family Hilbert function.
pub fn instantiate_jdt(entry: &TableEntry, j: usize) -> Result<Jdt, TablesError> {
    let jdt = entry.jdt.instantiate(j)?;
    let t = entry.table.hilbert(j);
    if jdt.occupancy(t.len()) != t || jdt.total() != t.iter().sum::<usize>() {
        return Err(TablesError::OccupancyMismatch { id: entry.key(), j });
    }
    Ok(jdt)
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub key: String,
    pub j: usize,
    pub pass: bool,
    pub expected: Jdt,
    pub computed: Jdt,
    pub hilbert_ok: bool,
    /// For ideal entries: quotient Hilbert function equals T and the socle is
    /// one-dimensional in the top degree.
    pub socle_ok: Option<bool>,
    pub rank_matrix: RankMatrix,
}

/// Verify one entry at one socle degree: instantiate, compute the JDT through
/// the rank-matrix path (dual or ideal side), compare as multisets.
pub fn verify_entry(
    entry: &TableEntry,
    j: usize,
    field: Field,
) -> Result<EntryReport, TablesError> {
    let (gen, ell, expected) = instantiate(entry, j, field)?;
    let t = entry.table.hilbert(j);
    let (m, hilbert_ok, socle_ok) = match &gen {
        InstantiatedGenerator::Dual(f) => {
            let m =
                rank_matrix(f, &ell).map_err(|_| TablesError::OutOfRange { id: entry.key(), j })?;
            let hok = m.hilbert() == t;
            (m, hok, None)
        }
        InstantiatedGenerator::Ideal(ideal) => {
            let m = rank_matrix_from_ideal(ideal, &ell, j)
                .map_err(|_| TablesError::OutOfRange { id: entry.key(), j })?;
            let hok = quotient_hilbert(ideal, j as u32) == t;
            let mut expect_socle = vec![0usize; j + 1];
            expect_socle[j] = 1;
            let sok = socle_dimension(ideal, j as u32)
                .map(|s| s == expect_socle)
                .unwrap_or(false);
            (m, hok, Some(sok))
        }
    };
    let computed =
        jdt_of_rank_matrix(&m).map_err(|_| TablesError::OutOfRange { id: entry.key(), j })?;
    let pass = computed == expected && hilbert_ok && socle_ok.unwrap_or(true);
    Ok(EntryReport {
        key: entry.key(),
        j,
        pass,
        expected,
        computed,
        hilbert_ok,
        socle_ok,
        rank_matrix: m,
    })
}

#[derive(Clone, Debug)]
pub struct TableSummary {
    pub table: TableId,
    pub js: Vec<usize>,
    pub reports: Vec<EntryReport>,
    pub skipped: Vec<(String, usize)>,
}

impl TableSummary {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.pass).count()
    }

    pub fn first_failure(&self) -> Option<&EntryReport> {
        self.reports.iter().find(|r| !r.pass)
    }
}

/// Run `verify_entry` over every entry of a table and every j in range;
/// entries outside their applicability range are skipped, not failed.
pub fn verify_table(id: TableId, js: &[usize], field: Field) -> Result<TableSummary, TablesError> {
    use rayon::prelude::*;
    let entries = table_entries(id);
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for e in &entries {
        for &j in js {
            if e.applicable(j) {
                jobs.push((*e, j));
            } else {
                skipped.push((e.key(), j));
            }
        }
    }
    let reports: Result<Vec<EntryReport>, TablesError> = jobs
        .par_iter()
        .map(|(e, j)| verify_entry(e, *j, field))
        .collect();
    Ok(TableSummary {
        table: id,
        js: js.to_vec(),
        reports: reports?,
        skipped,
    })
}

/// The deduplicated JDT set occurring at a small multiplicity k, per the
/// small-k identifications. Computed from the table generators at the
/// corresponding socle degree over Q (expression instantiation alone does not
/// capture the degenerations at k <= 2).
pub fn small_k_identifications(s: usize, k: usize) -> Result<BTreeSet<Jdt>, TablesError> {
    let field = Field::Q;
    let (tables, j): (Vec<TableId>, usize) = match (s, k) {
        (3, 1) => (vec![TableId::T7], 2),
        (3, 2) => (vec![TableId::T7], 3),
        (4, 1) => (vec![TableId::T8], 4),
        (4, 2) => (vec![TableId::T8], 5),
        (5, 1) => (vec![TableId::T9], 4),
        (5, 2) => (vec![TableId::T10], 5),
        (5, 3) => (vec![TableId::T11, TableId::T12], 6),
        _ => return Err(TablesError::UnsupportedPair { s, k }),
    };
    let mut out = BTreeSet::new();
    for id in tables {
        for entry in table_entries(id) {
            if let Some(fj) = entry.fixed_j {
                if fj != j {
                    continue;
                }
            }
            match &entry.generator {
                Generator::Dual(t) => {
                    let f = t.instantiate(j, field)?;
                    let ell =
                        parse_linear_form(&entry.ell, field).map_err(|e| err_at(e.pos, e.msg))?;
                    let m = rank_matrix(&f, &ell)
                        .map_err(|_| TablesError::OutOfRange { id: entry.key(), j })?;
                    out.insert(
                        jdt_of_rank_matrix(&m)
                            .map_err(|_| TablesError::OutOfRange { id: entry.key(), j })?,
                    );
                }
                Generator::Ideal(_) => {
                    // the ideal template needs larger j; its JDT value at this
                    // k is the instantiated expression
                    out.insert(entry.jdt.instantiate(j)?);
                }
            }
        }
    }
    Ok(out)
}
