//! The map-definition language.
//!
//! ```text
//! document  := statement*
//! statement := "ring" ident ("," ident)*
//!            | "note" string
//!            | "map" ident "=" tuple
//!            | "inverse" ident "=" tuple
//!            | "tame" ident "=" "[" (generator ("," generator)*)? "]"
//!            | "witness" ident "for" ident ("on" expr)? "params" ident ("," ident)* "=" tuple
//! tuple     := "(" expr ("," expr)* ")"
//! generator := "shift" "(" ident "," expr ")"
//!            | "linear" "(" row ("," row)* ")"
//!            | "translate" tuple
//! row       := "(" expr ("," expr)* ")"          constant entries
//! expr      := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*       divisors are nonzero constants
//! unary     := "-" unary | power
//! power     := atom ("^" integer)?
//! atom      := integer | ident | "(" expr ")"
//! ```
//!
//! `#` starts a comment running to the end of the line. Rational literals
//! are written `p/q`.

use std::collections::HashMap;
use std::fmt;

use fixlocus::automorphism::TameGenerator;
use fixlocus::poly::RationalMatrix;
use fixlocus::{Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

const KEYWORDS: [&str; 12] =
    ["ring", "note", "map", "inverse", "tame", "witness", "for", "on", "params", "shift", "linear", "translate"];
const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(_) => f.write_str("string"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Int(s.parse().unwrap()), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_alphanumeric() || c == '_') {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), pos));
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match chars.peek().copied() {
                    None | Some('\n') => return Err(pos.error("unterminated string")),
                    Some('"') => {
                        bump(&mut chars);
                        break;
                    }
                    Some('\\') => {
                        bump(&mut chars);
                        match chars.peek().copied() {
                            Some(e @ ('"' | '\\')) => {
                                bump(&mut chars);
                                s.push(e);
                            }
                            _ => return Err(Pos { line, column }.error("unknown escape in string")),
                        }
                    }
                    Some(_) => s.push(bump(&mut chars)),
                }
            }
            out.push((Tok::Str(s), pos));
        } else if "()[],=+-*/^".contains(c) {
            bump(&mut chars);
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(pos.error(format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

/// One generator of a `tame` statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `x_var ↦ x_var + by`.
    Shift { var: usize, by: Polynomial },
    /// `x ↦ A x`.
    Linear(Vec<Vec<Rational>>),
    /// `x ↦ x + b`.
    Translate(Vec<Rational>),
}

impl GeneratorSpec {
    pub fn to_generator(&self, n: usize) -> TameGenerator {
        match self {
            GeneratorSpec::Shift { var, by } => TameGenerator::Elementary { target: *var, shift: by.clone() },
            GeneratorSpec::Linear(rows) => TameGenerator::Affine {
                matrix: RationalMatrix::from_rows(rows.clone()).expect("rows checked at parse time"),
                translation: vec![Rational::zero(); n],
            },
            GeneratorSpec::Translate(b) => {
                TameGenerator::Affine { matrix: RationalMatrix::identity(n), translation: b.clone() }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub name: String,
    pub map: String,
    /// Component of the fixed hypersurface the curves cover; the whole
    /// hypersurface part when absent.
    pub target: Option<Polynomial>,
    pub params: Vec<String>,
    pub components: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Note(String),
    Map { name: String, components: Vec<Polynomial> },
    Inverse { name: String, components: Vec<Polynomial> },
    Tame { name: String, word: Vec<GeneratorSpec> },
    Witness(WitnessSpec),
}

/// A parsed document: a ring of variables over the rationals and the
/// statements in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDocument {
    pub ring: Vec<String>,
    pub items: Vec<Item>,
}

impl MapDocument {
    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn notes(&self) -> impl Iterator<Item = &str> {
        self.items.iter().filter_map(|i| match i {
            Item::Note(s) => Some(s.as_str()),
            _ => None,
        })
    }

    /// Names of maps defined by `map` or `tame`, in source order.
    pub fn map_names(&self) -> Vec<&str> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Map { name, .. } | Item::Tame { name, .. } => Some(name.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn witnesses_for<'a>(&'a self, map: &'a str) -> impl Iterator<Item = &'a WitnessSpec> + 'a {
        self.items.iter().filter_map(move |i| match i {
            Item::Witness(w) if w.map == map => Some(w),
            _ => None,
        })
    }

    pub fn poly_string(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.ring)
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_sym(&mut self, c: char) -> Result<Pos, ParseError> {
        let (t, pos) = self.next();
        if t == Tok::Sym(c) {
            Ok(pos)
        } else {
            Err(pos.error(format!("expected `{c}`, found {t}")))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (t, pos) = self.next();
        match t {
            Tok::Ident(s) if s == kw => Ok(()),
            t => Err(pos.error(format!("expected `{kw}`, found {t}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.next() {
            (Tok::Ident(s), pos) if KEYWORDS.contains(&s.as_str()) => {
                Err(pos.error(format!("`{s}` is a keyword and cannot be used as a name")))
            }
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(pos.error(format!("expected a name, found {t}"))),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<(String, Pos)>, ParseError> {
        let mut out = vec![self.ident()?];
        while self.is_sym(',') {
            self.next();
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn expr(&mut self, scope: &Scope) -> Result<Polynomial, ParseError> {
        let mut acc = self.term(scope)?;
        loop {
            if self.is_sym('+') {
                self.next();
                acc = &acc + &self.term(scope)?;
            } else if self.is_sym('-') {
                self.next();
                acc = &acc - &self.term(scope)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, scope: &Scope) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary(scope)?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = &acc * &self.unary(scope)?;
            } else if self.is_sym('/') {
                let pos = self.next().1;
                let d = self.unary(scope)?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(pos.error("division by zero")),
                    None => return Err(pos.error("division by a non-constant expression is not polynomial")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, scope: &Scope) -> Result<Polynomial, ParseError> {
        if self.is_sym('-') {
            self.next();
            Ok(-self.unary(scope)?)
        } else {
            self.power(scope)
        }
    }

    fn power(&mut self, scope: &Scope) -> Result<Polynomial, ParseError> {
        let base = self.atom(scope)?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        match self.next() {
            (Tok::Int(e), pos) => match e.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => Err(pos.error(format!("exponent {e} exceeds {MAX_EXPONENT}"))),
            },
            (Tok::Sym('-'), pos) => Err(pos.error("negative exponents are not polynomial")),
            (t, pos) => Err(pos.error(format!("expected an integer exponent, found {t}"))),
        }
    }

    fn atom(&mut self, scope: &Scope) -> Result<Polynomial, ParseError> {
        match self.next() {
            (Tok::Int(n), _) => Ok(Polynomial::constant(scope.nvars(), Rational::from_integer(n))),
            (Tok::Ident(s), pos) => match scope.index(&s) {
                Some(i) => Ok(Polynomial::var(scope.nvars(), i)),
                None => Err(pos.error(format!("unknown identifier `{s}`"))),
            },
            (Tok::Sym('('), _) => {
                let e = self.expr(scope)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            (t, pos) => Err(pos.error(format!("expected an expression, found {t}"))),
        }
    }

    fn tuple(&mut self, scope: &Scope) -> Result<(Vec<Polynomial>, Pos), ParseError> {
        let pos = self.expect_sym('(')?;
        let mut out = vec![self.expr(scope)?];
        while self.is_sym(',') {
            self.next();
            out.push(self.expr(scope)?);
        }
        self.expect_sym(')')?;
        Ok((out, pos))
    }

    fn constant_tuple(&mut self, scope: &Scope) -> Result<(Vec<Rational>, Pos), ParseError> {
        let pos = self.pos();
        let (entries, pos2) = self.tuple(scope)?;
        let out = entries
            .iter()
            .map(|e| e.constant_value().ok_or_else(|| pos.error("expected constant entries")))
            .collect::<Result<_, _>>()?;
        Ok((out, pos2))
    }

    fn generator(&mut self, ring: &Scope) -> Result<GeneratorSpec, ParseError> {
        let n = ring.nvars();
        let (kind, pos) = match self.next() {
            (Tok::Ident(s), pos) => (s, pos),
            (t, pos) => return Err(pos.error(format!("expected a generator, found {t}"))),
        };
        match kind.as_str() {
            "shift" => {
                self.expect_sym('(')?;
                let (var, vpos) = match self.next() {
                    (Tok::Ident(s), p) => (s, p),
                    (t, p) => return Err(p.error(format!("expected a variable, found {t}"))),
                };
                let var = ring.index(&var).ok_or_else(|| vpos.error(format!("unknown identifier `{var}`")))?;
                self.expect_sym(',')?;
                let epos = self.pos();
                let by = self.expr(ring)?;
                if by.contains_var(var) {
                    return Err(epos.error(format!("shift of `{}` may not involve `{}`", ring.names[var], ring.names[var])));
                }
                self.expect_sym(')')?;
                Ok(GeneratorSpec::Shift { var, by })
            }
            "linear" => {
                self.expect_sym('(')?;
                let mut rows = vec![self.constant_tuple(ring)?];
                while self.is_sym(',') {
                    self.next();
                    rows.push(self.constant_tuple(ring)?);
                }
                self.expect_sym(')')?;
                if rows.len() != n {
                    return Err(pos.error(format!("linear generator has {} rows, ring has {n} variables", rows.len())));
                }
                if let Some((_, rpos)) = rows.iter().find(|(r, _)| r.len() != n) {
                    return Err(rpos.error(format!("matrix row must have {n} entries")));
                }
                Ok(GeneratorSpec::Linear(rows.into_iter().map(|(r, _)| r).collect()))
            }
            "translate" => {
                let (b, bpos) = self.constant_tuple(ring)?;
                if b.len() != n {
                    return Err(bpos.error(format!("translation has {} entries, ring has {n} variables", b.len())));
                }
                Ok(GeneratorSpec::Translate(b))
            }
            other => Err(pos.error(format!("unknown generator `{other}`; expected shift, linear or translate"))),
        }
    }
}

struct Scope {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Scope {
    fn new(names: Vec<String>) -> Self {
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Scope { names, index }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

fn distinct(names: &[(String, Pos)], what: &str) -> Result<Vec<String>, ParseError> {
    for (k, (s, pos)) in names.iter().enumerate() {
        if names[..k].iter().any(|(t, _)| t == s) {
            return Err(pos.error(format!("{what} `{s}` declared twice")));
        }
    }
    Ok(names.iter().map(|(s, _)| s.clone()).collect())
}

pub fn parse_document(text: &str) -> Result<MapDocument, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    if !p.is_keyword("ring") {
        let (t, pos) = p.next();
        return Err(pos.error(format!("a document starts with `ring`, found {t}")));
    }
    p.next();
    let ring_names = p.ident_list()?;
    let ring = Scope::new(distinct(&ring_names, "variable")?);
    let n = ring.nvars();

    let mut items = Vec::new();
    let mut maps: HashMap<String, bool> = HashMap::new(); // name -> defined by `tame`
    let mut inverses: Vec<String> = Vec::new();
    let mut witness_names: Vec<String> = Vec::new();
    loop {
        let (tok, pos) = p.next();
        let kw = match tok {
            Tok::End => break,
            Tok::Ident(s) => s,
            t => return Err(pos.error(format!("expected a statement, found {t}"))),
        };
        match kw.as_str() {
            "ring" => return Err(pos.error("the ring is declared once, at the start")),
            "note" => match p.next() {
                (Tok::Str(s), _) => items.push(Item::Note(s)),
                (t, pos) => return Err(pos.error(format!("expected a string, found {t}"))),
            },
            "map" | "tame" => {
                let (name, npos) = p.ident()?;
                if maps.contains_key(&name) {
                    return Err(npos.error(format!("map `{name}` defined twice")));
                }
                p.expect_sym('=')?;
                if kw == "map" {
                    let (components, tpos) = p.tuple(&ring)?;
                    if components.len() != n {
                        return Err(tpos.error(format!(
                            "map `{name}` has {} components, ring has {n} variables",
                            components.len()
                        )));
                    }
                    maps.insert(name.clone(), false);
                    items.push(Item::Map { name, components });
                } else {
                    p.expect_sym('[')?;
                    let mut word = Vec::new();
                    if !p.is_sym(']') {
                        word.push(p.generator(&ring)?);
                        while p.is_sym(',') {
                            p.next();
                            word.push(p.generator(&ring)?);
                        }
                    }
                    p.expect_sym(']')?;
                    maps.insert(name.clone(), true);
                    items.push(Item::Tame { name, word });
                }
            }
            "inverse" => {
                let (name, npos) = p.ident()?;
                match maps.get(&name) {
                    None => return Err(npos.error(format!("inverse of undefined map `{name}`"))),
                    Some(true) => {
                        return Err(npos.error(format!("map `{name}` is a tame word; its inverse is implied")))
                    }
                    Some(false) if inverses.contains(&name) => {
                        return Err(npos.error(format!("inverse of `{name}` given twice")))
                    }
                    Some(false) => {}
                }
                p.expect_sym('=')?;
                let (components, tpos) = p.tuple(&ring)?;
                if components.len() != n {
                    return Err(tpos.error(format!(
                        "inverse of `{name}` has {} components, ring has {n} variables",
                        components.len()
                    )));
                }
                inverses.push(name.clone());
                items.push(Item::Inverse { name, components });
            }
            "witness" => {
                let (name, npos) = p.ident()?;
                if witness_names.contains(&name) {
                    return Err(npos.error(format!("witness `{name}` defined twice")));
                }
                p.expect_keyword("for")?;
                let (map, mpos) = p.ident()?;
                if !maps.contains_key(&map) {
                    return Err(mpos.error(format!("witness for undefined map `{map}`")));
                }
                let target = if p.is_keyword("on") {
                    p.next();
                    let tpos = p.pos();
                    let t = p.expr(&ring)?;
                    if t.is_constant() {
                        return Err(tpos.error("witness target must be a nonconstant polynomial"));
                    }
                    Some(t)
                } else {
                    None
                };
                p.expect_keyword("params")?;
                let params = distinct(&p.ident_list()?, "parameter")?;
                let scope = Scope::new(params.clone());
                p.expect_sym('=')?;
                let (components, tpos) = p.tuple(&scope)?;
                if components.len() != n {
                    return Err(tpos.error(format!(
                        "witness `{name}` has {} components, ring has {n} variables",
                        components.len()
                    )));
                }
                witness_names.push(name.clone());
                items.push(Item::Witness(WitnessSpec { name, map, target, params, components }));
            }
            other => return Err(pos.error(format!("unknown statement `{other}`"))),
        }
    }
    Ok(MapDocument { ring: ring.names, items })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn tuple_string(names: &[String], ps: &[Polynomial]) -> String {
    let parts: Vec<String> = ps.iter().map(|p| p.to_string_with(names)).collect();
    format!("({})", parts.join(", "))
}

fn rationals_string(cs: &[Rational]) -> String {
    let parts: Vec<String> = cs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Canonical text of a document; parsing it gives back an equal document.
pub fn print_document(doc: &MapDocument) -> String {
    let names = &doc.ring;
    let mut out = format!("ring {}\n", names.join(", "));
    for item in &doc.items {
        let line = match item {
            Item::Note(s) => format!("note {}", quote(s)),
            Item::Map { name, components } => format!("map {name} = {}", tuple_string(names, components)),
            Item::Inverse { name, components } => format!("inverse {name} = {}", tuple_string(names, components)),
            Item::Tame { name, word } => {
                let gens: Vec<String> = word
                    .iter()
                    .map(|g| match g {
                        GeneratorSpec::Shift { var, by } => {
                            format!("shift({}, {})", names[*var], by.to_string_with(names))
                        }
                        GeneratorSpec::Linear(rows) => {
                            let rows: Vec<String> = rows.iter().map(|r| rationals_string(r)).collect();
                            format!("linear({})", rows.join(", "))
                        }
                        GeneratorSpec::Translate(b) => format!("translate{}", rationals_string(b)),
                    })
                    .collect();
                format!("tame {name} = [{}]", gens.join(", "))
            }
            Item::Witness(w) => {
                let on = w.target.as_ref().map(|t| format!(" on {}", t.to_string_with(names))).unwrap_or_default();
                format!(
                    "witness {} for {}{on} params {} = {}",
                    w.name,
                    w.map,
                    w.params.join(", "),
                    tuple_string(&w.params, &w.components)
                )
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
