//! The line-oriented input language.
//!
//! ```text
//! ring Q[x, y]
//! grade x = 2
//! grade y = 3
//! ideal f = y^2 - x^3
//! ```
//!
//! See `docs/grammar.ebnf` for the full grammar. Every document has a
//! canonical form (its `Display`), and parsing the canonical form gives back
//! an equal document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use jetforge_core::hs::{AlgebraMorphism, AlgebraPresentation, Grading};
use jetforge_core::module::ModulePresentation;
use jetforge_core::{Field, JetVar, Poly, Scalar, Symbol};
use num_bigint::BigInt;
use num_traits::One;

/// Environment variable holding the field used by `ring k[...]`.
pub const FIELD_ENV: &str = "JETFORGE_FIELD";

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Lexical(char),
    #[error("identifier {0:?} may only contain letters and digits")]
    BadIdentifier(String),
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("undeclared variable {0}")]
    UndeclaredVariable(String),
    #[error("relation {0} is not homogeneous for the declared grading")]
    InhomogeneousRelation(String),
    #[error("{0} is declared twice")]
    Duplicate(String),
    #[error("variable {0} has no grade")]
    MissingGrading(String),
    #[error("division by a non-constant")]
    NonConstantDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field {0:?}")]
    InvalidField(String),
    #[error("exponent above {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub rank: usize,
    pub relations: Vec<(String, Vec<Poly>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl {
    pub target_vars: Vec<String>,
    pub target_ideal: Vec<(String, Poly)>,
    /// Image of each source variable, in declaration order.
    pub maps: Vec<Poly>,
}

/// A parsed input file. Polynomials use `Symbol::new(position, name)` for
/// the source ring and, separately numbered, for the target ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub field: Field,
    pub vars: Vec<String>,
    pub grades: Option<Vec<u32>>,
    pub ideal: Vec<(String, Poly)>,
    pub module: Option<ModuleDecl>,
    pub morphism: Option<MorphismDecl>,
}

fn symbols_of(names: &[String]) -> Vec<Symbol> {
    names.iter().enumerate().map(|(i, n)| Symbol::new(i as u32, n)).collect()
}

impl Document {
    /// A document with a ring and nothing else.
    pub fn ring(field: Field, vars: &[&str]) -> Document {
        Document {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            grades: None,
            ideal: Vec::new(),
            module: None,
            morphism: None,
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        symbols_of(&self.vars)
    }

    pub fn target_symbols(&self) -> Vec<Symbol> {
        self.morphism.as_ref().map(|m| symbols_of(&m.target_vars)).unwrap_or_default()
    }

    /// The base variable `name` as a polynomial.
    pub fn var(&self, name: &str) -> Option<Poly> {
        let i = self.vars.iter().position(|v| v == name)?;
        Some(Poly::var(JetVar::base(&Symbol::new(i as u32, name)), self.field))
    }

    pub fn grading(&self) -> Option<Grading> {
        let g = self.grades.as_ref()?;
        Some(self.symbols().into_iter().zip(g.iter().copied()).collect())
    }

    pub fn algebra(&self) -> Result<AlgebraPresentation, jetforge_core::Error> {
        let rels = self.ideal.iter().map(|(_, p)| p.clone()).collect();
        match self.grading() {
            Some(g) => AlgebraPresentation::graded(self.field, self.symbols(), rels, g),
            None => AlgebraPresentation::new(self.field, self.symbols(), rels),
        }
    }

    /// The declared module, or the free module of rank 0 when none is given.
    pub fn module_presentation(&self) -> Result<ModulePresentation, jetforge_core::Error> {
        let a = self.algebra()?;
        match &self.module {
            Some(m) => ModulePresentation::new(a, m.rank, m.relations.iter().map(|(_, r)| r.clone()).collect()),
            None => Ok(ModulePresentation::free(a, 0)),
        }
    }

    pub fn target_algebra(&self) -> Option<Result<AlgebraPresentation, jetforge_core::Error>> {
        let m = self.morphism.as_ref()?;
        let rels = m.target_ideal.iter().map(|(_, p)| p.clone()).collect();
        Some(AlgebraPresentation::new(self.field, symbols_of(&m.target_vars), rels))
    }

    pub fn algebra_morphism(&self) -> Option<Result<AlgebraMorphism, jetforge_core::Error>> {
        let m = self.morphism.as_ref()?;
        Some((|| {
            let images: BTreeMap<Symbol, Poly> = self.symbols().into_iter().zip(m.maps.iter().cloned()).collect();
            let target = self.target_algebra().expect("morphism present")?;
            AlgebraMorphism::new(self.algebra()?, target, images)
        })())
    }
}

/// Writes a polynomial with plain base-variable names, as the parser reads it.
pub fn write_poly(p: &Poly) -> String {
    p.display_with(|v, f| f.write_str(v.base.name())).to_string()
}

/// Canonical form: the ring line carries the resolved field, grades follow
/// variable order, everything else keeps declaration order.
impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}[{}]", self.field, self.vars.join(", "))?;
        if let Some(g) = &self.grades {
            for (v, d) in self.vars.iter().zip(g) {
                writeln!(f, "grade {v} = {d}")?;
            }
        }
        for (name, p) in &self.ideal {
            writeln!(f, "ideal {name} = {}", write_poly(p))?;
        }
        if let Some(m) = &self.module {
            writeln!(f, "module rank {}", m.rank)?;
            for (name, row) in &m.relations {
                let entries: Vec<String> = row.iter().map(write_poly).collect();
                writeln!(f, "relation {name} = [{}]", entries.join(", "))?;
            }
        }
        if let Some(m) = &self.morphism {
            writeln!(f, "target {}[{}]", self.field, m.target_vars.join(", "))?;
            for (name, p) in &m.target_ideal {
                writeln!(f, "target_ideal {name} = {}", write_poly(p))?;
            }
            for (v, p) in self.vars.iter().zip(&m.maps) {
                writeln!(f, "map {v} = {}", write_poly(p))?;
            }
        }
        Ok(())
    }
}

/// Reads `Q` or `F<p>` with `p` prime below 2^31.
pub fn parse_field(s: &str) -> Option<Field> {
    if s == "Q" {
        return Some(Field::Rational);
    }
    let p: u32 = s.strip_prefix('F')?.parse().ok()?;
    Field::prime(p).ok()
}

/// The field named by `JETFORGE_FIELD`, or `Q` when it is unset.
pub fn default_field() -> Result<Field, String> {
    match std::env::var(FIELD_ENV) {
        Ok(s) => parse_field(s.trim()).ok_or_else(|| format!("{FIELD_ENV}={s:?} is not Q or F<prime>")),
        Err(_) => Ok(Field::Rational),
    }
}

/// Parses with the default field taken from the environment.
pub fn parse_input(text: &str) -> Result<Document, ParseError> {
    let field = default_field().map_err(|_| ParseError {
        line: 0,
        col: 0,
        kind: ParseErrorKind::InvalidField(std::env::var(FIELD_ENV).unwrap_or_default()),
    })?;
    parse_document(text, field)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(BigInt),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "{w:?}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Punct(c) => write!(f, "{c:?}"),
            Tok::End => f.write_str("end of line"),
        }
    }
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Word(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[],=".contains(c) {
            out.push((Tok::Punct(c), col));
            i += 1;
        } else {
            return Err(ParseError { line: lineno, col, kind: ParseErrorKind::Lexical(c) });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Line<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    lineno: usize,
    /// Variables in scope for polynomials on this line.
    scope: &'a BTreeMap<String, Symbol>,
    field: Field,
}

impl Line<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err_at(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.lineno, col, kind }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        self.err_at(self.col(), kind)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax { expected: expected.into(), found: self.peek().to_string() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{c:?}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Word(w) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("{kw:?}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Word(w) => {
                if w.contains('_') {
                    return Err(self.err(ParseErrorKind::BadIdentifier(w)));
                }
                self.pos += 1;
                Ok((w, col))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let col = self.col();
        let n = self.integer()?;
        u32::try_from(&n).map_err(|_| self.err_at(col, ParseErrorKind::Structure(format!("{n} is too large"))))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    /// `[Q|F<p>|k] "[" ident {"," ident} "]"`; `k` resolves to `fallback`.
    fn ring_spec(&mut self, fallback: Field) -> Result<(Field, Vec<(String, usize)>), ParseError> {
        let col = self.col();
        let field = match self.bump() {
            Tok::Word(w) if w == "k" => fallback,
            Tok::Word(w) => parse_field(&w).ok_or_else(|| self.err_at(col, ParseErrorKind::InvalidField(w)))?,
            t => {
                return Err(
                    self.err_at(col, ParseErrorKind::Syntax { expected: "a field".into(), found: t.to_string() })
                )
            }
        };
        self.expect('[')?;
        let mut vars = vec![self.ident()?];
        while self.eat(',') {
            vars.push(self.ident()?);
        }
        self.expect(']')?;
        Ok((field, vars))
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == &Tok::Punct('/') {
                let col = self.col();
                self.pos += 1;
                let d = self.factor()?;
                let c = match d.as_constant() {
                    Some(c) => c,
                    None if d.is_zero() => return Err(self.err_at(col, ParseErrorKind::DivisionByZero)),
                    None => return Err(self.err_at(col, ParseErrorKind::NonConstantDivisor)),
                };
                let inv = c.inv().ok_or_else(|| self.err_at(col, ParseErrorKind::DivisionByZero))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            let e = self.small()?;
            if e > MAX_EXPONENT {
                return Err(self.err_at(col, ParseErrorKind::ExponentTooLarge));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                let c = Scalar::from_ratio(self.field, &n, &BigInt::one()).expect("denominator one");
                Ok(Poly::constant(c))
            }
            Tok::Word(_) => {
                let (name, col) = self.ident()?;
                let s = self
                    .scope
                    .get(&name)
                    .ok_or_else(|| self.err_at(col, ParseErrorKind::UndeclaredVariable(name.clone())))?;
                Ok(Poly::var(JetVar::base(s), self.field))
            }
            Tok::Punct('(') => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }
}

fn scope_of(names: &[String]) -> BTreeMap<String, Symbol> {
    symbols_of(names).into_iter().map(|s| (s.name().to_string(), s)).collect()
}

struct Builder {
    field: Option<(Field, usize)>,
    vars: Option<Vec<String>>,
    ring_field: Field,
    grades: BTreeMap<String, u32>,
    ideal: Vec<(String, Poly, usize, usize)>,
    module: Option<ModuleDecl>,
    target: Option<Vec<String>>,
    target_ideal: Vec<(String, Poly)>,
    maps: BTreeMap<String, Poly>,
    names: BTreeSet<String>,
}

/// Parses a document; `ring k[...]` without a `field` line uses `default`.
pub fn parse_document(text: &str, default: Field) -> Result<Document, ParseError> {
    let mut b = Builder {
        field: None,
        vars: None,
        ring_field: default,
        grades: BTreeMap::new(),
        ideal: Vec::new(),
        module: None,
        target: None,
        target_ideal: Vec::new(),
        maps: BTreeMap::new(),
        names: BTreeSet::new(),
    };
    let empty = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let toks = lex(raw, lineno)?;
        let source_scope = b.vars.as_deref().map(scope_of).unwrap_or_default();
        let target_scope = b.target.as_deref().map(scope_of).unwrap_or_default();
        let mut l = Line { toks, pos: 0, lineno, scope: &empty, field: b.ring_field };
        let (kw, kw_col) = match l.peek().clone() {
            Tok::End => continue,
            Tok::Word(w) => (w, l.col()),
            _ => return Err(l.unexpected("a statement keyword")),
        };
        l.pos += 1;
        let need_ring = |l: &Line| {
            if b.vars.is_none() {
                Err(l.err_at(kw_col, ParseErrorKind::Structure(format!("{kw} before the ring declaration"))))
            } else {
                Ok(())
            }
        };
        let declare = |name: &str, col: usize, names: &mut BTreeSet<String>| {
            if names.insert(name.to_string()) {
                Ok(())
            } else {
                Err(ParseError { line: lineno, col, kind: ParseErrorKind::Duplicate(name.to_string()) })
            }
        };
        match kw.as_str() {
            "field" => {
                if b.field.is_some() || b.vars.is_some() {
                    return Err(l.err_at(kw_col, ParseErrorKind::Structure("field must come first, once".into())));
                }
                let col = l.col();
                let w = match l.bump() {
                    Tok::Word(w) => w,
                    t => t.to_string(),
                };
                let f = parse_field(&w).ok_or_else(|| l.err_at(col, ParseErrorKind::InvalidField(w)))?;
                b.field = Some((f, col));
            }
            "ring" => {
                if b.vars.is_some() {
                    return Err(l.err_at(kw_col, ParseErrorKind::Duplicate("ring".into())));
                }
                let col = l.col();
                let fallback = b.field.map_or(default, |(f, _)| f);
                let (field, vars) = l.ring_spec(fallback)?;
                if b.field.is_some_and(|(f, _)| f != field) {
                    return Err(l.err_at(
                        col,
                        ParseErrorKind::Structure(format!("ring over {field} conflicts with field {fallback}")),
                    ));
                }
                for (v, c) in &vars {
                    declare(v, *c, &mut b.names)?;
                }
                b.ring_field = field;
                b.vars = Some(vars.into_iter().map(|(v, _)| v).collect());
            }
            "grade" => {
                need_ring(&l)?;
                let (v, col) = l.ident()?;
                if !source_scope.contains_key(&v) {
                    return Err(l.err_at(col, ParseErrorKind::UndeclaredVariable(v)));
                }
                l.expect('=')?;
                let d = l.small()?;
                if b.grades.insert(v.clone(), d).is_some() {
                    return Err(l.err_at(col, ParseErrorKind::Duplicate(format!("grade of {v}"))));
                }
            }
            "ideal" => {
                need_ring(&l)?;
                let (name, col) = l.ident()?;
                declare(&name, col, &mut b.names)?;
                l.expect('=')?;
                let pcol = l.col();
                l.scope = &source_scope;
                let p = l.poly()?;
                b.ideal.push((name, p, lineno, pcol));
            }
            "module" => {
                need_ring(&l)?;
                if b.module.is_some() {
                    return Err(l.err_at(kw_col, ParseErrorKind::Duplicate("module".into())));
                }
                l.keyword("rank")?;
                let rank = l.small()? as usize;
                b.module = Some(ModuleDecl { rank, relations: Vec::new() });
            }
            "relation" => {
                let Some(rank) = b.module.as_ref().map(|m| m.rank) else {
                    return Err(l.err_at(kw_col, ParseErrorKind::Structure("relation before module rank".into())));
                };
                let (name, col) = l.ident()?;
                declare(&name, col, &mut b.names)?;
                l.expect('=')?;
                let open = l.col();
                l.expect('[')?;
                l.scope = &source_scope;
                let mut row = Vec::new();
                if !l.eat(']') {
                    row.push(l.poly()?);
                    while l.eat(',') {
                        row.push(l.poly()?);
                    }
                    l.expect(']')?;
                }
                if row.len() != rank {
                    return Err(l.err_at(
                        open,
                        ParseErrorKind::Structure(format!("relation has {} entries, module rank is {rank}", row.len())),
                    ));
                }
                b.module.as_mut().expect("checked").relations.push((name, row));
            }
            "target" => {
                need_ring(&l)?;
                if b.target.is_some() {
                    return Err(l.err_at(kw_col, ParseErrorKind::Duplicate("target".into())));
                }
                let col = l.col();
                let (field, vars) = l.ring_spec(b.ring_field)?;
                if field != b.ring_field {
                    return Err(l.err_at(
                        col,
                        ParseErrorKind::Structure(format!("target over {field}, source over {}", b.ring_field)),
                    ));
                }
                let mut seen = BTreeSet::new();
                for (v, c) in &vars {
                    if !seen.insert(v.clone()) {
                        return Err(l.err_at(*c, ParseErrorKind::Duplicate(v.clone())));
                    }
                }
                b.target = Some(vars.into_iter().map(|(v, _)| v).collect());
            }
            "target_ideal" | "map" => {
                if b.target.is_none() {
                    return Err(l.err_at(kw_col, ParseErrorKind::Structure(format!("{kw} before target"))));
                }
                let (name, col) = l.ident()?;
                if kw == "map" {
                    if !source_scope.contains_key(&name) {
                        return Err(l.err_at(col, ParseErrorKind::UndeclaredVariable(name)));
                    }
                    if b.maps.contains_key(&name) {
                        return Err(l.err_at(col, ParseErrorKind::Duplicate(format!("map of {name}"))));
                    }
                } else if b.target_ideal.iter().any(|(n, _)| n == &name) {
                    return Err(l.err_at(col, ParseErrorKind::Duplicate(name)));
                }
                l.expect('=')?;
                l.scope = &target_scope;
                let p = l.poly()?;
                if kw == "map" {
                    b.maps.insert(name, p);
                } else {
                    b.target_ideal.push((name, p));
                }
            }
            _ => {
                return Err(l.err_at(
                    kw_col,
                    ParseErrorKind::Syntax { expected: "a statement keyword".into(), found: format!("{kw:?}") },
                ))
            }
        }
        l.finish()?;
    }
    b.finish(last_line + 1)
}

impl Builder {
    fn finish(self, end_line: usize) -> Result<Document, ParseError> {
        let at_end = |kind| ParseError { line: end_line, col: 1, kind };
        let vars = self.vars.ok_or_else(|| at_end(ParseErrorKind::Structure("missing ring declaration".into())))?;
        let grades = if self.grades.is_empty() {
            None
        } else {
            let mut g = Vec::new();
            for v in &vars {
                g.push(*self.grades.get(v).ok_or_else(|| at_end(ParseErrorKind::MissingGrading(v.clone())))?);
            }
            Some(g)
        };
        if let Some(g) = &grades {
            let weight: BTreeMap<&str, u32> = vars.iter().map(String::as_str).zip(g.iter().copied()).collect();
            for (name, p, line, col) in &self.ideal {
                let degs = p.weighted_degrees(|v| weight.get(v.base.name()).copied()).expect("graded variables");
                if degs.len() > 1 {
                    return Err(ParseError {
                        line: *line,
                        col: *col,
                        kind: ParseErrorKind::InhomogeneousRelation(name.clone()),
                    });
                }
            }
        }
        let morphism = match self.target {
            Some(target_vars) => {
                let mut maps = Vec::new();
                for v in &vars {
                    let p = self
                        .maps
                        .get(v)
                        .ok_or_else(|| at_end(ParseErrorKind::Structure(format!("no map given for {v}"))))?;
                    maps.push(p.clone());
                }
                Some(MorphismDecl { target_vars, target_ideal: self.target_ideal, maps })
            }
            None => None,
        };
        Ok(Document {
            field: self.ring_field,
            vars,
            grades,
            ideal: self.ideal.into_iter().map(|(n, p, _, _)| (n, p)).collect(),
            module: self.module,
            morphism,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn parse(s: &str) -> Result<Document, ParseError> {
        parse_document(s, Q)
    }

    #[test]
    fn cusp() {
        let d = parse("ring Q[x,y]\nideal f = y^2 - x^3").unwrap();
        assert_eq!(d.vars, ["x", "y"]);
        assert_eq!(d.ideal[0].1.to_string(), "-x_0^3 + y_0^2");
        assert_eq!(d.to_string(), "ring Q[x, y]\nideal f = -x^3 + y^2\n");
        assert_eq!(d.algebra().unwrap().relations().len(), 1);
    }

    #[test]
    fn undeclared_variable_points_at_token() {
        let e = parse("ring Q[x,y]\nideal f = y^2 - z").unwrap_err();
        assert_eq!((e.line, e.col), (2, 17));
        assert_eq!(e.kind, ParseErrorKind::UndeclaredVariable("z".into()));
    }

    #[test]
    fn inhomogeneous_relation() {
        let e = parse("ring Q[x]\ngrade x = 1\nideal f = x^2 + x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::InhomogeneousRelation("f".into()));
        assert_eq!((e.line, e.col), (3, 11));
        assert!(parse("ring Q[x,y]\ngrade x = 2\ngrade y = 3\nideal f = y^2 - x^3").is_ok());
    }

    #[test]
    fn lexical_errors() {
        let e = parse("ring Q[x]\nideal f = x % 2").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (2, 13, ParseErrorKind::Lexical('%')));
        let e = parse("ring Q[x_1]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadIdentifier("x_1".into()));
    }

    #[test]
    fn rational_and_prime_coefficients() {
        let d = parse("ring Q[x]\nideal f = x/2 - 3/4").unwrap();
        assert_eq!(write_poly(&d.ideal[0].1), "1/2*x - 3/4");
        let d = parse("ring F7[x]\nideal f = x/2 + 9").unwrap();
        assert_eq!(write_poly(&d.ideal[0].1), "4*x + 2");
        assert_eq!(parse("ring Q[x]\nideal f = 1/x").unwrap_err().kind, ParseErrorKind::NonConstantDivisor);
        assert_eq!(parse("ring F7[x]\nideal f = x/7").unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert_eq!(parse("ring Q[x]\nideal f = x/(1-1)").unwrap_err().kind, ParseErrorKind::DivisionByZero);
    }

    #[test]
    fn field_resolution() {
        assert_eq!(parse_document("ring k[x]", Field::prime(5).unwrap()).unwrap().field, Field::prime(5).unwrap());
        assert_eq!(parse("field F3\nring k[x]").unwrap().field, Field::prime(3).unwrap());
        assert!(parse("field F3\nring Q[x]").is_err());
        assert_eq!(parse("ring F4[x]").unwrap_err().kind, ParseErrorKind::InvalidField("F4".into()));
    }

    #[test]
    fn modules_and_morphisms() {
        let text = "ring Q[x,y]\nideal f = x*y\nmodule rank 2\nrelation r1 = [x, y]\nrelation r2 = [0, x^2]\n\
                    target Q[u]\ntarget_ideal g = u^3\nmap x = u^2\nmap y = u^3\n";
        let d = parse(text).unwrap();
        assert_eq!(d.to_string(), text.replace("[x,y]", "[x, y]"));
        assert_eq!(d.module_presentation().unwrap().rank(), 2);
        let phi = d.algebra_morphism().unwrap().unwrap();
        assert_eq!(phi.images().len(), 2);
        let e = parse("ring Q[x]\nmodule rank 2\nrelation r = [x]").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Structure(_)));
        let e = parse("ring Q[x,y]\ntarget Q[u]\nmap x = u").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Structure(_)));
        let e = parse("ring Q[x]\ntarget Q[u]\nmap x = x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredVariable("x".into()));
    }

    #[test]
    fn rank_zero_module_and_empty_rows() {
        let d = parse("ring Q[x]\nmodule rank 0\nrelation r = []").unwrap();
        assert_eq!(d.to_string(), "ring Q[x]\nmodule rank 0\nrelation r = []\n");
    }

    #[test]
    fn duplicates_and_order() {
        assert!(matches!(parse("ring Q[x,x]").unwrap_err().kind, ParseErrorKind::Duplicate(_)));
        assert!(matches!(parse("ring Q[x]\nideal f = x\nideal f = x").unwrap_err().kind, ParseErrorKind::Duplicate(_)));
        assert!(matches!(parse("ideal f = x").unwrap_err().kind, ParseErrorKind::Structure(_)));
        assert!(matches!(parse("ring Q[x,y]\ngrade x = 1").unwrap_err().kind, ParseErrorKind::MissingGrading(_)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse("# cusp\n\nring Q[x, y]  # plane\nideal f = (y - x)^2 # square\n").unwrap();
        assert_eq!(write_poly(&d.ideal[0].1), "x^2 - 2*x*y + y^2");
    }
}
