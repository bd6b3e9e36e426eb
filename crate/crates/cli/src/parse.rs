//! Recursive-descent parser for the textual object grammar.
//!
//! The grammar is exactly what the `Display` impls of the core types print:
//!
//! ```text
//! poly     3/2*x1^2*x2 - x2 + 1
//! eform    (x1 + 1)*dx1 @ e1 - dx2 @ e2        (scalar forms omit `@ e`)
//! jform    jform(n; <eform>; <eform>)
//! genform  genform(k; c*D1^D3 @ e1; ...)        genform(k; 0) when zero
//! der      der(X1=1, X2=x1; Phi[1][2]=x2)       der(; ) when zero
//! omni     omni(<der>; <jform>)
//! zstruct  zstruct(top=<poly>; c[g][a][b]=<poly>; ...)
//! bmap     bmap(n; <jform>; ...)
//! dist     dist(X1=1, X3=x2; X2=1)
//! point    1/2,3,0
//! ```
//!
//! Every index is 1-based in text and 0-based in memory.

use std::fmt;

use omni_core::derivation::Derivation;
use omni_core::dirac::volume::ZStructure;
use omni_core::dirac::BMapD;
use omni_core::forms::{EForm, ScalarForm};
use omni_core::gauge::GenForm;
use omni_core::jet::JForm;
use omni_core::multicontact::DistributionFrame;
use omni_core::omni::OmniSection;
use omni_core::poly::Poly;
use omni_core::{ChartConfig, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax { line: usize, col: usize, expected: Vec<String>, found: String },
    #[error("semantic error at {line}:{col} in `{fragment}`: {message}")]
    Semantic { line: usize, col: usize, fragment: String, message: String },
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> ParseResult<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_digit() {
            let len = chars[i..].iter().take_while(|(_, d)| d.is_ascii_digit()).count();
            (Tok::Num(chars[i..i + len].iter().map(|(_, d)| d).collect()), len)
        } else if c.is_ascii_alphabetic() {
            let letters = chars[i..].iter().take_while(|(_, d)| d.is_ascii_alphabetic()).count();
            let digits = chars[i + letters..].iter().take_while(|(_, d)| d.is_ascii_digit()).count();
            let len = letters + digits;
            (Tok::Ident(chars[i..i + len].iter().map(|(_, d)| d).collect()), len)
        } else if "+-*/^()[];,=@".contains(c) {
            (Tok::Sym(c), 1)
        } else {
            return Err(ParseError::Syntax {
                line,
                col,
                expected: vec!["a number, identifier or one of + - * / ^ ( ) [ ] ; , = @".into()],
                found: format!("`{c}`"),
            });
        };
        let end = chars.get(i + len).map(|(b, _)| *b).unwrap_or(text.len());
        out.push(Token { tok, line, col, start, end });
        col += len;
        i += len;
    }
    out.push(Token { tok: Tok::Eof, line, col, start: text.len(), end: text.len() });
    Ok(out)
}

/// Splits `dx12` into `("dx", Some(12))`.
fn split_ident(s: &str) -> (&str, Option<usize>) {
    let cut = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (name, digits) = s.split_at(cut);
    (name, if digits.is_empty() { None } else { digits.parse().ok() })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BasisKind {
    /// `dx1^dx2`, indices bounded by the chart dimension
    Coordinate,
    /// `D1^D3`, indices bounded by the frame size
    Frame,
}

/// One summand `coef * basis @ e<value>` as written.
struct Term {
    coef: Poly<Rational>,
    basis: Option<Vec<usize>>,
    value: Option<usize>,
    at: usize,
}

pub struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    chart: ChartConfig,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str, chart: ChartConfig) -> ParseResult<Self> {
        Ok(Parser { text, tokens: lex(text)?, pos: 0, chart })
    }

    fn nvars(&self) -> usize {
        self.chart.dim()
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn syntax<T>(&self, expected: &[&str]) -> ParseResult<T> {
        let t = &self.tokens[self.pos];
        Err(ParseError::Syntax {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    /// Semantic error covering the tokens from index `from` up to the cursor.
    fn semantic<T>(&self, from: usize, message: impl Into<String>) -> ParseResult<T> {
        let first = &self.tokens[from];
        let last = &self.tokens[self.pos.saturating_sub(1).max(from)];
        Err(ParseError::Semantic {
            line: first.line,
            col: first.col,
            fragment: self.text[first.start..last.end.max(first.start)].to_string(),
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char) -> ParseResult<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(&[&format!("`{c}`")])
        }
    }

    fn expect_keyword(&mut self, word: &str) -> ParseResult<()> {
        if *self.peek() == Tok::Ident(word.to_string()) {
            self.bump();
            Ok(())
        } else {
            self.syntax(&[&format!("`{word}`")])
        }
    }

    pub fn expect_end(&mut self) -> ParseResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.syntax(&["end of input"])
        }
    }

    fn natural(&mut self) -> ParseResult<usize> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let from = self.pos;
                self.bump();
                s.parse().or_else(|_| self.semantic(from, "integer too large"))
            }
            _ => self.syntax(&["an integer"]),
        }
    }

    fn signed_integer(&mut self) -> ParseResult<isize> {
        let negative = self.is_sym('-');
        if negative {
            self.bump();
        }
        let v = self.natural()? as isize;
        Ok(if negative { -v } else { v })
    }

    /// Parses `<name><k>` and checks `1 ≤ k ≤ bound`, returning `k − 1`.
    fn indexed(&mut self, name: &str, bound: usize) -> ParseResult<usize> {
        let from = self.pos;
        if let Tok::Ident(s) = self.peek().clone() {
            if let (n, Some(k)) = split_ident(&s) {
                if n == name {
                    self.bump();
                    if k == 0 || k > bound {
                        return self.semantic(from, format!("index {k} out of range 1..={bound}"));
                    }
                    return Ok(k - 1);
                }
            }
        }
        self.syntax(&[&format!("`{name}<index>`")])
    }

    /// `[k]` with `1 ≤ k ≤ bound`, returned 0-based.
    fn bracket_index(&mut self, bound: usize) -> ParseResult<usize> {
        self.expect_sym('[')?;
        let from = self.pos;
        let k = self.natural()?;
        if k == 0 || k > bound {
            return self.semantic(from, format!("index {k} out of range 1..={bound}"));
        }
        self.expect_sym(']')?;
        Ok(k - 1)
    }

    fn number(&mut self) -> ParseResult<Rational> {
        let from = self.pos;
        let num = match self.bump().tok {
            Tok::Num(s) => s,
            _ => {
                self.pos = from;
                return self.syntax(&["a number"]);
            }
        };
        if self.is_sym('/') && matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let den = match self.bump().tok {
                Tok::Num(s) => s,
                _ => unreachable!(),
            };
            if den.chars().all(|c| c == '0') {
                return self.semantic(from, "zero denominator");
            }
            return Ok(format!("{num}/{den}").parse::<Rational>().expect("digits"));
        }
        Ok(num.parse::<Rational>().expect("digits"))
    }

    fn exponent(&mut self) -> ParseResult<u32> {
        if self.is_sym('^') && matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let from = self.pos;
            let k = self.natural()?;
            return u32::try_from(k).or_else(|_| self.semantic(from, "exponent too large"));
        }
        Ok(1)
    }

    /// A sum of terms. Terms may carry a wedge basis of `kind` and a value
    /// index `@ e<α>` only when those are allowed.
    fn sum(&mut self, kind: Option<BasisKind>, values: bool) -> ParseResult<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.is_sym('-') {
            self.bump();
            negative = true;
        } else if self.is_sym('+') {
            self.bump();
        }
        loop {
            let mut t = self.term(kind, values)?;
            if negative {
                t.coef = -t.coef;
            }
            terms.push(t);
            if self.is_sym('+') {
                negative = false;
            } else if self.is_sym('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
            self.bump();
        }
    }

    fn term(&mut self, kind: Option<BasisKind>, values: bool) -> ParseResult<Term> {
        let at = self.pos;
        let mut coef = Poly::one(self.nvars());
        let mut basis: Option<Vec<usize>> = None;
        loop {
            if let Some(b) = self.try_basis(kind)? {
                if basis.is_some() {
                    return self.semantic(at, "a term may contain only one basis element");
                }
                basis = Some(b);
            } else {
                let f = self.factor()?;
                coef = &coef * &f;
            }
            if self.is_sym('*') {
                self.bump();
            } else {
                break;
            }
        }
        let mut value = None;
        if self.is_sym('@') {
            if !values {
                return self.syntax(&["`+`", "`-`", "`*`", "a separator"]);
            }
            self.bump();
            value = Some(self.indexed("e", self.chart.rank())?);
        }
        Ok(Term { coef, basis, value, at })
    }

    fn try_basis(&mut self, kind: Option<BasisKind>) -> ParseResult<Option<Vec<usize>>> {
        let Some(kind) = kind else { return Ok(None) };
        let (name, bound) = match kind {
            BasisKind::Coordinate => ("dx", self.chart.dim()),
            BasisKind::Frame => ("D", self.chart.frame_size()),
        };
        let starts = |t: &Tok| matches!(t, Tok::Ident(s) if split_ident(s).0 == name);
        if !starts(self.peek()) {
            return Ok(None);
        }
        let mut out = vec![self.indexed(name, bound)?];
        while self.is_sym('^') && starts(self.peek_at(1)) {
            self.bump();
            out.push(self.indexed(name, bound)?);
        }
        Ok(Some(out))
    }

    fn factor(&mut self) -> ParseResult<Poly<Rational>> {
        let m = self.nvars();
        match self.peek().clone() {
            Tok::Num(_) => {
                let c = self.number()?;
                Ok(Poly::constant(m, c))
            }
            Tok::Ident(s) if split_ident(&s).0 == "x" => {
                let i = self.indexed("x", m)?;
                let k = self.exponent()?;
                Ok(Poly::var(m, i).pow(k))
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly_sum()?;
                self.expect_sym(')')?;
                let k = self.exponent()?;
                Ok(p.pow(k))
            }
            _ => self.syntax(&["a number", "`x<i>`", "`(`"]),
        }
    }

    fn poly_sum(&mut self) -> ParseResult<Poly<Rational>> {
        let terms = self.sum(None, false)?;
        Ok(terms.into_iter().fold(Poly::zero(self.nvars()), |acc, t| &acc + &t.coef))
    }

    pub fn poly(&mut self) -> ParseResult<Poly<Rational>> {
        self.poly_sum()
    }

    fn degree_of(&self, terms: &[Term], hint: Option<isize>) -> ParseResult<isize> {
        let mut degree = hint;
        for t in terms {
            if t.coef.is_zero() {
                continue;
            }
            let k = t.basis.as_ref().map(|b| b.len()).unwrap_or(0) as isize;
            match degree {
                None => degree = Some(k),
                Some(d) if d != k => return self.semantic(t.at, format!("term of degree {k} in a form of degree {d}")),
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Scalar form; `hint` fixes the degree (needed when the form is `0`).
    pub fn scalar_form(&mut self, hint: Option<isize>) -> ParseResult<ScalarForm<Rational>> {
        let terms = self.sum(Some(BasisKind::Coordinate), false)?;
        let degree = self.degree_of(&terms, hint)?;
        let mut out = ScalarForm::zero(self.chart, degree);
        for t in terms {
            let basis = t.basis.unwrap_or_default();
            let piece = ScalarForm::basis(self.chart, &basis, t.coef).expect("indices checked");
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// E-valued form. On a rank-1 chart a missing `@ e1` is allowed.
    pub fn eform(&mut self, hint: Option<isize>) -> ParseResult<EForm<Rational>> {
        let terms = self.sum(Some(BasisKind::Coordinate), true)?;
        let degree = self.degree_of(&terms, hint)?;
        let mut out = EForm::zero(self.chart, degree);
        for t in terms {
            if t.coef.is_zero() {
                continue;
            }
            let value = match t.value {
                Some(v) => v,
                None if self.chart.rank() == 1 => 0,
                None => {
                    let from = t.at;
                    return self.semantic(from, "E-valued term needs `@ e<α>`");
                }
            };
            let basis = t.basis.unwrap_or_default();
            let piece = EForm::basis(self.chart, &basis, value, t.coef).expect("indices checked");
            out = out.add(&piece);
        }
        Ok(out)
    }

    pub fn jform(&mut self) -> ParseResult<JForm<Rational>> {
        self.expect_keyword("jform")?;
        self.expect_sym('(')?;
        let from = self.pos;
        let n = self.signed_integer()?;
        self.expect_sym(';')?;
        let mu0 = self.eform(Some(n))?;
        self.expect_sym(';')?;
        let mu1 = self.eform(Some(n - 1))?;
        self.expect_sym(')')?;
        match JForm::new(mu0, mu1) {
            Ok(j) => Ok(j),
            Err(e) => self.semantic(from, e.to_string()),
        }
    }

    pub fn genform(&mut self) -> ParseResult<GenForm<Rational>> {
        self.expect_keyword("genform")?;
        self.expect_sym('(')?;
        let k = self.signed_integer()?;
        let mut out = GenForm::zero(self.chart, k);
        while self.is_sym(';') {
            self.bump();
            let terms = self.sum(Some(BasisKind::Frame), true)?;
            for t in terms {
                if t.coef.is_zero() {
                    continue;
                }
                let basis = t.basis.unwrap_or_default();
                if basis.len() as isize != k {
                    let from = t.at;
                    return self.semantic(from, format!("term of degree {} in a form of degree {k}", basis.len()));
                }
                let value = match t.value {
                    Some(v) => v,
                    None if self.chart.rank() == 1 => 0,
                    None => {
                        let from = t.at;
                        return self.semantic(from, "E-valued term needs `@ e<α>`");
                    }
                };
                out = out.add(&GenForm::basis(self.chart, &basis, value, t.coef).expect("indices checked"));
            }
        }
        self.expect_sym(')')?;
        Ok(out)
    }

    /// `X<i>=<poly>` pairs separated by commas, possibly none.
    fn field_entries(&mut self) -> ParseResult<Vec<Poly<Rational>>> {
        let m = self.nvars();
        let mut x = vec![Poly::zero(m); m];
        if !matches!(self.peek(), Tok::Ident(s) if split_ident(s).0 == "X") {
            return Ok(x);
        }
        loop {
            let i = self.indexed("X", m)?;
            self.expect_sym('=')?;
            let p = self.poly_sum()?;
            x[i] = &x[i] + &p;
            if self.is_sym(',') {
                self.bump();
            } else {
                return Ok(x);
            }
        }
    }

    pub fn derivation(&mut self) -> ParseResult<Derivation<Rational>> {
        self.expect_keyword("der")?;
        self.expect_sym('(')?;
        let x = self.field_entries()?;
        let (m, r) = (self.nvars(), self.chart.rank());
        let mut phi = vec![vec![Poly::zero(m); r]; r];
        if self.is_sym(';') {
            self.bump();
            if *self.peek() == Tok::Ident("Phi".into()) {
                loop {
                    self.expect_keyword("Phi")?;
                    let g = self.bracket_index(r)?;
                    let b = self.bracket_index(r)?;
                    self.expect_sym('=')?;
                    let p = self.poly_sum()?;
                    phi[g][b] = &phi[g][b] + &p;
                    if self.is_sym(',') {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        self.expect_sym(')')?;
        Ok(Derivation::new(self.chart, x, phi).expect("shape checked"))
    }

    pub fn omni(&mut self) -> ParseResult<OmniSection<Rational>> {
        self.expect_keyword("omni")?;
        self.expect_sym('(')?;
        let from = self.pos;
        let d = self.derivation()?;
        self.expect_sym(';')?;
        let j = self.jform()?;
        self.expect_sym(')')?;
        match OmniSection::new(d, j) {
            Ok(e) => Ok(e),
            Err(e) => self.semantic(from, e.to_string()),
        }
    }

    pub fn zstruct(&mut self) -> ParseResult<ZStructure<Rational>> {
        self.expect_keyword("zstruct")?;
        self.expect_sym('(')?;
        self.expect_keyword("top")?;
        self.expect_sym('=')?;
        let top = self.poly_sum()?;
        let mut z = ZStructure::new(self.chart, top).expect("same chart");
        let r = self.chart.rank();
        while self.is_sym(';') {
            self.bump();
            let from = self.pos;
            self.expect_keyword("c")?;
            let g = self.bracket_index(r)?;
            let a = self.bracket_index(r)?;
            let b = self.bracket_index(r)?;
            self.expect_sym('=')?;
            let p = self.poly_sum()?;
            let sum = &z.structure(g, a, b) + &p;
            if let Err(e) = z.set(g, a, b, sum) {
                return self.semantic(from, e.to_string());
            }
        }
        self.expect_sym(')')?;
        Ok(z)
    }

    pub fn bmap(&mut self) -> ParseResult<BMapD<Rational>> {
        self.expect_keyword("bmap")?;
        self.expect_sym('(')?;
        let from = self.pos;
        let n = self.signed_integer()?;
        let mut values = Vec::new();
        while self.is_sym(';') {
            self.bump();
            values.push(self.jform()?);
        }
        self.expect_sym(')')?;
        match BMapD::new(self.chart, n, values) {
            Ok(b) => Ok(b),
            Err(e) => self.semantic(from, e.to_string()),
        }
    }

    pub fn dist(&mut self) -> ParseResult<DistributionFrame<Rational>> {
        self.expect_keyword("dist")?;
        self.expect_sym('(')?;
        let from = self.pos;
        let mut gens = Vec::new();
        if !self.is_sym(')') {
            loop {
                gens.push(self.field_entries()?);
                if self.is_sym(';') {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect_sym(')')?;
        match DistributionFrame::new(self.chart, gens) {
            Ok(d) => Ok(d),
            Err(e) => self.semantic(from, e.to_string()),
        }
    }

    pub fn point(&mut self) -> ParseResult<Vec<Rational>> {
        let from = self.pos;
        let mut out = Vec::new();
        loop {
            let negative = self.is_sym('-');
            if negative {
                self.bump();
            }
            let v = self.number()?;
            out.push(if negative { -v } else { v });
            if self.is_sym(',') {
                self.bump();
            } else {
                break;
            }
        }
        if out.len() != self.nvars() {
            return self.semantic(from, format!("point has {} coordinates, chart has {}", out.len(), self.nvars()));
        }
        Ok(out)
    }
}

/// Any object of the grammar, as recognized by its leading keyword.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Poly(Poly<Rational>),
    EForm(EForm<Rational>),
    JForm(JForm<Rational>),
    GenForm(GenForm<Rational>),
    Derivation(Derivation<Rational>),
    Omni(OmniSection<Rational>),
    ZStruct(ZStructure<Rational>),
    BMap(BMapD<Rational>),
    Dist(DistributionFrame<Rational>),
    Point(Vec<Rational>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Poly(_) => "poly",
            Object::EForm(_) => "eform",
            Object::JForm(_) => "jform",
            Object::GenForm(_) => "genform",
            Object::Derivation(_) => "der",
            Object::Omni(_) => "omni",
            Object::ZStruct(_) => "zstruct",
            Object::BMap(_) => "bmap",
            Object::Dist(_) => "dist",
            Object::Point(_) => "point",
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Poly(p) => write!(f, "{p}"),
            Object::EForm(v) => write!(f, "{v}"),
            Object::JForm(v) => write!(f, "{v}"),
            Object::GenForm(v) => write!(f, "{v}"),
            Object::Derivation(v) => write!(f, "{v}"),
            Object::Omni(v) => write!(f, "{v}"),
            Object::ZStruct(v) => write!(f, "{v}"),
            Object::BMap(v) => write!(f, "{v}"),
            Object::Dist(v) => write!(f, "{v}"),
            Object::Point(v) => f.write_str(&point_text(v)),
        }
    }
}

pub fn point_text(p: &[Rational]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn finish<T>(mut p: Parser<'_>, f: impl FnOnce(&mut Parser<'_>) -> ParseResult<T>) -> ParseResult<T> {
    let out = f(&mut p)?;
    p.expect_end()?;
    Ok(out)
}

/// Parses a whole object, choosing its type by the leading keyword. Bare
/// expressions are polynomials unless they mention `dx`, in which case
/// they are E-valued forms of degree `form_degree` when zero. Comma lists of
/// numbers are points.
pub fn parse_object(text: &str, chart: ChartConfig, form_degree: isize) -> ParseResult<Object> {
    let p = Parser::new(text, chart)?;
    let keyword = match p.peek() {
        Tok::Ident(s) if p.peek_at(1) == &Tok::Sym('(') => Some(s.clone()),
        _ => None,
    };
    match keyword.as_deref() {
        Some("jform") => finish(p, |p| p.jform()).map(Object::JForm),
        Some("genform") => finish(p, |p| p.genform()).map(Object::GenForm),
        Some("der") => finish(p, |p| p.derivation()).map(Object::Derivation),
        Some("omni") => finish(p, |p| p.omni()).map(Object::Omni),
        Some("zstruct") => finish(p, |p| p.zstruct()).map(Object::ZStruct),
        Some("bmap") => finish(p, |p| p.bmap()).map(Object::BMap),
        Some("dist") => finish(p, |p| p.dist()).map(Object::Dist),
        _ => {
            let is_point = p.tokens.iter().any(|t| t.tok == Tok::Sym(','));
            let is_form = p.tokens.iter().any(|t| {
                matches!(&t.tok, Tok::Ident(s) if split_ident(s).0 == "dx") || t.tok == Tok::Sym('@')
            });
            if is_point {
                finish(p, |p| p.point()).map(Object::Point)
            } else if is_form {
                finish(p, |p| p.eform(None)).map(|v| {
                    if v.is_zero() && v.degree() != form_degree {
                        Object::EForm(EForm::zero(chart, form_degree))
                    } else {
                        Object::EForm(v)
                    }
                })
            } else {
                finish(p, |p| p.poly()).map(Object::Poly)
            }
        }
    }
}

macro_rules! typed {
    ($(#[$doc:meta])* $name:ident, $ty:ty, $method:ident $(, $arg:expr)?) => {
        $(#[$doc])*
        pub fn $name(text: &str, chart: ChartConfig) -> ParseResult<$ty> {
            finish(Parser::new(text, chart)?, |p| p.$method($($arg)?))
        }
    };
}

typed!(parse_poly, Poly<Rational>, poly);
typed!(parse_jform, JForm<Rational>, jform);
typed!(parse_genform, GenForm<Rational>, genform);
typed!(parse_derivation, Derivation<Rational>, derivation);
typed!(parse_omni, OmniSection<Rational>, omni);
typed!(parse_zstruct, ZStructure<Rational>, zstruct);
typed!(parse_bmap, BMapD<Rational>, bmap);
typed!(parse_dist, DistributionFrame<Rational>, dist);
typed!(parse_point, Vec<Rational>, point);

/// Parses `text` as the type named by [`Object::kind`]. Unlike
/// [`parse_object`] this is unambiguous for one-coordinate points and zero
/// forms; `degree` is the degree of a zero E-valued form.
pub fn parse_kind(kind: &str, text: &str, chart: ChartConfig, degree: isize) -> ParseResult<Object> {
    let p = Parser::new(text, chart)?;
    match kind {
        "poly" => finish(p, |p| p.poly()).map(Object::Poly),
        "eform" => finish(p, |p| p.eform(Some(degree))).map(Object::EForm),
        "jform" => finish(p, |p| p.jform()).map(Object::JForm),
        "genform" => finish(p, |p| p.genform()).map(Object::GenForm),
        "der" => finish(p, |p| p.derivation()).map(Object::Derivation),
        "omni" => finish(p, |p| p.omni()).map(Object::Omni),
        "zstruct" => finish(p, |p| p.zstruct()).map(Object::ZStruct),
        "bmap" => finish(p, |p| p.bmap()).map(Object::BMap),
        "dist" => finish(p, |p| p.dist()).map(Object::Dist),
        _ => finish(p, |p| p.point()).map(Object::Point),
    }
}

/// E-valued form whose degree is `degree` when it is zero.
pub fn parse_eform(text: &str, chart: ChartConfig, degree: Option<isize>) -> ParseResult<EForm<Rational>> {
    finish(Parser::new(text, chart)?, |p| p.eform(degree))
}

/// Scalar form whose degree is `degree` when it is zero.
pub fn parse_scalar_form(text: &str, chart: ChartConfig, degree: Option<isize>) -> ParseResult<ScalarForm<Rational>> {
    finish(Parser::new(text, chart)?, |p| p.scalar_form(degree))
}
