//! Lexer and parser for the line-oriented fixture syntax. See
//! `docs/fixture-format.md` for the grammar.

use std::fmt;

/// A source position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A positioned parse or resolution error.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct FixtureError {
    pub pos: Pos,
    pub message: String,
}

impl FixtureError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        FixtureError {
            pos,
            message: message.into(),
        }
    }
}

pub type FResult<T> = std::result::Result<T, FixtureError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Atom(String),
    List(Vec<Term>),
    Pair(Box<Term>, Box<Term>),
}

/// `atom`, `[t, …]` or `t -> t`.
#[derive(Clone, Debug)]
pub struct Term {
    pub kind: TermKind,
    pub pos: Pos,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

impl Term {
    pub fn atom(s: impl Into<String>) -> Term {
        Term {
            kind: TermKind::Atom(s.into()),
            pos: Pos { line: 0, col: 0 },
        }
    }

    pub fn list(items: Vec<Term>) -> Term {
        Term {
            kind: TermKind::List(items),
            pos: Pos { line: 0, col: 0 },
        }
    }

    pub fn pair(k: Term, v: Term) -> Term {
        Term {
            kind: TermKind::Pair(Box::new(k), Box::new(v)),
            pos: Pos { line: 0, col: 0 },
        }
    }

    pub fn err<T>(&self, message: impl Into<String>) -> FResult<T> {
        Err(FixtureError::new(self.pos, message))
    }

    pub fn as_atom(&self) -> FResult<&str> {
        match &self.kind {
            TermKind::Atom(s) => Ok(s),
            _ => self.err("expected an atom"),
        }
    }

    pub fn as_list(&self) -> FResult<&[Term]> {
        match &self.kind {
            TermKind::List(v) => Ok(v),
            _ => self.err("expected a list"),
        }
    }

    pub fn as_pair(&self) -> FResult<(&Term, &Term)> {
        match &self.kind {
            TermKind::Pair(k, v) => Ok((k, v)),
            _ => self.err("expected `key -> value`"),
        }
    }

    /// A list of exactly `n` atoms.
    pub fn atoms(&self, n: usize) -> FResult<Vec<&str>> {
        let items = self.as_list()?;
        if items.len() != n {
            return self.err(format!("expected a list of {n} atoms"));
        }
        items.iter().map(|t| t.as_atom()).collect()
    }

    /// A list of `key -> value` pairs.
    pub fn pairs(&self) -> FResult<Vec<(&Term, &Term)>> {
        self.as_list()?.iter().map(|t| t.as_pair()).collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Atom(s) => write!(f, "{}", quote(s)),
            TermKind::List(items) => {
                write!(f, "[")?;
                for (i, t) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            TermKind::Pair(k, v) => write!(f, "{k} -> {v}"),
        }
    }
}

/// Bare atoms may also contain `-` where it does not start `->`.
fn is_bare(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '*')
}

fn bare_at(chars: &[char], i: usize) -> bool {
    match chars.get(i) {
        Some('-') => chars.get(i + 1) != Some(&'>'),
        Some(&c) => is_bare(c),
        None => false,
    }
}

/// Renders an atom bare when possible, quoted otherwise.
pub fn quote(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    if !s.is_empty() && chars[0] != '-' && (0..chars.len()).all(|i| bare_at(&chars, i)) {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(String),
    Open,
    Close,
    Comma,
    Arrow,
    Colon,
    Newline,
}

fn lex(text: &str) -> FResult<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let at = |i: usize| Pos {
            line: l + 1,
            col: i + 1,
        };
        while i < chars.len() {
            let c = chars[i];
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '[' => {
                    depth += 1;
                    out.push((Tok::Open, at(i)));
                    i += 1;
                }
                ']' => {
                    depth = depth.saturating_sub(1);
                    out.push((Tok::Close, at(i)));
                    i += 1;
                }
                ',' => {
                    out.push((Tok::Comma, at(i)));
                    i += 1;
                }
                ':' => {
                    out.push((Tok::Colon, at(i)));
                    i += 1;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    out.push((Tok::Arrow, at(i)));
                    i += 2;
                }
                '"' => {
                    let start = i;
                    let mut s = String::new();
                    i += 1;
                    loop {
                        match chars.get(i) {
                            None => return Err(FixtureError::new(at(start), "unterminated string")),
                            Some('"') => {
                                i += 1;
                                break;
                            }
                            Some('\\') => {
                                match chars.get(i + 1) {
                                    Some('n') => s.push('\n'),
                                    Some(&e @ ('"' | '\\')) => s.push(e),
                                    _ => return Err(FixtureError::new(at(i), "invalid escape")),
                                }
                                i += 2;
                            }
                            Some(&c) => {
                                s.push(c);
                                i += 1;
                            }
                        }
                    }
                    out.push((Tok::Atom(s), at(start)));
                }
                c if is_bare(c) => {
                    let start = i;
                    while bare_at(&chars, i) {
                        i += 1;
                    }
                    out.push((Tok::Atom(chars[start..i].iter().collect()), at(start)));
                }
                c => return Err(FixtureError::new(at(i), format!("unexpected character `{c}`"))),
            }
        }
        if depth == 0 {
            out.push((Tok::Newline, at(chars.len())));
        }
    }
    Ok(out)
}

/// One `key: term` entry.
#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub pos: Pos,
    pub value: Term,
}

/// `[kind name]` followed by its entries.
#[derive(Clone, Debug)]
pub struct Section {
    pub kind: String,
    pub name: String,
    pub pos: Pos,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Term> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.value)
    }

    pub fn require(&self, key: &str) -> FResult<&Term> {
        self.get(key)
            .ok_or_else(|| FixtureError::new(self.pos, format!("[{} {}] is missing `{key}`", self.kind, self.name)))
    }
}

/// Header entries (before the first section) and the sections.
#[derive(Clone, Debug)]
pub struct Syntax {
    pub header: Vec<Entry>,
    pub sections: Vec<Section>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> FResult<Pos> {
        match self.next() {
            Some((t, p)) if t == tok => Ok(p),
            Some((_, p)) => Err(FixtureError::new(p, format!("expected {what}"))),
            None => Err(FixtureError::new(self.end, format!("expected {what}"))),
        }
    }

    fn term(&mut self) -> FResult<Term> {
        let first = self.simple()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.term()?;
            let pos = first.pos;
            return Ok(Term {
                kind: TermKind::Pair(Box::new(first), Box::new(rhs)),
                pos,
            });
        }
        Ok(first)
    }

    fn simple(&mut self) -> FResult<Term> {
        match self.next() {
            Some((Tok::Atom(s), pos)) => Ok(Term {
                kind: TermKind::Atom(s),
                pos,
            }),
            Some((Tok::Open, pos)) => {
                let mut items = Vec::new();
                if self.peek() == Some(&Tok::Close) {
                    self.next();
                } else {
                    loop {
                        items.push(self.term()?);
                        match self.next() {
                            Some((Tok::Comma, _)) => {
                                if self.peek() == Some(&Tok::Close) {
                                    self.next();
                                    break;
                                }
                            }
                            Some((Tok::Close, _)) => break,
                            Some((_, p)) => return Err(FixtureError::new(p, "expected `,` or `]`")),
                            None => return Err(FixtureError::new(pos, "unclosed `[`")),
                        }
                    }
                }
                Ok(Term {
                    kind: TermKind::List(items),
                    pos,
                })
            }
            Some((_, p)) => Err(FixtureError::new(p, "expected a term")),
            None => Err(FixtureError::new(self.end, "expected a term")),
        }
    }

    fn entry(&mut self) -> FResult<Entry> {
        let pos = self.pos();
        let key = match self.next() {
            Some((Tok::Atom(s), _)) => s,
            _ => return Err(FixtureError::new(pos, "expected `key: value`")),
        };
        self.expect(Tok::Colon, "`:`")?;
        let value = self.term()?;
        match self.next() {
            Some((Tok::Newline, _)) | None => Ok(Entry { key, pos, value }),
            Some((_, p)) => Err(FixtureError::new(p, "expected end of line")),
        }
    }
}

/// Parses the raw section structure.
pub fn parse_syntax(text: &str) -> FResult<Syntax> {
    let toks = lex(text)?;
    let end = Pos {
        line: text.lines().count().max(1),
        col: 1,
    };
    let mut p = Parser { toks, i: 0, end };
    let mut header = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Newline => {
                p.next();
            }
            Tok::Open => {
                let pos = p.pos();
                p.next();
                let kind = p.next();
                let name = p.next();
                match (kind, name) {
                    (Some((Tok::Atom(kind), _)), Some((Tok::Atom(name), _))) => {
                        p.expect(Tok::Close, "`]` closing the section header")?;
                        if let Some(prev) = sections.iter().find(|s| s.name == name) {
                            return Err(FixtureError::new(
                                pos,
                                format!("duplicate name `{name}` (first defined at {})", prev.pos),
                            ));
                        }
                        sections.push(Section {
                            kind,
                            name,
                            pos,
                            entries: Vec::new(),
                        });
                    }
                    _ => return Err(FixtureError::new(pos, "expected `[kind name]`")),
                }
            }
            _ => {
                let e = p.entry()?;
                let target = match sections.last_mut() {
                    Some(s) => &mut s.entries,
                    None => &mut header,
                };
                if target.iter().any(|x| x.key == e.key) {
                    return Err(FixtureError::new(e.pos, format!("duplicate key `{}`", e.key)));
                }
                target.push(e);
            }
        }
    }
    Ok(Syntax { header, sections })
}
