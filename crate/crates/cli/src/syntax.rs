//! Lexer, syntax tree, parser and printer for the workspace language.
//!
//! A workspace is a sequence of lines. Each line is a binding
//! (`sset D2 = simplex(2)`), a category block (`cat C { ob a b ; gen f : a -> b }`)
//! or a command (`column classify(sharp(simplex(1))) 1 | homology upto 2`).
//! `#` starts a comment.

use std::fmt;

use msset::anodyne::{Family, GeneratorSpec};
use msset::bisimplicial::Axis;
use thiserror::Error;

/// Source position, ignored by equality so that reprinted workspaces compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SyntaxError {
    fn at(span: Span, message: impl Into<String>) -> Self {
        SyntaxError { line: span.line, col: span.col, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Sym(char),
    Arrow,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '\n' => {
                bump(&mut chars);
                out.push((Tok::Newline, span));
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push((Tok::Arrow, span));
                } else {
                    return Err(SyntaxError::at(span, "unexpected `-`"));
                }
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match chars.peek().copied() {
                        None | Some('\n') => return Err(SyntaxError::at(span, "unterminated string")),
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
                                _ => return Err(SyntaxError::at(span, "unknown escape in string")),
                            }
                        }
                        Some(_) => s.push(bump(&mut chars)),
                    }
                }
                out.push((Tok::Str(s), span));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump(&mut chars));
                }
                if chars.peek().is_some_and(|&c| is_ident_char(c)) {
                    return Err(SyntaxError::at(span, format!("malformed number starting `{s}`")));
                }
                out.push((Tok::Num(s), span));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                loop {
                    match chars.peek().copied() {
                        Some(c) if is_ident_char(c) => s.push(bump(&mut chars)),
                        // hyphenated keywords such as `column-verdict`
                        Some('-') => {
                            let mut ahead = chars.clone();
                            ahead.next();
                            if ahead.peek().is_some_and(|c| c.is_alphabetic()) {
                                s.push(bump(&mut chars));
                            } else {
                                break;
                            }
                        }
                        _ => break,
                    }
                }
                out.push((Tok::Ident(s), span));
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | '=' | ':' | ';' | '|' => {
                bump(&mut chars);
                out.push((Tok::Sym(c), span));
            }
            other => return Err(SyntaxError::at(span, format!("unexpected character `{other}`"))),
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Digits as written, so that labels such as `01` survive.
    Num(String, Span),
    Name(String, Span),
    Str(String, Span),
    Call(String, Vec<Expr>, Span),
    List(Vec<Expr>, Span),
    Tuple(Vec<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Num(_, s) | Expr::Name(_, s) | Expr::Str(_, s) | Expr::Call(_, _, s) | Expr::List(_, s) | Expr::Tuple(_, s) => *s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BindKind {
    Sset,
    Msset,
    Bisset,
    Cat,
    Rel,
    Let,
}

impl BindKind {
    pub fn keyword(self) -> &'static str {
        match self {
            BindKind::Sset => "sset",
            BindKind::Msset => "msset",
            BindKind::Bisset => "bisset",
            BindKind::Cat => "cat",
            BindKind::Rel => "rel",
            BindKind::Let => "let",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "sset" => BindKind::Sset,
            "msset" => BindKind::Msset,
            "bisset" => BindKind::Bisset,
            "cat" => BindKind::Cat,
            "rel" => BindKind::Rel,
            "let" => BindKind::Let,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Objects, arrows and a full table of composites.
    Cat,
    /// The free category on a graph.
    FreeCat,
    Poset,
}

impl BlockKind {
    pub fn keyword(self) -> &'static str {
        match self {
            BlockKind::Cat => "cat",
            BlockKind::FreeCat => "freecat",
            BlockKind::Poset => "poset",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockItem {
    /// `ob a b` (or `el a b` in posets).
    Objects(Vec<String>, Span),
    /// `gen f : a -> b`
    Arrow { name: String, source: String, target: String, span: Span },
    /// `comp g f = h`, meaning `g ∘ f = h`.
    Comp { g: String, f: String, h: String, span: Span },
    /// `le a b`
    Le(String, String, Span),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Counts,
    Homology(usize),
    Pi1,
    Contractible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Against {
    Inclusion { sub: Expr, target: Expr },
    Generator(GeneratorSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Classify { object: Expr },
    Slice { axis: Axis, object: Expr, index: usize, probe: Probe },
    Verdict { axis: Axis, source: Expr, target: Expr, index: usize, via: Option<usize> },
    Lift { object: Expr, against: Against },
    Gen { spec: GeneratorSpec },
    Homology { object: Expr, upto: Option<usize> },
    Pi1 { object: Expr, at: Option<Expr> },
    Contractible { object: Expr },
    Counts { object: Expr, upto: Option<usize> },
    Hom { source: Expr, target: Expr },
    Constant { object: Expr, upto: Option<usize> },
    Compare { left: Expr, right: Expr },
}

/// Statuses a command can be told to expect.
pub const STATUSES: [&str; 5] = ["holds", "fails", "unknown", "equivalent", "not_equivalent"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub bound: Option<[usize; 2]>,
    pub expect: Option<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Bind { kind: BindKind, name: String, expr: Expr, span: Span },
    Block { kind: BlockKind, name: String, items: Vec<BlockItem>, span: Span },
    Command(Command),
}

/// The parsed statements, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub statements: Vec<Statement>,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(SyntaxError::at(self.span(), format!("expected {what}, found {}", self.peek())))
    }

    fn sym(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.error(&format!("`{c}`"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.next().1;
                Ok((s, span))
            }
            _ => self.error("a name"),
        }
    }

    fn keyword(&mut self, k: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == k => {
                self.next();
                Ok(())
            }
            _ => self.error(&format!("`{k}`")),
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn number(&mut self) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let span = self.span();
                self.next();
                s.parse().map_err(|_| SyntaxError::at(span, format!("number {s} is too large")))
            }
            _ => self.error("a number"),
        }
    }

    fn at_line_end(&self) -> bool {
        matches!(self.peek(), Tok::Newline | Tok::Eof)
    }

    fn end_line(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.next();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.next();
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut statements = Vec::new();
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::Eof {
                break;
            }
            statements.push(self.statement()?);
            self.end_line()?;
        }
        Ok(Program { statements })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let (word, span) = match self.peek().clone() {
            Tok::Ident(w) => (w, self.span()),
            _ => return self.error("a binding or command"),
        };
        let block = match word.as_str() {
            "freecat" => Some(BlockKind::FreeCat),
            "poset" => Some(BlockKind::Poset),
            "cat" if matches!(self.toks.get(self.pos + 2), Some((Tok::Sym('{'), _))) => Some(BlockKind::Cat),
            _ => None,
        };
        if let Some(kind) = block {
            self.next();
            let (name, _) = self.ident()?;
            let items = self.block_items(kind)?;
            return Ok(Statement::Block { kind, name, items, span });
        }
        if let Some(kind) = BindKind::parse(&word) {
            self.next();
            let (name, _) = self.ident()?;
            self.sym('=')?;
            let expr = self.expr()?;
            return Ok(Statement::Bind { kind, name, expr, span });
        }
        self.command().map(Statement::Command)
    }

    fn block_items(&mut self, kind: BlockKind) -> PResult<Vec<BlockItem>> {
        self.sym('{')?;
        let mut items = Vec::new();
        loop {
            while *self.peek() == Tok::Newline || *self.peek() == Tok::Sym(';') {
                self.next();
            }
            if self.eat_sym('}') {
                return Ok(items);
            }
            let (word, span) = self.ident()?;
            let item = match (kind, word.as_str()) {
                (BlockKind::Poset, "el") | (BlockKind::Cat | BlockKind::FreeCat, "ob") => {
                    let mut names = Vec::new();
                    while let Tok::Ident(_) = self.peek() {
                        names.push(self.ident()?.0);
                    }
                    if names.is_empty() {
                        return self.error("a name");
                    }
                    BlockItem::Objects(names, span)
                }
                (BlockKind::Cat | BlockKind::FreeCat, "gen") => {
                    let (name, _) = self.ident()?;
                    self.sym(':')?;
                    let (source, _) = self.ident()?;
                    if *self.peek() != Tok::Arrow {
                        return self.error("`->`");
                    }
                    self.next();
                    let (target, _) = self.ident()?;
                    BlockItem::Arrow { name, source, target, span }
                }
                (BlockKind::Cat, "comp") => {
                    let (g, _) = self.ident()?;
                    let (f, _) = self.ident()?;
                    self.sym('=')?;
                    let (h, _) = self.ident()?;
                    BlockItem::Comp { g, f, h, span }
                }
                (BlockKind::Poset, "le") => {
                    let (a, _) = self.ident()?;
                    let (b, _) = self.ident()?;
                    BlockItem::Le(a, b, span)
                }
                _ => {
                    return Err(SyntaxError::at(span, format!("`{word}` is not an item of a {} block", kind.keyword())))
                }
            };
            items.push(item);
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.next();
                Ok(Expr::Num(s, span))
            }
            Tok::Str(s) => {
                self.next();
                Ok(Expr::Str(s, span))
            }
            Tok::Ident(s) => {
                self.next();
                if self.eat_sym('(') {
                    let args = self.expr_list(')')?;
                    Ok(Expr::Call(s, args, span))
                } else {
                    Ok(Expr::Name(s, span))
                }
            }
            Tok::Sym('[') => {
                self.next();
                Ok(Expr::List(self.expr_list(']')?, span))
            }
            Tok::Sym('(') => {
                self.next();
                let mut items = self.expr_list(')')?;
                match items.len() {
                    0 => Err(SyntaxError::at(span, "empty parentheses")),
                    1 => Ok(items.pop().unwrap()),
                    _ => Ok(Expr::Tuple(items, span)),
                }
            }
            _ => self.error("an expression"),
        }
    }

    fn expr_list(&mut self, close: char) -> PResult<Vec<Expr>> {
        let mut items = Vec::new();
        if self.eat_sym(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat_sym(close) {
                return Ok(items);
            }
            if !self.eat_sym(',') {
                return self.error(&format!("`,` or `{close}`"));
            }
        }
    }

    fn generator_spec(&mut self) -> PResult<GeneratorSpec> {
        let (fam, span) = self.ident()?;
        let family = Family::parse(&fam).ok_or_else(|| SyntaxError::at(span, format!("unknown generator family `{fam}`")))?;
        let mut spec = GeneratorSpec::new(family);
        while let Tok::Ident(key) = self.peek().clone() {
            if !matches!(key.as_str(), "n" | "m" | "k" | "d") {
                break;
            }
            let kspan = self.span();
            self.next();
            self.sym('=')?;
            let v = self.number()?;
            let slot = match key.as_str() {
                "n" => &mut spec.n,
                "m" => &mut spec.m,
                "k" => &mut spec.k,
                _ => &mut spec.d,
            };
            if slot.replace(v).is_some() {
                return Err(SyntaxError::at(kspan, format!("parameter {key} given twice")));
            }
        }
        Ok(spec)
    }

    fn command(&mut self) -> PResult<Command> {
        let (verb, span) = self.ident()?;
        let kind = match verb.as_str() {
            "classify" => CommandKind::Classify { object: self.expr()? },
            "column" | "row" => {
                let axis = if verb == "column" { Axis::Column } else { Axis::Row };
                let object = self.expr()?;
                let index = self.number()?;
                CommandKind::Slice { axis, object, index, probe: Probe::Counts }
            }
            "column-verdict" | "row-verdict" => {
                let axis = if verb == "column-verdict" { Axis::Column } else { Axis::Row };
                let source = self.expr()?;
                if *self.peek() != Tok::Arrow {
                    return self.error("`->`");
                }
                self.next();
                let target = self.expr()?;
                let index = self.number()?;
                CommandKind::Verdict { axis, source, target, index, via: None }
            }
            "lift" => {
                let object = self.expr()?;
                self.keyword("against")?;
                let against = if self.is_keyword("gen") {
                    self.next();
                    Against::Generator(self.generator_spec()?)
                } else {
                    let sub = self.expr()?;
                    self.keyword("in")?;
                    Against::Inclusion { sub, target: self.expr()? }
                };
                CommandKind::Lift { object, against }
            }
            "gen" => CommandKind::Gen { spec: self.generator_spec()? },
            "homology" => CommandKind::Homology { object: self.expr()?, upto: None },
            "pi1" => CommandKind::Pi1 { object: self.expr()?, at: None },
            "contractible" => CommandKind::Contractible { object: self.expr()? },
            "counts" => CommandKind::Counts { object: self.expr()?, upto: None },
            "hom" => CommandKind::Hom { source: self.expr()?, target: self.expr()? },
            "constant" => CommandKind::Constant { object: self.expr()?, upto: None },
            "compare" => CommandKind::Compare { left: self.expr()?, right: self.expr()? },
            _ => return Err(SyntaxError::at(span, format!("unknown command or binding `{verb}`"))),
        };
        let mut cmd = Command { kind, bound: None, expect: None, span };
        self.modifiers(&mut cmd)?;
        Ok(cmd)
    }

    fn modifiers(&mut self, cmd: &mut Command) -> PResult<()> {
        let mut piped = false;
        while !self.at_line_end() {
            let span = self.span();
            let twice = || Err(SyntaxError::at(span, "modifier given twice"));
            if self.eat_sym('|') {
                let CommandKind::Slice { probe, .. } = &mut cmd.kind else {
                    return Err(SyntaxError::at(span, "only column and row take `|`"));
                };
                if piped {
                    return twice();
                }
                piped = true;
                let (w, wspan) = self.ident()?;
                *probe = match w.as_str() {
                    "counts" => Probe::Counts,
                    "pi1" => Probe::Pi1,
                    "contractible" => Probe::Contractible,
                    "homology" => {
                        self.keyword("upto")?;
                        Probe::Homology(self.number()?)
                    }
                    _ => return Err(SyntaxError::at(wspan, format!("unknown probe `{w}`"))),
                };
                continue;
            }
            let (w, wspan) = self.ident()?;
            match w.as_str() {
                "bound" => {
                    if cmd.bound.is_some() {
                        return twice();
                    }
                    cmd.bound = Some([self.number()?, self.number()?]);
                }
                "expect" => {
                    if cmd.expect.is_some() {
                        return twice();
                    }
                    let (s, sspan) = self.ident()?;
                    if !STATUSES.contains(&s.as_str()) {
                        return Err(SyntaxError::at(sspan, format!("unknown status `{s}`")));
                    }
                    cmd.expect = Some(s);
                }
                "upto" => {
                    let v = self.number()?;
                    let slot = match &mut cmd.kind {
                        CommandKind::Homology { upto, .. } | CommandKind::Counts { upto, .. } | CommandKind::Constant { upto, .. } => upto,
                        _ => return Err(SyntaxError::at(wspan, "this command does not take `upto`")),
                    };
                    if slot.replace(v).is_some() {
                        return twice();
                    }
                }
                "via" => {
                    let v = self.number()?;
                    let CommandKind::Verdict { via, .. } = &mut cmd.kind else {
                        return Err(SyntaxError::at(wspan, "only verdict commands take `via`"));
                    };
                    if via.replace(v).is_some() {
                        return twice();
                    }
                }
                "at" => {
                    let e = self.expr()?;
                    let CommandKind::Pi1 { at, .. } = &mut cmd.kind else {
                        return Err(SyntaxError::at(wspan, "only pi1 takes `at`"));
                    };
                    if at.replace(e).is_some() {
                        return twice();
                    }
                }
                _ => return Err(SyntaxError::at(wspan, format!("unknown modifier `{w}`"))),
            }
        }
        Ok(())
    }
}

pub fn parse_program(text: &str) -> Result<Program, SyntaxError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.program()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[Expr]| -> fmt::Result {
            for (i, e) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match self {
            Expr::Num(s, _) | Expr::Name(s, _) => write!(f, "{s}"),
            Expr::Str(s, _) => {
                write!(f, "\"")?;
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        write!(f, "\\")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "\"")
            }
            Expr::Call(name, args, _) => {
                write!(f, "{name}(")?;
                join(f, args)?;
                write!(f, ")")
            }
            Expr::List(items, _) => {
                write!(f, "[")?;
                join(f, items)?;
                write!(f, "]")
            }
            Expr::Tuple(items, _) => {
                write!(f, "(")?;
                join(f, items)?;
                write!(f, ")")
            }
        }
    }
}

fn write_spec(f: &mut fmt::Formatter<'_>, spec: &GeneratorSpec) -> fmt::Result {
    write!(f, "{}", spec.family.name())?;
    for (k, v) in [("n", spec.n), ("m", spec.m), ("k", spec.k), ("d", spec.d)] {
        if let Some(v) = v {
            write!(f, " {k}={v}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis_word = |a: Axis| if a == Axis::Column { "column" } else { "row" };
        let mut probe = None;
        match &self.kind {
            CommandKind::Classify { object } => write!(f, "classify {object}")?,
            CommandKind::Slice { axis, object, index, probe: p } => {
                write!(f, "{} {object} {index}", axis_word(*axis))?;
                probe = Some(*p);
            }
            CommandKind::Verdict { axis, source, target, index, via } => {
                write!(f, "{}-verdict {source} -> {target} {index}", axis_word(*axis))?;
                if let Some(v) = via {
                    write!(f, " via {v}")?;
                }
            }
            CommandKind::Lift { object, against } => {
                write!(f, "lift {object} against ")?;
                match against {
                    Against::Inclusion { sub, target } => write!(f, "{sub} in {target}")?,
                    Against::Generator(spec) => {
                        write!(f, "gen ")?;
                        write_spec(f, spec)?;
                    }
                }
            }
            CommandKind::Gen { spec } => {
                write!(f, "gen ")?;
                write_spec(f, spec)?;
            }
            CommandKind::Homology { object, upto } => {
                write!(f, "homology {object}")?;
                if let Some(k) = upto {
                    write!(f, " upto {k}")?;
                }
            }
            CommandKind::Pi1 { object, at } => {
                write!(f, "pi1 {object}")?;
                if let Some(v) = at {
                    write!(f, " at {v}")?;
                }
            }
            CommandKind::Contractible { object } => write!(f, "contractible {object}")?,
            CommandKind::Counts { object, upto } => {
                write!(f, "counts {object}")?;
                if let Some(k) = upto {
                    write!(f, " upto {k}")?;
                }
            }
            CommandKind::Hom { source, target } => write!(f, "hom {source} {target}")?,
            CommandKind::Constant { object, upto } => {
                write!(f, "constant {object}")?;
                if let Some(k) = upto {
                    write!(f, " upto {k}")?;
                }
            }
            CommandKind::Compare { left, right } => write!(f, "compare {left} {right}")?,
        }
        if let Some([p, q]) = self.bound {
            write!(f, " bound {p} {q}")?;
        }
        match probe {
            None | Some(Probe::Counts) => {}
            Some(Probe::Homology(k)) => write!(f, " | homology upto {k}")?,
            Some(Probe::Pi1) => write!(f, " | pi1")?,
            Some(Probe::Contractible) => write!(f, " | contractible")?,
        }
        if let Some(s) = &self.expect {
            write!(f, " expect {s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Bind { kind, name, expr, .. } => write!(f, "{} {name} = {expr}", kind.keyword()),
            Statement::Block { kind, name, items, .. } => {
                write!(f, "{} {name} {{", kind.keyword())?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ;")?;
                    }
                    match item {
                        BlockItem::Objects(names, _) => {
                            let word = if *kind == BlockKind::Poset { "el" } else { "ob" };
                            write!(f, " {word} {}", names.join(" "))?;
                        }
                        BlockItem::Arrow { name, source, target, .. } => write!(f, " gen {name} : {source} -> {target}")?,
                        BlockItem::Comp { g, f: ff, h, .. } => write!(f, " comp {g} {ff} = {h}")?,
                        BlockItem::Le(a, b, _) => write!(f, " le {a} {b}")?,
                    }
                }
                write!(f, " }}")
            }
            Statement::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_positions() {
        let toks = lex("sset D2 = simplex(2)\n  column-verdict").unwrap();
        assert_eq!(toks[0].0, Tok::Ident("sset".into()));
        let last = &toks[toks.len() - 2];
        assert_eq!(last.0, Tok::Ident("column-verdict".into()));
        assert_eq!((last.1.line, last.1.col), (2, 3));
    }

    #[test]
    fn parses_bindings_and_blocks() {
        let p = parse_program("sset D2 = simplex(2)\ncat C { ob a b ; gen f : a -> b }\nrel R = (C, [f])\n").unwrap();
        assert_eq!(p.statements.len(), 3);
        match &p.statements[1] {
            Statement::Block { kind: BlockKind::Cat, items, .. } => assert_eq!(items.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        match &p.statements[2] {
            Statement::Bind { kind: BindKind::Rel, expr: Expr::Tuple(items, _), .. } => assert_eq!(items.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_commands() {
        let p = parse_program("column classify(sharp(simplex(1))) 1 | homology upto 2\nclassify sharp(simplex(1)) bound 3 3").unwrap();
        let Statement::Command(c) = &p.statements[0] else { panic!() };
        assert!(matches!(c.kind, CommandKind::Slice { axis: Axis::Column, index: 1, probe: Probe::Homology(2), .. }));
        let Statement::Command(c) = &p.statements[1] else { panic!() };
        assert_eq!(c.bound, Some([3, 3]));
    }

    #[test]
    fn reports_positions() {
        let e = parse_program("sset A = simplex(1)\nsset B = simplex(1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_program("classify X bound 3").unwrap_err();
        assert_eq!((e.line, e.col), (1, 19));
        let e = parse_program("frobnicate X").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(parse_program("lift X against gen mbe_Z n=1").is_err());
        assert!(parse_program("homology X | pi1").is_err());
    }

    #[test]
    fn prints_and_reparses() {
        let text = "cat C { ob a b c ; gen f : a -> b ; gen g : b -> c ; gen h : a -> c ; comp g f = h }\n\
                    poset P { el x y ; le x y }\n\
                    msset M = mark(simplex(2), [01, \"1\\\"2\"])\n\
                    lift M against gen mbe_A n=1 m=1 k=0 expect holds\n\
                    column-verdict classify(flat(simplex(1))) -> classify(flat(simplex(0))) 1 via 0 bound 2 3\n\
                    pi1 boundary(2) at 0\n";
        let p = parse_program(text).unwrap();
        let printed = p.to_string();
        let q = parse_program(&printed).unwrap();
        assert_eq!(p, q);
        assert_eq!(printed, q.to_string());
    }
}
