//! Semantic checking and evaluation of workspace expressions.
//!
//! Bindings are kept as expressions and evaluated per command, since the
//! truncation of a nerve depends on the bounds the command asks for.
//! Category blocks do not depend on bounds and are built once.

use std::collections::HashMap;
use std::sync::Arc;

use msset::bisimplicial::{box_product, diagonal, slice, table_to_marked, Axis, MarkedBiPresentation};
use msset::catkit::{functor_category, nerve, Arrow, FiniteCategory, RelativeCategory};
use msset::classification::{i1_star, marked_classification, p1_star, relative_classification, ClassificationDiagram};
use msset::marked::{natural_marking, MarkedSimplicialSet};
use msset::sset::{boundary, horn, j_truncated, product, simplex, skeleton};
use msset::{SimplicialSet, Table, MAX_DIM};
use thiserror::Error;

use crate::syntax::{parse_program, BindKind, BlockItem, BlockKind, Command, CommandKind, Against, Expr, Program, Span, Statement, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{line}:{col}: {message} (at `{token}`)")]
    Semantic { line: usize, col: usize, token: String, message: String },
}

/// An error located at an expression or statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub span: Span,
    pub token: String,
    pub message: String,
}

impl EvalError {
    fn at(e: &Expr, message: impl Into<String>) -> Self {
        EvalError { span: e.span(), token: e.to_string(), message: message.into() }
    }

    fn lib(e: &Expr, err: msset::Error) -> Self {
        Self::at(e, err.to_string())
    }
}

impl From<EvalError> for DslError {
    fn from(e: EvalError) -> Self {
        DslError::Semantic { line: e.span.line, col: e.span.col, token: e.token, message: e.message }
    }
}

pub type EResult<T> = Result<T, EvalError>;

/// Bounds in force while evaluating one command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub bounds: [usize; 2],
    pub jtrunc: usize,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { bounds: [3, 3], jtrunc: 3 }
    }
}

impl Ctx {
    /// Default truncation of nerves: large enough for the classification
    /// diagram within the bounds.
    pub fn nerve_dim(&self) -> usize {
        self.jtrunc.max(self.bounds[0] + self.bounds[1])
    }
}

/// A bisimplicial value, tabulated on demand.
#[derive(Clone, Debug)]
pub enum Bi {
    /// `N(X̄)`; `nerve` is the truncation when `X` is a nerve.
    Classify { set: MarkedSimplicialSet, nerve: Option<usize> },
    Box(MarkedBiPresentation),
    P1(MarkedSimplicialSet),
    Relative(RelativeCategory),
}

pub enum BiTable {
    Plain(Table<2>),
    Diagram(ClassificationDiagram),
}

impl BiTable {
    pub fn table(&self) -> &Table<2> {
        match self {
            BiTable::Plain(t) => t,
            BiTable::Diagram(d) => d.table(),
        }
    }
}

impl Bi {
    pub fn tabulate(&self, bounds: [usize; 2]) -> msset::Result<BiTable> {
        Ok(match self {
            Bi::Classify { set, nerve } => {
                let mut d = marked_classification(set, bounds)?;
                if let Some(t) = nerve {
                    if *t >= bounds[0] + bounds[1] {
                        d = d.assume_nerve(*t)?;
                    }
                }
                BiTable::Diagram(d)
            }
            Bi::Box(b) => BiTable::Plain(b.tabulate(bounds)),
            Bi::P1(x) => BiTable::Plain(p1_star(x, bounds)),
            Bi::Relative(r) => BiTable::Plain(relative_classification(r, bounds)?),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    /// A simplicial set; `nerve` is the truncation when it is a nerve.
    Sset { set: Arc<SimplicialSet>, nerve: Option<usize> },
    Marked { set: MarkedSimplicialSet, nerve: Option<usize> },
    Bi(Bi),
    /// A bounded one-directional table, such as a row or `i1(...)`.
    Table(Arc<Table<1>>),
    Cat(FiniteCategory),
    Rel(RelativeCategory),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Sset { .. } => "simplicial set",
            Value::Marked { .. } => "marked simplicial set",
            Value::Bi(_) => "bisimplicial set",
            Value::Table(_) => "bounded simplicial table",
            Value::Cat(_) => "category",
            Value::Rel(_) => "relative category",
        }
    }
}

/// A parsed and checked workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub program: Program,
    categories: HashMap<String, FiniteCategory>,
    bindings: HashMap<String, (BindKind, Expr)>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.program == other.program
    }
}

impl Eq for Workspace {}

impl std::fmt::Display for Workspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.program)
    }
}

/// Parses and type-checks a workspace with the given defaults.
pub fn parse(text: &str, ctx: Ctx) -> Result<Workspace, DslError> {
    let program = parse_program(text)?;
    let mut ws = Workspace { program: Program::default(), categories: HashMap::new(), bindings: HashMap::new() };
    for st in &program.statements {
        ws.check_statement(st, ctx)?;
    }
    ws.program = program;
    Ok(ws)
}

impl Workspace {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.program.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }

    fn define(&self, name: &str, span: Span) -> Result<(), DslError> {
        if self.categories.contains_key(name) || self.bindings.contains_key(name) {
            return Err(DslError::Semantic { line: span.line, col: span.col, token: name.into(), message: "name already defined".into() });
        }
        Ok(())
    }

    fn check_statement(&mut self, st: &Statement, ctx: Ctx) -> Result<(), DslError> {
        match st {
            Statement::Block { kind, name, items, span } => {
                self.define(name, *span)?;
                let c = build_block(*kind, items).map_err(|(s, msg)| DslError::Semantic {
                    line: s.line,
                    col: s.col,
                    token: name.clone(),
                    message: msg,
                })?;
                self.categories.insert(name.clone(), c);
            }
            Statement::Bind { kind, name, expr, span } => {
                self.define(name, *span)?;
                let v = self.eval(expr, ctx)?;
                let ok = match kind {
                    BindKind::Sset => matches!(v, Value::Sset { .. }),
                    BindKind::Msset => matches!(v, Value::Marked { .. }),
                    BindKind::Bisset => matches!(v, Value::Bi(_)),
                    BindKind::Cat => matches!(v, Value::Cat(_)),
                    BindKind::Rel => matches!(v, Value::Rel(_)),
                    BindKind::Let => true,
                };
                if !ok {
                    return Err(EvalError::at(expr, format!("`{}` binding got a {}", kind.keyword(), v.kind_name())).into());
                }
                self.bindings.insert(name.clone(), (*kind, expr.clone()));
            }
            Statement::Command(c) => self.check_command(c, ctx)?,
        }
        Ok(())
    }

    fn check_command(&self, c: &Command, ctx: Ctx) -> Result<(), DslError> {
        let ctx = Ctx { bounds: c.bound.unwrap_or(ctx.bounds), ..ctx };
        let exprs: Vec<&Expr> = match &c.kind {
            CommandKind::Classify { object }
            | CommandKind::Slice { object, .. }
            | CommandKind::Homology { object, .. }
            | CommandKind::Pi1 { object, .. }
            | CommandKind::Contractible { object }
            | CommandKind::Counts { object, .. }
            | CommandKind::Constant { object, .. } => vec![object],
            CommandKind::Verdict { source, target, .. } | CommandKind::Hom { source, target } => vec![source, target],
            CommandKind::Compare { left, right } => vec![left, right],
            CommandKind::Lift { object, against } => match against {
                Against::Inclusion { sub, target } => vec![object, sub, target],
                Against::Generator(_) => vec![object],
            },
            CommandKind::Gen { .. } => vec![],
        };
        for e in exprs {
            // bounded tables are only built when the command runs
            self.eval_shallow(e, ctx)?;
        }
        if let CommandKind::Lift { against: Against::Generator(spec), .. } | CommandKind::Gen { spec } = &c.kind {
            msset::anodyne::make_generator(spec).map_err(|e| DslError::Semantic {
                line: c.span.line,
                col: c.span.col,
                token: spec.family.name().into(),
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Evaluates everything except constructions that tabulate bisimplicial
    /// sets, whose arguments are still checked.
    fn eval_shallow(&self, e: &Expr, ctx: Ctx) -> EResult<()> {
        match e {
            Expr::Call(name, args, _) if matches!(name.as_str(), "i1" | "diag" | "column" | "row") => {
                let Some(b) = args.first() else {
                    return Err(EvalError::at(e, format!("{name} expects arguments")));
                };
                match self.eval(b, ctx)? {
                    Value::Bi(_) => Ok(()),
                    v => Err(EvalError::at(b, format!("expected a bisimplicial set, got a {}", v.kind_name()))),
                }
            }
            Expr::Name(n, _) => match self.bindings.get(n) {
                Some((_, inner)) => self.eval_shallow(inner, ctx),
                None if self.categories.contains_key(n) => Ok(()),
                None => Err(EvalError::at(e, "unknown name")),
            },
            _ => self.eval(e, ctx).map(|_| ()),
        }
    }

    pub fn eval(&self, e: &Expr, ctx: Ctx) -> EResult<Value> {
        match e {
            Expr::Name(n, _) => {
                if let Some(c) = self.categories.get(n) {
                    return Ok(Value::Cat(c.clone()));
                }
                match self.bindings.get(n) {
                    Some((_, inner)) => self.eval(inner, ctx),
                    None => Err(EvalError::at(e, "unknown name")),
                }
            }
            Expr::Tuple(items, _) => self.relative(e, items, ctx),
            Expr::Call(name, args, _) => self.call(e, name, args, ctx),
            Expr::Num(..) | Expr::Str(..) | Expr::List(..) => Err(EvalError::at(e, "expected an object")),
        }
    }

    fn relative(&self, e: &Expr, items: &[Expr], ctx: Ctx) -> EResult<Value> {
        if items.len() != 2 {
            return Err(EvalError::at(e, "a relative category is (C, [arrows]), (C, isos) or (C, all)"));
        }
        let c = self.category(&items[0], ctx)?;
        let r = match &items[1] {
            Expr::Name(w, _) if w == "isos" => RelativeCategory::isos(c),
            Expr::Name(w, _) if w == "all" => RelativeCategory::all(c),
            Expr::List(names, _) => {
                let mut ids = Vec::new();
                for n in names {
                    let label = label(n)?;
                    ids.push(c.find_arrow(&label).ok_or_else(|| EvalError::at(n, "no such arrow"))?);
                }
                RelativeCategory::new(c, &ids).map_err(|err| EvalError::lib(e, err))?
            }
            other => return Err(EvalError::at(other, "expected [arrows], isos or all")),
        };
        Ok(Value::Rel(r))
    }

    fn category(&self, e: &Expr, ctx: Ctx) -> EResult<FiniteCategory> {
        match self.eval(e, ctx)? {
            Value::Cat(c) => Ok(c),
            v => Err(EvalError::at(e, format!("expected a category, got a {}", v.kind_name()))),
        }
    }

    fn sset(&self, e: &Expr, ctx: Ctx) -> EResult<(Arc<SimplicialSet>, Option<usize>)> {
        match self.eval(e, ctx)? {
            Value::Sset { set, nerve } => Ok((set, nerve)),
            Value::Marked { set, nerve } => Ok((set.underlying, nerve)),
            Value::Table(t) => Ok((table_to_marked(&t).underlying, None)),
            v => Err(EvalError::at(e, format!("expected a simplicial set, got a {}", v.kind_name()))),
        }
    }

    /// Marked simplicial sets; plain ones are read as flat.
    fn marked(&self, e: &Expr, ctx: Ctx) -> EResult<(MarkedSimplicialSet, Option<usize>)> {
        match self.eval(e, ctx)? {
            Value::Sset { set, nerve } => Ok((MarkedSimplicialSet::flat(set), nerve)),
            Value::Marked { set, nerve } => Ok((set, nerve)),
            Value::Table(t) => Ok((table_to_marked(&t), None)),
            v => Err(EvalError::at(e, format!("expected a marked simplicial set, got a {}", v.kind_name()))),
        }
    }

    pub fn bi(&self, e: &Expr, ctx: Ctx) -> EResult<Bi> {
        match self.eval(e, ctx)? {
            Value::Bi(b) => Ok(b),
            v => Err(EvalError::at(e, format!("expected a bisimplicial set, got a {}", v.kind_name()))),
        }
    }

    fn bi_table(&self, e: &Expr, ctx: Ctx) -> EResult<BiTable> {
        let b = self.bi(e, ctx)?;
        b.tabulate(ctx.bounds).map_err(|err| EvalError::lib(e, err))
    }

    fn call(&self, e: &Expr, name: &str, args: &[Expr], ctx: Ctx) -> EResult<Value> {
        let arity = |lo: usize, hi: usize| -> EResult<()> {
            if args.len() < lo || args.len() > hi {
                let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
                return Err(EvalError::at(e, format!("{name} takes {want} arguments, got {}", args.len())));
            }
            Ok(())
        };
        let dim = |i: usize, lo: usize| -> EResult<usize> {
            let v = number(&args[i])?;
            if v < lo || v > MAX_DIM {
                return Err(EvalError::at(&args[i], format!("parameter out of range: {v} not in {lo}..={MAX_DIM}")));
            }
            Ok(v)
        };
        let sset = |set: SimplicialSet| Value::Sset { set: Arc::new(set), nerve: None };
        Ok(match name {
            "simplex" => {
                arity(1, 1)?;
                sset(simplex(dim(0, 0)?))
            }
            "boundary" => {
                arity(1, 1)?;
                sset(boundary(dim(0, 0)?))
            }
            "horn" => {
                arity(2, 2)?;
                let n = dim(0, 1)?;
                let k = number(&args[1])?;
                if k > n {
                    return Err(EvalError::at(e, format!("parameter out of range: horn index {k} exceeds {n}")));
                }
                sset(horn(n, k))
            }
            "jtrunc" => {
                arity(0, 1)?;
                let d = if args.is_empty() { ctx.jtrunc } else { dim(0, 0)? };
                sset(j_truncated(d))
            }
            "nerve" => {
                arity(1, 2)?;
                let d = if args.len() == 2 { dim(1, 0)? } else { ctx.nerve_dim() };
                match self.eval(&args[0], ctx)? {
                    Value::Cat(c) => Value::Sset { set: nerve(&c, d).presentation, nerve: Some(d) },
                    Value::Rel(r) => {
                        let n = nerve(&r.base, d);
                        let marked = n.edge_marking(|f| r.weak[f as usize]);
                        Value::Marked { set: MarkedSimplicialSet { underlying: n.presentation, marked }, nerve: Some(d) }
                    }
                    v => return Err(EvalError::at(&args[0], format!("expected a category, got a {}", v.kind_name()))),
                }
            }
            "product" => {
                arity(2, 2)?;
                match (self.eval(&args[0], ctx)?, self.eval(&args[1], ctx)?) {
                    (Value::Sset { set: a, .. }, Value::Sset { set: b, .. }) => sset(product(&a, &b)),
                    _ => {
                        let (a, _) = self.marked(&args[0], ctx)?;
                        let (b, _) = self.marked(&args[1], ctx)?;
                        Value::Marked { set: a.product(&b).1, nerve: None }
                    }
                }
            }
            "skeleton" => {
                arity(2, 2)?;
                let p = number(&args[1])?;
                match self.eval(&args[0], ctx)? {
                    Value::Sset { set, nerve } => Value::Sset { set: skeleton(&set, p).0, nerve: nerve.map(|d| d.min(p)) },
                    Value::Marked { set, nerve } => {
                        let keep: Vec<bool> = set.underlying.generators().iter().map(|g| g.degree[0] <= p).collect();
                        let marked = set.marked.iter().zip(&keep).filter(|(_, &k)| k).map(|(&m, _)| m).collect();
                        let underlying = skeleton(&set.underlying, p).0;
                        Value::Marked { set: MarkedSimplicialSet { underlying, marked }, nerve: nerve.map(|d| d.min(p)) }
                    }
                    v => return Err(EvalError::at(&args[0], format!("expected a simplicial set, got a {}", v.kind_name()))),
                }
            }
            "flat" | "sharp" | "natural" => {
                arity(1, 1)?;
                let (set, nerve) = self.sset(&args[0], ctx)?;
                let set = match name {
                    "flat" => MarkedSimplicialSet::flat(set),
                    "sharp" => MarkedSimplicialSet::sharp(set),
                    _ => natural_marking(&set).map_err(|err| EvalError::lib(&args[0], err))?,
                };
                Value::Marked { set, nerve }
            }
            "unmark" => {
                arity(1, 1)?;
                let (set, nerve) = self.sset(&args[0], ctx)?;
                Value::Sset { set, nerve }
            }
            "mark" => {
                arity(2, 2)?;
                let (mut set, nerve) = self.marked(&args[0], ctx)?;
                let Expr::List(items, _) = &args[1] else {
                    return Err(EvalError::at(&args[1], "expected a list of edge labels"));
                };
                for item in items {
                    let l = label(item)?;
                    let g = set.underlying.find_label(&l).ok_or_else(|| EvalError::at(item, "no generator with this label"))?;
                    if set.underlying.degree(g) != [1] {
                        return Err(EvalError::at(item, "invalid marking: not an edge"));
                    }
                    set.marked[g as usize] = true;
                }
                Value::Marked { set, nerve }
            }
            "classify" => {
                arity(1, 1)?;
                match self.eval(&args[0], ctx)? {
                    Value::Rel(r) => Value::Bi(Bi::Relative(r)),
                    _ => {
                        let (set, nerve) = self.marked(&args[0], ctx)?;
                        Value::Bi(Bi::Classify { set, nerve })
                    }
                }
            }
            "box" => {
                arity(2, 2)?;
                let (x, _) = self.marked(&args[0], ctx)?;
                let (y, _) = self.sset(&args[1], ctx)?;
                Value::Bi(Bi::Box(box_product(&x, &y)))
            }
            "p1" => {
                arity(1, 1)?;
                Value::Bi(Bi::P1(self.marked(&args[0], ctx)?.0))
            }
            "i1" | "diag" => {
                arity(1, 1)?;
                let t = self.bi_table(&args[0], ctx)?;
                Value::Table(Arc::new(if name == "i1" {
                    i1_star(t.table()).map_err(|err| EvalError::lib(e, err))?
                } else {
                    diagonal(t.table())
                }))
            }
            "column" | "row" => {
                arity(2, 2)?;
                let t = self.bi_table(&args[0], ctx)?;
                let axis = if name == "column" { Axis::Column } else { Axis::Row };
                Value::Table(Arc::new(slice(t.table(), axis, number(&args[1])?).map_err(|err| EvalError::lib(e, err))?))
            }
            "chain" => {
                arity(1, 1)?;
                Value::Cat(FiniteCategory::chain(dim(0, 0)?))
            }
            "indiscrete" | "discrete" => {
                arity(1, 1)?;
                let n = number(&args[0])?;
                if n == 0 || n > 16 {
                    return Err(EvalError::at(&args[0], "parameter out of range: between 1 and 16 objects"));
                }
                Value::Cat(if name == "indiscrete" {
                    FiniteCategory::indiscrete(n)
                } else {
                    FiniteCategory::discrete((0..n).map(|i| i.to_string()).collect())
                })
            }
            "core" => {
                arity(1, 1)?;
                Value::Cat(self.category(&args[0], ctx)?.core())
            }
            "fun" => {
                arity(2, 2)?;
                let n = dim(0, 0)?;
                Value::Cat(functor_category(n, &self.category(&args[1], ctx)?).category)
            }
            _ => return Err(EvalError::at(e, format!("unknown construction `{name}`"))),
        })
    }
}

pub fn number(e: &Expr) -> EResult<usize> {
    match e {
        Expr::Num(s, _) => s.parse().map_err(|_| EvalError::at(e, "number too large")),
        _ => Err(EvalError::at(e, "expected a number")),
    }
}

pub fn label(e: &Expr) -> EResult<String> {
    match e {
        Expr::Num(s, _) | Expr::Name(s, _) | Expr::Str(s, _) => Ok(s.clone()),
        _ => Err(EvalError::at(e, "expected a label")),
    }
}

fn build_block(kind: BlockKind, items: &[BlockItem]) -> Result<FiniteCategory, (Span, String)> {
    let mut objects: Vec<String> = Vec::new();
    let lookup = |objects: &[String], name: &str, span: Span| {
        objects
            .iter()
            .position(|o| o == name)
            .map(|i| i as u32)
            .ok_or_else(|| (span, format!("unknown object {name}")))
    };
    let mut edges: Vec<(String, u32, u32)> = Vec::new();
    let mut comps: Vec<(String, String, String, Span)> = Vec::new();
    let mut relations = Vec::new();
    for item in items {
        match item {
            BlockItem::Objects(names, span) => {
                for n in names {
                    if objects.contains(n) {
                        return Err((*span, format!("object {n} declared twice")));
                    }
                    objects.push(n.clone());
                }
            }
            BlockItem::Arrow { name, source, target, span } => {
                if edges.iter().any(|e| &e.0 == name) {
                    return Err((*span, format!("arrow {name} declared twice")));
                }
                edges.push((name.clone(), lookup(&objects, source, *span)?, lookup(&objects, target, *span)?));
            }
            BlockItem::Comp { g, f, h, span } => comps.push((g.clone(), f.clone(), h.clone(), *span)),
            BlockItem::Le(a, b, span) => relations.push((lookup(&objects, a, *span)?, lookup(&objects, b, *span)?)),
        }
    }
    let first = items.first().map(block_span).unwrap_or_default();
    let lib = |e: msset::Error| (first, e.to_string());
    match kind {
        BlockKind::Poset => FiniteCategory::poset(objects, &relations).map_err(lib),
        BlockKind::FreeCat => FiniteCategory::free(objects, &edges).map_err(lib),
        BlockKind::Cat => {
            let mut arrows: Vec<Arrow> = objects
                .iter()
                .enumerate()
                .map(|(i, o)| Arrow { name: format!("id_{o}"), source: i as u32, target: i as u32 })
                .collect();
            let identities = (0..objects.len() as u32).collect();
            for (name, s, t) in &edges {
                if arrows.iter().any(|a| &a.name == name) {
                    return Err((first, format!("arrow name {name} clashes with an identity")));
                }
                arrows.push(Arrow { name: name.clone(), source: *s, target: *t });
            }
            let find = |name: &str, span: Span| {
                arrows.iter().position(|a| a.name == name).map(|i| i as u32).ok_or_else(|| (span, format!("unknown arrow {name}")))
            };
            let table = comps
                .iter()
                .map(|(g, f, h, span)| Ok((find(g, *span)?, find(f, *span)?, find(h, *span)?)))
                .collect::<Result<Vec<_>, (Span, String)>>()?;
            FiniteCategory::from_table(objects, arrows.clone(), identities, &table).map_err(lib)
        }
    }
}

fn block_span(item: &BlockItem) -> Span {
    match item {
        BlockItem::Objects(_, s) | BlockItem::Le(_, _, s) => *s,
        BlockItem::Arrow { span, .. } | BlockItem::Comp { span, .. } => *span,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(text: &str) -> Result<Workspace, DslError> {
        parse(text, Ctx::default())
    }

    #[test]
    fn bindings_type_check() {
        let w = ws("sset D2 = simplex(2)\ncat C { ob a b ; gen f : a -> b }\nrel R = (C, [f])\n").unwrap();
        let Value::Rel(r) = w.eval(&Expr::Name("R".into(), Span::default()), Ctx::default()).unwrap() else { panic!() };
        assert!(r.weak.iter().all(|&b| b));
        assert!(ws("msset D = simplex(2)").is_err());
        assert!(ws("sset X = simplex(1)\nsset X = simplex(2)").is_err());
    }

    #[test]
    fn parameter_errors_carry_the_line() {
        let err = ws("sset A = simplex(1)\nsset Bad = horn(2,5)\n").unwrap_err();
        match err {
            DslError::Semantic { line, token, message, .. } => {
                assert_eq!(line, 2);
                assert_eq!(token, "horn(2, 5)");
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other}"),
        }
        assert!(ws("msset M = mark(simplex(2), [012])").is_err());
        assert!(ws("msset M = mark(simplex(2), [07])").is_err());
        assert!(ws("counts Y").is_err());
        assert!(ws("gen mbe_A n=1").is_err());
    }

    #[test]
    fn blocks_build_categories() {
        let w = ws("cat C { ob a b c ; gen f : a -> b ; gen g : b -> c ; gen h : a -> c ; comp g f = h }\n\
                    freecat F { ob a b c ; gen f : a -> b ; gen g : b -> c }\n\
                    poset P { el x y z ; le x y ; le y z }")
        .unwrap();
        for (name, arrows) in [("C", 6), ("F", 6), ("P", 6)] {
            let Value::Cat(c) = w.eval(&Expr::Name(name.into(), Span::default()), Ctx::default()).unwrap() else { panic!() };
            assert_eq!(c.arrow_count(), arrows, "{name}");
        }
        assert!(ws("cat C { ob a b c ; gen f : a -> b ; gen g : b -> c }").is_err());
        assert!(ws("poset P { el x ; le x y }").is_err());
    }

    #[test]
    fn nerves_track_truncation() {
        let w = ws("cat C = indiscrete(2)").unwrap();
        let e = crate::syntax::parse_program("let X = natural(nerve(C))").unwrap();
        let Statement::Bind { expr, .. } = &e.statements[0] else { panic!() };
        let ctx = Ctx { bounds: [2, 2], jtrunc: 3 };
        let Value::Marked { nerve, set } = w.eval(expr, ctx).unwrap() else { panic!() };
        assert_eq!(nerve, Some(4));
        assert_eq!(set.marked_edge_count(), 2);
    }
}
