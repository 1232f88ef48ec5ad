//! Executes workspace commands and builds their JSON reports.

use std::sync::Arc;

use msset::anodyne::{has_rlp, make_generator, to_terminal, Generator, Inclusion};
use msset::bisimplicial::{bidegree_counts, slice, table_to_marked, Axis};
use msset::classification::{categorically_constant_check, induced_map, tables_equal};
use msset::invariants::{
    column_verdict, contractibility, contractibility_table, homology, homology_table, pi1_presentation, row_verdict, Status,
};
use msset::marked::{count_marked_maps, enumerate_marked_maps, MarkedSimplicialSet};
use msset::sset::{count_maps, nondegenerate_counts, simplex_counts};
use msset::Table;
use serde::Serialize;
use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::eval::{label, Bi, BiTable, Ctx, EvalError, Value, Workspace};
use crate::syntax::{Against, Command, CommandKind, Expr, Probe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: `{command}`: {message}")]
pub struct RunError {
    pub line: usize,
    pub command: String,
    pub message: String,
}

/// Reports of all commands, in order, and whether any checked property failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub results: Vec<Json>,
    pub failed: bool,
}

impl Outcome {
    pub fn to_json(&self) -> Json {
        json!({ "results": self.results, "failed": self.failed })
    }
}

pub fn run(ws: &Workspace, defaults: Ctx) -> Result<Outcome, RunError> {
    let mut results = Vec::new();
    let mut failed = false;
    for c in ws.commands() {
        let ctx = Ctx { bounds: c.bound.unwrap_or(defaults.bounds), ..defaults };
        let err = |message: String| RunError { line: c.span.line, command: c.to_string(), message };
        let mut body = run_command(ws, c, ctx).map_err(|e| err(describe(&e)))?;
        let status = body.get("status").and_then(|s| s.as_str()).map(str::to_string);
        let ok = match (&c.expect, &status) {
            (Some(want), Some(got)) => want == got,
            (Some(want), None) => return Err(err(format!("expected {want}, but this command reports no status"))),
            (None, Some(got)) => got != "fails" && got != "not_equivalent",
            (None, None) => true,
        };
        failed |= !ok;
        body.insert("line".into(), json!(c.span.line));
        body.insert("command".into(), json!(c.to_string()));
        if let Some(want) = &c.expect {
            body.insert("expect".into(), json!(want));
            body.insert("met".into(), json!(ok));
        }
        results.push(Json::Object(body));
    }
    Ok(Outcome { results, failed })
}

fn describe(e: &EvalError) -> String {
    format!("{} (at `{}`)", e.message, e.token)
}

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("report types serialize")
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unknown => "unknown",
    }
}

fn lib(e: &Expr) -> impl Fn(msset::Error) -> EvalError + '_ {
    move |err| EvalError { span: e.span(), token: e.to_string(), message: err.to_string() }
}

fn at(e: &Expr, message: impl Into<String>) -> EvalError {
    EvalError { span: e.span(), token: e.to_string(), message: message.into() }
}

fn level_counts(t: &Table<1>) -> Json {
    let rows: Vec<Json> = t
        .levels()
        .iter()
        .map(|l| {
            let mut m = Map::new();
            m.insert("level".into(), json!(l.degree()[0]));
            m.insert("count".into(), json!(l.count()));
            if let Some(marks) = l.marking() {
                m.insert("marked".into(), json!(marks.iter().filter(|&&b| b).count()));
            }
            Json::Object(m)
        })
        .collect();
    Json::Array(rows)
}

/// Homology of a bounded table is only reported in degrees below its bound.
fn table_homology(t: &Table<1>, upto: Option<usize>, e: &Expr) -> Result<Json, EvalError> {
    let bound = t.bounds()[0];
    if bound == 0 {
        return Err(at(e, "homology of a table needs bound at least 1"));
    }
    let k = upto.unwrap_or(bound - 1);
    if k >= bound {
        return Err(at(e, format!("homology up to degree {k} needs a bound above {k}, have {bound}")));
    }
    Ok(homology_json(&homology_table(t, k)))
}

fn homology_json(h: &msset::invariants::HomologyProfile) -> Json {
    let groups: Vec<String> = h.groups.iter().map(|g| g.to_string()).collect();
    json!({ "homology": groups, "ranks": h.ranks(), "detail": to_json(h) })
}

fn pi1_json(x: &msset::SimplicialSet, at_label: Option<&Expr>, e: &Expr) -> Result<Json, EvalError> {
    let base = match at_label {
        Some(l) => {
            let name = label(l)?;
            x.find_label(&name).ok_or_else(|| at(l, "no vertex with this label"))?
        }
        None => (0..x.len() as u32).find(|&g| x.degree(g) == [0]).ok_or_else(|| at(e, "no vertices"))?,
    };
    let p = pi1_presentation(x, base).map_err(lib(e))?;
    Ok(json!({ "basepoint": x.generator(base).label, "pi1": to_json(&p) }))
}

fn merge(mut base: Map<String, Json>, extra: Json) -> Map<String, Json> {
    if let Json::Object(m) = extra {
        base.extend(m);
    }
    base
}

fn run_command(ws: &Workspace, c: &Command, ctx: Ctx) -> Result<Map<String, Json>, EvalError> {
    let mut out = Map::new();
    out.insert("bounds".into(), json!(ctx.bounds));
    match &c.kind {
        CommandKind::Classify { object } => {
            let bi = match ws.eval(object, ctx)? {
                Value::Bi(b) => b,
                Value::Rel(r) => Bi::Relative(r),
                Value::Sset { set, nerve } => Bi::Classify { set: MarkedSimplicialSet::flat(set), nerve },
                Value::Marked { set, nerve } => Bi::Classify { set, nerve },
                v => return Err(at(object, format!("cannot classify a {}", v.kind_name()))),
            };
            let t = bi.tabulate(ctx.bounds).map_err(lib(object))?;
            out.insert("coskeletal".into(), json!(t.table().is_coskeletal()));
            out.insert("bidegrees".into(), to_json(&bidegree_counts(t.table())));
        }
        CommandKind::Slice { axis, object, index, probe } => {
            let t = ws.bi(object, ctx)?.tabulate(ctx.bounds).map_err(lib(object))?;
            let s = slice(t.table(), *axis, *index).map_err(lib(object))?;
            out = match probe {
                Probe::Counts => merge(out, json!({ "counts": level_counts(&s) })),
                Probe::Homology(k) => merge(out, table_homology(&s, Some(*k), object)?),
                Probe::Pi1 => {
                    if s.bounds()[0] < 2 {
                        return Err(at(object, "pi1 of a table needs bound at least 2"));
                    }
                    merge(out, pi1_json(&table_to_marked(&s).underlying, None, object)?)
                }
                Probe::Contractible => {
                    let r = contractibility_table(&s);
                    merge(out, json!({ "status": status_name(r.status), "reason": r.reason }))
                }
            };
        }
        CommandKind::Verdict { axis, source, target, index, via } => {
            let (x, xn) = classify_operand(ws, source, ctx)?;
            let (y, yn) = classify_operand(ws, target, ctx)?;
            let maps = enumerate_marked_maps(&x, &y);
            let chosen = match via {
                Some(k) => maps.get(*k).ok_or_else(|| at(target, format!("only {} marked maps exist", maps.len())))?,
                None if maps.len() == 1 => &maps[0],
                None => {
                    return Err(at(target, format!("{} marked maps exist; choose one with `via`", maps.len())));
                }
            };
            let dx = Bi::Classify { set: x, nerve: xn }.tabulate(ctx.bounds).map_err(lib(source))?;
            let dy = Bi::Classify { set: y, nerve: yn }.tabulate(ctx.bounds).map_err(lib(target))?;
            let (BiTable::Diagram(gx), BiTable::Diagram(gy)) = (dx, dy) else {
                unreachable!("classification operands tabulate to diagrams")
            };
            let f = induced_map(chosen, &gx, &gy).map_err(lib(source))?;
            let v = match axis {
                Axis::Column => column_verdict(gx.table(), gy.table(), &f, *index),
                Axis::Row => row_verdict(gx.table(), gy.table(), &f, *index),
            }
            .map_err(lib(source))?;
            out.insert("maps".into(), json!(maps.len()));
            out.insert("status".into(), to_json(&v.status));
            out.insert("verdict".into(), to_json(&v));
        }
        CommandKind::Lift { object, against } => {
            let v = match against {
                Against::Generator(spec) => match make_generator(spec).map_err(lib(object))? {
                    Generator::Bisimplicial(i) => {
                        let need = i.target.max_degree();
                        let bounds = match c.bound {
                            Some(b) if b[0] < need[0] || b[1] < need[1] => {
                                return Err(at(object, format!("bound must reach the generator's degree ({},{})", need[0], need[1])));
                            }
                            Some(b) => b,
                            None => need,
                        };
                        let ctx = Ctx { bounds, ..ctx };
                        out.insert("bounds".into(), json!(bounds));
                        let t = ws.bi(object, ctx)?.tabulate(bounds).map_err(lib(object))?;
                        let (y, f) = to_terminal(t.table());
                        has_rlp(t.table(), &y, &f, &i)
                    }
                    Generator::Simplicial(i) => simplicial_lift(ws, object, &i, ctx)?,
                },
                Against::Inclusion { sub, target } => {
                    let (b, _) = marked_operand(ws, target, ctx)?;
                    let (a, _) = marked_operand(ws, sub, ctx)?;
                    let plain = Inclusion::by_labels(format!("{sub} in {target}"), &a.underlying, b.underlying.clone())
                        .map_err(lib(sub))?;
                    let mut source_marked = vec![false; b.underlying.len()];
                    for (g, gen) in a.underlying.generators().iter().enumerate() {
                        if a.marked[g] {
                            source_marked[b.underlying.find_label(&gen.label).unwrap() as usize] = true;
                        }
                    }
                    let i = Inclusion::new(plain.name, plain.target, b.marked.clone(), plain.sub, source_marked)
                        .map_err(lib(sub))?;
                    simplicial_lift(ws, object, &i, ctx)?
                }
            };
            out.insert("status".into(), json!(status_name(v.status)));
            out.insert("lift".into(), to_json(&v));
        }
        CommandKind::Gen { spec } => {
            let counts = |v: Vec<(Vec<usize>, usize)>| -> Json {
                Json::Array(v.into_iter().map(|(d, n)| json!({ "degree": d, "count": n })).collect())
            };
            out.remove("bounds");
            out.insert("generator".into(), to_json(spec));
            let (kind, src, tgt, marks, mono, trunc) = match make_generator(spec).map_err(|e| EvalError {
                span: c.span,
                token: spec.family.name().into(),
                message: e.to_string(),
            })? {
                Generator::Bisimplicial(i) => (
                    "bisimplicial",
                    i.source_counts().into_iter().map(|(d, n)| (d.to_vec(), n)).collect(),
                    i.target_counts().into_iter().map(|(d, n)| (d.to_vec(), n)).collect(),
                    i.marked_counts(),
                    i.check_monomorphism(i.target.max_degree()),
                    i.truncation,
                ),
                Generator::Simplicial(i) => (
                    "simplicial",
                    i.source_counts().into_iter().map(|(d, n)| (d.to_vec(), n)).collect(),
                    i.target_counts().into_iter().map(|(d, n)| (d.to_vec(), n)).collect(),
                    i.marked_counts(),
                    i.check_monomorphism(i.target.max_degree()),
                    i.truncation,
                ),
            };
            out.insert("kind".into(), json!(kind));
            out.insert("source".into(), counts(src));
            out.insert("target".into(), counts(tgt));
            out.insert("marked".into(), json!({ "source": marks.0, "target": marks.1 }));
            out.insert("monomorphism".into(), json!(mono.unwrap_or(false)));
            out.insert("truncation".into(), json!(trunc));
        }
        CommandKind::Homology { object, upto } => {
            let h = match ws.eval(object, ctx)? {
                Value::Table(t) => table_homology(&t, *upto, object)?,
                Value::Sset { set, .. } | Value::Marked { set: MarkedSimplicialSet { underlying: set, .. }, .. } => {
                    homology_json(&homology(&set, upto.unwrap_or(set.max_degree()[0])))
                }
                v => return Err(at(object, format!("homology of a {} is not defined here", v.kind_name()))),
            };
            out = merge(out, h);
        }
        CommandKind::Pi1 { object, at: base } => {
            let x = match ws.eval(object, ctx)? {
                Value::Table(t) if t.bounds()[0] < 2 => return Err(at(object, "pi1 of a table needs bound at least 2")),
                Value::Table(t) => table_to_marked(&t).underlying,
                Value::Sset { set, .. } => set,
                Value::Marked { set, .. } => set.underlying,
                v => return Err(at(object, format!("pi1 of a {} is not defined here", v.kind_name()))),
            };
            out = merge(out, pi1_json(&x, base.as_ref(), object)?);
        }
        CommandKind::Contractible { object } => {
            let r = match ws.eval(object, ctx)? {
                Value::Table(t) => contractibility_table(&t),
                Value::Sset { set, .. } => contractibility(&set),
                Value::Marked { set, .. } => contractibility(&set.underlying),
                v => return Err(at(object, format!("contractibility of a {} is not defined here", v.kind_name()))),
            };
            out.insert("status".into(), json!(status_name(r.status)));
            out.insert("reason".into(), json!(r.reason));
        }
        CommandKind::Counts { object, upto } => match ws.eval(object, ctx)? {
            Value::Sset { set, .. } => {
                out.insert("nondegenerate".into(), json!(nondegenerate_counts(&set)));
                out.insert("simplices".into(), json!(simplex_counts(&set, upto.unwrap_or(set.max_degree()[0]))));
            }
            Value::Marked { set, .. } => {
                out.insert("nondegenerate".into(), json!(nondegenerate_counts(&set.underlying)));
                let top = upto.unwrap_or(set.underlying.max_degree()[0]);
                out.insert("simplices".into(), json!(simplex_counts(&set.underlying, top)));
                out.insert("marked_edges".into(), json!(set.marked_edge_count()));
            }
            Value::Table(t) => {
                out.insert("counts".into(), level_counts(&t));
            }
            Value::Bi(b) => {
                let t = b.tabulate(ctx.bounds).map_err(lib(object))?;
                out.insert("bidegrees".into(), to_json(&bidegree_counts(t.table())));
            }
            Value::Cat(cat) => {
                out.remove("bounds");
                out.insert("objects".into(), json!(cat.object_count()));
                out.insert("arrows".into(), json!(cat.arrow_count()));
            }
            Value::Rel(r) => {
                out.remove("bounds");
                out.insert("objects".into(), json!(r.base.object_count()));
                out.insert("arrows".into(), json!(r.base.arrow_count()));
                out.insert("weak".into(), json!(r.weak.iter().filter(|&&b| b).count()));
            }
        },
        CommandKind::Hom { source, target } => {
            out.remove("bounds");
            let n = match (ws.eval(source, ctx)?, ws.eval(target, ctx)?) {
                (Value::Sset { set: a, .. }, Value::Sset { set: b, .. }) => count_maps(&a, &b),
                _ => {
                    let (a, _) = marked_operand(ws, source, ctx)?;
                    let (b, _) = marked_operand(ws, target, ctx)?;
                    count_marked_maps(&a, &b)
                }
            };
            out.insert("maps".into(), json!(n));
        }
        CommandKind::Constant { object, upto } => {
            let t = ws.bi(object, ctx)?.tabulate(ctx.bounds).map_err(lib(object))?;
            let n = upto.unwrap_or(ctx.bounds[1]);
            let checks = categorically_constant_check(t.table(), n).map_err(lib(object))?;
            let status = if checks.iter().any(|v| v.status == Status::Fails) {
                Status::Fails
            } else if checks.iter().all(|v| v.status == Status::Holds) {
                Status::Holds
            } else {
                Status::Unknown
            };
            out.insert("status".into(), json!(status_name(status)));
            out.insert("checks".into(), to_json(&checks));
        }
        CommandKind::Compare { left, right } => {
            let equal = match (ws.eval(left, ctx)?, ws.eval(right, ctx)?) {
                (Value::Bi(a), Value::Bi(b)) => {
                    let ta = a.tabulate(ctx.bounds).map_err(lib(left))?;
                    let tb = b.tabulate(ctx.bounds).map_err(lib(right))?;
                    tables_equal(ta.table(), tb.table())
                }
                (a, b) => {
                    let ta = as_table(a, left, ctx)?;
                    let tb = as_table(b, right, ctx)?;
                    tables_equal(&ta, &tb)
                }
            };
            out.insert("equal".into(), json!(equal));
            out.insert("status".into(), json!(if equal { "holds" } else { "fails" }));
        }
    }
    Ok(out)
}

/// One-directional values as tables at the horizontal bound.
fn as_table(v: Value, e: &Expr, ctx: Ctx) -> Result<Arc<Table<1>>, EvalError> {
    let top = ctx.bounds[0];
    match v {
        Value::Table(t) => Ok(t),
        Value::Sset { set, .. } => Ok(Arc::new(MarkedSimplicialSet::flat(set).tabulate(top))),
        Value::Marked { set, .. } => Ok(Arc::new(set.tabulate(top))),
        v => Err(at(e, format!("cannot compare a {}", v.kind_name()))),
    }
}

fn marked_operand(ws: &Workspace, e: &Expr, ctx: Ctx) -> Result<(MarkedSimplicialSet, Option<usize>), EvalError> {
    match ws.eval(e, ctx)? {
        Value::Sset { set, nerve } => Ok((MarkedSimplicialSet::flat(set), nerve)),
        Value::Marked { set, nerve } => Ok((set, nerve)),
        Value::Table(t) => Ok((table_to_marked(&t), None)),
        v => Err(at(e, format!("expected a marked simplicial set, got a {}", v.kind_name()))),
    }
}

/// Operands of verdict commands: `classify(X)` or `X` itself.
fn classify_operand(ws: &Workspace, e: &Expr, ctx: Ctx) -> Result<(MarkedSimplicialSet, Option<usize>), EvalError> {
    match ws.eval(e, ctx)? {
        Value::Bi(Bi::Classify { set, nerve }) => Ok((set, nerve)),
        Value::Bi(_) => Err(at(e, "verdicts need classification diagrams of marked simplicial sets")),
        _ => marked_operand(ws, e, ctx),
    }
}

fn simplicial_lift(
    ws: &Workspace,
    object: &Expr,
    i: &Inclusion<1>,
    ctx: Ctx,
) -> Result<msset::anodyne::LiftVerdict, EvalError> {
    let (x, _) = marked_operand(ws, object, ctx)?;
    let top = i.target.max_degree()[0].max(x.underlying.max_degree()[0]);
    let t = x.tabulate(top);
    let (y, f) = to_terminal(&t);
    Ok(has_rlp(&t, &y, &f, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::parse;

    fn run_text(text: &str) -> Outcome {
        run(&parse(text, Ctx::default()).unwrap(), Ctx::default()).unwrap()
    }

    #[test]
    fn classify_reports_counts() {
        let o = run_text("classify sharp(simplex(1)) bound 3 3");
        let rows = o.results[0]["bidegrees"].as_array().unwrap();
        let r11 = rows.iter().find(|r| r["n"] == 1 && r["m"] == 1).unwrap();
        assert_eq!(r11["count"], 6);
        assert!(!o.failed);
    }

    #[test]
    fn column_homology() {
        let o = run_text("column classify(sharp(simplex(1))) 1 | homology upto 2");
        assert_eq!(o.results[0]["ranks"], json!([1, 0, 0]));
    }

    #[test]
    fn horn_lifting_on_a_nerve() {
        let o = run_text("lift nerve(chain(1)) against horn(2,1) in simplex(2)\nlift boundary(2) against horn(2,1) in simplex(2)");
        assert_eq!(o.results[0]["status"], "holds");
        assert_eq!(o.results[0]["lift"]["min_lifts"], 1);
        assert_eq!(o.results[0]["lift"]["max_lifts"], 1);
        assert_eq!(o.results[1]["status"], "fails");
        assert!(o.failed);
    }

    #[test]
    fn expectations_decide_failure() {
        let o = run_text("lift boundary(2) against horn(2,1) in simplex(2) expect fails");
        assert!(!o.failed);
        let o = run_text("contractible simplex(3) expect fails");
        assert!(o.failed);
        assert!(run(&parse("counts simplex(1) expect holds", Ctx::default()).unwrap(), Ctx::default()).is_err());
    }

    #[test]
    fn negative_control_verdict() {
        let o = run_text("column-verdict classify(flat(simplex(1))) -> classify(flat(simplex(0))) 1");
        assert_eq!(o.results[0]["status"], "not_equivalent");
        assert!(o.failed);
    }

    #[test]
    fn triangle_identities() {
        let o = run_text("msset X = mark(boundary(2), [01])\ncompare i1(p1(X)) X\ncompare diag(p1(X)) X");
        assert_eq!(o.results[0]["equal"], true);
        assert_eq!(o.results[1]["equal"], true);
    }

    #[test]
    fn bisimplicial_generators_against_groupoid() {
        let o = run_text("lift classify(natural(nerve(indiscrete(2)))) against gen mbe_D m=1 d=3\ngen mbe_A n=1 m=1 k=0");
        assert_eq!(o.results[0]["status"], "holds");
        assert_eq!(o.results[0]["lift"]["exact"], true);
        assert_eq!(o.results[1]["monomorphism"], true);
    }
}
