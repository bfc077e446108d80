use std::fmt::Write;

use crate::rational::{fraction, Prob};
use crate::state::Side;

use super::ast::*;

/// Canonical source text for `decls`; parsing it gives back equal
/// declarations.
pub fn render(decls: &[Declaration]) -> String {
    let mut out = String::new();
    for d in decls {
        out.push_str(&declaration(d));
        out.push('\n');
    }
    out
}

fn declaration(d: &Declaration) -> String {
    match d {
        Declaration::Space { name, body } => match body {
            SpaceBody::Elements(es) => format!("space {} = {{{}}}", name.text, es.join(", ")),
            SpaceBody::Product(l, r) => format!("space {} = {} * {}", name.text, l.text, r.text),
        },
        Declaration::State { name, space, weights } => {
            format!("state {} : {} = {}", name.text, space.text, numbers(weights))
        }
        Declaration::Predicate { name, space, values } => {
            format!("predicate {} : {} = {}", name.text, space.text, numbers(values))
        }
        Declaration::Channel { name, domain, codomain, rows } => {
            let mut s = format!("channel {} : {} -> {} = {{\n", name.text, domain.text, codomain.text);
            for row in rows {
                let _ = writeln!(s, "  {}: {},", key(&row.key), numbers(&row.value));
            }
            s.push('}');
            s
        }
        Declaration::Function { name, domain, codomain, mapping } => {
            let body: Vec<String> = mapping
                .iter()
                .map(|m| format!("{}: {}", key(&m.key), key(&m.value)))
                .collect();
            format!(
                "function {} : {} -> {} = {{{}}}",
                name.text,
                domain.text,
                codomain.text,
                body.join(", ")
            )
        }
        Declaration::Query { name, expr } => format!("query {} = {}", name.text, render_expr(expr)),
    }
}

fn key(k: &Key) -> String {
    match k {
        Key::Simple(s) => s.clone(),
        Key::Pair(l, r) => format!("({l}, {r})"),
    }
}

fn numbers(entries: &[Entry<Prob>]) -> String {
    let body: Vec<String> = entries
        .iter()
        .map(|e| format!("{}: {}", key(&e.key), fraction(&e.value)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

pub fn render_expr(e: &QueryExpr) -> String {
    let op = e.kind.op_name();
    let r = |x: &QueryExpr| render_expr(x);
    match &e.kind {
        ExprKind::Ref(n) => n.clone(),
        ExprKind::Transform(a, b)
        | ExprKind::PredTransform(a, b)
        | ExprKind::Validity(a, b)
        | ExprKind::Condition(a, b)
        | ExprKind::Compose(a, b)
        | ExprKind::Dagger(a, b)
        | ExprKind::Product(a, b) => format!("{op}({}, {})", r(a), r(b)),
        ExprKind::Pearl(a, b, c) | ExprKind::Jeffrey(a, b, c) => {
            format!("{op}({}, {}, {})", r(a), r(b), r(c))
        }
        ExprKind::Marginal(a, side) => {
            let side = match side {
                Side::First => "first",
                Side::Second => "second",
            };
            format!("{op}({}, {side})", r(a))
        }
        ExprKind::Atc(a, ev, n) | ExprKind::Nec(a, ev, n) => {
            let keys: Vec<String> = ev.keys.iter().map(key).collect();
            format!("{op}({}, {{{}}}, {})", r(a), keys.join(", "), fraction(&n.value))
        }
        ExprKind::Blend(n, a, b) => format!("{op}({}, {}, {})", fraction(&n.value), r(a), r(b)),
    }
}
