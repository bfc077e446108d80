use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::channel::Channel;
use crate::error::Error;
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::space::Space;
use crate::state::{Side, State};
use crate::update::{self, Event, Support, UpdateReport};

use super::ast::*;
use super::ParseDiagnostic;

/// A value bound to a name in a compiled network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    State(State),
    Predicate(Predicate),
    Channel(Channel),
    Scalar(Prob),
}

impl Value {
    /// Exact text: ket sums for states, `{x: v}` maps for predicates, one
    /// `x -> ket` line per row for channels.
    pub fn render(&self, show_zeros: bool) -> String {
        match self {
            Value::State(s) => s.render(show_zeros),
            Value::Predicate(p) => p.render(),
            Value::Channel(c) => c
                .domain()
                .elements()
                .iter()
                .zip(c.rows())
                .map(|(x, row)| format!("{x} -> {}", row.render(show_zeros)))
                .collect::<Vec<_>>()
                .join("\n"),
            Value::Scalar(v) => rational::fraction(v),
        }
    }

    pub fn render_decimal(&self, digits: usize, show_zeros: bool) -> String {
        match self {
            Value::State(s) => s.render_decimal(digits, show_zeros),
            Value::Predicate(p) => p.render_decimal(digits),
            Value::Channel(c) => c
                .domain()
                .elements()
                .iter()
                .zip(c.rows())
                .map(|(x, row)| format!("{x} -> {}", row.render_decimal(digits, show_zeros)))
                .collect::<Vec<_>>()
                .join("\n"),
            Value::Scalar(v) => rational::decimal(v, digits),
        }
    }

    pub fn ty(&self) -> Ty {
        match self {
            Value::State(s) => Ty::State(s.space().clone()),
            Value::Predicate(p) => Ty::Predicate(p.space().clone()),
            Value::Channel(c) => Ty::Channel(c.domain().clone(), c.codomain().clone()),
            Value::Scalar(_) => Ty::Scalar,
        }
    }
}

/// Static type of an expression: its kind together with its spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ty {
    State(Space),
    Predicate(Space),
    Channel(Space, Space),
    Scalar,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::State(s) => write!(f, "state on {s}"),
            Ty::Predicate(s) => write!(f, "predicate on {s}"),
            Ty::Channel(a, b) => write!(f, "channel {a} -> {b}"),
            Ty::Scalar => write!(f, "scalar"),
        }
    }
}

/// A failure while checking or compiling a declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileError {
    pub pos: Pos,
    /// The declaration being compiled.
    pub name: String,
    /// For queries, the chain of operations and argument slots leading to
    /// the offending subexpression; empty otherwise.
    pub path: Vec<String>,
    pub message: String,
    pub token: String,
}

impl CompileError {
    pub fn path_text(&self) -> String {
        self.path.join(" > ")
    }

    pub fn into_diagnostic(self) -> ParseDiagnostic {
        let message = if self.path.is_empty() {
            format!("`{}`: {}", self.name, self.message)
        } else {
            format!("query `{}` at {}: {}", self.name, self.path_text(), self.message)
        };
        ParseDiagnostic::error(self.pos, message, self.token)
    }
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.pos.line, self.pos.column)?;
        if self.path.is_empty() {
            write!(f, "`{}`: {}", self.name, self.message)
        } else {
            write!(f, "query `{}` at {}: {}", self.name, self.path_text(), self.message)
        }
    }
}

impl std::error::Error for CompileError {}

/// A failure while evaluating a query that passed the static check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub query: String,
    pub path: Vec<String>,
    pub error: Error,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "query `{}`: {}", self.query, self.error)
        } else {
            write!(f, "query `{}` at {}: {}", self.query, self.path.join(" > "), self.error)
        }
    }
}

impl std::error::Error for EvalError {}

#[derive(Debug, Clone)]
enum Binding {
    Value(Value),
    Query { expr: QueryExpr, ty: Ty },
}

/// Named spaces and values produced by [`compile`]. Queries are stored
/// checked but unevaluated; [`Environment::evaluate`] runs them.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    spaces: HashMap<String, Space>,
    space_order: Vec<String>,
    bindings: Vec<(String, Binding)>,
    index: HashMap<String, usize>,
}

impl Environment {
    pub fn space(&self, name: &str) -> Option<&Space> {
        self.spaces.get(name)
    }

    pub fn space_names(&self) -> &[String] {
        &self.space_order
    }

    /// Value and query names in declaration order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.iter().map(|(n, _)| n.as_str())
    }

    pub fn query_names(&self) -> impl Iterator<Item = &str> {
        self.bindings
            .iter()
            .filter(|(_, b)| matches!(b, Binding::Query { .. }))
            .map(|(n, _)| n.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn ty(&self, name: &str) -> Option<Ty> {
        self.binding(name).map(|b| match b {
            Binding::Value(v) => v.ty(),
            Binding::Query { ty, .. } => ty.clone(),
        })
    }

    fn binding(&self, name: &str) -> Option<&Binding> {
        self.index.get(name).map(|&i| &self.bindings[i].1)
    }

    pub fn state(&self, name: &str) -> Result<State, EvalError> {
        match self.evaluate(name)? {
            Value::State(s) => Ok(s),
            other => Err(self.kind_error(name, "state", &other)),
        }
    }

    pub fn channel(&self, name: &str) -> Result<Channel, EvalError> {
        match self.evaluate(name)? {
            Value::Channel(c) => Ok(c),
            other => Err(self.kind_error(name, "channel", &other)),
        }
    }

    fn kind_error(&self, name: &str, want: &str, got: &Value) -> EvalError {
        EvalError {
            query: name.to_string(),
            path: Vec::new(),
            error: Error::SpaceMismatch {
                expected: want.to_string(),
                found: got.ty().to_string(),
            },
        }
    }

    /// Looks up a declared value or evaluates a query.
    pub fn evaluate(&self, name: &str) -> Result<Value, EvalError> {
        match self.binding(name) {
            None => Err(EvalError {
                query: name.to_string(),
                path: Vec::new(),
                error: Error::UnknownElement {
                    space: "declarations".into(),
                    element: name.to_string(),
                },
            }),
            Some(Binding::Value(v)) => Ok(v.clone()),
            Some(Binding::Query { expr, .. }) => {
                let mut path = Vec::new();
                self.eval_expr(expr, &mut path).map_err(|error| EvalError {
                    query: name.to_string(),
                    path,
                    error,
                })
            }
        }
    }

    /// For a query whose outermost operation is an update rule, the
    /// step-by-step report of that update. `None` for other queries.
    pub fn explain(&self, name: &str) -> Result<Option<UpdateReport>, EvalError> {
        let Some(Binding::Query { expr, .. }) = self.binding(name) else {
            return Ok(None);
        };
        let mut path = Vec::new();
        let wrap = |error, path: Vec<String>| EvalError {
            query: name.to_string(),
            path,
            error,
        };
        let arg = |e: &QueryExpr, slot: usize, path: &mut Vec<String>| -> Result<Value, Error> {
            path.push(format!("{} arg {}", expr.kind.op_name(), slot));
            let v = self.eval_expr(e, path)?;
            path.pop();
            Ok(v)
        };
        let result = (|| -> Result<Option<UpdateReport>, Error> {
            Ok(Some(match &expr.kind {
                ExprKind::Pearl(s, c, q) => {
                    let (s, c, q) = (arg(s, 1, &mut path)?, arg(c, 2, &mut path)?, arg(q, 3, &mut path)?);
                    update::explain_pearl(as_state(&s), as_channel(&c), as_predicate(&q))?
                }
                ExprKind::Jeffrey(s, c, r) => {
                    let (s, c, r) = (arg(s, 1, &mut path)?, arg(c, 2, &mut path)?, arg(r, 3, &mut path)?);
                    update::explain_jeffrey(as_state(&s), as_channel(&c), as_state(&r), Support::Strict)?
                }
                ExprKind::Atc(s, ev, q) => {
                    let s = arg(s, 1, &mut path)?;
                    let s = as_state(&s);
                    update::explain_atc(s, &event_of(s.space(), ev)?, &q.value)?
                }
                ExprKind::Nec(s, ev, k) => {
                    let s = arg(s, 1, &mut path)?;
                    let s = as_state(&s);
                    update::explain_nec(s, &event_of(s.space(), ev)?, &k.value)?
                }
                ExprKind::Blend(w, a, b) => {
                    let (a, b) = (arg(a, 2, &mut path)?, arg(b, 3, &mut path)?);
                    update::explain_blend(&w.value, as_state(&a), as_state(&b))?
                }
                _ => return Ok(None),
            }))
        })();
        result.map_err(|e| wrap(e, path))
    }

    fn eval_expr(&self, expr: &QueryExpr, path: &mut Vec<String>) -> Result<Value, Error> {
        let op = expr.kind.op_name();
        let arg = |e: &QueryExpr, slot: usize, path: &mut Vec<String>| -> Result<Value, Error> {
            path.push(format!("{op} arg {slot}"));
            let v = self.eval_expr(e, path)?;
            path.pop();
            Ok(v)
        };
        Ok(match &expr.kind {
            ExprKind::Ref(name) => match self.binding(name) {
                Some(Binding::Value(v)) => v.clone(),
                Some(Binding::Query { expr, .. }) => {
                    path.push(format!("`{name}`"));
                    let v = self.eval_expr(expr, path)?;
                    path.pop();
                    v
                }
                None => {
                    return Err(Error::UnknownElement {
                        space: "declarations".into(),
                        element: name.clone(),
                    })
                }
            },
            ExprKind::Transform(c, s) => {
                let (c, s) = (arg(c, 1, path)?, arg(s, 2, path)?);
                Value::State(as_channel(&c).transform_state(as_state(&s))?)
            }
            ExprKind::PredTransform(c, q) => {
                let (c, q) = (arg(c, 1, path)?, arg(q, 2, path)?);
                Value::Predicate(as_channel(&c).transform_predicate(as_predicate(&q))?)
            }
            ExprKind::Validity(s, p) => {
                let (s, p) = (arg(s, 1, path)?, arg(p, 2, path)?);
                Value::Scalar(as_state(&s).validity(as_predicate(&p))?)
            }
            ExprKind::Condition(s, p) => {
                let (s, p) = (arg(s, 1, path)?, arg(p, 2, path)?);
                Value::State(as_state(&s).condition(as_predicate(&p))?)
            }
            ExprKind::Compose(d, c) => {
                let (d, c) = (arg(d, 1, path)?, arg(c, 2, path)?);
                Value::Channel(as_channel(&d).after(as_channel(&c))?)
            }
            ExprKind::Dagger(c, s) => {
                let (c, s) = (arg(c, 1, path)?, arg(s, 2, path)?);
                Value::Channel(update::dagger(as_channel(&c), as_state(&s))?)
            }
            ExprKind::Pearl(s, c, q) => {
                let (s, c, q) = (arg(s, 1, path)?, arg(c, 2, path)?, arg(q, 3, path)?);
                Value::State(update::pearl_update(as_state(&s), as_channel(&c), as_predicate(&q))?)
            }
            ExprKind::Jeffrey(s, c, r) => {
                let (s, c, r) = (arg(s, 1, path)?, arg(c, 2, path)?, arg(r, 3, path)?);
                Value::State(update::jeffrey_update(as_state(&s), as_channel(&c), as_state(&r))?)
            }
            ExprKind::Product(a, b) => {
                let (a, b) = (arg(a, 1, path)?, arg(b, 2, path)?);
                Value::State(as_state(&a).product(as_state(&b)))
            }
            ExprKind::Marginal(s, side) => {
                let s = arg(s, 1, path)?;
                Value::State(as_state(&s).marginal(*side)?)
            }
            ExprKind::Atc(s, ev, q) => {
                let s = arg(s, 1, path)?;
                let s = as_state(&s);
                Value::State(update::atc_update(s, &event_of(s.space(), ev)?, &q.value)?)
            }
            ExprKind::Nec(s, ev, k) => {
                let s = arg(s, 1, path)?;
                let s = as_state(&s);
                Value::State(update::nec_update(s, &event_of(s.space(), ev)?, &k.value)?)
            }
            ExprKind::Blend(w, a, b) => {
                let (a, b) = (arg(a, 2, path)?, arg(b, 3, path)?);
                Value::State(update::blend_update(&w.value, as_state(&a), as_state(&b))?)
            }
        })
    }
}

// The static check guarantees argument kinds, so these cannot fail on a
// checked expression.
fn as_state(v: &Value) -> &State {
    match v {
        Value::State(s) => s,
        other => unreachable!("checked expression produced {:?}", other.ty()),
    }
}

fn as_channel(v: &Value) -> &Channel {
    match v {
        Value::Channel(c) => c,
        other => unreachable!("checked expression produced {:?}", other.ty()),
    }
}

fn as_predicate(v: &Value) -> &Predicate {
    match v {
        Value::Predicate(p) => p,
        other => unreachable!("checked expression produced {:?}", other.ty()),
    }
}

fn event_of(space: &Space, lit: &EventLit) -> Result<Event, Error> {
    Event::new(space, lit.keys.iter().map(Key::element))
}

/// Compiles declarations into an environment, stopping at the first error.
pub fn compile(decls: &[Declaration]) -> Result<Environment, CompileError> {
    let mut compiler = Compiler::default();
    for decl in decls {
        compiler.declaration(decl)?;
    }
    Ok(compiler.env)
}

/// Compiles every declaration that can be compiled and reports all errors.
pub(crate) fn check_all(decls: &[Declaration]) -> Vec<CompileError> {
    let mut compiler = Compiler::default();
    decls
        .iter()
        .filter_map(|d| compiler.declaration(d).err())
        .collect()
}

#[derive(Default)]
struct Compiler {
    env: Environment,
}

impl Compiler {
    fn declaration(&mut self, decl: &Declaration) -> Result<(), CompileError> {
        let name = decl.name();
        let fail = |pos: Pos, message: String, token: &str| CompileError {
            pos,
            name: name.text.clone(),
            path: Vec::new(),
            message,
            token: token.to_string(),
        };
        if let Declaration::Space { body, .. } = decl {
            if self.env.spaces.contains_key(&name.text) {
                return Err(fail(name.pos, "space is already declared".into(), &name.text));
            }
            let space = match body {
                SpaceBody::Elements(elements) => Space::new(name.text.clone(), elements.iter().cloned())
                    .map_err(|e| fail(name.pos, e.to_string(), &name.text))?,
                SpaceBody::Product(l, r) => {
                    let l = self.lookup_space(name, l)?;
                    let r = self.lookup_space(name, r)?;
                    Space::product(&l, &r)
                }
            };
            self.env.space_order.push(name.text.clone());
            self.env.spaces.insert(name.text.clone(), space);
            return Ok(());
        }
        if self.env.index.contains_key(&name.text) {
            return Err(fail(
                name.pos,
                format!("name is already declared (redeclared as {})", decl.keyword()),
                &name.text,
            ));
        }
        let binding = match decl {
            Declaration::Space { .. } => unreachable!(),
            Declaration::State { space, weights, .. } => {
                let space = self.lookup_space(name, space)?;
                let weights = entry_vector(name, &space, weights)?;
                let state = State::from_weights(&space, weights).map_err(|e| fail(name.pos, e.to_string(), &name.text))?;
                Binding::Value(Value::State(state))
            }
            Declaration::Predicate { space, values, .. } => {
                let space = self.lookup_space(name, space)?;
                let values = entry_vector(name, &space, values)?;
                let p = Predicate::from_values(&space, values).map_err(|e| fail(name.pos, e.to_string(), &name.text))?;
                Binding::Value(Value::Predicate(p))
            }
            Declaration::Channel { domain, codomain, rows, .. } => {
                let domain = self.lookup_space(name, domain)?;
                let codomain = self.lookup_space(name, codomain)?;
                let mut states = Vec::with_capacity(rows.len());
                for row in rows {
                    let element = row.key.element();
                    let weights = entry_vector(name, &codomain, &row.value)?;
                    let state = State::from_weights(&codomain, weights)
                        .map_err(|e| fail(row.pos, format!("row `{element}`: {e}"), &element))?;
                    states.push((element, row.pos, state));
                }
                check_keys(name, &domain, states.iter().map(|(e, p, _)| (e.clone(), *p)))?;
                let channel = Channel::from_rows(&domain, &codomain, states.into_iter().map(|(e, _, s)| (e, s)))
                    .map_err(|e| fail(name.pos, e.to_string(), &name.text))?;
                Binding::Value(Value::Channel(channel))
            }
            Declaration::Function { domain, codomain, mapping, .. } => {
                let domain = self.lookup_space(name, domain)?;
                let codomain = self.lookup_space(name, codomain)?;
                check_keys(name, &domain, mapping.iter().map(|m| (m.key.element(), m.pos)))?;
                for m in mapping {
                    let target = m.value.element();
                    if !codomain.contains(&target) {
                        return Err(fail(
                            m.pos,
                            format!("`{target}` is not in space `{codomain}`"),
                            &target,
                        ));
                    }
                }
                let channel = Channel::lift(
                    &domain,
                    &codomain,
                    mapping.iter().map(|m| (m.key.element(), m.value.element())),
                )
                .map_err(|e| fail(name.pos, e.to_string(), &name.text))?;
                Binding::Value(Value::Channel(channel))
            }
            Declaration::Query { expr, .. } => {
                let mut path = Vec::new();
                let ty = self.check(expr, &mut path).map_err(|(pos, message, token)| CompileError {
                    pos,
                    name: name.text.clone(),
                    path: path.clone(),
                    message,
                    token,
                })?;
                Binding::Query { expr: expr.clone(), ty }
            }
        };
        self.env.index.insert(name.text.clone(), self.env.bindings.len());
        self.env.bindings.push((name.text.clone(), binding));
        Ok(())
    }

    fn lookup_space(&self, owner: &Name, name: &Name) -> Result<Space, CompileError> {
        self.env.spaces.get(&name.text).cloned().ok_or_else(|| CompileError {
            pos: name.pos,
            name: owner.text.clone(),
            path: Vec::new(),
            message: format!("unknown space `{}`", name.text),
            token: name.text.clone(),
        })
    }

    /// Static check: the type of `expr`, or the position, message and token
    /// of the first problem. On error `path` leads to the offending node.
    fn check(&self, expr: &QueryExpr, path: &mut Vec<String>) -> Result<Ty, (Pos, String, String)> {
        let op = expr.kind.op_name();
        let arg = |e: &QueryExpr, slot: usize, path: &mut Vec<String>| {
            path.push(format!("{op} arg {slot}"));
            let ty = self.check(e, path)?;
            path.pop();
            Ok::<_, (Pos, String, String)>((ty, e.pos))
        };
        let mismatch = |pos: Pos, expected: String, found: &Ty| {
            (pos, format!("space mismatch: expected {expected}, found {found}"), found.to_string())
        };
        let want_state = |(ty, pos): (Ty, Pos), path: &mut Vec<String>, slot: usize| match ty {
            Ty::State(s) => Ok(s),
            other => {
                path.push(format!("{op} arg {slot}"));
                Err(mismatch(pos, "a state".into(), &other))
            }
        };
        let want_predicate = |(ty, pos): (Ty, Pos), path: &mut Vec<String>, slot: usize| match ty {
            Ty::Predicate(s) => Ok(s),
            other => {
                path.push(format!("{op} arg {slot}"));
                Err(mismatch(pos, "a predicate".into(), &other))
            }
        };
        let want_channel = |(ty, pos): (Ty, Pos), path: &mut Vec<String>, slot: usize| match ty {
            Ty::Channel(a, b) => Ok((a, b)),
            other => {
                path.push(format!("{op} arg {slot}"));
                Err(mismatch(pos, "a channel".into(), &other))
            }
        };
        let same = |expected: &Space, found: &Space, pos: Pos, path: &mut Vec<String>, slot: usize, what: &str| {
            if expected == found {
                Ok(())
            } else {
                path.push(format!("{op} arg {slot}"));
                Err((
                    pos,
                    format!("space mismatch: expected {what} on `{expected}`, found `{found}`"),
                    found.name().to_string(),
                ))
            }
        };
        Ok(match &expr.kind {
            ExprKind::Ref(name) => match self.env.binding(name) {
                Some(Binding::Value(v)) => v.ty(),
                Some(Binding::Query { ty, .. }) => ty.clone(),
                None => {
                    return Err((expr.pos, format!("unknown name `{name}`"), name.clone()));
                }
            },
            ExprKind::Transform(c, s) => {
                let (x, y) = want_channel(arg(c, 1, path)?, path, 1)?;
                let sp = arg(s, 2, path)?;
                let pos = sp.1;
                let sx = want_state(sp, path, 2)?;
                same(&x, &sx, pos, path, 2, "a state")?;
                Ty::State(y)
            }
            ExprKind::PredTransform(c, q) => {
                let (x, y) = want_channel(arg(c, 1, path)?, path, 1)?;
                let qp = arg(q, 2, path)?;
                let pos = qp.1;
                let qy = want_predicate(qp, path, 2)?;
                same(&y, &qy, pos, path, 2, "a predicate")?;
                Ty::Predicate(x)
            }
            ExprKind::Validity(s, p) | ExprKind::Condition(s, p) => {
                let sx = want_state(arg(s, 1, path)?, path, 1)?;
                let pp = arg(p, 2, path)?;
                let pos = pp.1;
                let px = want_predicate(pp, path, 2)?;
                same(&sx, &px, pos, path, 2, "a predicate")?;
                if matches!(expr.kind, ExprKind::Validity(..)) {
                    Ty::Scalar
                } else {
                    Ty::State(sx)
                }
            }
            ExprKind::Compose(d, c) => {
                let (y, z) = want_channel(arg(d, 1, path)?, path, 1)?;
                let cp = arg(c, 2, path)?;
                let pos = cp.1;
                let (x, y2) = want_channel(cp, path, 2)?;
                same(&y, &y2, pos, path, 2, "a channel into the first channel's domain")?;
                Ty::Channel(x, z)
            }
            ExprKind::Dagger(c, s) => {
                let (x, y) = want_channel(arg(c, 1, path)?, path, 1)?;
                let sp = arg(s, 2, path)?;
                let pos = sp.1;
                let sx = want_state(sp, path, 2)?;
                same(&x, &sx, pos, path, 2, "a state")?;
                Ty::Channel(y, x)
            }
            ExprKind::Pearl(s, c, e) | ExprKind::Jeffrey(s, c, e) => {
                let sx = want_state(arg(s, 1, path)?, path, 1)?;
                let cp = arg(c, 2, path)?;
                let cpos = cp.1;
                let (x, y) = want_channel(cp, path, 2)?;
                same(&x, &sx, cpos, path, 2, "a channel")?;
                let ep = arg(e, 3, path)?;
                let epos = ep.1;
                let ey = if matches!(expr.kind, ExprKind::Pearl(..)) {
                    want_predicate(ep, path, 3)?
                } else {
                    want_state(ep, path, 3)?
                };
                same(&y, &ey, epos, path, 3, "evidence")?;
                Ty::State(sx)
            }
            ExprKind::Product(a, b) => {
                let a = want_state(arg(a, 1, path)?, path, 1)?;
                let b = want_state(arg(b, 2, path)?, path, 2)?;
                Ty::State(Space::product(&a, &b))
            }
            ExprKind::Marginal(s, side) => {
                let sp = arg(s, 1, path)?;
                let pos = sp.1;
                let sx = want_state(sp, path, 1)?;
                match sx.factors() {
                    Some((l, r)) => Ty::State(if *side == Side::First { l.clone() } else { r.clone() }),
                    None => {
                        path.push(format!("{op} arg 1"));
                        return Err((pos, Error::NotAProductSpace(sx.name().to_string()).to_string(), sx.name().to_string()));
                    }
                }
            }
            ExprKind::Atc(s, ev, n) | ExprKind::Nec(s, ev, n) => {
                let sx = want_state(arg(s, 1, path)?, path, 1)?;
                if let Err(e) = event_of(&sx, ev) {
                    path.push(format!("{op} arg 2"));
                    return Err((ev.pos, e.to_string(), "{".into()));
                }
                let is_atc = matches!(expr.kind, ExprKind::Atc(..));
                let ok = if is_atc {
                    rational::in_unit_interval(&n.value)
                } else {
                    !n.value.is_zero()
                };
                if !ok {
                    path.push(format!("{op} arg 3"));
                    let msg = if is_atc {
                        "strength must lie in [0, 1]"
                    } else {
                        "Bayes factor must be positive"
                    };
                    return Err((n.pos, msg.into(), rational::fraction(&n.value)));
                }
                Ty::State(sx)
            }
            ExprKind::Blend(w, a, b) => {
                if !rational::in_unit_interval(&w.value) {
                    path.push(format!("{op} arg 1"));
                    return Err((w.pos, "blend weight must lie in [0, 1]".into(), rational::fraction(&w.value)));
                }
                let a = want_state(arg(a, 2, path)?, path, 2)?;
                let bp = arg(b, 3, path)?;
                let pos = bp.1;
                let b = want_state(bp, path, 3)?;
                same(&a, &b, pos, path, 3, "a state")?;
                Ty::State(a)
            }
        })
    }
}

fn entry_vector(owner: &Name, space: &Space, entries: &[Entry<Prob>]) -> Result<Vec<Prob>, CompileError> {
    let mut values = vec![Prob::zero(); space.len()];
    check_keys_partial(owner, space, entries.iter().map(|e| (e.key.element(), e.pos)))?;
    for e in entries {
        let i = space.index_of(&e.key.element()).expect("checked above");
        if !rational::in_unit_interval(&e.value) {
            return Err(CompileError {
                pos: e.pos,
                name: owner.text.clone(),
                path: Vec::new(),
                message: format!("value {} is outside [0, 1]", rational::fraction(&e.value)),
                token: e.key.element(),
            });
        }
        values[i] = e.value.clone();
    }
    Ok(values)
}

/// Every key names an element of `space`, with no repeats.
fn check_keys_partial(
    owner: &Name,
    space: &Space,
    keys: impl Iterator<Item = (String, Pos)>,
) -> Result<Vec<bool>, CompileError> {
    let mut seen = vec![false; space.len()];
    for (key, pos) in keys {
        let err = |message: String| CompileError {
            pos,
            name: owner.text.clone(),
            path: Vec::new(),
            message,
            token: key.clone(),
        };
        let i = space
            .index_of(&key)
            .map_err(|_| err(format!("`{key}` is not in space `{space}`")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(err(format!("`{key}` is listed more than once")));
        }
    }
    Ok(seen)
}

/// Like [`check_keys_partial`], and additionally every element is covered.
fn check_keys(owner: &Name, space: &Space, keys: impl Iterator<Item = (String, Pos)>) -> Result<(), CompileError> {
    let seen = check_keys_partial(owner, space, keys)?;
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(CompileError {
            pos: owner.pos,
            name: owner.text.clone(),
            path: Vec::new(),
            message: format!("no entry for `{}` of space `{space}`", space.element(i)),
            token: owner.text.clone(),
        });
    }
    Ok(())
}

