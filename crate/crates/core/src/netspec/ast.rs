use crate::rational::Prob;
use crate::state::Side;

/// A 1-based source position.
///
/// Positions never take part in equality, so a declaration list compares
/// equal to its rendered-and-reparsed copy.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn new(line: usize, column: usize) -> Self {
        Pos { line, column }
    }
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name {
            text: text.into(),
            pos: Pos::default(),
        }
    }
}

/// An element reference: `d`, or `(b, e)` for a product element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Key {
    Simple(String),
    Pair(String, String),
}

impl Key {
    /// The element name in its space, `b,e` for pairs.
    pub fn element(&self) -> String {
        match self {
            Key::Simple(s) => s.clone(),
            Key::Pair(l, r) => format!("{l},{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry<V> {
    pub key: Key,
    pub value: V,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceBody {
    Elements(Vec<String>),
    Product(Name, Name),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Space {
        name: Name,
        body: SpaceBody,
    },
    State {
        name: Name,
        space: Name,
        weights: Vec<Entry<Prob>>,
    },
    Predicate {
        name: Name,
        space: Name,
        values: Vec<Entry<Prob>>,
    },
    Channel {
        name: Name,
        domain: Name,
        codomain: Name,
        rows: Vec<Entry<Vec<Entry<Prob>>>>,
    },
    Function {
        name: Name,
        domain: Name,
        codomain: Name,
        mapping: Vec<Entry<Key>>,
    },
    Query {
        name: Name,
        expr: QueryExpr,
    },
}

impl Declaration {
    pub fn name(&self) -> &Name {
        match self {
            Declaration::Space { name, .. }
            | Declaration::State { name, .. }
            | Declaration::Predicate { name, .. }
            | Declaration::Channel { name, .. }
            | Declaration::Function { name, .. }
            | Declaration::Query { name, .. } => name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Declaration::Space { .. } => "space",
            Declaration::State { .. } => "state",
            Declaration::Predicate { .. } => "predicate",
            Declaration::Channel { .. } => "channel",
            Declaration::Function { .. } => "function",
            Declaration::Query { .. } => "query",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryExpr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventLit {
    pub keys: Vec<Key>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Number {
    pub value: Prob,
    pub pos: Pos,
}

type E = Box<QueryExpr>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Ref(String),
    Transform(E, E),
    PredTransform(E, E),
    Validity(E, E),
    Condition(E, E),
    Compose(E, E),
    Dagger(E, E),
    Pearl(E, E, E),
    Jeffrey(E, E, E),
    Product(E, E),
    Marginal(E, Side),
    Atc(E, EventLit, Number),
    Nec(E, EventLit, Number),
    Blend(Number, E, E),
}

impl ExprKind {
    pub fn op_name(&self) -> &'static str {
        match self {
            ExprKind::Ref(_) => "ref",
            ExprKind::Transform(..) => "transform",
            ExprKind::PredTransform(..) => "predtransform",
            ExprKind::Validity(..) => "validity",
            ExprKind::Condition(..) => "condition",
            ExprKind::Compose(..) => "compose",
            ExprKind::Dagger(..) => "dagger",
            ExprKind::Pearl(..) => "pearl",
            ExprKind::Jeffrey(..) => "jeffrey",
            ExprKind::Product(..) => "product",
            ExprKind::Marginal(..) => "marginal",
            ExprKind::Atc(..) => "atc",
            ExprKind::Nec(..) => "nec",
            ExprKind::Blend(..) => "blend",
        }
    }
}
