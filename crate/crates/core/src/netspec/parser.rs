use crate::rational::{self, Prob};
use crate::state::Side;

use super::ast::*;
use super::lexer::{Tok, Token};
use super::ParseDiagnostic;

const KEYWORDS: [&str; 6] = ["space", "state", "predicate", "channel", "function", "query"];

pub struct Parser {
    tokens: Vec<Token>,
    at: usize,
    pub diagnostics: Vec<ParseDiagnostic>,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    pub fn new(tokens: Vec<Token>) -> Self {
        Parser {
            tokens,
            at: 0,
            diagnostics: Vec::new(),
        }
    }

    pub fn declarations(&mut self) -> Vec<Declaration> {
        let mut out = Vec::new();
        while self.peek() != &Tok::Eof {
            let start = self.at;
            match self.declaration() {
                Ok(d) => out.push(d),
                Err(diag) => {
                    self.diagnostics.push(diag);
                    if self.at == start {
                        self.bump();
                    }
                    self.synchronize();
                }
            }
        }
        out
    }

    /// Skips to the next keyword that starts a line.
    fn synchronize(&mut self) {
        while self.peek() != &Tok::Eof {
            let t = self.current();
            let starts_line = self.at > 0 && self.tokens[self.at - 1].pos.line != t.pos.line;
            if let Tok::Ident(word) = &t.tok {
                if starts_line && KEYWORDS.contains(&word.as_str()) {
                    return;
                }
            }
            self.bump();
        }
    }

    fn current(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseDiagnostic {
        let t = self.current();
        ParseDiagnostic::error(t.pos, message, t.tok.describe())
    }

    fn expect(&mut self, want: Tok) -> PResult<Pos> {
        if self.peek() == &want {
            Ok(self.bump().pos)
        } else {
            Err(self.error_here(format!(
                "expected `{}`, found `{}`",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().pos;
                Ok(Name { text, pos })
            }
            other => Err(self.error_here(format!("expected {what}, found `{}`", other.describe()))),
        }
    }

    fn number(&mut self) -> PResult<Number> {
        match self.peek().clone() {
            Tok::Number(text) => {
                let t = self.current().clone();
                let value = rational::parse_literal(&text)
                    .map_err(|e| ParseDiagnostic::error(t.pos, e.to_string(), text.clone()))?;
                self.bump();
                Ok(Number { value, pos: t.pos })
            }
            other => Err(self.error_here(format!("expected a number, found `{}`", other.describe()))),
        }
    }

    fn declaration(&mut self) -> PResult<Declaration> {
        let keyword = self.ident("a declaration keyword")?;
        match keyword.text.as_str() {
            "space" => self.space_decl(),
            "state" => {
                let (name, space) = self.typed_name()?;
                let weights = self.number_map()?;
                Ok(Declaration::State { name, space, weights })
            }
            "predicate" => {
                let (name, space) = self.typed_name()?;
                let values = self.number_map()?;
                Ok(Declaration::Predicate { name, space, values })
            }
            "channel" => {
                let (name, domain, codomain) = self.arrow_header()?;
                let rows = self.braced(|p| {
                    let (key, pos) = p.key()?;
                    p.expect(Tok::Colon)?;
                    let value = p.number_map()?;
                    Ok(Entry { key, value, pos })
                })?;
                Ok(Declaration::Channel { name, domain, codomain, rows })
            }
            "function" => {
                let (name, domain, codomain) = self.arrow_header()?;
                let mapping = self.braced(|p| {
                    let (key, pos) = p.key()?;
                    p.expect(Tok::Colon)?;
                    let (value, _) = p.key()?;
                    Ok(Entry { key, value, pos })
                })?;
                Ok(Declaration::Function { name, domain, codomain, mapping })
            }
            "query" => {
                let name = self.ident("a query name")?;
                self.expect(Tok::Equals)?;
                let expr = self.expr()?;
                Ok(Declaration::Query { name, expr })
            }
            other => Err(ParseDiagnostic::error(
                keyword.pos,
                format!("unknown declaration keyword `{other}`"),
                other,
            )),
        }
    }

    fn space_decl(&mut self) -> PResult<Declaration> {
        let name = self.ident("a space name")?;
        self.expect(Tok::Equals)?;
        if self.peek() == &Tok::LBrace {
            let elements = self.braced(|p| Ok(p.ident("an element name")?.text))?;
            Ok(Declaration::Space {
                name,
                body: SpaceBody::Elements(elements),
            })
        } else {
            let left = self.ident("a space name")?;
            self.expect(Tok::Star)?;
            let right = self.ident("a space name")?;
            Ok(Declaration::Space {
                name,
                body: SpaceBody::Product(left, right),
            })
        }
    }

    fn typed_name(&mut self) -> PResult<(Name, Name)> {
        let name = self.ident("a name")?;
        self.expect(Tok::Colon)?;
        let space = self.ident("a space name")?;
        self.expect(Tok::Equals)?;
        Ok((name, space))
    }

    fn arrow_header(&mut self) -> PResult<(Name, Name, Name)> {
        let name = self.ident("a name")?;
        self.expect(Tok::Colon)?;
        let domain = self.ident("a domain space")?;
        self.expect(Tok::Arrow)?;
        let codomain = self.ident("a codomain space")?;
        self.expect(Tok::Equals)?;
        Ok((name, domain, codomain))
    }

    /// `{ item, item, ... }` with an optional trailing comma.
    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        while self.peek() != &Tok::RBrace {
            items.push(item(self)?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(items)
    }

    fn number_map(&mut self) -> PResult<Vec<Entry<Prob>>> {
        self.braced(|p| {
            let (key, pos) = p.key()?;
            p.expect(Tok::Colon)?;
            let value = p.number()?.value;
            Ok(Entry { key, value, pos })
        })
    }

    fn key(&mut self) -> PResult<(Key, Pos)> {
        if self.peek() == &Tok::LParen {
            let pos = self.bump().pos;
            let left = self.ident("an element name")?;
            self.expect(Tok::Comma)?;
            let right = self.ident("an element name")?;
            self.expect(Tok::RParen)?;
            Ok((Key::Pair(left.text, right.text), pos))
        } else {
            let name = self.ident("an element name")?;
            Ok((Key::Simple(name.text), name.pos))
        }
    }

    fn expr(&mut self) -> PResult<QueryExpr> {
        let head = self.ident("an expression")?;
        if self.peek() != &Tok::LParen {
            return Ok(QueryExpr {
                kind: ExprKind::Ref(head.text),
                pos: head.pos,
            });
        }
        self.bump();
        let pos = head.pos;
        let boxed = |p: &mut Self| p.expr().map(Box::new);
        let kind = match head.text.as_str() {
            "transform" => self.binary(ExprKind::Transform)?,
            "predtransform" => self.binary(ExprKind::PredTransform)?,
            "validity" => self.binary(ExprKind::Validity)?,
            "condition" => self.binary(ExprKind::Condition)?,
            "compose" => self.binary(ExprKind::Compose)?,
            "dagger" => self.binary(ExprKind::Dagger)?,
            "product" => self.binary(ExprKind::Product)?,
            "pearl" | "jeffrey" => {
                let a = boxed(self)?;
                self.expect(Tok::Comma)?;
                let b = boxed(self)?;
                self.expect(Tok::Comma)?;
                let c = boxed(self)?;
                if head.text == "pearl" {
                    ExprKind::Pearl(a, b, c)
                } else {
                    ExprKind::Jeffrey(a, b, c)
                }
            }
            "marginal" => {
                let a = boxed(self)?;
                self.expect(Tok::Comma)?;
                let which = self.ident("`first` or `second`")?;
                let side = match which.text.as_str() {
                    "first" => Side::First,
                    "second" => Side::Second,
                    other => {
                        return Err(ParseDiagnostic::error(
                            which.pos,
                            "expected `first` or `second`",
                            other,
                        ))
                    }
                };
                ExprKind::Marginal(a, side)
            }
            "atc" | "nec" => {
                let a = boxed(self)?;
                self.expect(Tok::Comma)?;
                let event_pos = self.current().pos;
                let keys = self.braced(|p| Ok(p.key()?.0))?;
                let event = EventLit { keys, pos: event_pos };
                self.expect(Tok::Comma)?;
                let n = self.number()?;
                if head.text == "atc" {
                    ExprKind::Atc(a, event, n)
                } else {
                    ExprKind::Nec(a, event, n)
                }
            }
            "blend" => {
                let n = self.number()?;
                self.expect(Tok::Comma)?;
                let a = boxed(self)?;
                self.expect(Tok::Comma)?;
                let b = boxed(self)?;
                ExprKind::Blend(n, a, b)
            }
            other => {
                return Err(ParseDiagnostic::error(
                    head.pos,
                    format!("unknown operation `{other}`"),
                    other,
                ))
            }
        };
        self.expect(Tok::RParen)?;
        Ok(QueryExpr { kind, pos })
    }

    fn binary(&mut self, make: fn(Box<QueryExpr>, Box<QueryExpr>) -> ExprKind) -> PResult<ExprKind> {
        let a = Box::new(self.expr()?);
        self.expect(Tok::Comma)?;
        let b = Box::new(self.expr()?);
        Ok(make(a, b))
    }
}
