//! The `.netspec` text format: spaces, states, predicates, channels,
//! deterministic functions and named queries over them.
//!
//! ```
//! use softupdate::netspec;
//!
//! let src = "
//! space coin = {h, t}
//! state fair : coin = {h: 1/2, t: 0.5}
//! predicate heads : coin = {h: 1}
//! query p = validity(fair, heads)
//! ";
//! let env = netspec::compile(&netspec::parse(src).unwrap()).unwrap();
//! assert_eq!(env.evaluate("p").unwrap(), netspec::Value::Scalar(softupdate::ratio(1, 2)));
//! ```

mod ast;
mod compile;
mod lexer;
mod parser;
mod render;

use std::fmt;

pub use ast::*;
pub use compile::{compile, CompileError, Environment, EvalError, Ty, Value};
pub use render::{render, render_expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A problem found in netspec source, pointing at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// The source text at the reported position.
    pub token: String,
}

impl ParseDiagnostic {
    pub fn error(pos: Pos, message: impl Into<String>, token: impl Into<String>) -> Self {
        ParseDiagnostic {
            severity: Severity::Error,
            line: pos.line,
            column: pos.column,
            message: message.into(),
            token: token.into(),
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {level}: {}", self.line, self.column, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (near `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseDiagnostic {}

/// Parses and checks `source`. Besides syntax this catches unknown or
/// duplicate names, bad element keys, weight sums other than exactly 1 and
/// queries whose spaces do not line up.
pub fn parse(source: &str) -> Result<Vec<Declaration>, Vec<ParseDiagnostic>> {
    let decls = parse_syntax(source)?;
    let errors = compile::check_all(&decls);
    if errors.is_empty() {
        Ok(decls)
    } else {
        Err(errors.into_iter().map(CompileError::into_diagnostic).collect())
    }
}

/// Syntax only: no name resolution or value checks.
pub fn parse_syntax(source: &str) -> Result<Vec<Declaration>, Vec<ParseDiagnostic>> {
    let (tokens, lex_errors) = lexer::tokenize(source);
    let mut diagnostics: Vec<ParseDiagnostic> = lex_errors
        .into_iter()
        .map(|e| ParseDiagnostic::error(e.pos, format!("unexpected character `{}`", e.text), e.text))
        .collect();
    let mut parser = parser::Parser::new(tokens);
    let decls = parser.declarations();
    diagnostics.append(&mut parser.diagnostics);
    if diagnostics.is_empty() {
        Ok(decls)
    } else {
        diagnostics.sort_by_key(|d| (d.line, d.column));
        Err(diagnostics)
    }
}

/// Parses and compiles in one step.
pub fn load(source: &str) -> Result<Environment, Vec<ParseDiagnostic>> {
    let decls = parse(source)?;
    compile(&decls).map_err(|e| vec![e.into_diagnostic()])
}
