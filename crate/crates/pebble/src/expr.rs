//! Graph expressions.
//!
//! ```text
//! expr := NAME ":" INT
//!       | "tree" ":" "[" [INT {"," INT}] "]"
//!       | NAME "(" expr {"," expr} ")"
//!       | "file" ":" PATH
//! ```
//!
//! `NAME:INT` forms are `path`, `cycle`, `complete`, `mstar`, `mprime`, `tk`;
//! `middle` takes one argument and `prod` two. Whitespace between tokens is
//! ignored. A `PATH` runs up to the next `,` or `)` and is trimmed.

use std::fmt;
use std::path::Path;

use pebble_core::families::{self, MiddleVariant};
use pebble_core::{Graph, GraphError};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Tree(Vec<usize>),
    Middle(Box<GraphExpr>),
    Prod(Box<GraphExpr>, Box<GraphExpr>),
    MStar(usize),
    MPrime(usize),
    Tk(usize),
    File(String),
}

/// Parse failure; `column` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.src[..at].chars().count() + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected '{c}', found '{x}'")),
            None => self.err(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn name(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return match self.src[start..].chars().next() {
                Some(c) => self.err(start, format!("expected a graph name, found '{c}'")),
                None => self.err(start, "expected a graph name, found end of input"),
            };
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn int(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.err(start, "expected an integer");
        }
        self.pos += len;
        match self.src[start..start + len].parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => self.err(start, "integer too large"),
        }
    }

    fn expr(&mut self) -> Result<GraphExpr, ParseError> {
        let (at, name) = self.name()?;
        match name {
            "middle" | "prod" => {
                self.expect('(')?;
                let mut args = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(')')?;
                let want = if name == "middle" { 1 } else { 2 };
                if args.len() != want {
                    return self.err(
                        at,
                        format!("{name} takes {want} argument(s), got {}", args.len()),
                    );
                }
                let mut args = args.into_iter().map(Box::new);
                let a = args.next().expect("arity checked");
                Ok(match args.next() {
                    Some(b) => GraphExpr::Prod(a, b),
                    None => GraphExpr::Middle(a),
                })
            }
            "file" => {
                self.expect(':')?;
                self.skip_ws();
                let start = self.pos;
                let len = self.src[start..]
                    .find([',', ')', '('])
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                let path = self.src[start..start + len].trim();
                if path.is_empty() {
                    return self.err(start, "expected a file path");
                }
                Ok(GraphExpr::File(path.to_string()))
            }
            "tree" => {
                self.expect(':')?;
                self.expect('[')?;
                let mut parents = Vec::new();
                if self.peek() != Some(']') {
                    parents.push(self.int()?.1);
                    while self.peek() == Some(',') {
                        self.pos += 1;
                        parents.push(self.int()?.1);
                    }
                }
                self.expect(']')?;
                Ok(GraphExpr::Tree(parents))
            }
            "path" | "cycle" | "complete" | "mstar" | "mprime" | "tk" => {
                self.expect(':')?;
                let (int_at, v) = self.int()?;
                let (what, min) = match name {
                    "path" => ("path length", 1),
                    "cycle" => ("cycle length", 3),
                    "complete" => ("complete graph order", 1),
                    "tk" => ("tk length", 2),
                    _ => ("half-cycle length", 2),
                };
                if v < min {
                    return self.err(int_at, format!("{what} must be ≥ {min}"));
                }
                Ok(match name {
                    "path" => GraphExpr::Path(v),
                    "cycle" => GraphExpr::Cycle(v),
                    "complete" => GraphExpr::Complete(v),
                    "mstar" => GraphExpr::MStar(v),
                    "mprime" => GraphExpr::MPrime(v),
                    _ => GraphExpr::Tk(v),
                })
            }
            other => self.err(at, format!("unknown graph '{other}'")),
        }
    }
}

pub fn parse_graph_expr(src: &str) -> Result<GraphExpr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => p.err(p.pos, format!("unexpected '{c}' after expression")),
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Path(n) => write!(f, "path:{n}"),
            GraphExpr::Cycle(n) => write!(f, "cycle:{n}"),
            GraphExpr::Complete(n) => write!(f, "complete:{n}"),
            GraphExpr::Tree(p) => {
                let list: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "tree:[{}]", list.join(","))
            }
            GraphExpr::Middle(e) => write!(f, "middle({e})"),
            GraphExpr::Prod(a, b) => write!(f, "prod({a},{b})"),
            GraphExpr::MStar(n) => write!(f, "mstar:{n}"),
            GraphExpr::MPrime(n) => write!(f, "mprime:{n}"),
            GraphExpr::Tk(n) => write!(f, "tk:{n}"),
            GraphExpr::File(p) => write!(f, "file:{p}"),
        }
    }
}

/// Canonical text of an expression; parses back to an equal expression.
pub fn render(e: &GraphExpr) -> String {
    e.to_string()
}

/// Reads an edge-list file. The family records the content hash so that
/// cached results follow the file's contents, not its name.
pub fn load_edge_list(path: &str) -> Result<Graph, EvalError> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|source| EvalError::Io {
        path: path.to_string(),
        source,
    })?;
    let g = Graph::from_edge_list(&text)?;
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    Ok(g.with_family(format!("file:{path}@{hex}")))
}

pub fn eval(e: &GraphExpr) -> Result<Graph, EvalError> {
    Ok(match e {
        GraphExpr::Path(n) => families::path(*n)?,
        GraphExpr::Cycle(n) => families::cycle(*n)?,
        GraphExpr::Complete(n) => families::complete(*n)?,
        GraphExpr::Tree(p) => families::tree(p)?,
        GraphExpr::Middle(a) => families::middle_graph(&eval(a)?)?,
        GraphExpr::Prod(a, b) => families::cartesian_product(&eval(a)?, &eval(b)?)?,
        GraphExpr::MStar(n) => families::build_mstar_mprime(*n, MiddleVariant::MStar)?,
        GraphExpr::MPrime(n) => families::build_mstar_mprime(*n, MiddleVariant::MPrime)?,
        GraphExpr::Tk(n) => families::build_tk(*n)?,
        GraphExpr::File(p) => load_edge_list(p)?,
    })
}
