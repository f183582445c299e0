//! Graph expression language.
//!
//! ```text
//! expr := join(expr,expr) | cart(expr,expr)
//!       | K n | P n | C n | E n
//!       | Kb(m,n) | Km(m1,...,mk)
//!       | file:PATH
//! ```
//!
//! Whitespace is allowed between tokens; paths run to the next comma,
//! parenthesis, or whitespace. Printing produces the canonical spacing-free
//! form, and parse-print-parse is the identity.

use qec::{Graph, MultipartiteSpec};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    File(String),
    Join(Box<Expr>, Box<Expr>),
    Cart(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Complete(n) => write!(f, "K{n}"),
            Expr::Path(n) => write!(f, "P{n}"),
            Expr::Cycle(n) => write!(f, "C{n}"),
            Expr::Empty(n) => write!(f, "E{n}"),
            Expr::CompleteBipartite(m, n) => write!(f, "Kb({m},{n})"),
            Expr::CompleteMultipartite(parts) => {
                let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "Km({})", body.join(","))
            }
            Expr::File(path) => write!(f, "file:{path}"),
            Expr::Join(a, b) => write!(f, "join({a},{b})"),
            Expr::Cart(a, b) => write!(f, "cart({a},{b})"),
        }
    }
}

/// Syntax error with the byte offset of the offending input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}",
            self.offset, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Expr, ParseError> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("end of input"));
        }
        Ok(expr)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, expected: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("`{}`", byte as char)))
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    /// Positive integer parameter.
    fn size(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("a positive integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(ParseError {
                offset: start,
                expected: "a positive integer".into(),
            }),
        }
    }

    fn pair(&mut self) -> Result<(Expr, Expr), ParseError> {
        self.eat(b'(')?;
        let a = self.expr()?;
        self.eat(b',')?;
        let b = self.expr()?;
        self.eat(b')')?;
        Ok((a, b))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let word_start = self.pos;
        let word = self.word();
        match word {
            "join" => {
                let (a, b) = self.pair()?;
                Ok(Expr::Join(Box::new(a), Box::new(b)))
            }
            "cart" => {
                let (a, b) = self.pair()?;
                Ok(Expr::Cart(Box::new(a), Box::new(b)))
            }
            "Kb" => {
                self.eat(b'(')?;
                let m = self.size()?;
                self.eat(b',')?;
                let n = self.size()?;
                self.eat(b')')?;
                Ok(Expr::CompleteBipartite(m, n))
            }
            "Km" => {
                self.eat(b'(')?;
                let mut parts = vec![self.size()?];
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            parts.push(self.size()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("`,` or `)`")),
                    }
                }
                if parts.len() < 2 {
                    return Err(ParseError {
                        offset: word_start,
                        expected: "at least two part sizes".into(),
                    });
                }
                Ok(Expr::CompleteMultipartite(parts))
            }
            "K" => Ok(Expr::Complete(self.size()?)),
            "P" => Ok(Expr::Path(self.size()?)),
            "C" => Ok(Expr::Cycle(self.size()?)),
            "E" => Ok(Expr::Empty(self.size()?)),
            "file" => {
                if self.src.get(self.pos) != Some(&b':') {
                    return Err(self.err("`:`"));
                }
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() {
                    let b = self.src[self.pos];
                    if b == b',' || b == b'(' || b == b')' || b.is_ascii_whitespace() {
                        break;
                    }
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.err("a file path"));
                }
                let path = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::File(path.to_string()))
            }
            _ => {
                self.pos = word_start;
                Err(self.err("an expression (join, cart, K, P, C, E, Kb, Km, or file:PATH)"))
            }
        }
    }
}

/// Evaluation failure: either a file problem or a graph-construction error.
#[derive(Debug)]
pub enum EvalError {
    FileNotFound(String, std::io::Error),
    Graph(qec::Error),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::FileNotFound(path, e) => write!(f, "cannot read `{path}`: {e}"),
            EvalError::Graph(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<qec::Error> for EvalError {
    fn from(e: qec::Error) -> Self {
        EvalError::Graph(e)
    }
}

impl Expr {
    /// Builds the graph bottom-up with the fixed vertex ordering of the
    /// underlying constructors.
    pub fn eval(&self) -> Result<Graph, EvalError> {
        match self {
            Expr::Complete(n) => Ok(Graph::complete(*n)?),
            Expr::Path(n) => Ok(Graph::path(*n)?),
            Expr::Cycle(n) => Ok(Graph::cycle(*n)?),
            Expr::Empty(n) => Ok(Graph::empty(*n)?),
            Expr::CompleteBipartite(m, n) => Ok(Graph::complete_bipartite(*m, *n)?),
            Expr::CompleteMultipartite(parts) => {
                Ok(MultipartiteSpec::new(parts.clone())?.to_graph())
            }
            Expr::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| EvalError::FileNotFound(path.clone(), e))?;
                Ok(Graph::from_edge_list_text(&text)?.with_label(format!("file:{path}")))
            }
            Expr::Join(a, b) => Ok(a.eval()?.join(&b.eval()?)),
            Expr::Cart(a, b) => Ok(a.eval()?.cartesian(&b.eval()?)),
        }
    }
}
