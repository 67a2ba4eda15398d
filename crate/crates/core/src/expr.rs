//! Algebra expressions such as `2 e* e - u + 1/2 vh(p)`.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff? factor+
//! coeff  := int ('/' int)?
//! factor := ident | ident '*' | 'vh(' ident ')' | '(' expr ')'
//! ident  := vertex | bundle | bundle '[' nat ']'
//! ```
//!
//! Juxtaposition is the product. `v*` is `v` for a vertex. `vh(v)` is
//! `v^H` for the session's `H`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::EdgeRef;
use crate::scalar::Scalar;
use crate::steinberg::{pi_generator, AlgebraElement, Generator};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Vertex(String),
    Edge(String, Option<u64>),
    Ghost(String, Option<u64>),
    VH(String),
    Group(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub num: BigInt,
    pub den: BigInt,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Slash,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Tokens with their 1-based columns and whether whitespace preceded them.
fn lex(text: &str) -> Result<Vec<(Tok, usize, bool)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut spaced = false;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            spaced = true;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("digits"))
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '/' => Tok::Slash,
                '*' => Tok::Star,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                other => return Err(parse_error(col, format!("unexpected character {other:?}"))),
            }
        };
        out.push((tok, col, spaced));
        spaced = false;
    }
    Ok(out)
}

struct Parser<'g> {
    g: &'g Graph,
    toks: Vec<(Tok, usize, bool)>,
    pos: usize,
    end_column: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn spaced(&self) -> bool {
        self.toks.get(self.pos).is_some_and(|t| t.2)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_error(self.column(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.num = -t.num;
            }
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(Expr { terms }),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        if let Some(Tok::Int(n)) = self.peek() {
            num = n.clone();
            self.pos += 1;
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let col = self.column();
                match self.bump() {
                    Some(Tok::Int(d)) if d != BigInt::from(0) => den = d,
                    Some(Tok::Int(_)) => return Err(parse_error(col, "zero denominator")),
                    _ => return Err(parse_error(col, "expected a denominator")),
                }
            }
        }
        let mut factors = Vec::new();
        while matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LParen)) {
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return Err(parse_error(
                self.column(),
                "expected a vertex, edge, `vh(…)` or `(`",
            ));
        }
        Ok(Term { num, den, factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let col = self.column();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor::Group(inner))
            }
            Some(Tok::Ident(name)) => {
                if name == "vh" && self.peek() == Some(&Tok::LParen) && !self.spaced() {
                    self.pos += 1;
                    let arg_col = self.column();
                    let Some(Tok::Ident(v)) = self.bump() else {
                        return Err(parse_error(arg_col, "expected a vertex inside vh(…)"));
                    };
                    if !self.g.has_vertex(&v) {
                        return Err(parse_error(arg_col, format!("unknown vertex {v:?}")));
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Factor::VH(v));
                }
                self.ident(name, col)
            }
            _ => Err(parse_error(col, "expected a factor")),
        }
    }

    fn ident(&mut self, name: String, col: usize) -> Result<Factor> {
        let is_vertex = self.g.has_vertex(&name);
        let is_bundle = self.g.has_bundle(&name);
        if is_vertex && is_bundle {
            return Err(parse_error(
                col,
                format!("{name:?} names both a vertex and a bundle"),
            ));
        }
        if !is_vertex && !is_bundle {
            return Err(parse_error(col, format!("unknown identifier {name:?}")));
        }
        let mut index = None;
        if self.peek() == Some(&Tok::LBracket) && !self.spaced() {
            if is_vertex {
                return Err(parse_error(self.column(), "vertices take no index"));
            }
            self.pos += 1;
            let icol = self.column();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let n =
                        u64::try_from(n).map_err(|_| parse_error(icol, "index out of range"))?;
                    index = Some(n);
                }
                _ => return Err(parse_error(icol, "expected an edge index")),
            }
            self.expect(Tok::RBracket, "`]`")?;
        }
        let starred = self.peek() == Some(&Tok::Star) && !self.spaced();
        if starred {
            self.pos += 1;
        }
        Ok(match (is_vertex, starred) {
            (true, _) => Factor::Vertex(name),
            (false, false) => Factor::Edge(name, index),
            (false, true) => Factor::Ghost(name, index),
        })
    }
}

/// Parses an expression against the identifiers of `g`.
pub fn parse(g: &Graph, text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        g,
        toks,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    if p.peek().is_none() {
        return Err(parse_error(1, "empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(parse_error(p.column(), "unexpected trailing input"));
    }
    Ok(e)
}

fn edge(g: &Graph, name: &str, index: Option<u64>) -> Result<EdgeRef> {
    let e = EdgeRef::new(g.bundle_id(name)?, index.unwrap_or(0));
    e.validate(g)?;
    Ok(e)
}

/// Evaluates a parsed expression; `vh(…)` needs `h`.
pub fn evaluate<K: Scalar>(
    g: &Graph,
    e: &Expr,
    h: Option<&VertexSet>,
) -> Result<AlgebraElement<K>> {
    let mut out = AlgebraElement::zero();
    for t in &e.terms {
        let c = K::from_ratio(&t.num, &t.den).ok_or_else(|| {
            Error::input(format!(
                "coefficient {}/{} is undefined in this field",
                t.num, t.den
            ))
        })?;
        let mut acc: Option<AlgebraElement<K>> = None;
        for f in &t.factors {
            let x = match f {
                Factor::Vertex(v) => pi_generator(g, &Generator::Vertex(g.vertex(v)?))?,
                Factor::Edge(b, i) => pi_generator(g, &Generator::Edge(edge(g, b, *i)?))?,
                Factor::Ghost(b, i) => pi_generator(g, &Generator::Ghost(edge(g, b, *i)?))?,
                Factor::VH(v) => {
                    let h =
                        h.ok_or_else(|| Error::input("vh(…) needs a hereditary saturated set H"))?;
                    pi_generator(g, &Generator::VH(g.vertex(v)?, h.clone()))?
                }
                Factor::Group(inner) => evaluate(g, inner, h)?,
            };
            acc = Some(match acc {
                None => x,
                Some(a) => a.product(g, &x),
            });
        }
        out = out + acc.expect("terms have factors").scale(&c);
    }
    Ok(out)
}

/// Parses and evaluates in one step.
pub fn eval_expr<K: Scalar>(
    g: &Graph,
    text: &str,
    h: Option<&VertexSet>,
) -> Result<AlgebraElement<K>> {
    evaluate(g, &parse(g, text)?, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::scalar::Fp;
    use crate::RationalElement;

    fn rat(g: &Graph, text: &str) -> RationalElement {
        eval_expr(g, text, None).unwrap()
    }

    #[test]
    fn relations_from_text() {
        let a = graph_a();
        assert!(rat(&a, "e* e - u").is_zero(&a));
        assert!(rat(&a, "u - e e* - f f*").is_zero(&a));
        assert!(rat(&a, "e* f").is_zero(&a));
        assert!(rat(&a, "u* - u").is_zero(&a));
        assert!(rat(&a, "2 (u + e) - 2u - 2e").is_zero(&a));
        assert!(rat(&a, "1/2 u + 1/2 u - u").is_zero(&a));
        assert!(!rat(&a, "-u").is_zero(&a));
    }

    #[test]
    fn indexed_edges_and_vh() {
        let c = graph_c();
        assert!(!rat(&c, "a[5]* a[5]").same_function(&c, &rat(&c, "a* a[5]")));
        assert!(rat(&c, "a[5]* a[5] - u").is_zero(&c));
        let h = c.parse_vertex_set("u").unwrap();
        let x: RationalElement = eval_expr(&c, "vh(p) + b b* - p", Some(&h)).unwrap();
        assert!(x.is_zero(&c));
        assert!(eval_expr::<crate::Rational>(&c, "vh(p)", None).is_err());
        assert!(eval_expr::<crate::Rational>(&c, "b[1]", None).is_err());
    }

    #[test]
    fn prime_field_coefficients() {
        let a = graph_a();
        let x: AlgebraElement<Fp<2>> = eval_expr(&a, "u + u", None).unwrap();
        assert!(x.is_zero(&a));
        assert!(eval_expr::<Fp<2>>(&a, "1/2 u", None).is_err());
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let a = graph_a();
        let col = |text: &str| match parse(&a, text) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{text}: {other:?}"),
        };
        assert_eq!(col("u + "), 5);
        assert_eq!(col("u + x"), 5);
        assert_eq!(col("u )"), 3);
        assert_eq!(col("u # e"), 3);
        assert_eq!(col("2"), 2);
        assert_eq!(col(""), 1);
        assert_eq!(col("1/0 u"), 3);
        assert_eq!(col("u[1]"), 2);
    }

    #[test]
    fn ambiguous_identifiers() {
        let g =
            Graph::from_lists(&["x", "y"], &[("x2", "x", "y", crate::Multiplicity::ONE)]).unwrap();
        assert!(parse(&g, "x2 x2*").is_ok());
        let clash = Graph::new(
            ["x", "y"],
            [(
                "x".to_string(),
                "x".to_string(),
                "y".to_string(),
                crate::Multiplicity::ONE,
            )],
        )
        .unwrap();
        assert!(matches!(parse(&clash, "x"), Err(Error::Parse { .. })));
    }
}
