use std::fmt;

use crate::{Error, Result};

/// Expression tree over heap, multiplication and ternary bracket nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    /// Heap word of odd length ≥ 3.
    HeapOp(Vec<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket3(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Heap word; panics on even or short arity, use [`Expr::try_heap`] for
    /// untrusted input.
    pub fn heap(args: Vec<Expr>) -> Expr {
        Expr::try_heap(args).expect("heap word arity must be odd and at least 3")
    }

    pub fn try_heap(args: Vec<Expr>) -> Result<Expr> {
        if args.len() < 3 || args.len() % 2 == 0 {
            return Err(Error::EvenArity(args.len()));
        }
        Ok(Expr::HeapOp(args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn bracket(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::Bracket3(Box::new(a), Box::new(b), Box::new(c))
    }

    /// Distinct variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::HeapOp(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Bracket3(a, b, c) => {
                a.collect_vars(out);
                b.collect_vars(out);
                c.collect_vars(out);
            }
        }
    }

    pub fn has_mul(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::HeapOp(xs) => xs.iter().any(Expr::has_mul),
            Expr::Mul(..) => true,
            Expr::Bracket3(a, b, c) => a.has_mul() || b.has_mul() || c.has_mul(),
        }
    }

    pub fn has_bracket(&self) -> bool {
        match self {
            Expr::Var(_) => false,
            Expr::HeapOp(xs) => xs.iter().any(Expr::has_bracket),
            Expr::Mul(a, b) => a.has_bracket() || b.has_bracket(),
            Expr::Bracket3(..) => true,
        }
    }

    /// Rewrites every bracket node bottom-up with `f`.
    pub fn map_brackets(&self, f: &dyn Fn(Expr, Expr, Expr) -> Expr) -> Expr {
        match self {
            Expr::Var(_) => self.clone(),
            Expr::HeapOp(xs) => Expr::HeapOp(xs.iter().map(|x| x.map_brackets(f)).collect()),
            Expr::Mul(a, b) => Expr::mul(a.map_brackets(f), b.map_brackets(f)),
            Expr::Bracket3(a, b, c) => f(a.map_brackets(f), b.map_brackets(f), c.map_brackets(f)),
        }
    }

    /// Nesting depth; variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) => 0,
            Expr::HeapOp(xs) => 1 + xs.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Bracket3(a, b, c) => 1 + a.depth().max(b.depth()).max(c.depth()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::HeapOp(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Expr::Mul(a, b) => match **b {
                Expr::Mul(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
            Expr::Bracket3(a, b, c) => write!(f, "{{{a}, {b}, {c}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Open(char),
    Close(char),
    Comma,
    Star,
    EqEq,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        let (l, c) = (line, column);
        column += 1;
        let tok = match ch {
            '\n' => {
                line += 1;
                column = 1;
                continue;
            }
            ch if ch.is_whitespace() => continue,
            '[' | '{' | '(' => Tok::Open(ch),
            ']' | '}' | ')' => Tok::Close(ch),
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '=' => {
                if chars.peek() == Some(&'=') {
                    chars.next();
                    column += 1;
                    Tok::EqEq
                } else {
                    return Err(parse_error(l, c, "expected '==' "));
                }
            }
            ch if ch.is_ascii_alphabetic() => {
                let mut name = ch.to_string();
                while let Some(&next) = chars.peek() {
                    if next.is_ascii_alphanumeric() || next == '_' {
                        name.push(next);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => return Err(parse_error(l, c, format!("unexpected character '{other}'"))),
        };
        out.push(Token {
            tok,
            line: l,
            column: c,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Open(c) | Tok::Close(c) => format!("'{c}'"),
        Tok::Comma => "','".into(),
        Tok::Star => "'*'".into(),
        Tok::EqEq => "'=='".into(),
        Tok::Eof => "end of input".into(),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        parse_error(
            t.line,
            t.column,
            format!("expected {expected}, found {}", describe(&t.tok)),
        )
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.prim()?;
        while self.peek().tok == Tok::Star {
            self.next();
            let rhs = self.prim()?;
            acc = Expr::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn close(&mut self, open: &Token, close: char) -> Result<()> {
        let t = self.peek().clone();
        if t.tok == Tok::Close(close) {
            self.next();
            return Ok(());
        }
        let Tok::Open(o) = open.tok else {
            unreachable!()
        };
        Err(parse_error(
            t.line,
            t.column,
            format!(
                "expected '{close}' to close '{o}' opened at {}:{}, found {}",
                open.line,
                open.column,
                describe(&t.tok)
            ),
        ))
    }

    fn prim(&mut self) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(name) => Ok(Expr::Var(name.clone())),
            Tok::Open('(') => {
                let e = self.expr()?;
                self.close(&t, ')')?;
                Ok(e)
            }
            Tok::Open('[') => {
                let mut args = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    args.push(self.expr()?);
                }
                self.close(&t, ']')?;
                if args.len() < 3 || args.len() % 2 == 0 {
                    return Err(parse_error(
                        t.line,
                        t.column,
                        format!(
                            "heap operation needs an odd number (at least 3) of arguments, got {}",
                            args.len()
                        ),
                    ));
                }
                Ok(Expr::HeapOp(args))
            }
            Tok::Open('{') => {
                let a = self.expr()?;
                self.comma()?;
                let b = self.expr()?;
                self.comma()?;
                let c = self.expr()?;
                self.close(&t, '}')?;
                Ok(Expr::bracket(a, b, c))
            }
            _ => {
                self.pos -= usize::from(t.tok != Tok::Eof);
                Err(self.unexpected("an identifier, '[', '{' or '('"))
            }
        }
    }

    fn comma(&mut self) -> Result<()> {
        if self.peek().tok == Tok::Comma {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected("','"))
        }
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a single expression.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses `LHS == RHS`.
pub fn parse_identity(text: &str) -> Result<(Expr, Expr)> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let lhs = p.expr()?;
    if p.peek().tok != Tok::EqEq {
        return Err(p.unexpected("'=='"));
    }
    p.next();
    let rhs = p.expr()?;
    p.end()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Expr {
        Expr::var(s)
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(
            parse("[a,b,c]").unwrap(),
            Expr::heap(vec![v("a"), v("b"), v("c")])
        );
        assert_eq!(
            parse("a*[b,c,d]").unwrap(),
            Expr::mul(v("a"), Expr::heap(vec![v("b"), v("c"), v("d")]))
        );
        assert_eq!(
            parse("a * b * c").unwrap(),
            Expr::mul(Expr::mul(v("a"), v("b")), v("c"))
        );
        assert_eq!(
            parse("a*(b*c)").unwrap(),
            Expr::mul(v("a"), Expr::mul(v("b"), v("c")))
        );
        assert_eq!(
            parse("{x1, y_2, z}").unwrap(),
            Expr::bracket(v("x1"), v("y_2"), v("z"))
        );
    }

    #[test]
    fn even_arity_rejected() {
        match parse("[a,b]") {
            Err(Error::Parse {
                line: 1,
                column: 1,
                message,
            }) => assert!(message.contains("odd")),
            other => panic!("{other:?}"),
        }
        assert!(parse("[a,b,c,d]").is_err());
        assert!(parse("[a,b,c,d,e]").is_ok());
    }

    #[test]
    fn error_positions() {
        match parse("[a,b,c") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        match parse("[a,\n b, $]") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse("a b").is_err());
        assert!(parse("{a,b}").is_err());
        assert!(parse("1a").is_err());
        assert!(parse("").is_err());
        assert!(parse("a)").is_err());
    }

    #[test]
    fn round_trip() {
        for s in [
            "[a, b, c]",
            "a*[b, c, d]",
            "a*(b*c)",
            "(a*b)*c",
            "{{a, d, b}, e, c}",
            "[a*b, a, [c, d, e]]",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
        }
        assert_eq!(parse("a*(b*c)").unwrap().to_string(), "a*(b*c)");
        assert_eq!(parse("(a*b)*c").unwrap().to_string(), "a*b*c");
    }

    #[test]
    fn identities() {
        let (l, r) = parse_identity("a*b == b*a").unwrap();
        assert_eq!(l, Expr::mul(v("a"), v("b")));
        assert_eq!(r, Expr::mul(v("b"), v("a")));
        assert!(parse_identity("a*b").is_err());
        assert!(parse_identity("a = b").is_err());
    }

    #[test]
    fn variables_in_order() {
        let e = parse("[b, a*b, {c, a, b}]").unwrap();
        assert_eq!(e.variables(), vec!["b", "a", "c"]);
    }
}
