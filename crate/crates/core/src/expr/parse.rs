use super::{Expr, Func, MAX_DEPTH, MAX_EXPONENT, MAX_INPUT_LEN};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(offset: usize, expected: &[&str]) -> Error {
    Error::Syntax { offset, expected: expected.iter().map(|s| s.to_string()).collect() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lexeme = &text[start..i];
                let v: f64 = lexeme.parse().map_err(|_| syntax(start, &["number"]))?;
                if !v.is_finite() {
                    return Err(syntax(start, &["finite number"]));
                }
                out.push((Tok::Num(v), start));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => return Err(syntax(start, &["number", "t", "function name", "operator", "(", ")"])),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

const OPERAND: &[&str] = &["number", "t", "function name", "(", "-"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::DepthExceeded(MAX_DEPTH));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Slash => {
                    let at = self.offset();
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.const_value() == Some(0.0) {
                        return Err(syntax(at, &["nonzero divisor"]));
                    }
                    lhs = Expr::div(lhs, rhs);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(negate(inner));
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.enter()?;
            let inner = self.exponent()?;
            self.depth -= 1;
            return Ok(negate(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.bump();
        self.enter()?;
        let exponent = self.exponent()?;
        self.depth -= 1;
        let integer = exponent.const_value().filter(|v| v.fract() == 0.0);
        if let Some(n) = integer.filter(|n| n.abs() <= MAX_EXPONENT as f64) {
            return Ok(Expr::pow(base, n as i32));
        }
        match base.const_value() {
            Some(k) if k > 0.0 && k.is_finite() => Ok(Expr::const_pow(k, exponent)),
            _ if integer.is_some() => Err(syntax(at + 1, &["integer exponent with |n| <= 60"])),
            Some(_) => Err(syntax(at, &["positive constant base"])),
            None => Err(syntax(at + 1, &["integer exponent"])),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::Ident(name) if name == "t" => Ok(Expr::Var),
            Tok::Ident(name) => {
                let func = Func::from_name(&name).ok_or_else(|| syntax(at, &["t", "function name"]))?;
                let paren_at = self.offset();
                if self.bump() != Tok::LParen {
                    return Err(syntax(paren_at, &["("]));
                }
                let arg = self.expr()?;
                let close_at = self.offset();
                if self.bump() != Tok::RParen {
                    return Err(syntax(close_at, &[")", "operator"]));
                }
                Ok(Expr::call(func, arg))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close_at = self.offset();
                if self.bump() != Tok::RParen {
                    return Err(syntax(close_at, &[")", "operator"]));
                }
                Ok(inner)
            }
            _ => Err(syntax(at, OPERAND)),
        }
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Const(v) => Expr::Const(-v),
        other => Expr::mul(Expr::Const(-1.0), other),
    }
}

/// Parses an expression. The result is not canonicalized.
pub fn parse(text: &str) -> Result<Expr> {
    if text.len() > MAX_INPUT_LEN {
        return Err(Error::InvalidArgument(format!("expression longer than {MAX_INPUT_LEN} bytes")));
    }
    let mut p = Parser { toks: tokenize(text)?, pos: 0, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), &["operator", "end of input"]));
    }
    if e.depth() > MAX_DEPTH {
        return Err(Error::DepthExceeded(MAX_DEPTH));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64) -> Expr {
        Expr::Const(v)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("t^3 * exp(2*t)").unwrap(),
            Expr::mul(Expr::pow(Expr::Var, 3), Expr::call(Func::Exp, Expr::mul(c(2.0), Expr::Var)))
        );
        assert_eq!(
            parse("ln(3*t + 1)").unwrap(),
            Expr::call(Func::Ln, Expr::add(Expr::mul(c(3.0), Expr::Var), c(1.0)))
        );
    }

    #[test]
    fn calls_need_parentheses() {
        match parse("sin t") {
            Err(Error::Syntax { offset, expected }) => {
                assert_eq!(offset, 4);
                assert_eq!(expected, vec!["(".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        // Unary minus binds looser than ^.
        assert_eq!(parse("-t^2").unwrap(), Expr::mul(c(-1.0), Expr::pow(Expr::Var, 2)));
        assert_eq!(parse("t - 1 - t").unwrap(), Expr::sub(Expr::sub(Expr::Var, c(1.0)), Expr::Var));
        assert_eq!(parse("t / 2 * t").unwrap(), Expr::mul(Expr::div(Expr::Var, c(2.0)), Expr::Var));
        assert_eq!(parse("2^t^2").unwrap(), Expr::const_pow(2.0, Expr::pow(Expr::Var, 2)));
        assert_eq!(parse("t^-2").unwrap(), Expr::pow(Expr::Var, -2));
        assert_eq!(parse("t ^ (1 + 1)").unwrap(), Expr::pow(Expr::Var, 2));
        assert_eq!(parse(" 1.5e-3*t ").unwrap(), Expr::mul(c(1.5e-3), Expr::Var));
    }

    #[test]
    fn exponent_rules() {
        assert_eq!(parse("2^t").unwrap(), Expr::const_pow(2.0, Expr::Var));
        assert!(matches!(parse("t^t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("t^0.5"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("t^61"), Err(Error::Syntax { .. })));
        assert_eq!(parse("2^100").unwrap(), Expr::const_pow(2.0, c(100.0)));
        assert!(matches!(parse("(0-2)^t"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse(""), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("t +"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse("x"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("(t"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("t)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse("t $ 1"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse("t / (1 - 1)"), Err(Error::Syntax { offset: 2, .. })));
        let deep = format!("{}t{}", "(".repeat(100), ")".repeat(100));
        assert_eq!(parse(&deep), Err(Error::DepthExceeded(MAX_DEPTH)));
        assert!(parse(&"t+".repeat(3000)).is_err());
    }
}
