//! Expressions over the b-polynomial algebra.
//!
//! ```text
//! expr    := quot ('*' quot)*
//! quot    := atom ('/' '(' 's' '+' rational ')')*
//! atom    := 'det(' int ')' | 'arr(' int ',' int ')' | 'pow(' int ')'
//!          | 'brieskorn(' int (',' int)* ')' | 'lcm(' expr ',' expr ')'
//!          | 'union_combine(' expr ',' expr ')' | '(' expr ')'
//! ```
//!
//! `/(s+r)` divides by the linear factor with root `-r`.

use bsroots::bpoly::BPoly;
use bsroots::geometry::serde_rational;
use bsroots::geometry::Rational;

use crate::CliError;

/// Parses and evaluates an expression.
pub fn evaluate(input: &str) -> Result<BPoly, CliError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(String),
    Open,
    Close,
    Comma,
    Star,
    Slash,
    Plus,
}

fn tokenize(input: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '(' => push(&mut out, &mut i, Token::Open),
            ')' => push(&mut out, &mut i, Token::Close),
            ',' => push(&mut out, &mut i, Token::Comma),
            '*' => push(&mut out, &mut i, Token::Star),
            '/' => push(&mut out, &mut i, Token::Slash),
            '+' => push(&mut out, &mut i, Token::Plus),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Number(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(CliError::Parse(format!("unexpected character {other:?} in b-polynomial expression"))),
        }
    }
    Ok(out)
}

fn push(out: &mut Vec<Token>, i: &mut usize, t: Token) {
    out.push(t);
    *i += 1;
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> CliError {
        CliError::Parse(format!("b-polynomial expression: {what} at token {}", self.pos))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), CliError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        match self.peek().cloned() {
            Some(Token::Number(s)) => {
                self.pos += 1;
                s.parse().map_err(|_| self.error("integer too large"))
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn rational(&mut self) -> Result<Rational, CliError> {
        let n = self.int()?;
        let text = if self.eat(&Token::Slash) { format!("{n}/{}", self.int()?) } else { n.to_string() };
        serde_rational::parse(&text).ok_or_else(|| self.error("invalid rational"))
    }

    fn expr(&mut self) -> Result<BPoly, CliError> {
        let mut value = self.quot()?;
        while self.eat(&Token::Star) {
            value = value.tensor(&self.quot()?);
        }
        Ok(value)
    }

    fn quot(&mut self) -> Result<BPoly, CliError> {
        let mut value = self.atom()?;
        while self.eat(&Token::Slash) {
            self.expect(Token::Open, "'(' after '/'")?;
            match self.peek() {
                Some(Token::Ident(s)) if s == "s" => self.pos += 1,
                _ => return Err(self.error("expected 's'")),
            }
            self.expect(Token::Plus, "'+'")?;
            let r = self.rational()?;
            self.expect(Token::Close, "')'")?;
            value = value.divide_linear(&-r).map_err(CliError::from)?;
        }
        Ok(value)
    }

    fn int_args(&mut self) -> Result<Vec<i64>, CliError> {
        self.expect(Token::Open, "'('")?;
        let mut args = vec![self.int()?];
        while self.eat(&Token::Comma) {
            args.push(self.int()?);
        }
        self.expect(Token::Close, "')'")?;
        Ok(args)
    }

    fn pair(&mut self) -> Result<(BPoly, BPoly), CliError> {
        self.expect(Token::Open, "'('")?;
        let a = self.expr()?;
        self.expect(Token::Comma, "','")?;
        let b = self.expr()?;
        self.expect(Token::Close, "')'")?;
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<BPoly, CliError> {
        if self.eat(&Token::Open) {
            let value = self.expr()?;
            self.expect(Token::Close, "')'")?;
            return Ok(value);
        }
        let name = match self.peek().cloned() {
            Some(Token::Ident(s)) => {
                self.pos += 1;
                s
            }
            _ => return Err(self.error("expected a constructor")),
        };
        let arity = |args: &[i64], k: usize, p: &Parser| {
            if args.len() == k {
                Ok(())
            } else {
                Err(p.error(&format!("{name} takes {k} argument(s)")))
            }
        };
        let value = match name.as_str() {
            "det" => {
                let a = self.int_args()?;
                arity(&a, 1, self)?;
                BPoly::from_determinant(a[0])
            }
            "pow" => {
                let a = self.int_args()?;
                arity(&a, 1, self)?;
                BPoly::from_univariate_power(a[0])
            }
            "arr" => {
                let a = self.int_args()?;
                arity(&a, 2, self)?;
                BPoly::from_generic_arrangement(a[0], a[1])
            }
            "brieskorn" => BPoly::from_brieskorn(&self.int_args()?),
            "lcm" => {
                let (a, b) = self.pair()?;
                Ok(a.lcm(&b))
            }
            "union_combine" => {
                let (a, b) = self.pair()?;
                Ok(a.ideal_union_combine(&b))
            }
            other => return Err(CliError::Parse(format!("unknown constructor {other:?}"))),
        };
        value.map_err(CliError::from)
    }
}
