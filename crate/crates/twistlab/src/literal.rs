//! Text form of ring elements, e.g. `(t+1)*x1^2*x2^-1 + 1`.
//!
//! `t` is the generator of the level field over `GF(q)`, `u` the generator
//! of `GF(q)` over its prime field (only when `q` is not prime), integers are
//! read modulo the characteristic and `x1 … xn` are the group generators.
//! Products are evaluated in the written order, so any expression built from
//! these symbols with `+ - * ^ ( )` is accepted; the printer emits the
//! canonical sum of terms `coeff * x1^a1 … xn^an`.

use std::fmt::Write as _;

use twistlab_core::{Error, FieldElement, GroupWord, Result, RingContext, RingElement, Tower};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(u64),
    T,
    U,
    X(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let tok = match c {
            ' ' | '\t' | '\n' => continue,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            't' => Token::T,
            'u' => Token::U,
            'x' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                match digits.parse::<usize>() {
                    Ok(k) if k >= 1 => Token::X(k - 1),
                    _ => return Err(usage(format!("expected x1, x2, … at offset {}", start - 1))),
                }
            }
            d if d.is_ascii_digit() => {
                let start = i - 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                Token::Num(
                    digits
                        .parse()
                        .map_err(|_| usage(format!("integer {digits} too large")))?,
                )
            }
            other => {
                return Err(usage(format!(
                    "unexpected character {other:?} in element literal"
                )))
            }
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a RingContext,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RingElement> {
        let ctx = self.ctx;
        let mut acc = if self.eat(&Token::Minus) {
            ctx.neg(&self.term()?)
        } else {
            self.eat(&Token::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Token::Plus) {
                acc = ctx.add(&acc, &self.term()?);
            } else if self.eat(&Token::Minus) {
                acc = ctx.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.power()?;
        while self.eat(&Token::Star) {
            acc = self.ctx.mul(&acc, &self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Token::Minus);
        let e = match self.peek() {
            Some(Token::Num(e)) => *e as i64,
            _ => return Err(usage("expected an integer exponent after '^'")),
        };
        self.pos += 1;
        self.ctx.pow(&base, if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<RingElement> {
        let ctx = self.ctx;
        let tower = ctx.tower();
        let level = ctx.level();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| usage("element literal ends early"))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => {
                let r = tower.base_field().characteristic() as u64;
                Ok(ctx.constant(base_element(tower, (v % r) as u32, level)?))
            }
            Token::T => {
                if level == 0 {
                    return Err(usage("t is undefined at level 0"));
                }
                Ok(ctx.constant(tower.generator(level)))
            }
            Token::U => {
                let r = tower.base_field().characteristic();
                if r == tower.q() {
                    return Err(usage("u is only defined when q is not prime"));
                }
                Ok(ctx.constant(base_element(tower, r, level)?))
            }
            Token::X(i) => {
                if i >= ctx.rank() {
                    return Err(usage(format!("x{} exceeds rank n = {}", i + 1, ctx.rank())));
                }
                Ok(ctx.x(i, 1))
            }
            Token::Open => {
                let inner = self.expr()?;
                if !self.eat(&Token::Close) {
                    return Err(usage("missing ')'"));
                }
                Ok(inner)
            }
            other => Err(usage(format!("unexpected {other:?} in element literal"))),
        }
    }
}

fn base_element(tower: &Tower, index: u32, level: usize) -> Result<FieldElement> {
    tower.embed(tower.from_index(0, index)?, level)
}

/// Parses `src` as an element of `ctx`.
pub fn parse_element(ctx: &RingContext, src: &str) -> Result<RingElement> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(usage("empty element literal"));
    }
    let mut parser = Parser {
        ctx,
        tokens,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(usage(format!("trailing input after token {}", parser.pos)));
    }
    Ok(value)
}

/// Parses a literal that must be a field element of the level.
pub fn parse_field(ctx: &RingContext, src: &str) -> Result<FieldElement> {
    let r = parse_element(ctx, src)?;
    let zero = GroupWord::zero(ctx.rank());
    if r.support().any(|g| *g != zero) {
        return Err(usage(format!("{src:?} is not a field element")));
    }
    Ok(r.coefficient(&zero)
        .unwrap_or_else(|| ctx.tower().zero(ctx.level())))
}

/// A `GF(q)` index written in the prime field, or as a polynomial in `u`.
fn format_base(tower: &Tower, index: u32) -> String {
    let r = tower.base_field().characteristic();
    if r == tower.q() {
        return index.to_string();
    }
    let mut digits = Vec::new();
    let mut rest = index;
    while rest > 0 {
        digits.push(rest % r);
        rest /= r;
    }
    join_monomials(&digits, "u", |d| d.to_string())
}

fn join_monomials<T: Copy + PartialEq + Default>(
    coeffs: &[T],
    var: &str,
    show: impl Fn(T) -> String,
) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == T::default() {
            continue;
        }
        let coef = show(c);
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (power.is_empty(), coef.as_str()) {
            (true, _) => coef,
            (false, "1") => power,
            (false, c) if c.contains('+') => format!("({c})*{power}"),
            (false, c) => format!("{c}*{power}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A field element of any level as a polynomial in `t`.
pub fn format_field(tower: &Tower, c: FieldElement) -> String {
    join_monomials(&tower.coords(c), "t", |i| format_base(tower, i))
}

fn format_word(g: &GroupWord) -> String {
    let mut out = String::new();
    for (i, &e) in g.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        let _ = write!(out, "x{}", i + 1);
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// Canonical literal: terms in ascending word order joined by ` + `.
pub fn format_element(ctx: &RingContext, r: &RingElement) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let tower = ctx.tower();
    let one = tower.one(ctx.level());
    let terms: Vec<String> = r
        .terms()
        .map(|(g, &c)| {
            let word = format_word(g);
            let coef = format_field(tower, c);
            match (word.is_empty(), c == one) {
                (true, _) => coef,
                (false, true) => word,
                (false, false) if coef.contains('+') => format!("({coef})*{word}"),
                (false, false) => format!("{coef}*{word}"),
            }
        })
        .collect();
    terms.join(" + ")
}
