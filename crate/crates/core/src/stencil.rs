//! Shorthand notation for attribute stencils.
//!
//! | text                 | stencil                 |
//! |----------------------|-------------------------|
//! | `height = 180`       | `[180, 180]`            |
//! | `height > 180`       | `[180, +inf]`           |
//! | `height >= 180`      | `[180, +inf]`           |
//! | `cpu < 3.6`          | `[-inf, 3.6]`           |
//! | `cpu <= 3.6`         | `[-inf, 3.6]`           |
//! | `age in [20, 40]`    | `[20, 40]`              |
//! | `name = Tailor`      | `{Tailor}`              |
//! | `name in {Smith, 'Taylor'}` | `{Smith, Taylor}` |
//!
//! Strict and non-strict comparisons mean the same closed interval: the model
//! has no open intervals. `≥`, `≤` and `∈` are accepted as aliases, values may
//! be quoted with `'` or `"`, and interval endpoints may be `inf`, `-inf` or `∞`.

use std::fmt;

use crate::error::{Error, Result};
use crate::profile::{DiscreteSet, NumericRange, Profile};

#[derive(Debug, Clone, PartialEq)]
pub enum Stencil {
    Numeric(NumericRange),
    Discrete(DiscreteSet),
}

impl Stencil {
    /// Insert into `profile` under `name`.
    pub fn apply(self, profile: &mut Profile, name: &str) {
        match self {
            Stencil::Numeric(r) => {
                profile.set_numeric(name, r);
            }
            Stencil::Discrete(s) => {
                profile.set_discrete(name, s);
            }
        }
    }
}

impl fmt::Display for Stencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stencil::Numeric(r) => r.fmt(f),
            Stencil::Discrete(s) => s.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Eq,
    Above,
    Below,
    In,
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            text,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    /// 1-based column of the current position.
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn byte(&self, pos: usize) -> usize {
        self.chars.get(pos).map_or(self.text.len(), |&(b, _)| b)
    }

    fn slice(&self, start: usize, end: usize) -> &'a str {
        &self.text[self.byte(start)..self.byte(end)]
    }

    fn error<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Stencil {
            position: column,
            message: message.into(),
        })
    }
}

fn is_operator_char(c: char) -> bool {
    matches!(c, '=' | '<' | '>' | '≤' | '≥' | '∈')
}

/// Parse one stencil such as `height > 180` into its attribute name and range.
pub fn parse_stencil_shorthand(text: &str) -> Result<(String, Stencil)> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();

    let start = cur.pos;
    while cur.peek().is_some_and(|c| !c.is_whitespace() && !is_operator_char(c)) {
        cur.pos += 1;
    }
    if cur.pos == start {
        return cur.error(cur.column(), "expected attribute name");
    }
    let name = cur.slice(start, cur.pos).to_owned();
    cur.skip_ws();

    let op_column = cur.column();
    let op = match cur.bump() {
        Some('=') => Op::Eq,
        Some('>') | Some('≥') => {
            if cur.peek() == Some('=') {
                cur.bump();
            }
            Op::Above
        }
        Some('<') | Some('≤') => {
            if cur.peek() == Some('=') {
                cur.bump();
            }
            Op::Below
        }
        Some('∈') => Op::In,
        Some('i') if cur.peek() == Some('n') => {
            cur.bump();
            if cur.peek().is_some_and(|c| !c.is_whitespace() && c != '[' && c != '{') {
                return cur.error(op_column, "expected one of =, <, >, <=, >=, in");
            }
            Op::In
        }
        Some(_) => return cur.error(op_column, "expected one of =, <, >, <=, >=, in"),
        None => return cur.error(op_column, "expected an operator after the attribute name"),
    };
    cur.skip_ws();

    let stencil = match op {
        Op::Eq => {
            let (value, quoted, column) = scalar(&mut cur, |_| false)?;
            if value.is_empty() {
                return cur.error(column, "expected a value");
            }
            match (quoted, value.parse::<f64>()) {
                (false, Ok(x)) if x.is_finite() => Stencil::Numeric(NumericRange::point(x)?),
                (false, Ok(_)) => return cur.error(column, "numeric value must be finite"),
                _ => Stencil::Discrete(DiscreteSet::singleton(value)),
            }
        }
        Op::Above | Op::Below => {
            let (value, _, column) = scalar(&mut cur, |_| false)?;
            let x = finite_number(&cur, &value, column)?;
            Stencil::Numeric(if op == Op::Above {
                NumericRange::at_least(x)?
            } else {
                NumericRange::at_most(x)?
            })
        }
        Op::In => match cur.bump() {
            Some('[') => interval(&mut cur)?,
            Some('{') => set(&mut cur)?,
            _ => return cur.error(cur.column() - 1, "expected '[' or '{' after 'in'"),
        },
    };

    cur.skip_ws();
    if !cur.at_end() {
        return cur.error(cur.column(), "unexpected trailing input");
    }
    Ok((name, stencil))
}

/// Read a possibly quoted value up to `stop` (unquoted) or end of input.
/// Returns the text, whether it was quoted, and its column.
fn scalar(cur: &mut Cursor<'_>, stop: impl Fn(char) -> bool) -> Result<(String, bool, usize)> {
    cur.skip_ws();
    let column = cur.column();
    match cur.peek() {
        Some(q @ ('\'' | '"')) => {
            cur.bump();
            let start = cur.pos;
            while cur.peek().is_some_and(|c| c != q) {
                cur.pos += 1;
            }
            if cur.at_end() {
                return cur.error(column, "unterminated quoted value");
            }
            let value = cur.slice(start, cur.pos).to_owned();
            cur.bump();
            cur.skip_ws();
            Ok((value, true, column))
        }
        _ => {
            let start = cur.pos;
            while cur.peek().is_some_and(|c| !stop(c)) {
                cur.pos += 1;
            }
            Ok((cur.slice(start, cur.pos).trim().to_owned(), false, column))
        }
    }
}

fn finite_number(cur: &Cursor<'_>, value: &str, column: usize) -> Result<f64> {
    match value.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => cur.error(column, format!("expected a finite number, found {value:?}")),
    }
}

fn endpoint(cur: &Cursor<'_>, value: &str, column: usize) -> Result<f64> {
    match value {
        "inf" | "+inf" | "∞" | "+∞" | "infinity" => Ok(f64::INFINITY),
        "-inf" | "-∞" | "-infinity" | "−∞" => Ok(f64::NEG_INFINITY),
        _ => finite_number(cur, value, column),
    }
}

fn interval(cur: &mut Cursor<'_>) -> Result<Stencil> {
    let (lower, _, lower_col) = scalar(cur, |c| c == ',' || c == ']')?;
    if cur.bump() != Some(',') {
        return cur.error(cur.column().saturating_sub(1).max(1), "expected ',' in interval");
    }
    let (upper, _, upper_col) = scalar(cur, |c| c == ']')?;
    if cur.bump() != Some(']') {
        return cur.error(cur.column().saturating_sub(1).max(1), "expected ']' to close interval");
    }
    let a = endpoint(cur, &lower, lower_col)?;
    let b = endpoint(cur, &upper, upper_col)?;
    match NumericRange::new(a, b) {
        Ok(r) => Ok(Stencil::Numeric(r)),
        Err(e) => cur.error(lower_col, e.to_string()),
    }
}

fn set(cur: &mut Cursor<'_>) -> Result<Stencil> {
    let mut values = Vec::new();
    cur.skip_ws();
    if cur.peek() == Some('}') {
        cur.bump();
        return Ok(Stencil::Discrete(DiscreteSet::new()));
    }
    loop {
        let (value, _, column) = scalar(cur, |c| c == ',' || c == '}')?;
        if value.is_empty() {
            return cur.error(column, "expected a set element");
        }
        values.push(value);
        match cur.bump() {
            Some(',') => continue,
            Some('}') => break,
            _ => return cur.error(cur.column().saturating_sub(1).max(1), "expected ',' or '}'"),
        }
    }
    Ok(Stencil::Discrete(values.into_iter().collect()))
}
