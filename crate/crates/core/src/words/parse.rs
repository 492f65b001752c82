use std::collections::HashMap;

use super::{EquationWord, Letter};
use crate::error::ParseError;
use crate::group::GroupElem;
use crate::text::Cursor;

/// Parses an equation word.
///
/// ```text
/// expr    := factor ('*'? factor)*
/// factor  := primary ('^' (INT | '-' INT | primary))*
/// primary := 'X' INT | name | '[' expr ',' expr ']' | '(' expr ')' | '1'
/// ```
///
/// `a^b` is `b^-1 a b`, `[a,b]` is `a^-1 b^-1 a b`, and integer exponents
/// are expanded into repeated letters.
pub fn parse_word<G: GroupElem>(
    src: &str,
    constants: &HashMap<String, G>,
) -> Result<EquationWord<G>, ParseError> {
    let mut cur = Cursor::new(src);
    let w = parse_at(&mut cur, constants)?;
    Ok(w)
}

pub(crate) fn parse_at<G: GroupElem>(
    cur: &mut Cursor,
    constants: &HashMap<String, G>,
) -> Result<EquationWord<G>, ParseError> {
    let w = expr(cur, constants)?;
    cur.finish()?;
    Ok(w)
}

fn expr<G: GroupElem>(cur: &mut Cursor, k: &HashMap<String, G>) -> Result<EquationWord<G>, ParseError> {
    let mut w = factor(cur, k)?;
    loop {
        cur.eat('*');
        match cur.peek() {
            None | Some(',') | Some(']') | Some(')') => return Ok(w),
            _ => w = w.concat(&factor(cur, k)?),
        }
    }
}

fn factor<G: GroupElem>(cur: &mut Cursor, k: &HashMap<String, G>) -> Result<EquationWord<G>, ParseError> {
    let mut w = primary(cur, k)?;
    while cur.eat('^') {
        match cur.peek() {
            Some(c) if c == '-' || c == '+' || c.is_ascii_digit() => {
                let n = cur.int()?;
                let base = if n < 0 { w.inverse() } else { w };
                let mut out = EquationWord::empty();
                for _ in 0..n.unsigned_abs() {
                    out = out.concat(&base);
                }
                w = out;
            }
            _ => {
                let b = primary(cur, k)?;
                w = b.inverse().concat(&w).concat(&b);
            }
        }
    }
    Ok(w)
}

fn primary<G: GroupElem>(cur: &mut Cursor, k: &HashMap<String, G>) -> Result<EquationWord<G>, ParseError> {
    match cur.peek() {
        Some('[') => {
            cur.expect('[')?;
            let a = expr(cur, k)?;
            cur.expect(',')?;
            let b = expr(cur, k)?;
            cur.expect(']')?;
            Ok(a.inverse().concat(&b.inverse()).concat(&a).concat(&b))
        }
        Some('(') => {
            cur.expect('(')?;
            let a = expr(cur, k)?;
            cur.expect(')')?;
            Ok(a)
        }
        Some('1') => {
            cur.expect('1')?;
            Ok(EquationWord::empty())
        }
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let col = cur.column();
            let name = cur.ident().expect("identifier start checked");
            if let Some(id) = variable_index(&name) {
                if id == 0 {
                    return Err(cur.error_at(col, "variable indices start at 1"));
                }
                return Ok(EquationWord::new(vec![Letter::var(id)]));
            }
            match k.get(&name) {
                Some(c) => Ok(EquationWord::new(vec![Letter::Const(c.clone())])),
                None => Err(cur.error_at(col, format!("unknown constant '{name}'"))),
            }
        }
        Some(c) => Err(cur.error(format!("unexpected '{c}'"))),
        None => Err(cur.error("unexpected end of input")),
    }
}

fn variable_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('X')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().or(Some(u32::MAX))
}
