//! Equation files.
//!
//! ```text
//! # comment
//! group wreath free=2 torsion=2,4
//! const c = (-2 + Z(1,0) + Z(0,1) ; (0,0))
//! word: [X1,X2] c^X3
//! ```
//!
//! Besides `wreath`, the group line accepts `baumslag`, `symmetric=<n>` and
//! `cyclic=<n>`. Baumslag constants read `(<Y-poly> / (1+Y)^k ; m, n)`,
//! permutations `[1,2,0]` and cyclic elements an integer.

use std::collections::HashMap;
use std::fmt;

use crate::abelian::AbelianGroup;
use crate::baumslag::BaumslagElement;
use crate::error::ParseError;
use crate::group::{Cyclic, GroupElem, Perm};
use crate::text::Cursor;
use crate::words::{parse_at, EquationWord};
use crate::wreath::WreathElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Wreath(AbelianGroup),
    Baumslag,
    Symmetric(usize),
    Cyclic(u32),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Wreath(b) => {
                write!(f, "wreath free={}", b.free_rank())?;
                if !b.torsion().is_empty() {
                    let t: Vec<String> = b.torsion().iter().map(i64::to_string).collect();
                    write!(f, " torsion={}", t.join(","))?;
                }
                Ok(())
            }
            GroupSpec::Baumslag => f.write_str("baumslag"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric={n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic={n}"),
        }
    }
}

/// Named constants and the equation over one group.
#[derive(Clone, Debug)]
pub struct Problem<G> {
    pub constants: Vec<(String, G)>,
    pub word: EquationWord<G>,
}

impl<G: GroupElem> Problem<G> {
    pub fn name_of(&self, g: &G) -> Option<String> {
        self.constants.iter().find(|(_, c)| c == g).map(|(n, _)| n.clone())
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Wreath(AbelianGroup, Problem<WreathElement>),
    Baumslag(Problem<BaumslagElement>),
    Symmetric(usize, Problem<Perm>),
    Cyclic(u32, Problem<Cyclic>),
}

/// Parses a group description such as `wreath free=2 torsion=2,4`, `free=3`
/// or `baumslag`. The leading `wreath` may be omitted.
pub fn parse_group_spec(src: &str) -> Result<GroupSpec, ParseError> {
    parse_group_at(src, 1, 1)
}

fn parse_group_at(src: &str, line: usize, col: usize) -> Result<GroupSpec, ParseError> {
    let err = |offset: usize, msg: String| ParseError::new(col + offset, msg).at_line(line);
    let mut free = None;
    let mut torsion = Vec::new();
    let mut kind = None;
    for (offset, tok) in tokens(src) {
        let (key, value) = match tok.split_once('=') {
            Some((k, v)) => (k, Some(v)),
            None => (tok, None),
        };
        let number = |v: Option<&str>| -> Result<i64, ParseError> {
            let v = v.ok_or_else(|| err(offset, format!("'{key}' needs a value")))?;
            v.parse()
                .map_err(|_| err(offset + key.len() + 1, format!("bad number '{v}'")))
        };
        match key {
            "wreath" if value.is_none() => {}
            "baumslag" if value.is_none() => kind = Some(GroupSpec::Baumslag),
            "free" => {
                let d = number(value)?;
                if d < 0 {
                    return Err(err(offset, "free rank must be nonnegative".into()));
                }
                free = Some(d as usize);
            }
            "torsion" => {
                let v = value.unwrap_or("");
                if !v.is_empty() {
                    for part in v.split(',') {
                        torsion.push(
                            part.trim()
                                .parse()
                                .map_err(|_| err(offset, format!("bad torsion order '{part}'")))?,
                        );
                    }
                }
            }
            "symmetric" => {
                let n = number(value)?;
                if !(1..=8).contains(&n) {
                    return Err(err(offset, "symmetric degree must be between 1 and 8".into()));
                }
                kind = Some(GroupSpec::Symmetric(n as usize));
            }
            "cyclic" => {
                let n = number(value)?;
                if !(1..=1 << 20).contains(&n) {
                    return Err(err(offset, "cyclic order out of range".into()));
                }
                kind = Some(GroupSpec::Cyclic(n as u32));
            }
            _ => return Err(err(offset, format!("unknown group option '{tok}'"))),
        }
    }
    if let Some(k) = kind {
        return Ok(k);
    }
    let free = free.ok_or_else(|| err(0, "missing free=<rank>".into()))?;
    let b = AbelianGroup::new(free, torsion).map_err(|e| err(0, e.to_string()))?;
    Ok(GroupSpec::Wreath(b))
}

/// Whitespace separated tokens with their character offsets.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut chars = 0;
    for (byte, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((byte, chars)),
            (true, Some((b, ch))) => {
                out.push((ch, &s[b..byte]));
                start = None;
            }
            _ => {}
        }
        chars += 1;
    }
    if let Some((b, ch)) = start {
        out.push((ch, &s[b..]));
    }
    out
}

fn parse_perm(n: usize, cur: &mut Cursor) -> Result<Perm, ParseError> {
    cur.skip_ws();
    let col = cur.column();
    cur.expect('[')?;
    let mut images = Vec::new();
    if !cur.eat(']') {
        loop {
            let v = cur.uint()?;
            images.push(u8::try_from(v).map_err(|_| cur.error("image out of range"))?);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    match Perm::new(images) {
        Some(p) if p.degree() == n => Ok(p),
        _ => Err(cur.error_at(col, format!("not a permutation of {{0..{}}}", n - 1))),
    }
}

/// A permutation of `{0..n-1}` written `[1,2,0]`.
pub fn parse_perm_element(n: usize, src: &str) -> Result<Perm, ParseError> {
    let mut cur = Cursor::new(src);
    let p = parse_perm(n, &mut cur)?;
    cur.finish()?;
    Ok(p)
}

/// An element of `Z/n` written as an integer.
pub fn parse_cyclic_element(n: u32, src: &str) -> Result<Cyclic, ParseError> {
    let mut cur = Cursor::new(src);
    let k = cur.int()?;
    cur.finish()?;
    Ok(Cyclic::new(n, k))
}

struct Lines<'a> {
    rows: Vec<(usize, usize, &'a str)>,
}

/// Parses an equation file.
pub fn parse_problem(src: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines { rows: Vec::new() };
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let indent = text.chars().take_while(|c| c.is_whitespace()).count();
        let body = text.trim();
        if !body.is_empty() {
            lines.rows.push((i + 1, indent + 1, body));
        }
    }
    let Some(&(line, col, first)) = lines.rows.first() else {
        return Err(ParseError::new(1, "empty equation file"));
    };
    let Some(rest) = first.strip_prefix("group") else {
        return Err(ParseError::new(col, "expected 'group' line first").at_line(line));
    };
    let spec = parse_group_at(rest, line, col + 5)?;
    Ok(match spec {
        GroupSpec::Wreath(b) => {
            let p = lines.problem(|cur| WreathElement::parse_from(&b, cur))?;
            Instance::Wreath(b, p)
        }
        GroupSpec::Baumslag => Instance::Baumslag(lines.problem(BaumslagElement::parse_from)?),
        GroupSpec::Symmetric(n) => Instance::Symmetric(n, lines.problem(|cur| parse_perm(n, cur))?),
        GroupSpec::Cyclic(n) => Instance::Cyclic(n, lines.problem(|cur| Ok(Cyclic::new(n, cur.int()?)))?),
    })
}

impl Lines<'_> {
    fn problem<G, F>(&self, mut element: F) -> Result<Problem<G>, ParseError>
    where
        G: GroupElem,
        F: FnMut(&mut Cursor) -> Result<G, ParseError>,
    {
        let mut constants: Vec<(String, G)> = Vec::new();
        let mut table: HashMap<String, G> = HashMap::new();
        let mut word = None;
        for &(line, col, body) in &self.rows[1..] {
            if let Some(rest) = body.strip_prefix("const") {
                let mut cur = Cursor::at(rest, line, col + 5);
                cur.skip_ws();
                let name_col = cur.column();
                let name = cur.ident().ok_or_else(|| cur.error("expected a constant name"))?;
                if name.starts_with('X') && name[1..].bytes().all(|b| b.is_ascii_digit()) {
                    return Err(cur.error_at(name_col, format!("'{name}' is a variable name")));
                }
                if table.contains_key(&name) {
                    return Err(cur.error_at(name_col, format!("constant '{name}' defined twice")));
                }
                cur.expect('=')?;
                let g = element(&mut cur)?;
                cur.finish()?;
                table.insert(name.clone(), g.clone());
                constants.push((name, g));
            } else if let Some(rest) = body.strip_prefix("word") {
                let mut cur = Cursor::at(rest, line, col + 4);
                cur.expect(':')?;
                if word.is_some() {
                    return Err(ParseError::new(col, "more than one word line").at_line(line));
                }
                word = Some(parse_at(&mut cur, &table)?);
            } else {
                return Err(ParseError::new(col, "expected 'const' or 'word'").at_line(line));
            }
        }
        let last = self.rows.last().map_or(1, |r| r.0);
        let word = word.ok_or_else(|| ParseError::new(1, "missing 'word:' line").at_line(last))?;
        Ok(Problem { constants, word })
    }
}
