//! Baumslag's metabelian group `<a, t, u | [t,u], [a,a^t], a^u = a a^t>`.
//!
//! Elements are triples `(q, m, n)` with `q` in
//! `K = Z[Y, Y^-1, (1+Y)^-1]` and `(m, n)` the exponents of `t` and `u`.
//! `t` acts on `K` by `Y` and `u` by `1+Y`, on the right:
//! `(q,m,n)(q',m',n') = (q Y^{m'} (1+Y)^{n'} + q', m+m', n+n')`.

mod solver;

use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::{quotient, AbelianGroup, GroupElement, QuotientMap};
use crate::error::ParseError;
use crate::group::GroupElem;
use crate::text::Cursor;

pub use solver::{solve_quadratic_baumslag, solve_spherical_baumslag, sparse_exponent_bound, LaurentShift};

/// Integer Laurent polynomial in `Y`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        LaurentPoly(m)
    }

    /// `1 + Y`.
    pub fn one_plus_y() -> Self {
        LaurentPoly([(0, 1), (1, 1)].into())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> &BTreeMap<i64, i64> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&e, &c) in &self.0 {
            for (&e2, &c2) in &other.0 {
                out.add_term(e + e2, c * c2);
            }
        }
        out
    }

    /// Multiplication by `Y^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }

    /// Multiplication by `(1+Y)^b`, `b >= 0`.
    pub fn mul_one_plus_y_pow(&self, b: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..b {
            out = out.add(&out.shift(1));
        }
        out
    }

    /// Value at `Y = -1`; zero exactly when `1+Y` divides.
    pub fn eval_minus_one(&self) -> i64 {
        self.0
            .iter()
            .map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// Exact quotient by `1+Y`, if it exists.
    pub fn div_one_plus_y(&self) -> Option<Self> {
        let (&lo, _) = self.0.first_key_value()?;
        let (&hi, _) = self.0.last_key_value().expect("nonempty");
        let mut out = LaurentPoly::zero();
        let mut prev = 0;
        for e in lo..hi {
            let g = self.0.get(&e).copied().unwrap_or(0) - prev;
            out.add_term(e, g);
            prev = g;
        }
        (self.0[&hi] == prev).then_some(out)
    }

    fn parse_from(cur: &mut Cursor) -> Result<Self, ParseError> {
        let mut p = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match cur.peek() {
                Some('+') if !first => {
                    cur.eat('+');
                    1
                }
                Some('-') => {
                    cur.eat('-');
                    -1
                }
                _ if first => 1,
                _ => return Ok(p),
            };
            let coef = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                let c = cur.uint()?;
                if cur.peek() == Some('*') {
                    cur.eat('*');
                    if cur.peek() != Some('Y') {
                        return Err(cur.error("expected 'Y' after '*'"));
                    }
                }
                Some(c)
            } else {
                None
            };
            let exp = if cur.eat('Y') {
                if cur.eat('^') {
                    cur.int()?
                } else {
                    1
                }
            } else if coef.is_none() {
                return Err(match cur.peek() {
                    Some(c) => cur.error(format!("expected a term, found '{c}'")),
                    None => cur.error("expected a term, found end of input"),
                });
            } else {
                0
            };
            p.add_term(exp, sign * coef.unwrap_or(1));
            first = false;
        }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src);
        let p = LaurentPoly::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.0.iter().enumerate() {
            let a = c.abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("Y")?,
                (1, _) => write!(f, "{a}*Y")?,
                (_, 1) => write!(f, "Y^{e}")?,
                _ => write!(f, "{a}*Y^{e}")?,
            }
        }
        Ok(())
    }
}

/// `num / (1+Y)^k`, kept reduced: `k = 0` or `1+Y` does not divide `num`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LocalizedPoly {
    num: LaurentPoly,
    k: u32,
}

impl LocalizedPoly {
    pub fn new(num: LaurentPoly, k: u32) -> Self {
        let mut x = LocalizedPoly { num, k };
        x.reduce();
        x
    }

    pub fn zero() -> Self {
        LocalizedPoly::default()
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        LocalizedPoly { num, k: 0 }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom_exp(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.num.eval_minus_one() == 0 {
            self.num = self.num.div_one_plus_y().expect("root at -1");
            self.k -= 1;
        }
    }

    /// Numerator over `(1+Y)^k` for a `k` at least the current exponent.
    pub fn numerator_over(&self, k: u32) -> LaurentPoly {
        assert!(k >= self.k);
        self.num.mul_one_plus_y_pow(k - self.k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        LocalizedPoly::new(self.numerator_over(k).add(&other.numerator_over(k)), k)
    }

    pub fn neg(&self) -> Self {
        LocalizedPoly {
            num: self.num.neg(),
            k: self.k,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        LocalizedPoly::new(self.num.mul(&other.num), self.k + other.k)
    }

    /// Multiplication by the unit `Y^m (1+Y)^n`.
    pub fn act(&self, m: i64, n: i64) -> Self {
        let num = self.num.shift(m);
        if n >= 0 {
            LocalizedPoly::new(num.mul_one_plus_y_pow(n as u32), self.k)
        } else {
            LocalizedPoly::new(num, self.k + n.unsigned_abs() as u32)
        }
    }

    fn parse_from(cur: &mut Cursor) -> Result<Self, ParseError> {
        let num = LaurentPoly::parse_from(cur)?;
        if !cur.eat('/') {
            return Ok(LocalizedPoly::new(num, 0));
        }
        for c in ['(', '1', '+', 'Y', ')'] {
            cur.expect(c)?;
        }
        let k = if cur.eat('^') { cur.uint()? } else { 1 };
        let k = u32::try_from(k).map_err(|_| cur.error("denominator exponent out of range"))?;
        Ok(LocalizedPoly::new(num, k))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src);
        let p = LocalizedPoly::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(p)
    }
}

impl fmt::Display for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.num),
            k => write!(f, "{} / (1+Y)^{k}", self.num),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct BaumslagElement {
    pub q: LocalizedPoly,
    pub m: i64,
    pub n: i64,
}

impl BaumslagElement {
    pub fn new(q: LocalizedPoly, m: i64, n: i64) -> Self {
        BaumslagElement { q, m, n }
    }

    pub fn identity() -> Self {
        BaumslagElement::default()
    }

    pub fn a() -> Self {
        BaumslagElement::new(LocalizedPoly::from_laurent(LaurentPoly::constant(1)), 0, 0)
    }

    pub fn t() -> Self {
        BaumslagElement::new(LocalizedPoly::zero(), 1, 0)
    }

    pub fn u() -> Self {
        BaumslagElement::new(LocalizedPoly::zero(), 0, 1)
    }

    /// `(q, 0, 0)`.
    pub fn from_kernel(q: LocalizedPoly) -> Self {
        BaumslagElement::new(q, 0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        BaumslagElement {
            q: self.q.act(other.m, other.n).add(&other.q),
            m: self.m + other.m,
            n: self.n + other.n,
        }
    }

    pub fn inverse(&self) -> Self {
        BaumslagElement {
            q: self.q.act(-self.m, -self.n).neg(),
            m: -self.m,
            n: -self.n,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.n == 0 && self.q.is_zero()
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `by^-1 self by`.
    pub fn conjugate(&self, by: &Self) -> Self {
        by.inverse().mul(self).mul(by)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(BaumslagElement::identity(), |acc, _| acc.mul(&base))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src);
        let x = BaumslagElement::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(x)
    }

    pub(crate) fn parse_from(cur: &mut Cursor) -> Result<Self, ParseError> {
        cur.expect('(')?;
        let q = LocalizedPoly::parse_from(cur)?;
        cur.expect(';')?;
        let m = cur.int()?;
        cur.expect(',')?;
        let n = cur.int()?;
        cur.expect(')')?;
        Ok(BaumslagElement { q, m, n })
    }
}

impl fmt::Display for BaumslagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {}, {})", self.q, self.m, self.n)
    }
}

impl GroupElem for BaumslagElement {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_identity(&self) -> bool {
        BaumslagElement::is_identity(self)
    }
}

/// Abelianization of the presentation, from the relator exponent sums over
/// the generators `a, t, u`.
pub fn abelianization() -> QuotientMap {
    let z3 = AbelianGroup::free(3);
    // [t,u] and [a,a^t] have zero exponent sums; u^-1 a u (a a^t)^-1 gives -a.
    let relators = [vec![0, 0, 0], vec![0, 0, 0], vec![-1, 0, 0]];
    quotient(&z3, relators.into_iter().map(|r| z3.element(r).expect("rank 3")).collect())
}

/// Image in the abelianization. `K` is the normal closure of `a`, which dies.
pub fn abelianize(x: &BaumslagElement, ab: &QuotientMap) -> GroupElement {
    let z3 = ab.source();
    ab.project(&z3.element(vec![0, x.m, x.n]).expect("rank 3"))
}

/// `x, y` with `[x, y] = (q, 0, 0)`.
pub fn baumslag_commutator_witness(q: &LocalizedPoly) -> (BaumslagElement, BaumslagElement) {
    if q.is_zero() {
        return (BaumslagElement::identity(), BaumslagElement::identity());
    }
    // [(f,1,0),(0,0,1)] = (Y f, 0, 0)
    let x = BaumslagElement::new(q.act(-1, 0), 1, 0);
    (x, BaumslagElement::u())
}
