//! The wreath product `Z wr Q = Z[Q] x| Q`.

use std::fmt;

use crate::abelian::{AbelianGroup, GroupElement};
use crate::error::{ParseError, Result};
use crate::group::GroupElem;
use crate::groupring::RingElement;
use crate::text::Cursor;

/// The pair `(f, b)`. Multiplication is
/// `(f, b)(f', b') = (f Z^{b'} + f', b + b')`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    poly: RingElement,
    point: GroupElement,
}

impl WreathElement {
    pub fn new(poly: RingElement, point: GroupElement) -> Self {
        assert!(poly.group().contains(&point), "point outside the top group");
        WreathElement { poly, point }
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        WreathElement {
            poly: RingElement::zero(group),
            point: group.zero(),
        }
    }

    /// `(f, 0)`.
    pub fn base(poly: RingElement) -> Self {
        let point = poly.group().zero();
        WreathElement { poly, point }
    }

    /// `(0, b)`.
    pub fn top(group: &AbelianGroup, point: GroupElement) -> Self {
        WreathElement::new(RingElement::zero(group), point)
    }

    pub fn group(&self) -> &AbelianGroup {
        self.poly.group()
    }

    pub fn poly(&self) -> &RingElement {
        &self.poly
    }

    pub fn point(&self) -> &GroupElement {
        &self.point
    }

    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        WreathElement {
            poly: self.poly.translate(&other.point).add(&other.poly),
            point: self.group().add(&self.point, &other.point),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        let g = self.group();
        let back = g.neg(&self.point);
        WreathElement {
            poly: self.poly.translate(&back).neg(),
            point: back,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.poly.is_zero() && self.point.is_zero()
    }

    /// `x^{-1} y^{-1} x y`, via `((1 - Z^t) f' - (1 - Z^{t'}) f, 0)`.
    pub fn commutator(&self, other: &WreathElement) -> WreathElement {
        let g = self.group();
        let one = RingElement::one(g);
        let a = one.sub(&RingElement::monomial(g, 1, self.point.clone())).mul(&other.poly);
        let b = one.sub(&RingElement::monomial(g, 1, other.point.clone())).mul(&self.poly);
        let out = WreathElement::base(a.sub(&b));
        debug_assert_eq!(
            out,
            self.inverse().mul(&other.inverse()).mul(self).mul(other)
        );
        out
    }

    /// `by^{-1} x by`.
    pub fn conjugate(&self, by: &WreathElement) -> WreathElement {
        by.inverse().mul(self).mul(by)
    }

    /// Image in `Z + Q`: augmentation and point.
    pub fn abelianize(&self) -> (i64, GroupElement) {
        (self.poly.augmentation(), self.point.clone())
    }

    /// Parses `(<ring element> ; (<ints>))`.
    pub fn parse(group: &AbelianGroup, src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src);
        let x = WreathElement::parse_from(group, &mut cur)?;
        cur.finish()?;
        Ok(x)
    }

    pub(crate) fn parse_from(group: &AbelianGroup, cur: &mut Cursor) -> Result<Self, ParseError> {
        cur.expect('(')?;
        let poly = RingElement::parse_from(group, cur)?;
        cur.expect(';')?;
        cur.peek();
        let col = cur.column();
        let v = cur.int_tuple()?;
        let point = group.element(v).map_err(|e| {
            let mut p = cur.error(e.to_string());
            p.column = col;
            p
        })?;
        cur.expect(')')?;
        Ok(WreathElement { poly, point })
    }
}

impl GroupElem for WreathElement {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn is_identity(&self) -> bool {
        WreathElement::is_identity(self)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.poly, self.point)
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
