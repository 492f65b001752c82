//! Sparse elements of the integral group ring `Z[Q]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::{AbelianGroup, GroupElement, QuotientMap, Subgroup};
use crate::error::{Error, ParseError, Result};
use crate::text::Cursor;

/// A finite integer combination of group elements, `sum c_g Z^g`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    group: AbelianGroup,
    terms: BTreeMap<GroupElement, i64>,
}

impl RingElement {
    pub fn zero(group: &AbelianGroup) -> Self {
        RingElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(group: &AbelianGroup, c: i64) -> Self {
        RingElement::monomial(group, c, group.zero())
    }

    pub fn one(group: &AbelianGroup) -> Self {
        RingElement::constant(group, 1)
    }

    /// `c * Z^g`.
    pub fn monomial(group: &AbelianGroup, c: i64, g: GroupElement) -> Self {
        let mut r = RingElement::zero(group);
        r.add_term(g, c);
        r
    }

    /// Builds an element from `(coords, coefficient)` pairs, reducing the
    /// coordinates and merging repeated points.
    pub fn from_terms<I>(group: &AbelianGroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, i64)>,
    {
        let mut r = RingElement::zero(group);
        for (v, c) in terms {
            let g = group.element(v)?;
            r.add_term(g, c);
        }
        Ok(r)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, i64> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn coefficient(&self, g: &GroupElement) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, g: GroupElement, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &RingElement) {
        assert_eq!(
            self.group, other.group,
            "group ring elements over different groups"
        );
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        let mut r = self.clone();
        for (g, &c) in &other.terms {
            r.add_term(g.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        let mut r = self.clone();
        for (g, &c) in &other.terms {
            r.add_term(g.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> RingElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> RingElement {
        if k == 0 {
            return RingElement::zero(&self.group);
        }
        RingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, &c)| (g.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.same_ring(other);
        let mut r = RingElement::zero(&self.group);
        for (g, &c) in &self.terms {
            for (h, &d) in &other.terms {
                r.add_term(self.group.add(g, h), c * d);
            }
        }
        r
    }

    /// Multiplication by the monomial `Z^u`.
    pub fn translate(&self, u: &GroupElement) -> RingElement {
        RingElement {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, &c)| (self.group.add(g, u), c))
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Image under `Z[G] -> Z[G/L]`.
    pub fn project(&self, q: &QuotientMap) -> RingElement {
        assert_eq!(&self.group, q.source(), "projection from a different group");
        let mut r = RingElement::zero(q.target());
        for (g, &c) in &self.terms {
            r.add_term(q.project(g), c);
        }
        r
    }

    /// Whether the element lies in the kernel of `Z[G] -> Z[G/L]`, i.e.
    /// every coset of `L` has coefficient sum zero.
    pub fn in_varpi(&self, l: &Subgroup) -> bool {
        assert_eq!(&self.group, l.ambient(), "subgroup of a different group");
        self.project(&QuotientMap::new(l)).is_zero()
    }

    /// The `g` with `(1 - Z^t) g = self`.
    ///
    /// Coefficients are accumulated along each coset of `<t>` starting from a
    /// canonical base point; for `t` of finite order `m` this yields the
    /// solution vanishing at the last of the `m` positions.
    pub fn divide_one_minus_monomial(&self, t: &GroupElement) -> Result<RingElement> {
        let group = &self.group;
        if t.is_zero() {
            return Err(Error::DegenerateDivisor);
        }
        // coset base point -> (position along the coset -> coefficient)
        let mut cosets: BTreeMap<GroupElement, BTreeMap<i64, i64>> = BTreeMap::new();
        match group.order(t) {
            None => {
                let i = group
                    .free_part(t)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("infinite order has a free coordinate");
                let ti = t.coords()[i];
                for (g, &c) in &self.terms {
                    let k = g.coords()[i].div_euclid(ti);
                    let base = group.sub(g, &group.scale(t, k));
                    cosets.entry(base).or_default().insert(k, c);
                }
            }
            Some(m) => {
                for (g, &c) in &self.terms {
                    let orbit: Vec<GroupElement> =
                        (0..m).map(|k| group.sub(g, &group.scale(t, k))).collect();
                    let (k, base) = orbit
                        .into_iter()
                        .enumerate()
                        .min_by(|a, b| a.1.cmp(&b.1))
                        .expect("orbit is nonempty");
                    cosets.entry(base).or_default().insert(k as i64, c);
                }
            }
        }
        let mut out = RingElement::zero(group);
        for (base, line) in &cosets {
            if line.values().sum::<i64>() != 0 {
                return Err(Error::NotDivisible);
            }
            let lo = *line.keys().next().expect("nonempty coset");
            let hi = *line.keys().next_back().expect("nonempty coset");
            let mut acc = 0;
            for k in lo..hi {
                acc += line.get(&k).copied().unwrap_or(0);
                out.add_term(group.add(base, &group.scale(t, k)), acc);
            }
        }
        debug_assert_eq!(
            RingElement::one(group)
                .sub(&RingElement::monomial(group, 1, t.clone()))
                .mul(&out),
            *self
        );
        Ok(out)
    }

    /// Some preimage under the projection `q`, taken pointwise through the
    /// section of `q`.
    pub fn lift(&self, q: &QuotientMap) -> RingElement {
        assert_eq!(&self.group, q.target(), "lifting from a different group");
        let mut r = RingElement::zero(q.source());
        for (g, &c) in &self.terms {
            r.add_term(q.section(g), c);
        }
        r
    }

    /// Largest spread `max - min` of a free coordinate over the support.
    pub fn support_diameter(&self) -> Result<i64> {
        let (lo, hi) = self.free_bounds()?;
        Ok(lo.iter().zip(&hi).map(|(a, b)| b - a).max().unwrap_or(0))
    }

    /// Coordinatewise minimum and maximum of the free part of the support.
    pub fn free_bounds(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let r = self.group.free_rank();
        let mut lo = vec![i64::MAX; r];
        let mut hi = vec![i64::MIN; r];
        for g in self.terms.keys() {
            for (i, &x) in self.group.free_part(g).iter().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        Ok((lo, hi))
    }

    /// Parses the canonical text form, e.g. `1 - 2*Z(1,0) + Z(0,3)`.
    pub fn parse(group: &AbelianGroup, src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src);
        let r = RingElement::parse_from(group, &mut cur)?;
        cur.finish()?;
        Ok(r)
    }

    pub(crate) fn parse_from(group: &AbelianGroup, cur: &mut Cursor) -> Result<Self, ParseError> {
        let mut r = RingElement::zero(group);
        let mut first = true;
        loop {
            let sign = if cur.eat('-') {
                -1
            } else if cur.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let (c, g) = parse_term(group, cur)?;
            r.add_term(g, sign * c);
        }
        Ok(r)
    }
}

/// Writes `x = sum_j (1 - Z^{t_j}) g_j` for `x` in the ideal generated by
/// the `1 - Z^{t_j}`.
///
/// Works down the chain `G / <t_{j+1}, ..>`: at step `j` the image of the
/// remainder is divisible by `1 - Z^{t_j}` in the group ring of that quotient.
pub fn decompose_in_varpi(x: &RingElement, gens: &[GroupElement]) -> Result<Vec<RingElement>> {
    let g = x.group();
    let mut rest = x.clone();
    let mut out = Vec::with_capacity(gens.len());
    let one = RingElement::one(g);
    for j in 0..gens.len() {
        let q = QuotientMap::new(&Subgroup::new(g, gens[j + 1..].to_vec()));
        let img = rest.project(&q);
        let tj = q.project(&gens[j]);
        let gj = if tj.is_zero() {
            if !img.is_zero() {
                return Err(Error::NotDivisible);
            }
            RingElement::zero(g)
        } else {
            img.divide_one_minus_monomial(&tj)?.lift(&q)
        };
        rest = rest.sub(&one.sub(&RingElement::monomial(g, 1, gens[j].clone())).mul(&gj));
        out.push(gj);
    }
    if !rest.is_zero() {
        return Err(Error::NotDivisible);
    }
    Ok(out)
}

fn parse_term(group: &AbelianGroup, cur: &mut Cursor) -> Result<(i64, GroupElement), ParseError> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let k = cur.uint()?;
            if cur.eat('*') {
                Ok((k, parse_monomial(group, cur)?))
            } else {
                Ok((k, group.zero()))
            }
        }
        Some('Z') => Ok((1, parse_monomial(group, cur)?)),
        Some(c) => Err(cur.error(format!("expected a term, found '{c}'"))),
        None => Err(cur.error("expected a term, found end of input")),
    }
}

fn parse_monomial(group: &AbelianGroup, cur: &mut Cursor) -> Result<GroupElement, ParseError> {
    cur.expect('Z')?;
    let col = cur.column();
    let v = cur.int_tuple()?;
    group.element(v).map_err(|e| {
        let mut p = cur.error(e.to_string());
        p.column = col;
        p
    })
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, &c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if g.is_zero() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "Z{g}")?;
            } else {
                write!(f, "{a}*Z{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::quotient;
    use proptest::prelude::*;

    fn z2() -> AbelianGroup {
        AbelianGroup::free(2)
    }

    fn p(g: &AbelianGroup, s: &str) -> RingElement {
        RingElement::parse(g, s).unwrap()
    }

    fn el(g: &AbelianGroup, v: &[i64]) -> GroupElement {
        g.element(v.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let g = z2();
        assert!(p(&g, "1 + Z(1,0)").add(&p(&g, "-1 - Z(1,0)")).is_zero());
        assert_eq!(
            p(&g, "1 - Z(1,0)").mul(&p(&g, "1 + Z(1,0)")),
            p(&g, "1 - Z(2,0)")
        );
        let c2 = AbelianGroup::new(0, vec![2]).unwrap();
        assert!(p(&c2, "1 + Z(1)").mul(&p(&c2, "1 - Z(1)")).is_zero());
    }

    #[test]
    fn translate_examples() {
        let g = z2();
        let f = p(&g, "1 + Z(1,0)");
        assert_eq!(f.translate(&el(&g, &[1, 0])), p(&g, "Z(1,0) + Z(2,0)"));
        assert_eq!(f.translate(&g.zero()), f);
        let u = el(&g, &[3, -2]);
        assert_eq!(f.translate(&u).translate(&g.neg(&u)), f);
    }

    #[test]
    fn augmentation_examples() {
        let g = z2();
        assert_eq!(p(&g, "2 - Z(1,0) - Z(0,1)").augmentation(), 0);
        assert_eq!(RingElement::zero(&g).augmentation(), 0);
        assert_eq!(p(&g, "3 + Z(1,0)").augmentation(), 4);
    }

    #[test]
    fn project_examples() {
        let g = z2();
        let kill_x = quotient(&g, vec![el(&g, &[1, 0])]);
        assert!(p(&g, "1 - Z(1,0)").project(&kill_x).is_zero());
        let img = p(&g, "1 - Z(0,1)").project(&kill_x);
        assert_eq!(img.group(), &AbelianGroup::free(1));
        assert_eq!(img.augmentation(), 0);
        assert_eq!(img.len(), 2);
        let kill_2y = quotient(&g, vec![el(&g, &[0, 2])]);
        let img = p(&g, "1 + Z(0,2)").project(&kill_2y);
        assert_eq!(img.group(), &AbelianGroup::new(1, vec![2]).unwrap());
        assert_eq!(img, RingElement::constant(img.group(), 2));
    }

    #[test]
    fn varpi_examples() {
        let g = z2();
        let l = Subgroup::new(&g, vec![el(&g, &[0, 2])]);
        assert!(p(&g, "1 - Z(0,2)").in_varpi(&l));
        assert!(!p(&g, "1 - Z(0,1)").in_varpi(&l));
        assert!(RingElement::zero(&g).in_varpi(&l));
    }

    #[test]
    fn division_examples() {
        let g = z2();
        let q = p(&g, "1 - Z(2,0)").divide_one_minus_monomial(&el(&g, &[1, 0])).unwrap();
        assert_eq!(q, p(&g, "1 + Z(1,0)"));
        assert!(matches!(
            p(&g, "1").divide_one_minus_monomial(&g.zero()),
            Err(Error::DegenerateDivisor)
        ));
        assert!(matches!(
            p(&g, "1 - Z(0,1)").divide_one_minus_monomial(&el(&g, &[1, 0])),
            Err(Error::NotDivisible)
        ));
        let h = AbelianGroup::new(1, vec![3]).unwrap();
        let t = el(&h, &[0, 1]);
        let q = p(&h, "1 - Z(0,1)").divide_one_minus_monomial(&t).unwrap();
        assert_eq!(q, RingElement::one(&h));
    }

    #[test]
    fn diameter_examples() {
        let g = z2();
        assert_eq!(p(&g, "1 + Z(1,0)").support_diameter().unwrap(), 1);
        assert_eq!(p(&g, "-4*Z(2,-7)").support_diameter().unwrap(), 0);
        assert_eq!(p(&g, "1 + Z(3,1)").support_diameter().unwrap(), 3);
        assert!(RingElement::zero(&g).support_diameter().is_err());
    }

    #[test]
    fn text_is_canonical() {
        let g = z2();
        let f = p(&g, "1 - 2*Z(1,0) + Z(0,3)");
        assert_eq!(f.to_string(), "1 + Z(0,3) - 2*Z(1,0)");
        assert_eq!(p(&g, &f.to_string()), f);
        assert_eq!(p(&g, "-Z(0,-1) + Z(0,-1)").to_string(), "0");
        assert_eq!(p(&g, "0").to_string(), "0");
        let e = RingElement::parse(&g, "1 + Z(1)").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(RingElement::parse(&g, "1 +").is_err());
    }

    #[test]
    fn decompose_examples() {
        let g = AbelianGroup::new(2, vec![2]).unwrap();
        let gens = vec![el(&g, &[1, 0, 0]), el(&g, &[0, 2, 1]), el(&g, &[0, 0, 1])];
        let x = p(&g, "3 - Z(1,0,0) - Z(0,4,1) - Z(5,-2,0)");
        let parts = decompose_in_varpi(&x, &gens).unwrap();
        let mut acc = RingElement::zero(&g);
        for (t, h) in gens.iter().zip(&parts) {
            acc = acc.add(&RingElement::one(&g).sub(&RingElement::monomial(&g, 1, t.clone())).mul(h));
        }
        assert_eq!(acc, x);
        assert!(decompose_in_varpi(&x, &gens[..1]).is_err());
        assert!(decompose_in_varpi(&p(&g, "1"), &gens).is_err());
    }

    fn small_group() -> impl Strategy<Value = AbelianGroup> {
        prop::sample::select(vec![
            AbelianGroup::free(1),
            AbelianGroup::free(2),
            AbelianGroup::new(1, vec![2]).unwrap(),
            AbelianGroup::new(1, vec![3]).unwrap(),
            AbelianGroup::new(0, vec![4]).unwrap(),
        ])
    }

    fn poly(g: AbelianGroup) -> impl Strategy<Value = RingElement> {
        let d = g.dim();
        prop::collection::vec((prop::collection::vec(-2i64..3, d), -3i64..4), 0..5)
            .prop_map(move |ts| RingElement::from_terms(&g, ts).unwrap())
    }

    fn point(g: &AbelianGroup) -> impl Strategy<Value = GroupElement> {
        let g = g.clone();
        prop::collection::vec(-3i64..4, g.dim()).prop_map(move |v| g.element(v).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in small_group().prop_flat_map(|g| (poly(g.clone()), poly(g.clone()), poly(g)))) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn augmentation_is_translation_invariant((f, u) in small_group().prop_flat_map(|g| (poly(g.clone()), point(&g)))) {
            prop_assert_eq!(f.translate(&u).augmentation(), f.augmentation());
        }

        #[test]
        fn division_round_trip((h, t) in small_group().prop_flat_map(|g| (poly(g.clone()), point(&g)))) {
            prop_assume!(!t.is_zero());
            let g = h.group().clone();
            let f = RingElement::one(&g).sub(&RingElement::monomial(&g, 1, t.clone())).mul(&h);
            let q = f.divide_one_minus_monomial(&t).unwrap();
            let back = RingElement::one(&g).sub(&RingElement::monomial(&g, 1, t.clone())).mul(&q);
            prop_assert_eq!(&back, &f);
            if g.order(&t).is_none() {
                prop_assert_eq!(q, h);
            }
        }

        #[test]
        fn text_round_trip(f in small_group().prop_flat_map(poly)) {
            prop_assert_eq!(RingElement::parse(f.group(), &f.to_string()).unwrap(), f);
        }
    }
}
