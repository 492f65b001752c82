//! Genus `n >= 1` equations
//! `[X_1,X_2] ... [X_{2n-1},X_{2n}] c_1^{X_{2n+1}} ... c_p^{X_{2n+p}} = 1`
//! in `Z wr Q`, and commutator width.
//!
//! A product of `n` commutators is exactly an element `(f, 0)` with `f` in
//! the kernel of `Z[B] -> Z[B/L]` for some `L` generated by `2n` elements.
//! The search runs over coset patterns: partitions of the support points into
//! classes of coefficient sum zero, each class meant to lie in one coset.

use std::collections::BTreeSet;

use crate::abelian::{quotient, AbelianGroup, GroupElement, Subgroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groupring::{decompose_in_varpi, RingElement};
use crate::spherical::assemble;
use crate::wreath::WreathElement;

/// Points above this count are refused by the pattern search.
pub const MAX_PATTERN_POINTS: usize = 22;

pub fn commutator_width(b: &AbelianGroup) -> usize {
    b.min_generators().div_ceil(2)
}

#[derive(Clone, Debug)]
pub struct CommutatorProduct {
    /// `L` with `f` in the kernel of `Z[B] -> Z[B/L]`.
    pub subgroup: Subgroup,
    /// `n` pairs with `prod [x_i, y_i] = (f, 0)`.
    pub pairs: Vec<(WreathElement, WreathElement)>,
}

impl CommutatorProduct {
    pub fn product(&self, group: &AbelianGroup) -> WreathElement {
        self.pairs
            .iter()
            .fold(WreathElement::identity(group), |acc, (x, y)| acc.mul(&x.commutator(y)))
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticSolution {
    pub pairs: Vec<(WreathElement, WreathElement)>,
    pub conjugators: Vec<WreathElement>,
}

struct Point {
    poly: usize,
    at: GroupElement,
    coeff: i64,
}

/// Subsets of the points with coefficient sum zero and no proper nonempty
/// subset of sum zero.
fn minimal_zero_sum(points: &[Point]) -> Vec<u32> {
    let n = points.len();
    let mut sums = vec![0i64; 1 << n];
    let mut zero = vec![false; 1 << n];
    for m in 1usize..1 << n {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)] + points[low].coeff;
        zero[m] = sums[m] == 0;
    }
    let mut out = Vec::new();
    'outer: for m in 1usize..1 << n {
        if !zero[m] {
            continue;
        }
        let mut s = (m - 1) & m;
        while s != 0 {
            if zero[s] {
                continue 'outer;
            }
            s = (s - 1) & m;
        }
        out.push(m as u32);
    }
    out
}

struct PatternSearch<'a> {
    group: &'a AbelianGroup,
    points: Vec<Point>,
    polys: usize,
    classes: Vec<u32>,
    bound: usize,
    budget: &'a mut Budget,
    seen: BTreeSet<Vec<Vec<i64>>>,
}

impl PatternSearch<'_> {
    fn cover(&mut self, used: u32, chosen: &mut Vec<u32>) -> Result<Option<(Vec<GroupElement>, Subgroup)>> {
        self.budget.tick()?;
        let all = (1u32 << self.points.len()) - 1;
        if used == all {
            return Ok(self.evaluate(chosen));
        }
        let first = (!used & all).trailing_zeros();
        for k in 0..self.classes.len() {
            let c = self.classes[k];
            if c >> first & 1 == 0 || c & used != 0 {
                continue;
            }
            chosen.push(c);
            if let Some(hit) = self.cover(used | c, chosen)? {
                return Ok(Some(hit));
            }
            chosen.pop();
        }
        Ok(None)
    }

    /// Shifts along a spanning forest that put one point of each linked pair
    /// of polynomials on top of each other, and the subgroup spanned by the
    /// remaining within-class differences.
    fn evaluate(&mut self, classes: &[u32]) -> Option<(Vec<GroupElement>, Subgroup)> {
        let g = self.group;
        let mut shift: Vec<Option<GroupElement>> = vec![None; self.polys];
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for &c in classes {
                    let members: Vec<&Point> = self.members(c).collect();
                    for a in &members {
                        let Some(ua) = shift[a.poly].clone() else { continue };
                        for b in &members {
                            if shift[b.poly].is_none() {
                                // a.at + ua = b.at + ub
                                shift[b.poly] = Some(g.sub(&g.add(&a.at, &ua), &b.at));
                                changed = true;
                            }
                        }
                    }
                }
            }
            match shift.iter().position(Option::is_none) {
                Some(i) => shift[i] = Some(g.zero()),
                None => break,
            }
        }
        let shift: Vec<GroupElement> = shift.into_iter().map(Option::unwrap).collect();
        let mut gens = Vec::new();
        for &c in classes {
            let placed: Vec<GroupElement> = self.members(c).map(|p| g.add(&p.at, &shift[p.poly])).collect();
            for x in &placed[1..] {
                let d = g.sub(x, &placed[0]);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
        }
        let l = Subgroup::new(g, gens);
        if !self.seen.insert(l.basis().to_vec()) {
            return None;
        }
        (l.min_generators() <= self.bound).then_some((shift, l))
    }

    fn members(&self, c: u32) -> impl Iterator<Item = &Point> {
        self.points
            .iter()
            .enumerate()
            .filter(move |(i, _)| c >> i & 1 == 1)
            .map(|(_, p)| p)
    }
}

/// Shifts `u_i` and a subgroup `L`, generated by at most `bound` elements,
/// such that `sum f_i Z^{u_i}` lies in the kernel of `Z[Q] -> Z[Q/L]`.
fn find_pattern(
    group: &AbelianGroup,
    polys: &[RingElement],
    bound: usize,
    budget: &mut Budget,
) -> Result<Option<(Vec<GroupElement>, Subgroup)>> {
    if polys.iter().map(RingElement::augmentation).sum::<i64>() != 0 {
        return Ok(None);
    }
    if group.min_generators() <= bound {
        let l = Subgroup::new(group, group.torsion_elements().into_iter().chain(unit_vectors(group)).collect());
        return Ok(Some((vec![group.zero(); polys.len()], l)));
    }
    let points: Vec<Point> = polys
        .iter()
        .enumerate()
        .flat_map(|(i, f)| {
            f.terms().iter().map(move |(g, &c)| Point {
                poly: i,
                at: g.clone(),
                coeff: c,
            })
        })
        .collect();
    if points.len() > MAX_PATTERN_POINTS {
        return Err(Error::SizeGuard(format!("{} support points in the pattern search", points.len())));
    }
    if points.is_empty() {
        return Ok(Some((vec![group.zero(); polys.len()], Subgroup::trivial(group))));
    }
    let classes = minimal_zero_sum(&points);
    let mut search = PatternSearch {
        group,
        points,
        polys: polys.len(),
        classes,
        bound,
        budget,
        seen: BTreeSet::new(),
    };
    search.cover(0, &mut Vec::new())
}

fn unit_vectors(g: &AbelianGroup) -> Vec<GroupElement> {
    (0..g.dim())
        .map(|i| {
            let mut v = vec![0; g.dim()];
            v[i] = 1;
            g.element(v).expect("unit vector")
        })
        .collect()
}

/// Pairs `(x_i, y_i)` with `prod [x_i, y_i] = (sum_j (1 - Z^{l_j}) a_j, 0)`.
fn pair_up(group: &AbelianGroup, n: usize, l: &[GroupElement], a: &[RingElement]) -> Vec<(WreathElement, WreathElement)> {
    let gen = |j: usize| l.get(j).cloned().unwrap_or_else(|| group.zero());
    let coef = |j: usize| a.get(j).cloned().unwrap_or_else(|| RingElement::zero(group));
    (0..n)
        .map(|i| {
            let x = WreathElement::new(coef(2 * i + 1).neg(), gen(2 * i));
            let y = WreathElement::new(coef(2 * i), gen(2 * i + 1));
            (x, y)
        })
        .collect()
}

/// Decides whether `(f, 0)` is a product of `n` commutators.
pub fn is_n_commutator_product(f: &RingElement, n: usize, budget: &mut Budget) -> Result<Option<CommutatorProduct>> {
    let group = f.group();
    let Some((_, l)) = find_pattern(group, std::slice::from_ref(f), 2 * n, budget)? else {
        return Ok(None);
    };
    let gens = l.minimal_generators();
    let a = decompose_in_varpi(f, &gens)?;
    let out = CommutatorProduct {
        subgroup: l,
        pairs: pair_up(group, n, &gens, &a),
    };
    let back = out.product(group);
    if back != WreathElement::base(f.clone()) {
        return Err(Error::WitnessRejected(format!("commutators re-expand to {back}")));
    }
    Ok(Some(out))
}

/// Solves the genus `n` normal form with the given constants.
pub fn solve_quadratic(
    group: &AbelianGroup,
    n: usize,
    constants: &[WreathElement],
    budget: &mut Budget,
) -> Result<Option<QuadraticSolution>> {
    let total = constants.iter().fold(group.zero(), |acc, c| group.add(&acc, c.point()));
    if !total.is_zero() {
        return Ok(None);
    }
    if constants.iter().map(|c| c.poly().augmentation()).sum::<i64>() != 0 {
        return Ok(None);
    }
    let q = quotient(group, constants.iter().map(|c| c.point().clone()).collect());
    let images: Vec<RingElement> = constants.iter().map(|c| c.poly().project(&q)).collect();
    let Some((shifts, l)) = find_pattern(q.target(), &images, 2 * n, budget)? else {
        return Ok(None);
    };
    let shifts: Vec<GroupElement> = shifts.iter().map(|u| q.section(u)).collect();
    let gens: Vec<GroupElement> = l.minimal_generators().iter().map(|x| q.section(x)).collect();
    let (a, conjugators) = assemble(group, constants, &shifts, &gens)?;
    let pairs = pair_up(group, n, &gens, &a);
    let value = pairs
        .iter()
        .fold(WreathElement::identity(group), |acc, (x, y)| acc.mul(&x.commutator(y)));
    let value = constants
        .iter()
        .zip(&conjugators)
        .fold(value, |acc, (c, x)| acc.mul(&c.conjugate(x)));
    if !value.is_identity() {
        return Err(Error::WitnessRejected(format!("quadratic product is {value}")));
    }
    Ok(Some(QuadraticSolution { pairs, conjugators }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(g: &AbelianGroup, s: &str) -> RingElement {
        RingElement::parse(g, s).unwrap()
    }

    fn w(g: &AbelianGroup, s: &str) -> WreathElement {
        WreathElement::parse(g, s).unwrap()
    }

    #[test]
    fn width_examples() {
        assert_eq!(commutator_width(&AbelianGroup::free(2)), 1);
        assert_eq!(commutator_width(&AbelianGroup::free(3)), 2);
        assert_eq!(commutator_width(&AbelianGroup::trivial()), 0);
        assert_eq!(commutator_width(&AbelianGroup::new(0, vec![2]).unwrap()), 1);
    }

    #[test]
    fn commutator_product_examples() {
        let g = AbelianGroup::free(2);
        let f = p(&g, "2 - Z(1,0) - Z(0,1)");
        let sol = is_n_commutator_product(&f, 1, &mut Budget::unlimited()).unwrap().unwrap();
        assert_eq!(sol.product(&g), WreathElement::base(f));

        let g3 = AbelianGroup::free(3);
        let f = p(&g3, "3 - Z(1,0,0) - Z(0,1,0) - Z(0,0,1)");
        assert!(is_n_commutator_product(&f, 1, &mut Budget::unlimited()).unwrap().is_none());
        let sol = is_n_commutator_product(&f, 2, &mut Budget::unlimited()).unwrap().unwrap();
        assert_eq!(sol.product(&g3), WreathElement::base(f));

        assert!(is_n_commutator_product(&p(&g, "1 + Z(1,1)"), 3, &mut Budget::unlimited())
            .unwrap()
            .is_none());
        let zero = RingElement::zero(&g);
        let sol = is_n_commutator_product(&zero, 1, &mut Budget::unlimited()).unwrap().unwrap();
        assert!(sol.product(&g).is_identity());
    }

    #[test]
    fn small_lattices_suffice() {
        // one generator (2,0) handles this one inside Z^3
        let g3 = AbelianGroup::free(3);
        let f = p(&g3, "1 - Z(2,0,0) - Z(0,1,1) + Z(2,1,1)");
        let sol = is_n_commutator_product(&f, 1, &mut Budget::unlimited()).unwrap().unwrap();
        assert!(sol.subgroup.min_generators() <= 2);
    }

    fn solve(g: &AbelianGroup, n: usize, cs: &[&str]) -> Option<QuadraticSolution> {
        let cs: Vec<WreathElement> = cs.iter().map(|s| w(g, s)).collect();
        solve_quadratic(g, n, &cs, &mut Budget::unlimited()).unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let g = AbelianGroup::free(2);
        assert!(solve(&g, 1, &["(-2 + Z(1,0) + Z(0,1) ; (0,0))"]).is_some());
        assert!(solve(&g, 1, &["(1 ; (0,0))"]).is_none());
        let g3 = AbelianGroup::free(3);
        let c = "(-3 + Z(1,0,0) + Z(0,1,0) + Z(0,0,1) ; (0,0,0))";
        assert!(solve(&g3, 1, &[c]).is_none());
        assert!(solve(&g3, 2, &[c]).is_some());
    }

    #[test]
    fn quadratic_with_shifts_and_points() {
        let g3 = AbelianGroup::free(3);
        // the two halves can be shifted onto a rank-2 pattern
        assert!(solve(
            &g3,
            1,
            &["(2 - Z(1,0,0) - Z(0,1,0) ; (0,0,0))", "(Z(4,4,4) - Z(4,4,5) ; (0,0,0))"]
        )
        .is_some());
        // quotient by t = (0,0,1) leaves Z^2, where one commutator suffices
        assert!(solve(
            &g3,
            1,
            &["(3 - Z(1,0,0) - Z(0,1,0) ; (0,0,1))", "(-Z(0,0,7) ; (0,0,-1))"]
        )
        .is_some());
        assert!(solve(&g3, 1, &["(1 ; (0,0,1))", "(-1 ; (0,0,2))"]).is_none());
    }
}
