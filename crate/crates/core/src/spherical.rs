//! Genus zero equations `c_1^{X_1} ... c_p^{X_p} = 1` in `Z wr Q`.
//!
//! After quotienting by the points of the constants the problem becomes the
//! translate-sum problem: find shifts `u_i` with `sum f_i Z^{u_i} = 0`.

use std::collections::HashMap;

use crate::abelian::{quotient, AbelianGroup, GroupElement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groupring::{decompose_in_varpi, RingElement};
use crate::wreath::WreathElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateSumInstance {
    group: AbelianGroup,
    polys: Vec<RingElement>,
}

impl TranslateSumInstance {
    pub fn new(group: &AbelianGroup, polys: Vec<RingElement>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::Precondition("translate-sum needs at least one polynomial".into()));
        }
        for f in &polys {
            if f.is_zero() {
                return Err(Error::Precondition("translate-sum polynomials must be nonzero".into()));
            }
            if f.group() != group {
                return Err(Error::Precondition("polynomial over a different group".into()));
            }
        }
        Ok(TranslateSumInstance {
            group: group.clone(),
            polys,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn polys(&self) -> &[RingElement] {
        &self.polys
    }

    /// Each polynomial translated so that the free part of its support has
    /// coordinatewise minimum zero. Solvability is unchanged.
    pub fn normalized(&self) -> TranslateSumInstance {
        let polys = self
            .polys
            .iter()
            .map(|f| f.translate(&self.group.neg(&min_corner(f))))
            .collect();
        TranslateSumInstance {
            group: self.group.clone(),
            polys,
        }
    }

    /// Whether `sum f_i Z^{u_i} = 0`.
    pub fn check(&self, shifts: &[GroupElement]) -> bool {
        shifts.len() == self.polys.len()
            && self
                .polys
                .iter()
                .zip(shifts)
                .fold(RingElement::zero(&self.group), |acc, (f, u)| acc.add(&f.translate(u)))
                .is_zero()
    }
}

/// Element with the free coordinatewise minimum of the support and zero torsion.
fn min_corner(f: &RingElement) -> GroupElement {
    let (lo, _) = f.free_bounds().expect("nonzero polynomial");
    f.group().from_free(&lo)
}

struct Search<'a> {
    group: &'a AbelianGroup,
    polys: Vec<RingElement>,
    diam: Vec<i64>,
    torsion: Vec<GroupElement>,
    budget: &'a mut Budget,
    blocks: HashMap<u64, Option<Vec<GroupElement>>>,
}

impl Search<'_> {
    /// Shifts for a block whose translates cancel on their own, with the
    /// first member fixed at zero.
    fn block(&mut self, mask: u64) -> Result<Option<Vec<GroupElement>>> {
        if let Some(hit) = self.blocks.get(&mask) {
            return Ok(hit.clone());
        }
        let members: Vec<usize> = (0..self.polys.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let aug: i64 = members.iter().map(|&i| self.polys[i].augmentation()).sum();
        let found = if members.len() < 2 || aug != 0 {
            None
        } else {
            let radius: i64 = members.iter().map(|&i| self.diam[i]).sum();
            let cands = self.group.box_elements(radius);
            let start = self.polys[members[0]].clone();
            let mut shifts = vec![self.group.zero()];
            if self.extend(&members, 1, start, &cands, &mut shifts)? {
                Some(shifts)
            } else {
                None
            }
        };
        self.blocks.insert(mask, found.clone());
        Ok(found)
    }

    fn extend(
        &mut self,
        members: &[usize],
        k: usize,
        acc: RingElement,
        cands: &[GroupElement],
        shifts: &mut Vec<GroupElement>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let f = &self.polys[members[k]];
        if k + 1 == members.len() {
            // the last translate must be exactly -acc
            if acc.is_zero() {
                return Ok(false);
            }
            let corner = min_corner(&acc);
            for t in &self.torsion {
                let v = self.group.add(&corner, t);
                if acc.add(&f.translate(&v)).is_zero() {
                    shifts.push(v);
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let f = f.clone();
        for v in cands {
            let next = acc.add(&f.translate(v));
            shifts.push(v.clone());
            if self.extend(members, k + 1, next, cands, shifts)? {
                return Ok(true);
            }
            shifts.pop();
        }
        Ok(false)
    }

    /// Partitions `mask` into self-cancelling blocks.
    fn partition(&mut self, mask: u64) -> Result<Option<Vec<(u64, Vec<GroupElement>)>>> {
        if mask == 0 {
            return Ok(Some(Vec::new()));
        }
        let first = mask & mask.wrapping_neg();
        let rest = mask ^ first;
        // nonempty submasks of `rest`, smallest blocks first
        let mut subs: Vec<u64> = Vec::new();
        let mut s = rest;
        while s != 0 {
            subs.push(s);
            s = (s - 1) & rest;
        }
        subs.sort_by_key(|s| (s.count_ones(), *s));
        for s in subs {
            let block = s | first;
            self.budget.tick()?;
            if let Some(shifts) = self.block(block)? {
                if let Some(mut others) = self.partition(mask ^ block)? {
                    others.insert(0, (block, shifts));
                    return Ok(Some(others));
                }
            }
        }
        Ok(None)
    }
}

/// Shifts `u_i` with `u_1 = 0` and `sum f_i Z^{u_i} = 0`, or `None`.
///
/// A solution splits into clusters of pairwise overlapping translates, each
/// cancelling on its own, and inside a cluster the relative free shifts are
/// bounded by the sum of the support diameters.
pub fn solve_translate_sum(inst: &TranslateSumInstance, budget: &mut Budget) -> Result<Option<Vec<GroupElement>>> {
    let g = &inst.group;
    let p = inst.polys.len();
    if p > 63 {
        return Err(Error::SizeGuard(format!("{p} polynomials")));
    }
    let lo: Vec<GroupElement> = inst.polys.iter().map(min_corner).collect();
    let polys: Vec<RingElement> = inst
        .polys
        .iter()
        .zip(&lo)
        .map(|(f, l)| f.translate(&g.neg(l)))
        .collect();
    let diam = polys.iter().map(|f| f.support_diameter()).collect::<Result<Vec<_>>>()?;
    let mut search = Search {
        group: g,
        polys,
        diam,
        torsion: g.torsion_elements(),
        budget,
        blocks: HashMap::new(),
    };
    let Some(blocks) = search.partition((1u64 << p) - 1)? else {
        return Ok(None);
    };
    let mut v = vec![g.zero(); p];
    for (mask, shifts) in blocks {
        let members = (0..p).filter(|&i| mask >> i & 1 == 1);
        for (i, s) in members.zip(shifts) {
            v[i] = s;
        }
    }
    let mut u: Vec<GroupElement> = v.iter().zip(&lo).map(|(v, l)| g.sub(v, l)).collect();
    let base = u[0].clone();
    for x in u.iter_mut() {
        *x = g.sub(x, &base);
    }
    assert!(inst.check(&u), "translate-sum shifts do not cancel");
    Ok(Some(u))
}

/// Conjugators for a puncture product given the shifts, after absorbing the
/// extra generators `extra` into the commutator part.
///
/// Returns `(a, xs)` such that with `X_i = xs[i]`,
/// `prod c_i^{X_i} = (-sum_j (1 - Z^{extra_j}) a_j, 0)`.
pub(crate) fn assemble(
    g: &AbelianGroup,
    constants: &[WreathElement],
    shifts: &[GroupElement],
    extra: &[GroupElement],
) -> Result<(Vec<RingElement>, Vec<WreathElement>)> {
    let p = constants.len();
    // T_{>i}
    let mut after = vec![g.zero(); p];
    for i in (0..p.saturating_sub(1)).rev() {
        after[i] = g.add(&after[i + 1], constants[i + 1].point());
    }
    let mut big_f = RingElement::zero(g);
    for i in 0..p {
        big_f = big_f.add(&constants[i].poly().translate(&g.add(&shifts[i], &after[i])));
    }
    let mut gens: Vec<GroupElement> = extra.to_vec();
    gens.extend(constants.iter().map(|c| c.point().clone()));
    let parts = decompose_in_varpi(&big_f.neg(), &gens)?;
    let (a, b) = parts.split_at(extra.len());
    let xs = (0..p)
        .map(|i| WreathElement::new(b[i].translate(&g.neg(&after[i])), shifts[i].clone()))
        .collect();
    Ok((a.to_vec(), xs))
}

/// Conjugators `X_i` with `prod c_i^{X_i} = 1`, or `None`.
pub fn solve_spherical(constants: &[WreathElement], budget: &mut Budget) -> Result<Option<Vec<WreathElement>>> {
    let Some(first) = constants.first() else {
        return Ok(Some(Vec::new()));
    };
    let g = first.group().clone();
    let total = constants.iter().fold(g.zero(), |acc, c| g.add(&acc, c.point()));
    if !total.is_zero() {
        return Ok(None);
    }
    let q = quotient(&g, constants.iter().map(|c| c.point().clone()).collect());
    let images: Vec<RingElement> = constants.iter().map(|c| c.poly().project(&q)).collect();
    let live: Vec<usize> = (0..constants.len()).filter(|&i| !images[i].is_zero()).collect();
    let mut shifts = vec![g.zero(); constants.len()];
    if !live.is_empty() {
        let inst = TranslateSumInstance::new(q.target(), live.iter().map(|&i| images[i].clone()).collect())?;
        let Some(u) = solve_translate_sum(&inst, budget)? else {
            return Ok(None);
        };
        for (&i, ui) in live.iter().zip(&u) {
            shifts[i] = q.section(ui);
        }
    }
    let (_, xs) = assemble(&g, constants, &shifts, &[])?;
    let check = constants
        .iter()
        .zip(&xs)
        .fold(WreathElement::identity(&g), |acc, (c, x)| acc.mul(&c.conjugate(x)));
    if !check.is_identity() {
        return Err(Error::WitnessRejected(format!("spherical product is {check}")));
    }
    Ok(Some(xs))
}
