//! Bounded brute-force searches used to cross-check the solvers.
//!
//! A `Sat` answer comes with a checked witness. `UnsatWithinBox` only says
//! that nothing was found inside the search box.

use std::collections::{BTreeSet, HashMap};

use crate::abelian::{quotient, AbelianGroup, GroupElement, QuotientMap, Subgroup};
use crate::baumslag::{LaurentPoly, LaurentShift, LocalizedPoly};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::groupring::RingElement;
use crate::spherical::TranslateSumInstance;
use crate::words::{EquationWord, Witness};
use crate::wreath::WreathElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict<T> {
    Sat(T),
    UnsatWithinBox,
}

impl<T> OracleVerdict<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleVerdict::Sat(_))
    }
}

fn in_box(u: &GroupElement, free_rank: usize, radius: i64) -> bool {
    u.coords()[..free_rank].iter().all(|x| x.abs() <= radius)
}

/// Shifts with `u_1 = 0` and every shift in `box_elements(radius)`.
pub fn oracle_translate_sum(
    inst: &TranslateSumInstance,
    radius: i64,
    budget: &mut Budget,
) -> Result<OracleVerdict<Vec<GroupElement>>> {
    let g = inst.group();
    let polys = inst.polys();
    let p = polys.len();
    if p < 2 {
        return Ok(OracleVerdict::UnsatWithinBox);
    }
    let cells = g.box_elements(radius);
    let last = &polys[p - 1];
    let anchor = last.support().next().expect("nonzero").clone();
    let mut u = vec![g.zero(); p];
    let total = polys[0].clone();
    if let Some(found) = translate_rec(g, polys, &cells, &anchor, radius, 1, total, &mut u, budget)? {
        return Ok(OracleVerdict::Sat(found));
    }
    Ok(OracleVerdict::UnsatWithinBox)
}

#[allow(clippy::too_many_arguments)]
fn translate_rec(
    g: &AbelianGroup,
    polys: &[RingElement],
    cells: &[GroupElement],
    anchor: &GroupElement,
    radius: i64,
    i: usize,
    acc: RingElement,
    u: &mut Vec<GroupElement>,
    budget: &mut Budget,
) -> Result<Option<Vec<GroupElement>>> {
    budget.tick()?;
    let p = polys.len();
    if i == p - 1 {
        let target = acc.neg();
        for s in target.support() {
            let cand = g.sub(s, anchor);
            if in_box(&cand, g.free_rank(), radius) && polys[i].translate(&cand) == target {
                u[i] = cand;
                return Ok(Some(u.clone()));
            }
        }
        return Ok(None);
    }
    for c in cells {
        u[i] = c.clone();
        let next = acc.add(&polys[i].translate(c));
        if let Some(found) = translate_rec(g, polys, cells, anchor, radius, i + 1, next, u, budget)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Subgroups generated by `k` vectors of the box, deduplicated.
fn box_subgroups(g: &AbelianGroup, k: usize, radius: i64, budget: &mut Budget) -> Result<Vec<Subgroup>> {
    let cells = g.box_elements(radius);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pick in multisets(cells.len(), k) {
        budget.tick()?;
        let l = Subgroup::new(g, pick.iter().map(|&i| cells[i].clone()).collect());
        if seen.insert(l.basis().to_vec()) {
            out.push(l);
        }
    }
    Ok(out)
}

/// A subgroup generated by `2n` box vectors with `f` in the augmentation
/// ideal of the subgroup.
pub fn oracle_varpi_search(
    f: &RingElement,
    n: usize,
    radius: i64,
    budget: &mut Budget,
) -> Result<OracleVerdict<Subgroup>> {
    for l in box_subgroups(f.group(), 2 * n, radius, budget)? {
        budget.tick()?;
        if f.in_varpi(&l) {
            return Ok(OracleVerdict::Sat(l));
        }
    }
    Ok(OracleVerdict::UnsatWithinBox)
}

/// Shifts `u_i` (with `u_1 = 0`) in the shift box and `L` generated by `2n`
/// vectors of the generator box such that
/// `sum f_i Z^{u_i + t_{i+1} + ... + t_p}` dies in `Z[B/(L+T)]`.
pub fn oracle_quadratic(
    group: &AbelianGroup,
    n: usize,
    constants: &[WreathElement],
    shift_radius: i64,
    gen_radius: i64,
    budget: &mut Budget,
) -> Result<OracleVerdict<(Vec<GroupElement>, Subgroup)>> {
    let total = constants.iter().fold(group.zero(), |acc, c| group.add(&acc, c.point()));
    if !total.is_zero() {
        return Ok(OracleVerdict::UnsatWithinBox);
    }
    let p = constants.len();
    let ts: Vec<GroupElement> = constants.iter().map(|c| c.point().clone()).collect();
    let mut after = vec![group.zero(); p];
    for i in (0..p.saturating_sub(1)).rev() {
        after[i] = group.add(&after[i + 1], &ts[i + 1]);
    }
    let maps: Vec<(Subgroup, QuotientMap)> = box_subgroups(group, 2 * n, gen_radius, budget)?
        .into_iter()
        .map(|l| {
            let mut gens = l.generators().to_vec();
            gens.extend(ts.iter().cloned());
            let q = quotient(group, gens);
            (l, q)
        })
        .collect();
    let cells = group.box_elements(shift_radius);
    let mut idx = vec![0usize; p];
    let zero_cell = cells.iter().position(GroupElement::is_zero).expect("box holds zero");
    loop {
        budget.tick()?;
        let shifts: Vec<GroupElement> = (0..p)
            .map(|i| if i == 0 { cells[zero_cell].clone() } else { cells[idx[i]].clone() })
            .collect();
        let big_f = (0..p).fold(RingElement::zero(group), |acc, i| {
            acc.add(&constants[i].poly().translate(&group.add(&shifts[i], &after[i])))
        });
        for (l, q) in &maps {
            if big_f.project(q).is_zero() {
                return Ok(OracleVerdict::Sat((shifts, l.clone())));
            }
        }
        // odometer over positions 1..p
        let mut k = 1;
        loop {
            if k >= p {
                return Ok(OracleVerdict::UnsatWithinBox);
            }
            idx[k] += 1;
            if idx[k] < cells.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Exhaustive search over a finite group given by its element list.
pub fn oracle_finite_group_solvable<G: GroupElem>(
    w: &EquationWord<G>,
    elements: &[G],
    budget: &mut Budget,
) -> Result<Option<Witness<G>>> {
    let vars = w.variables();
    if vars.len() > 4 || elements.len() > 24 {
        return Err(Error::SizeGuard(format!(
            "{} variables over {} elements",
            vars.len(),
            elements.len()
        )));
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        budget.tick()?;
        let witness: Witness<G> = vars.iter().zip(&idx).map(|(&v, &i)| (v, elements[i].clone())).collect();
        if w.verify(&witness)? {
            return Ok(Some(witness));
        }
        let mut k = 0;
        loop {
            if k == vars.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < elements.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Exponents `(a_i, b_i)` in `[-r, r]^2`, the first pair fixed at zero, with
/// `sum Y^{a_i} (1+Y)^{b_i} f_i = 0` in the localized ring.
pub fn oracle_baumslag(polys: &[LaurentPoly], radius: i64, budget: &mut Budget) -> Result<OracleVerdict<Vec<LaurentShift>>> {
    let p = polys.len();
    if p == 0 {
        return Ok(OracleVerdict::Sat(Vec::new()));
    }
    let locs: Vec<LocalizedPoly> = polys.iter().cloned().map(LocalizedPoly::from_laurent).collect();
    let mut memo: HashMap<(usize, i64, i64), LocalizedPoly> = HashMap::new();
    let side = (2 * radius + 1) as usize;
    let cells: Vec<(i64, i64)> = (0..side * side)
        .map(|c| ((c / side) as i64 - radius, (c % side) as i64 - radius))
        .collect();
    let mut idx = vec![0usize; p];
    loop {
        budget.tick()?;
        let mut sum = locs[0].clone();
        for i in 1..p {
            let (a, b) = cells[idx[i]];
            let term = memo.entry((i, a, b)).or_insert_with(|| locs[i].act(a, b));
            sum = sum.add(term);
        }
        if sum.is_zero() {
            let mut out = vec![LaurentShift::default(); p];
            for i in 1..p {
                let (a, b) = cells[idx[i]];
                out[i] = LaurentShift { a, b };
            }
            return Ok(OracleVerdict::Sat(out));
        }
        let mut k = 1;
        loop {
            if k >= p {
                return Ok(OracleVerdict::UnsatWithinBox);
            }
            idx[k] += 1;
            if idx[k] < cells.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;
    use crate::words::parse_word;

    fn p(g: &AbelianGroup, s: &str) -> RingElement {
        RingElement::parse(g, s).unwrap()
    }

    #[test]
    fn translate_sum_oracle() {
        let g = AbelianGroup::free(2);
        let inst = TranslateSumInstance::new(&g, vec![p(&g, "1 - Z(1,0)"), p(&g, "Z(0,1) - Z(-1,1)")]).unwrap();
        let OracleVerdict::Sat(u) = oracle_translate_sum(&inst, 2, &mut Budget::unlimited()).unwrap() else {
            panic!("expected a solution");
        };
        assert!(inst.check(&u));
        let inst = TranslateSumInstance::new(&g, vec![p(&g, "1"), p(&g, "1")]).unwrap();
        assert_eq!(
            oracle_translate_sum(&inst, 2, &mut Budget::unlimited()).unwrap(),
            OracleVerdict::UnsatWithinBox
        );
    }

    #[test]
    fn varpi_oracle() {
        let g = AbelianGroup::free(2);
        let f = p(&g, "2 - Z(1,0) - Z(0,1)");
        assert!(oracle_varpi_search(&f, 1, 1, &mut Budget::unlimited()).unwrap().is_sat());
        let g3 = AbelianGroup::free(3);
        let f = p(&g3, "3 - Z(1,0,0) - Z(0,1,0) - Z(0,0,1)");
        assert!(!oracle_varpi_search(&f, 1, 1, &mut Budget::unlimited()).unwrap().is_sat());
    }

    #[test]
    fn quadratic_oracle() {
        let g = AbelianGroup::free(2);
        let c = WreathElement::parse(&g, "(-2 + Z(1,0) + Z(0,1) ; (0,0))").unwrap();
        assert!(oracle_quadratic(&g, 1, &[c], 1, 1, &mut Budget::unlimited()).unwrap().is_sat());
        let c = WreathElement::parse(&g, "(1 ; (0,0))").unwrap();
        assert!(!oracle_quadratic(&g, 1, &[c], 1, 1, &mut Budget::unlimited()).unwrap().is_sat());
    }

    #[test]
    fn finite_oracle() {
        let s3 = Perm::all(3);
        let k: HashMap<String, Perm> = [("a".to_string(), s3[1].clone()), ("b".to_string(), s3[2].clone())].into();
        let w = parse_word("a^X1 b^X2", &k).unwrap();
        assert!(oracle_finite_group_solvable(&w, &s3, &mut Budget::unlimited()).unwrap().is_some());
        // a transposition is never a commutator in S3
        let w = parse_word("[X1,X2] a", &k).unwrap();
        assert!(oracle_finite_group_solvable(&w, &s3, &mut Budget::unlimited()).unwrap().is_none());
        let w = parse_word("X1 X2 X3 X4 X5", &k).unwrap();
        assert!(oracle_finite_group_solvable(&w, &s3, &mut Budget::unlimited()).is_err());
    }

    #[test]
    fn baumslag_oracle() {
        let polys = [LaurentPoly::parse("1 + Y").unwrap(), LaurentPoly::parse("-1").unwrap()];
        let OracleVerdict::Sat(s) = oracle_baumslag(&polys, 2, &mut Budget::unlimited()).unwrap() else {
            panic!("expected a solution");
        };
        assert_eq!(s[1], LaurentShift { a: 0, b: 1 });
    }
}
