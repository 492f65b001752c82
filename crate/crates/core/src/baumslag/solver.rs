use std::collections::HashMap;

use super::{abelianize, abelianization, baumslag_commutator_witness, BaumslagElement, LaurentPoly};
use crate::abelian::AbelianGroup;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groupring::RingElement;
use crate::spherical::{solve_translate_sum, TranslateSumInstance};
use crate::words::{NormalForm, Witness};

/// Exponents of `Y^a (1+Y)^b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct LaurentShift {
    pub a: i64,
    pub b: i64,
}

/// Largest `b` for which `(1+Y)^b` can divide a nonzero polynomial with
/// `term_count` terms.
pub fn sparse_exponent_bound(term_count: usize) -> usize {
    assert!(term_count >= 1, "term count must be positive");
    term_count - 1
}

fn to_ring(z: &AbelianGroup, f: &LaurentPoly) -> RingElement {
    RingElement::from_terms(z, f.terms().iter().map(|(&e, &c)| (vec![e], c))).expect("rank 1")
}

struct Search<'a> {
    polys: &'a [LaurentPoly],
    z: AbelianGroup,
    budget: &'a mut Budget,
    blocks: HashMap<u64, Option<Vec<LaurentShift>>>,
}

impl Search<'_> {
    fn partition(&mut self, mask: u64) -> Result<Option<Vec<(u64, Vec<LaurentShift>)>>> {
        if mask == 0 {
            return Ok(Some(Vec::new()));
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if block.count_ones() >= 2 {
                if let Some(shifts) = self.block(block)? {
                    if let Some(mut others) = self.partition(mask ^ block)? {
                        others.push((block, shifts));
                        return Ok(Some(others));
                    }
                }
            }
            if sub == 0 {
                return Ok(None);
            }
            sub = (sub - 1) & rest;
        }
    }

    /// A block in which no proper suffix of the chosen order cancels.
    fn block(&mut self, mask: u64) -> Result<Option<Vec<LaurentShift>>> {
        if let Some(hit) = self.blocks.get(&mask) {
            return Ok(hit.clone());
        }
        let members: Vec<usize> = (0..self.polys.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut found = None;
        for order in permutations(&members) {
            let mut b = vec![0u32; order.len()];
            if let Some(a) = self.exponents(&order, &mut b, order.len() - 1)? {
                let mut out = vec![LaurentShift::default(); members.len()];
                for (k, &i) in order.iter().enumerate() {
                    let pos = members.iter().position(|&m| m == i).expect("member");
                    out[pos] = LaurentShift { a: a[k], b: b[k] as i64 };
                }
                found = Some(out);
                break;
            }
        }
        self.blocks.insert(mask, found.clone());
        Ok(found)
    }

    /// Fixes `b[k]` downwards from the last position, `b` non-increasing in
    /// order position, then hands the fixed multiples to translate-sum.
    fn exponents(&mut self, order: &[usize], b: &mut [u32], k: usize) -> Result<Option<Vec<i64>>> {
        self.budget.tick()?;
        if k == 0 {
            let polys: Vec<RingElement> = order
                .iter()
                .zip(b.iter())
                .map(|(&i, &bi)| to_ring(&self.z, &self.polys[i].mul_one_plus_y_pow(bi)))
                .collect();
            if polys.iter().map(RingElement::augmentation).sum::<i64>() != 0 {
                return Ok(None);
            }
            let inst = TranslateSumInstance::new(&self.z, polys)?;
            return Ok(solve_translate_sum(&inst, self.budget)?.map(|u| u.iter().map(|x| x.coords()[0]).collect()));
        }
        if k == order.len() - 1 {
            b[k] = 0;
        }
        // the suffix from k is a nonzero multiple of (1+Y)^{b[k-1]}
        let terms: usize = (k..order.len())
            .map(|j| self.polys[order[j]].mul_one_plus_y_pow(b[j]).len())
            .sum();
        let hi = sparse_exponent_bound(terms) as u32;
        for bk in b[k]..=hi {
            b[k - 1] = bk;
            if let Some(a) = self.exponents(order, b, k - 1)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Exponents with `sum Y^{a_i} (1+Y)^{b_i} f_i = 0`, or `None`.
pub fn solve_spherical_baumslag(polys: &[LaurentPoly], budget: &mut Budget) -> Result<Option<Vec<LaurentShift>>> {
    if polys.iter().any(LaurentPoly::is_zero) {
        return Err(Error::Precondition("polynomials must be nonzero".into()));
    }
    if polys.len() > 12 {
        return Err(Error::SizeGuard(format!("{} polynomials", polys.len())));
    }
    let mut search = Search {
        polys,
        z: AbelianGroup::free(1),
        budget,
        blocks: HashMap::new(),
    };
    let Some(blocks) = search.partition((1u64 << polys.len()) - 1)? else {
        return Ok(None);
    };
    let mut out = vec![LaurentShift::default(); polys.len()];
    for (mask, shifts) in blocks {
        let members = (0..polys.len()).filter(|&i| mask >> i & 1 == 1);
        for (i, s) in members.zip(shifts) {
            out[i] = s;
        }
    }
    let total = polys.iter().zip(&out).fold(LaurentPoly::zero(), |acc, (f, s)| {
        acc.add(&f.shift(s.a).mul_one_plus_y_pow(s.b as u32))
    });
    assert!(total.is_zero(), "baumslag shifts do not cancel");
    Ok(Some(out))
}

/// Solves the normal form `[X1,X2]...[X_{2n-1},X_{2n}] c_1^{X_{2n+1}}...` in
/// the Baumslag group. The witness is indexed like `nf.word()`.
pub fn solve_quadratic_baumslag(
    nf: &NormalForm<BaumslagElement>,
    budget: &mut Budget,
) -> Result<Option<Witness<BaumslagElement>>> {
    let ab = abelianization();
    let total = nf
        .constants
        .iter()
        .fold(ab.target().zero(), |acc, c| ab.target().add(&acc, &abelianize(c, &ab)));
    if !total.is_zero() {
        return Ok(None);
    }
    let mut witness: Witness<BaumslagElement> = (1..=nf.num_variables())
        .map(|i| (i, BaumslagElement::identity()))
        .collect();
    let offset = 2 * nf.genus as u32;
    if nf.genus >= 1 {
        let product = nf
            .constants
            .iter()
            .fold(BaumslagElement::identity(), |acc, c| acc.mul(c));
        debug_assert!(product.m == 0 && product.n == 0);
        let (x, y) = baumslag_commutator_witness(&product.inverse().q);
        witness.insert(1, x);
        witness.insert(2, y);
        return Ok(Some(witness));
    }
    if nf.constants.iter().any(|c| c.m != 0 || c.n != 0) {
        return Err(Error::Unsupported(
            "genus 0 Baumslag equations with constants outside the kernel of the abelianization".into(),
        ));
    }
    let live: Vec<usize> = (0..nf.constants.len()).filter(|&i| !nf.constants[i].q.is_zero()).collect();
    if live.is_empty() {
        return Ok(Some(witness));
    }
    let k = live.iter().map(|&i| nf.constants[i].q.denom_exp()).max().unwrap_or(0);
    let polys: Vec<LaurentPoly> = live.iter().map(|&i| nf.constants[i].q.numerator_over(k)).collect();
    let Some(shifts) = solve_spherical_baumslag(&polys, budget)? else {
        return Ok(None);
    };
    for (&i, s) in live.iter().zip(&shifts) {
        witness.insert(offset + i as u32 + 1, BaumslagElement::new(Default::default(), s.a, s.b));
    }
    Ok(Some(witness))
}
