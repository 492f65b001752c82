//! End-to-end decision for a single equation: classify, normalize, dispatch,
//! pull the witness back and check it on the original word.

use crate::abelian::AbelianGroup;
use crate::baumslag::{solve_quadratic_baumslag, BaumslagElement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::GroupElem;
use crate::oracle::oracle_finite_group_solvable;
use crate::quadratic::{commutator_width, solve_quadratic};
use crate::spherical::solve_spherical;
use crate::words::{normalize, solve_single_occurrence, EquationWord, NormalForm, Witness};
use crate::wreath::WreathElement;

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Genus used in place of the normal form's genus when smaller. By default
    /// the commutator width of the base group, beyond which extra handles
    /// change nothing. A smaller cap can turn SAT into UNSAT.
    pub genus_cap: Option<usize>,
    /// Node limit for the exhaustive searches.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<G> {
    Sat(Witness<G>),
    Unsat,
}

impl<G> Verdict<G> {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }
}

fn checked<G: GroupElem>(w: &EquationWord<G>, witness: Witness<G>) -> Result<Verdict<G>> {
    if !w.verify(&witness)? {
        return Err(Error::WitnessRejected("witness does not solve the original equation".into()));
    }
    Ok(Verdict::Sat(witness))
}

/// Returns the witness for a variable occurring once, or the normal form.
fn prepare<G: GroupElem>(w: &EquationWord<G>, identity: &G) -> Result<std::result::Result<Witness<G>, NormalForm<G>>> {
    let (once, _) = w.require_orientable_quadratic()?;
    if let Some(&v) = once.first() {
        return Ok(Ok(solve_single_occurrence(w, v, identity)?));
    }
    Ok(Err(normalize(w)?))
}

/// Witness for the normal form word, variables `1..=2n+p`.
fn wreath_normal_form(
    group: &AbelianGroup,
    nf: &NormalForm<WreathElement>,
    opts: &SolveOptions,
    budget: &mut Budget,
) -> Result<Option<Witness<WreathElement>>> {
    let cap = opts.genus_cap.unwrap_or_else(|| commutator_width(group));
    let n = nf.genus.min(cap);
    let offset = 2 * nf.genus as u32;
    let mut witness: Witness<WreathElement> = (1..=nf.num_variables())
        .map(|i| (i, WreathElement::identity(group)))
        .collect();
    let conjugators = if n == 0 {
        let Some(xs) = solve_spherical(&nf.constants, budget)? else {
            return Ok(None);
        };
        xs
    } else {
        let Some(sol) = solve_quadratic(group, n, &nf.constants, budget)? else {
            return Ok(None);
        };
        for (i, (x, y)) in sol.pairs.into_iter().enumerate() {
            witness.insert(2 * i as u32 + 1, x);
            witness.insert(2 * i as u32 + 2, y);
        }
        sol.conjugators
    };
    for (j, x) in conjugators.into_iter().enumerate() {
        witness.insert(offset + j as u32 + 1, x);
    }
    Ok(Some(witness))
}

pub fn solve_wreath(
    group: &AbelianGroup,
    w: &EquationWord<WreathElement>,
    opts: &SolveOptions,
) -> Result<Verdict<WreathElement>> {
    let identity = WreathElement::identity(group);
    let nf = match prepare(w, &identity)? {
        Ok(witness) => return checked(w, witness),
        Err(nf) => nf,
    };
    let mut budget = Budget::from_option(opts.budget);
    match wreath_normal_form(group, &nf, opts, &mut budget)? {
        None => Ok(Verdict::Unsat),
        Some(witness) => {
            if !nf.word().verify(&witness)? {
                return Err(Error::WitnessRejected("witness does not solve the normal form".into()));
            }
            checked(w, nf.pull_back(&witness, &identity))
        }
    }
}

pub fn solve_baumslag(w: &EquationWord<BaumslagElement>, opts: &SolveOptions) -> Result<Verdict<BaumslagElement>> {
    let identity = BaumslagElement::identity();
    let nf = match prepare(w, &identity)? {
        Ok(witness) => return checked(w, witness),
        Err(nf) => nf,
    };
    let mut budget = Budget::from_option(opts.budget);
    match solve_quadratic_baumslag(&nf, &mut budget)? {
        None => Ok(Verdict::Unsat),
        Some(witness) => checked(w, nf.pull_back(&witness, &identity)),
    }
}

/// Exhaustive search over a finite group listed by `elements`.
pub fn solve_finite<G: GroupElem>(w: &EquationWord<G>, elements: &[G], opts: &SolveOptions) -> Result<Verdict<G>> {
    w.require_orientable_quadratic()?;
    let mut budget = Budget::from_option(opts.budget);
    match oracle_finite_group_solvable(w, elements, &mut budget)? {
        None => Ok(Verdict::Unsat),
        Some(witness) => checked(w, witness),
    }
}
