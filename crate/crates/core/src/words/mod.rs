//! Equations as words in variables and constants.

mod normal;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

pub use normal::{normalize, NormalForm};
pub(crate) use parse::parse_at;
pub use parse::parse_word;

use crate::error::{Error, Result};
use crate::group::GroupElem;

#[derive(Clone, PartialEq, Debug)]
pub enum Letter<G> {
    /// `X_id`, or its inverse when `inv` is set.
    Var { id: u32, inv: bool },
    Const(G),
}

impl<G: GroupElem> Letter<G> {
    pub fn var(id: u32) -> Self {
        Letter::Var { id, inv: false }
    }

    pub fn var_inv(id: u32) -> Self {
        Letter::Var { id, inv: true }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Letter::Var { id, inv } => Letter::Var { id: *id, inv: !inv },
            Letter::Const(c) => Letter::Const(c.inv()),
        }
    }
}

/// Variable assignment, indexed by variable number.
pub type Witness<G> = BTreeMap<u32, G>;

#[derive(Clone, PartialEq, Debug)]
pub struct EquationWord<G> {
    pub letters: Vec<Letter<G>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    /// Every variable occurs at most twice, and twice only with opposite signs.
    OrientableQuadratic { once: Vec<u32>, twice: Vec<u32> },
    NotQuadratic { var: u32, occurrences: usize },
    NotOrientable { var: u32 },
}

impl<G: GroupElem> EquationWord<G> {
    pub fn new(letters: Vec<Letter<G>>) -> Self {
        EquationWord { letters }
    }

    pub fn empty() -> Self {
        EquationWord { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        EquationWord {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        EquationWord { letters }
    }

    pub fn constants(&self) -> impl Iterator<Item = &G> {
        self.letters.iter().filter_map(|l| match l {
            Letter::Const(c) => Some(c),
            Letter::Var { .. } => None,
        })
    }

    /// Variables with their signed occurrences, in index order.
    pub fn occurrences(&self) -> BTreeMap<u32, Vec<bool>> {
        let mut occ: BTreeMap<u32, Vec<bool>> = BTreeMap::new();
        for l in &self.letters {
            if let Letter::Var { id, inv } = l {
                occ.entry(*id).or_default().push(*inv);
            }
        }
        occ
    }

    pub fn variables(&self) -> Vec<u32> {
        self.occurrences().into_keys().collect()
    }

    pub fn classify(&self) -> Classification {
        let occ = self.occurrences();
        if let Some((&var, o)) = occ.iter().find(|(_, o)| o.len() > 2) {
            return Classification::NotQuadratic {
                var,
                occurrences: o.len(),
            };
        }
        if let Some((&var, _)) = occ.iter().find(|(_, o)| o.len() == 2 && o[0] == o[1]) {
            return Classification::NotOrientable { var };
        }
        let (twice, once): (Vec<_>, Vec<_>) = occ.iter().partition(|(_, o)| o.len() == 2);
        Classification::OrientableQuadratic {
            once: once.into_iter().map(|(&v, _)| v).collect(),
            twice: twice.into_iter().map(|(&v, _)| v).collect(),
        }
    }

    /// Classification as a `Result`, with the non-quadratic cases as errors.
    pub fn require_orientable_quadratic(&self) -> Result<(Vec<u32>, Vec<u32>)> {
        match self.classify() {
            Classification::OrientableQuadratic { once, twice } => Ok((once, twice)),
            Classification::NotQuadratic { var, occurrences } => {
                Err(Error::NotQuadratic { var, occurrences })
            }
            Classification::NotOrientable { var } => Err(Error::NotOrientable(var)),
        }
    }

    /// The value of the word under `witness`; `None` for the empty word.
    pub fn evaluate(&self, witness: &Witness<G>) -> Result<Option<G>> {
        let mut acc: Option<G> = None;
        for l in &self.letters {
            let x = match l {
                Letter::Const(c) => c.clone(),
                Letter::Var { id, inv } => {
                    let v = witness.get(id).ok_or(Error::MissingAssignment(*id))?;
                    if *inv {
                        v.inv()
                    } else {
                        v.clone()
                    }
                }
            };
            acc = Some(match acc {
                None => x,
                Some(a) => a.op(&x),
            });
        }
        Ok(acc)
    }

    /// Whether `witness` sends the word to the identity.
    pub fn verify(&self, witness: &Witness<G>) -> Result<bool> {
        Ok(self.evaluate(witness)?.map_or(true, |g| g.is_identity()))
    }

    /// Renders the word, naming constants through `name`.
    pub fn display_with<F>(&self, name: F) -> String
    where
        F: Fn(&G) -> Option<String>,
    {
        let mut parts = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            parts.push(match l {
                Letter::Var { id, inv: false } => format!("X{id}"),
                Letter::Var { id, inv: true } => format!("X{id}^-1"),
                Letter::Const(c) => match name(c) {
                    Some(n) => n,
                    None => match name(&c.inv()) {
                        Some(n) => format!("{n}^-1"),
                        None => format!("{{{c}}}"),
                    },
                },
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl<G: GroupElem> fmt::Display for EquationWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|_| None))
    }
}

/// An assignment solving a word in which `var` occurs exactly once, with the
/// remaining variables sent to `identity`.
pub fn solve_single_occurrence<G: GroupElem>(
    w: &EquationWord<G>,
    var: u32,
    identity: &G,
) -> Result<Witness<G>> {
    let mut witness: Witness<G> = w.variables().into_iter().map(|v| (v, identity.clone())).collect();
    let pos = w
        .letters
        .iter()
        .position(|l| matches!(l, Letter::Var { id, .. } if *id == var))
        .ok_or_else(|| Error::Precondition(format!("X{var} does not occur")))?;
    let before = EquationWord::new(w.letters[..pos].to_vec());
    let after = EquationWord::new(w.letters[pos + 1..].to_vec());
    let a = before.evaluate(&witness)?.unwrap_or_else(|| identity.clone());
    let b = after.evaluate(&witness)?.unwrap_or_else(|| identity.clone());
    // A X B = 1 gives X = A^-1 B^-1; A X^-1 B = 1 gives X = B A
    let value = match w.letters[pos] {
        Letter::Var { inv: false, .. } => a.inv().op(&b.inv()),
        _ => b.op(&a),
    };
    witness.insert(var, value);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianGroup;
    use crate::group::Perm;
    use crate::wreath::WreathElement;
    use std::collections::HashMap;

    fn wreath_consts(g: &AbelianGroup, defs: &[(&str, &str)]) -> HashMap<String, WreathElement> {
        defs.iter()
            .map(|(n, s)| (n.to_string(), WreathElement::parse(g, s).unwrap()))
            .collect()
    }

    #[test]
    fn classify_examples() {
        let g = AbelianGroup::free(1);
        let c = wreath_consts(&g, &[("c", "(1 ; (0))"), ("d", "(2 ; (0))")]);
        let w = parse_word("[X1,X2] c^X3", &c).unwrap();
        assert_eq!(
            w.classify(),
            Classification::OrientableQuadratic {
                once: vec![],
                twice: vec![1, 2, 3]
            }
        );
        let w = parse_word("X1 X1 c", &c).unwrap();
        assert_eq!(w.classify(), Classification::NotOrientable { var: 1 });
        let w = parse_word("X1 c X1^-1 X1 d", &c).unwrap();
        assert_eq!(
            w.classify(),
            Classification::NotQuadratic {
                var: 1,
                occurrences: 3
            }
        );
        let w = parse_word("X1 c X2 X2^-1", &c).unwrap();
        assert_eq!(
            w.classify(),
            Classification::OrientableQuadratic {
                once: vec![1],
                twice: vec![2]
            }
        );
    }

    #[test]
    fn verify_examples() {
        let g = AbelianGroup::free(2);
        let empty: EquationWord<WreathElement> = EquationWord::empty();
        assert!(empty.verify(&Witness::new()).unwrap());

        let c = wreath_consts(&g, &[("c", "(0 ; (1,0))")]);
        let w = parse_word("c^X1", &c).unwrap();
        let mut wit = Witness::new();
        wit.insert(1, WreathElement::parse(&g, "(3 - Z(1,1) ; (2,5))").unwrap());
        assert!(!w.verify(&wit).unwrap());

        let c = wreath_consts(&g, &[("c", "(-2 + Z(1,0) + Z(0,1) ; (0,0))")]);
        let w = parse_word("[X1,X2] c^X3", &c).unwrap();
        let mut wit = Witness::new();
        wit.insert(1, WreathElement::parse(&g, "(-1 ; (0,1))").unwrap());
        wit.insert(2, WreathElement::parse(&g, "(1 ; (1,0))").unwrap());
        assert!(matches!(w.verify(&wit), Err(Error::MissingAssignment(3))));
        wit.insert(3, WreathElement::identity(&g));
        assert!(w.verify(&wit).unwrap());
    }

    #[test]
    fn single_occurrence_is_solved() {
        let s3 = Perm::all(3);
        let consts: HashMap<String, Perm> =
            [("a".to_string(), s3[1].clone()), ("b".to_string(), s3[4].clone())].into();
        for text in ["a X1 b", "a X2^-1 b X1 a X1^-1", "X3^-1 a b a"] {
            let w = parse_word(text, &consts).unwrap();
            let Classification::OrientableQuadratic { once, .. } = w.classify() else {
                panic!("{text}");
            };
            let wit = solve_single_occurrence(&w, once[0], &Perm::identity(3)).unwrap();
            assert!(w.verify(&wit).unwrap(), "{text}");
        }
    }
}
