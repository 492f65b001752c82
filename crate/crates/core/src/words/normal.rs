//! Rewriting an orientable quadratic word into
//! `[X1,X2] ... [X_{2n-1},X_{2n}] c_1^{X_{2n+1}} ... c_p^{X_{2n+p}}`.
//!
//! The word is kept as `r * T` where `r` is still unprocessed and `T` is a
//! product of finished blocks. Every step substitutes one variable by a word
//! in fresh variables, so a solution of the normal form is pulled back by
//! replaying the substitutions in reverse.

use std::collections::BTreeMap;

use super::{EquationWord, Letter, Witness};
use crate::error::{Error, Result};
use crate::group::GroupElem;

#[derive(Clone, Debug)]
enum Block<G> {
    /// `p^-1 q^-1 p q`
    Comm(u32, u32),
    /// `z^-1 c z`
    Punct(G, u32),
}

type Word<G> = Vec<Letter<G>>;

#[derive(Clone, Debug)]
pub struct NormalForm<G> {
    pub genus: usize,
    pub constants: Vec<G>,
    originals: Vec<u32>,
    steps: Vec<(u32, Word<G>)>,
    // internal variable -> output index
    output: BTreeMap<u32, u32>,
}

impl<G: GroupElem> NormalForm<G> {
    /// Number of variables `2n + p` of the normal form.
    pub fn num_variables(&self) -> u32 {
        (2 * self.genus + self.constants.len()) as u32
    }

    pub fn word(&self) -> EquationWord<G> {
        let mut out = Vec::new();
        for i in 0..self.genus as u32 {
            let (p, q) = (2 * i + 1, 2 * i + 2);
            out.extend([
                Letter::var_inv(p),
                Letter::var_inv(q),
                Letter::var(p),
                Letter::var(q),
            ]);
        }
        for (j, c) in self.constants.iter().enumerate() {
            let z = (2 * self.genus + j + 1) as u32;
            out.extend([Letter::var_inv(z), Letter::Const(c.clone()), Letter::var(z)]);
        }
        EquationWord::new(out)
    }

    /// Turns a solution of [`NormalForm::word`] into a solution of the
    /// original word. Unassigned variables are read as `identity`.
    pub fn pull_back(&self, witness: &Witness<G>, identity: &G) -> Witness<G> {
        let mut values: BTreeMap<u32, G> = BTreeMap::new();
        for (&internal, out) in &self.output {
            values.insert(internal, witness.get(out).cloned().unwrap_or_else(|| identity.clone()));
        }
        for (var, w) in self.steps.iter().rev() {
            let v = eval(w, &values, identity);
            values.insert(*var, v);
        }
        self.originals
            .iter()
            .map(|&v| (v, values.get(&v).cloned().unwrap_or_else(|| identity.clone())))
            .collect()
    }

    /// Each original variable as a word in the normal-form variables.
    pub fn substitution(&self) -> BTreeMap<u32, EquationWord<G>> {
        let mut out = BTreeMap::new();
        for &x in &self.originals {
            let mut w: Word<G> = vec![Letter::var(x)];
            for (var, repl) in &self.steps {
                w = reduce(substitute(&w, *var, repl));
            }
            let renamed = w
                .into_iter()
                .filter_map(|l| match l {
                    Letter::Var { id, inv } => self.output.get(&id).map(|&id| Letter::Var { id, inv }),
                    c => Some(c),
                })
                .collect();
            out.insert(x, EquationWord::new(reduce(renamed)));
        }
        out
    }
}

fn eval<G: GroupElem>(w: &[Letter<G>], values: &BTreeMap<u32, G>, identity: &G) -> G {
    let mut acc = identity.clone();
    for l in w {
        acc = match l {
            Letter::Const(c) => acc.op(c),
            Letter::Var { id, inv } => match values.get(id) {
                Some(v) if *inv => acc.op(&v.inv()),
                Some(v) => acc.op(v),
                None => acc,
            },
        };
    }
    acc
}

fn inverse<G: GroupElem>(w: &[Letter<G>]) -> Word<G> {
    w.iter().rev().map(Letter::inverse).collect()
}

fn substitute<G: GroupElem>(w: &[Letter<G>], var: u32, repl: &[Letter<G>]) -> Word<G> {
    let repl_inv = inverse(repl);
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        match l {
            Letter::Var { id, inv: false } if *id == var => out.extend(repl.iter().cloned()),
            Letter::Var { id, inv: true } if *id == var => out.extend(repl_inv.iter().cloned()),
            other => out.push(other.clone()),
        }
    }
    out
}

/// Free reduction, merging adjacent constants and dropping trivial ones.
fn reduce<G: GroupElem>(w: Word<G>) -> Word<G> {
    let mut out: Word<G> = Vec::with_capacity(w.len());
    for l in w {
        match (out.last(), l) {
            (_, Letter::Const(c)) if c.is_identity() => {}
            (Some(Letter::Const(top)), Letter::Const(c)) => {
                let merged = top.op(&c);
                out.pop();
                if !merged.is_identity() {
                    out.push(Letter::Const(merged));
                }
            }
            (Some(Letter::Var { id: a, inv: ia }), Letter::Var { id: b, inv: ib }) if *a == b && *ia != ib => {
                out.pop();
            }
            (_, l) => out.push(l),
        }
    }
    out
}

fn cancels<G: GroupElem>(a: &Letter<G>, b: &Letter<G>) -> bool {
    match (a, b) {
        (Letter::Const(_), Letter::Const(_)) => true,
        (Letter::Var { id: x, inv: i }, Letter::Var { id: y, inv: j }) => x == y && i != j,
        _ => false,
    }
}

struct Normalizer<G> {
    next: u32,
    steps: Vec<(u32, Word<G>)>,
    r: Word<G>,
    tail: Vec<Block<G>>,
}

impl<G: GroupElem> Normalizer<G> {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    fn subst(&mut self, var: u32, repl: Word<G>) {
        self.r = reduce(substitute(&self.r, var, &repl));
        self.steps.push((var, repl));
    }

    /// Rewrites the tail `T` as `a T' a^-1` by conjugating its variables.
    fn conj_tail(&mut self, a: &[Letter<G>]) {
        if a.is_empty() {
            return;
        }
        let a_inv = inverse(a);
        let sandwich = |v: u32| {
            let mut w = a.to_vec();
            w.push(Letter::var(v));
            w.extend(a_inv.iter().cloned());
            w
        };
        let old = std::mem::take(&mut self.tail);
        for block in old {
            match block {
                Block::Comm(p, q) => {
                    let (p2, q2) = (self.fresh(), self.fresh());
                    self.steps.push((p, sandwich(p2)));
                    self.steps.push((q, sandwich(q2)));
                    self.tail.push(Block::Comm(p2, q2));
                }
                Block::Punct(c, z) => {
                    let z2 = self.fresh();
                    let mut w = vec![Letter::var(z2)];
                    w.extend(a_inv.iter().cloned());
                    self.steps.push((z, w));
                    self.tail.push(Block::Punct(c, z2));
                }
            }
        }
    }

    /// Cyclic conjugation moving the first `k` letters of `r` to its end.
    fn rotate(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        let head: Word<G> = self.r[..k].to_vec();
        self.conj_tail(&head);
        let mut r = self.r[k..].to_vec();
        r.extend(head);
        self.r = reduce(r);
    }

    fn cyclic_reduce(&mut self) {
        self.r = reduce(std::mem::take(&mut self.r));
        while self.r.len() >= 2 && cancels(&self.r[0], &self.r[self.r.len() - 1]) {
            self.rotate(1);
        }
    }

    fn position(&self, var: u32, from: usize) -> usize {
        (from..self.r.len())
            .find(|&i| matches!(self.r[i], Letter::Var { id, .. } if id == var))
            .expect("variable occurs in the word")
    }

    fn is_inv(&self, i: usize) -> bool {
        matches!(self.r[i], Letter::Var { inv: true, .. })
    }

    fn run(&mut self) {
        loop {
            self.cyclic_reduce();
            if self.r.is_empty() {
                return;
            }
            let mut pairs: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
            for (i, l) in self.r.iter().enumerate() {
                if let Letter::Var { id, .. } = l {
                    pairs.entry(*id).and_modify(|p| p.1 = i).or_insert((i, i));
                }
            }
            if pairs.is_empty() {
                let Letter::Const(c) = self.r[0].clone() else {
                    unreachable!("no variables left")
                };
                let z = self.fresh();
                self.conj_tail(&[Letter::var(z)]);
                self.tail.insert(0, Block::Punct(c, z));
                self.r.clear();
                return;
            }
            let mut order: Vec<(u32, (usize, usize))> = pairs.iter().map(|(&v, &p)| (v, p)).collect();
            order.sort_by_key(|&(_, (i, _))| i);
            let linked = order.iter().find_map(|&(x, (i, j))| {
                order
                    .iter()
                    .find(|&&(y, (a, b))| y != x && (i < a && a < j) != (i < b && b < j))
                    .map(|&(y, _)| (x, y))
            });
            match linked {
                Some((x, y)) => self.extract_commutator(x, y),
                None => {
                    let &(x, _) = order
                        .iter()
                        .min_by_key(|&&(_, (i, j))| j - i)
                        .expect("some variable");
                    self.extract_puncture(x);
                }
            }
        }
    }

    fn extract_commutator(&mut self, x: u32, y: u32) {
        let i = self.position(x, 0);
        self.rotate(i);
        // r = x^e A y^d B x^-e C y^-d D; make both exponents positive
        let mut x = x;
        if self.is_inv(0) {
            let x2 = self.fresh();
            self.subst(x, vec![Letter::var_inv(x2)]);
            x = x2;
        }
        let mut y = y;
        let iy = self.position(y, 1);
        if self.is_inv(iy) {
            let y2 = self.fresh();
            self.subst(y, vec![Letter::var_inv(y2)]);
            y = y2;
        }
        // y := A^-1 y1
        let iy = self.position(y, 1);
        let y1 = self.fresh();
        let mut repl = inverse(&self.r[1..iy]);
        repl.push(Letter::var(y1));
        self.subst(y, repl);
        // r = x y1 B x^-1 C y1^-1 D;  y1 := y2 B^-1
        let ix = self.position(x, 1);
        let y2 = self.fresh();
        let mut repl = vec![Letter::var(y2)];
        repl.extend(inverse(&self.r[2..ix]));
        self.subst(y1, repl);
        // r = x y2 x^-1 E y2^-1 D;  x := E x3
        let iy = self.position(y2, 2);
        let e: Word<G> = self.r[3..iy].to_vec();
        let x3 = self.fresh();
        let mut repl = e.clone();
        repl.push(Letter::var(x3));
        self.subst(x, repl);
        // r = E x3 y2 x3^-1 y2^-1 D
        let ix = self.position(x3, 0);
        self.rotate(ix);
        let (p, q) = (self.fresh(), self.fresh());
        self.subst(x3, vec![Letter::var_inv(p)]);
        self.subst(y2, vec![Letter::var_inv(q)]);
        debug_assert!(matches!(
            &self.r[..4],
            [Letter::Var { id: a, inv: true }, Letter::Var { id: b, inv: true }, Letter::Var { id: c, inv: false }, Letter::Var { id: d, inv: false }]
            if *a == p && *b == q && *c == p && *d == q
        ));
        // r = [p,q] R; move the commutator past R into the tail
        let rest: Word<G> = self.r[4..].to_vec();
        let rest_inv = inverse(&rest);
        let (p2, q2) = (self.fresh(), self.fresh());
        for (old, new) in [(p, p2), (q, q2)] {
            let mut w = rest.clone();
            w.push(Letter::var(new));
            w.extend(rest_inv.iter().cloned());
            self.steps.push((old, w));
        }
        self.r = rest;
        self.tail.insert(0, Block::Comm(p2, q2));
    }

    fn extract_puncture(&mut self, x: u32) {
        let i = self.position(x, 0);
        self.rotate(i);
        // r = x^e c x^-e B
        let Letter::Const(c) = self.r[1].clone() else {
            unreachable!("innermost pair encloses one constant")
        };
        debug_assert!(matches!(self.r[2], Letter::Var { id, .. } if id == x));
        let rest: Word<G> = self.r[3..].to_vec();
        let z = self.fresh();
        let repl = if self.is_inv(0) {
            let mut w = vec![Letter::var(z)];
            w.extend(inverse(&rest));
            w
        } else {
            let mut w = rest.clone();
            w.push(Letter::var_inv(z));
            w
        };
        self.steps.push((x, repl));
        self.r = rest;
        self.tail.insert(0, Block::Punct(c, z));
    }

    /// Moves commutators in front of punctures: `P C = C P^C`.
    fn sort_tail(&mut self) {
        while let Some(i) = (0..self.tail.len().saturating_sub(1))
            .find(|&i| matches!((&self.tail[i], &self.tail[i + 1]), (Block::Punct(..), Block::Comm(..))))
        {
            let (Block::Punct(c, z), Block::Comm(p, q)) = (self.tail[i].clone(), self.tail[i + 1].clone()) else {
                unreachable!()
            };
            let z2 = self.fresh();
            // z := z2 C^-1 with C = p^-1 q^-1 p q
            self.steps.push((
                z,
                vec![
                    Letter::var(z2),
                    Letter::var_inv(q),
                    Letter::var_inv(p),
                    Letter::var(q),
                    Letter::var(p),
                ],
            ));
            self.tail[i] = Block::Comm(p, q);
            self.tail[i + 1] = Block::Punct(c, z2);
        }
    }
}

/// Normal form of a word in which every variable occurs exactly twice, with
/// opposite exponents.
pub fn normalize<G: GroupElem>(w: &EquationWord<G>) -> Result<NormalForm<G>> {
    let (once, twice) = w.require_orientable_quadratic()?;
    if !once.is_empty() {
        return Err(Error::Precondition(format!(
            "X{} occurs only once; eliminate it before normalizing",
            once[0]
        )));
    }
    if let Some(nf) = already_normal(w, &twice) {
        return Ok(nf);
    }
    let mut n = Normalizer {
        next: twice.iter().copied().max().unwrap_or(0),
        steps: Vec::new(),
        r: w.letters.clone(),
        tail: Vec::new(),
    };
    n.run();
    n.sort_tail();
    let mut output = BTreeMap::new();
    let mut constants = Vec::new();
    let mut genus = 0;
    for block in &n.tail {
        if let Block::Comm(p, q) = block {
            output.insert(*p, 2 * genus + 1);
            output.insert(*q, 2 * genus + 2);
            genus += 1;
        }
    }
    for block in &n.tail {
        if let Block::Punct(c, z) = block {
            output.insert(*z, 2 * genus + constants.len() as u32 + 1);
            constants.push(c.clone());
        }
    }
    Ok(NormalForm {
        genus: genus as usize,
        constants,
        originals: twice,
        steps: n.steps,
        output,
    })
}

/// Recognizes words that already have the normal shape, up to renaming.
fn already_normal<G: GroupElem>(w: &EquationWord<G>, twice: &[u32]) -> Option<NormalForm<G>> {
    use Letter::{Const, Var};
    let l = &w.letters;
    let mut output = BTreeMap::new();
    let mut i = 0;
    let mut genus = 0;
    while let [Var { id: p, inv: true }, Var { id: q, inv: true }, Var { id: p2, inv: false }, Var { id: q2, inv: false }, ..] =
        &l[i..]
    {
        if p != p2 || q != q2 || p == q {
            return None;
        }
        output.insert(*p, 2 * genus + 1);
        output.insert(*q, 2 * genus + 2);
        genus += 1;
        i += 4;
    }
    let mut constants = Vec::new();
    while let [Var { id: z, inv: true }, Const(c), Var { id: z2, inv: false }, ..] = &l[i..] {
        if z != z2 || c.is_identity() {
            return None;
        }
        output.insert(*z, 2 * genus + constants.len() as u32 + 1);
        constants.push(c.clone());
        i += 3;
    }
    (i == l.len()).then(|| NormalForm {
        genus: genus as usize,
        constants,
        originals: twice.to_vec(),
        steps: Vec::new(),
        output,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Cyclic, Perm};
    use crate::words::parse_word;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn s3_consts() -> HashMap<String, Perm> {
        let s3 = Perm::all(3);
        [
            ("a".to_string(), s3[1].clone()),
            ("b".to_string(), s3[3].clone()),
            ("c".to_string(), s3[4].clone()),
            ("c1".to_string(), s3[2].clone()),
            ("c2".to_string(), s3[5].clone()),
        ]
        .into()
    }

    /// Assignments of `k` variables, all of them when there are few and an
    /// evenly strided sample otherwise.
    fn assignments(group: &[Perm], k: u32) -> Vec<Witness<Perm>> {
        let n = group.len() as u64;
        let total = n.pow(k);
        let step = (total / 1500).max(1) | 1;
        (0..total)
            .step_by(step as usize)
            .map(|mut idx| {
                (1..=k)
                    .map(|v| {
                        let g = group[(idx % n) as usize].clone();
                        idx /= n;
                        (v, g)
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks the substitution and pull-back of `w` exhaustively over S_3.
    fn check(w: &EquationWord<Perm>) -> NormalForm<Perm> {
        let nf = normalize(w).unwrap();
        let s3 = Perm::all(3);
        let id = Perm::identity(3);
        let nfw = nf.word();
        let subst = nf.substitution();
        for tau in assignments(&s3, nf.num_variables()) {
            let nf_ok = nfw.verify(&tau).unwrap();
            let back = nf.pull_back(&tau, &id);
            // the substituted word is conjugate to the normal form
            let mut img = Witness::new();
            for (x, sw) in &subst {
                img.insert(*x, sw.evaluate(&tau).unwrap().unwrap_or(id.clone()));
            }
            assert_eq!(img, back);
            assert_eq!(w.verify(&back).unwrap(), nf_ok, "{w} vs {nfw}");
        }
        nf
    }

    #[test]
    fn already_normal() {
        let k = s3_consts();
        let nf = check(&parse_word("[X1,X2] c^X3", &k).unwrap());
        assert_eq!(nf.genus, 1);
        assert_eq!(nf.constants, vec![k["c"].clone()]);
        let subst = nf.substitution();
        for (x, w) in subst {
            assert_eq!(w.letters, vec![Letter::var(x)]);
        }
        let nf = check(&parse_word("X1^-1 X2^-1 X1 X2 X3^-1 X4^-1 X3 X4 X7^-1 a X7 X5^-1 b X5", &k).unwrap());
        assert_eq!(nf.genus, 2);
        assert_eq!(nf.substitution()[&7].letters, vec![Letter::var(5)]);
    }

    #[test]
    fn spherical_word() {
        let k = s3_consts();
        let nf = check(&parse_word("c1^X1 c2^X2", &k).unwrap());
        assert_eq!(nf.genus, 0);
        assert_eq!(nf.constants, vec![k["c1"].clone(), k["c2"].clone()]);
    }

    #[test]
    fn linked_pair() {
        let k = s3_consts();
        let nf = check(&parse_word("X1 c1 X2 X1^-1 c2 X2^-1", &k).unwrap());
        assert_eq!(nf.genus, 1);
        assert_eq!(nf.constants.len(), 1);
        assert_eq!(nf.constants[0].is_identity(), false);
    }

    #[test]
    fn assorted_words() {
        let k = s3_consts();
        for text in [
            "X1 X2 X1^-1 X2^-1",
            "X1 X2 X3 X1^-1 X2^-1 X3^-1",
            "a X1 b X1^-1",
            "X1 a X1^-1 X2 b X2^-1 c",
            "X2^-1 a X1 X2 b X1^-1",
            "a b c",
            "a a^-1",
            "X1 X1^-1 a",
            "X3 a X1 X2^-1 X3^-1 b X2 c X1^-1",
            "[X1,X2] [X3, a]",
            "X1 X2 a X3 X1^-1 b X2^-1 X3^-1",
        ] {
            check(&parse_word(text, &k).unwrap());
        }
    }

    #[test]
    fn rejects_single_occurrence() {
        let k = s3_consts();
        assert!(normalize(&parse_word("X1 a", &k).unwrap()).is_err());
        assert!(normalize(&parse_word("X1 X1 a", &k).unwrap()).is_err());
    }

    #[test]
    fn cyclic_groups_too() {
        let k: HashMap<String, Cyclic> = [("a".to_string(), Cyclic::new(4, 1))].into();
        let w = parse_word("X1 a X2 X1^-1 X2^-1", &k).unwrap();
        let nf = normalize(&w).unwrap();
        assert_eq!(nf.genus, 1);
        assert_eq!(nf.constants, vec![Cyclic::new(4, 1)]);
    }

    fn random_word() -> impl Strategy<Value = Vec<(u8, bool)>> {
        // each variable twice with opposite signs, up to three constants, shuffled
        (1u8..=3, 0usize..4, prop::collection::vec(0u8..6, 3), any::<u64>()).prop_map(|(nv, nc, cs, seed)| {
            let mut letters: Vec<(u8, bool)> = Vec::new();
            for v in 1..=nv {
                letters.push((v, false));
                letters.push((v, true));
            }
            for c in cs.iter().take(nc) {
                letters.push((100 + c, false));
            }
            let mut s = seed;
            for i in (1..letters.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                letters.swap(i, j);
            }
            letters
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn normalization_is_sound(spec in random_word()) {
            let s3 = Perm::all(3);
            let letters = spec
                .into_iter()
                .map(|(v, inv)| if v >= 100 { Letter::Const(s3[(v - 100) as usize].clone()) } else { Letter::Var { id: v as u32, inv } })
                .collect();
            let w = EquationWord::new(letters);
            let nf = check(&w);
            prop_assert!(nf.num_variables() <= 3 + 3);
        }
    }
}
