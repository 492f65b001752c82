//! The interface equation words are evaluated in, plus two small finite
//! groups used to test normalization.

use std::fmt;

pub trait GroupElem: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// A permutation of `{0, .., n-1}`, composed left to right: `(a.op(b))(i) = b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn new(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl GroupElem for Perm {
    fn op(&self, other: &Self) -> Self {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    fn inv(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `Z/n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Cyclic {
    pub n: u32,
    pub k: u32,
}

impl Cyclic {
    pub fn new(n: u32, k: i64) -> Self {
        Cyclic {
            n,
            k: k.rem_euclid(i64::from(n)) as u32,
        }
    }

    pub fn all(n: u32) -> Vec<Cyclic> {
        (0..n).map(|k| Cyclic { n, k }).collect()
    }
}

impl GroupElem for Cyclic {
    fn op(&self, other: &Self) -> Self {
        Cyclic {
            n: self.n,
            k: (self.k + other.k) % self.n,
        }
    }

    fn inv(&self) -> Self {
        Cyclic {
            n: self.n,
            k: (self.n - self.k) % self.n,
        }
    }

    fn is_identity(&self) -> bool {
        self.k == 0
    }
}

impl fmt::Display for Cyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_axioms() {
        let s3 = Perm::all(3);
        assert_eq!(s3.len(), 6);
        for a in &s3 {
            assert!(a.op(&a.inv()).is_identity());
            for b in &s3 {
                for c in &s3 {
                    assert_eq!(a.op(b).op(c), a.op(&b.op(c)));
                }
            }
        }
        let nonabelian = s3.iter().any(|a| s3.iter().any(|b| a.op(b) != b.op(a)));
        assert!(nonabelian);
    }
}
