//! Finitely generated abelian groups `Z^r ⊕ Z/m_1 ⊕ ... ⊕ Z/m_s`.

mod matrix;
mod subgroup;

use std::fmt;

pub use matrix::{hermite_rows, smith_normal_form, solve_in_hermite, IntMatrix, Smith};
pub use subgroup::{quotient, QuotientMap, Subgroup};

use crate::error::{Error, Result};

/// An element of an [`AbelianGroup`]: free coordinates first, then one
/// coordinate per torsion factor reduced into `[0, m_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl AbelianGroup {
    /// `torsion` must be a divisibility chain of orders `>= 2`.
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        let chain = torsion.iter().all(|&m| m >= 2)
            && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain {
            return Err(Error::InvalidTorsion(torsion));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        AbelianGroup::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of stored coordinates, `r + s`.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// Minimal number of generators: free rank plus number of invariant factors.
    pub fn min_generators(&self) -> usize {
        self.dim()
    }

    /// Order of the torsion part, i.e. the number of torsion coordinate tuples.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().map(|&m| m as u64).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.dim()])
    }

    /// Reduces arbitrary integer coordinates into canonical form.
    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        Ok(self.reduce(coords))
    }

    pub(crate) fn reduce(&self, mut coords: Vec<i64>) -> GroupElement {
        debug_assert_eq!(coords.len(), self.dim());
        for (x, &m) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(m);
        }
        GroupElement(coords)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.dim()
            && x.0[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .all(|(&v, &m)| (0..m).contains(&v))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    /// `None` for elements of infinite order.
    pub fn order(&self, a: &GroupElement) -> Option<i64> {
        if a.0[..self.free_rank].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            a.0[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .map(|(&x, &m)| m / gcd(x, m))
                .fold(1, lcm),
        )
    }

    /// Free part of an element.
    pub fn free_part<'a>(&self, a: &'a GroupElement) -> &'a [i64] {
        &a.0[..self.free_rank]
    }

    /// Element with the given free part and zero torsion part.
    pub fn from_free(&self, free: &[i64]) -> GroupElement {
        let mut v = free.to_vec();
        v.resize(self.dim(), 0);
        GroupElement(v)
    }

    /// All elements of the torsion subgroup, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![vec![0i64; self.dim()]];
        for (i, &m) in self.torsion.iter().enumerate() {
            let idx = self.free_rank + i;
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |k| {
                        let mut w = v.clone();
                        w[idx] = k;
                        w
                    })
                })
                .collect();
        }
        out.sort();
        out.into_iter().map(GroupElement).collect()
    }

    /// All elements whose free coordinates lie in `[-radius, radius]`.
    pub fn box_elements(&self, radius: i64) -> Vec<GroupElement> {
        let torsion = self.torsion_elements();
        let mut frees: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.free_rank {
            frees = frees
                .into_iter()
                .flat_map(|v| {
                    (-radius..=radius).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        let mut out = Vec::with_capacity(frees.len() * torsion.len());
        for f in &frees {
            for t in &torsion {
                let mut v = t.0.clone();
                v[..self.free_rank].copy_from_slice(f);
                out.push(GroupElement(v));
            }
        }
        out
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        f.write_str(&parts.join(" + "))
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
