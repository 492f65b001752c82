use super::{hermite_rows, smith_normal_form, solve_in_hermite, AbelianGroup, GroupElement, IntMatrix};

/// Lattice of relations `m_i e_{r+i}` presenting `g` as a quotient of `Z^{dim}`.
fn relation_rows(g: &AbelianGroup) -> Vec<Vec<i64>> {
    let r = g.free_rank();
    g.torsion()
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut row = vec![0; g.dim()];
            row[r + i] = m;
            row
        })
        .collect()
}

/// A subgroup of an [`AbelianGroup`], stored as the canonical Hermite basis of
/// its preimage in `Z^{dim}`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: AbelianGroup,
    generators: Vec<GroupElement>,
    basis: Vec<Vec<i64>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(ambient: &AbelianGroup, generators: Vec<GroupElement>) -> Self {
        let mut rows: Vec<Vec<i64>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        rows.extend(relation_rows(ambient));
        let basis = hermite_rows(ambient.dim(), &rows);
        Subgroup {
            ambient: ambient.clone(),
            generators,
            basis,
        }
    }

    pub fn trivial(ambient: &AbelianGroup) -> Self {
        Subgroup::new(ambient, Vec::new())
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Canonical key: equal subgroups have equal bases.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        solve_in_hermite(&self.basis, x.coords()).is_some()
    }

    /// Integer coefficients expressing `x` in the stored generators, when
    /// `x` lies in the subgroup.
    pub fn express(&self, x: &GroupElement) -> Option<Vec<i64>> {
        // Solve over the generators plus the torsion relations, then drop the
        // relation coefficients.
        let n = self.ambient.dim();
        let mut rows: Vec<Vec<i64>> = self.generators.iter().map(|g| g.coords().to_vec()).collect();
        rows.extend(relation_rows(&self.ambient));
        let k = rows.len();
        // augmented rows [row | e_i]; the hermite form tracks the combination
        let aug: Vec<Vec<i64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..k).map(|j| i64::from(i == j)));
                v
            })
            .collect();
        let h = hermite_rows(n + k, &aug);
        let mut rest: Vec<i64> = x.coords().to_vec();
        let mut combo = vec![0i64; k];
        for row in &h {
            let Some(col) = row[..n].iter().position(|&v| v != 0) else {
                break;
            };
            if rest[..col].iter().any(|&v| v != 0) || rest[col] % row[col] != 0 {
                return None;
            }
            let q = rest[col] / row[col];
            for (r, b) in rest.iter_mut().zip(&row[..n]) {
                *r -= q * b;
            }
            for (c, b) in combo.iter_mut().zip(&row[n..]) {
                *c += q * b;
            }
        }
        if rest.iter().any(|&v| v != 0) {
            return None;
        }
        combo.truncate(self.generators.len());
        Some(combo)
    }

    fn presentation(&self) -> (IntMatrix, super::Smith) {
        let h = self.basis.len();
        let rel: Vec<Vec<i64>> = relation_rows(&self.ambient)
            .iter()
            .map(|r| solve_in_hermite(&self.basis, r).expect("relations lie in the lift"))
            .collect();
        let c = IntMatrix::from_rows(h, &rel);
        let snf = smith_normal_form(&c);
        (c, snf)
    }

    /// Invariant factors of the subgroup as an abstract group, `0` for free
    /// factors, trivial factors omitted.
    pub fn structure(&self) -> AbelianGroup {
        let h = self.basis.len();
        let (_, snf) = self.presentation();
        let mut d = snf.invariant_factors();
        d.resize(h, 0);
        let free = d.iter().filter(|&&x| x == 0).count();
        let torsion: Vec<i64> = d.into_iter().filter(|&x| x > 1).collect();
        AbelianGroup::new(free, torsion).expect("smith form gives a divisibility chain")
    }

    pub fn min_generators(&self) -> usize {
        self.structure().min_generators()
    }

    /// A generating set of size [`Subgroup::min_generators`].
    pub fn minimal_generators(&self) -> Vec<GroupElement> {
        let h = self.basis.len();
        let (_, snf) = self.presentation();
        let mut d = snf.invariant_factors();
        d.resize(h, 0);
        let b = IntMatrix::from_rows(self.ambient.dim(), &self.basis);
        let mut out = Vec::new();
        for i in 0..h {
            if d[i] == 1 {
                continue;
            }
            let x = b.left_apply(snf.v_inv.row(i));
            out.push(self.ambient.reduce(x));
        }
        out
    }
}

/// The projection `G -> G / L` with an explicit target group and a set
/// theoretic section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: AbelianGroup,
    target: AbelianGroup,
    v: IntMatrix,
    v_inv: IntMatrix,
    // source smith coordinate -> target coordinate
    slots: Vec<Option<usize>>,
}

impl QuotientMap {
    pub fn new(kernel: &Subgroup) -> Self {
        let source = kernel.ambient().clone();
        let n = source.dim();
        let a = IntMatrix::from_rows(n, kernel.basis());
        let snf = smith_normal_form(&a);
        let mut d = snf.invariant_factors();
        d.resize(n, 0);
        let free = d.iter().filter(|&&x| x == 0).count();
        let mut slots = vec![None; n];
        let mut torsion = Vec::new();
        let mut next_free = 0;
        for (j, &dj) in d.iter().enumerate() {
            if dj == 0 {
                slots[j] = Some(next_free);
                next_free += 1;
            } else if dj > 1 {
                slots[j] = Some(free + torsion.len());
                torsion.push(dj);
            }
        }
        let target = AbelianGroup::new(free, torsion).expect("smith form gives a divisibility chain");
        QuotientMap {
            source,
            target,
            v: snf.v,
            v_inv: snf.v_inv,
            slots,
        }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn project(&self, x: &GroupElement) -> GroupElement {
        let y = self.v.left_apply(x.coords());
        let mut z = vec![0; self.target.dim()];
        for (j, slot) in self.slots.iter().enumerate() {
            if let Some(s) = *slot {
                z[s] = y[j];
            }
        }
        self.target.reduce(z)
    }

    /// Some preimage of `z`; `project(section(z)) == z`.
    pub fn section(&self, z: &GroupElement) -> GroupElement {
        let mut y = vec![0; self.source.dim()];
        for (j, slot) in self.slots.iter().enumerate() {
            if let Some(s) = *slot {
                y[j] = z.coords()[s];
            }
        }
        self.source.reduce(self.v_inv.left_apply(&y))
    }
}

/// `G / <generators>` as an explicit projection.
pub fn quotient(g: &AbelianGroup, generators: Vec<GroupElement>) -> QuotientMap {
    QuotientMap::new(&Subgroup::new(g, generators))
}
