//! Dense integer matrices, Smith normal form and row Hermite form.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix row {i}");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a * self[(k, j)];
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == 0))
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += c * v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += c * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

/// `u * m * v == d` with `u`, `v` unimodular; `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, zeros included.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_nonzero(&a, k) else {
                return Smith { u, d: a, v, v_inv };
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let p = a[(k, k)];
            let mut dirty = false;
            for i in k + 1..rows {
                let q = a[(i, k)] / p;
                a.add_row(i, k, -q);
                u.add_row(i, k, -q);
                dirty |= a[(i, k)] != 0;
            }
            for j in k + 1..cols {
                let q = a[(k, j)] / p;
                a.add_col(j, k, -q);
                v.add_col(j, k, -q);
                v_inv.add_row(k, j, q);
                dirty |= a[(k, j)] != 0;
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| a[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    a.add_row(k, i, 1);
                    u.add_row(k, i, 1);
                }
                None => break,
            }
        }
        if a[(k, k)] < 0 {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    Smith { u, d: a, v, v_inv }
}

fn min_nonzero(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            let x = a[(i, j)].abs();
            if x != 0 && best.map_or(true, |(_, _, b)| x < b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is a basis in echelon form: pivots strictly move right, each
/// pivot is positive, and the entries above a pivot lie in `[0, pivot)`.
/// Zero rows are dropped, so the basis is canonical for the lattice.
pub fn hermite_rows(cols: usize, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == a.len() {
            break;
        }
        loop {
            let best = (pivot_row..a.len())
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            let p = a[pivot_row][col];
            let mut clean = true;
            for i in pivot_row + 1..a.len() {
                let q = a[i][col] / p;
                if q != 0 {
                    let src = a[pivot_row].clone();
                    for (x, s) in a[i].iter_mut().zip(&src) {
                        *x -= q * s;
                    }
                }
                clean &= a[i][col] == 0;
            }
            if clean {
                break;
            }
        }
        if pivot_row < a.len() && a[pivot_row][col] != 0 {
            if a[pivot_row][col] < 0 {
                for x in a[pivot_row].iter_mut() {
                    *x = -*x;
                }
            }
            let p = a[pivot_row][col];
            let src = a[pivot_row].clone();
            for i in 0..pivot_row {
                let q = a[i][col].div_euclid(p);
                if q != 0 {
                    for (x, s) in a[i].iter_mut().zip(&src) {
                        *x -= q * s;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Coefficients `c` with `x = sum c_i * basis_i`, for `basis` in Hermite form.
pub fn solve_in_hermite(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let mut rest = x.to_vec();
    let mut coeffs = Vec::with_capacity(basis.len());
    for row in basis {
        let col = row.iter().position(|&v| v != 0).expect("hermite rows are nonzero");
        if rest[..col].iter().any(|&v| v != 0) {
            return None;
        }
        if rest[col] % row[col] != 0 {
            return None;
        }
        let q = rest[col] / row[col];
        for (r, b) in rest.iter_mut().zip(row) {
            *r -= q * b;
        }
        coeffs.push(q);
    }
    rest.iter().all(|&v| v == 0).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &IntMatrix) -> i64 {
        // Bareiss fraction-free elimination
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = m.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "UMV != D for {m:?}");
        assert!(s.d.is_diagonal());
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let diag = s.d.diagonal();
        assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let s = check(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn sign_is_normalized() {
        let s = check(&IntMatrix::from_rows(1, &[vec![-5]]));
        assert_eq!(s.invariant_factors(), vec![5]);
        assert!(s.u[(0, 0)] == -1 || s.v[(0, 0)] == -1);
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
        check(&IntMatrix::zeros(0, 0));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(2, &[vec![2, 4], vec![1, 1]]);
        let b = hermite_rows(2, &[vec![1, 1], vec![0, 2], vec![3, 5]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(solve_in_hermite(&a, &[3, 5]), Some(vec![3, 1]));
        assert_eq!(solve_in_hermite(&a, &[0, 1]), None);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn smith_properties(rows in 0usize..4, cols in 0usize..4, seed in proptest::collection::vec(-6i64..=6, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(&IntMatrix::from_rows(cols, &data));
        }
    }
}
