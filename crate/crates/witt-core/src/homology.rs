//! F₂ linear algebra, integer Smith normal form, and cohomology of
//! finite chain complexes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("differentials have inconsistent shapes or do not compose to zero")]
    NotAComplex,
}

/// Dense matrix over F₂, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatF2 {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl MatF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatF2 { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = MatF2::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v & 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    pub fn mul(&self, other: &MatF2) -> MatF2 {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = MatF2::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) == 1 {
                    for j in 0..other.cols {
                        let v = out.get(i, j) ^ other.get(k, j);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Gaussian elimination over F₂; returns (rank, kernel dimension).
pub fn rank_kernel_f2(m: &MatF2) -> (usize, usize) {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(pivot) = (rank..a.rows).find(|&i| a.get(i, col) == 1) else {
            continue;
        };
        for j in 0..a.cols {
            let (x, y) = (a.get(rank, j), a.get(pivot, j));
            a.set(rank, j, y);
            a.set(pivot, j, x);
        }
        for i in 0..a.rows {
            if i != rank && a.get(i, col) == 1 {
                for j in 0..a.cols {
                    let v = a.get(i, j) ^ a.get(rank, j);
                    a.set(i, j, v);
                }
            }
        }
        rank += 1;
        if rank == a.rows {
            break;
        }
    }
    (rank, m.cols - rank)
}

/// Dense integer matrix with exact arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatZ {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl MatZ {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == cols), "ragged rows");
        MatZ { rows, cols, entries }
    }

    pub fn from_i64(entries: &[Vec<i64>]) -> Self {
        MatZ::new(
            entries
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatZ {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatZ::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<BigInt>> {
        &self.entries
    }

    pub fn mul(&self, other: &MatZ) -> MatZ {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = MatZ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = &self.entries[i][k] * &other.entries[k][j];
                    out.entries[i][j] += term;
                }
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.entries[i][i].clone())
            .collect()
    }
}

/// 0/1 integer lift of an F₂ matrix.
pub fn integer_lift(m: &MatF2) -> MatZ {
    MatZ::new(
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| BigInt::from(m.get(i, j))).collect())
            .collect(),
    )
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &MatZ) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.entries.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form data: D = U·A·V with U, V unimodular and D a
/// nonnegative diagonal with a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: MatZ,
    pub d: MatZ,
    pub v: MatZ,
}

pub fn smith_normal_form(a: &MatZ) -> SnfResult {
    let rows = a.rows;
    let cols = a.cols;
    let mut d = a.clone();
    let mut u = MatZ::identity(rows);
    let mut v = MatZ::identity(cols);

    let swap_rows = |d: &mut MatZ, u: &mut MatZ, x: usize, y: usize| {
        d.entries.swap(x, y);
        u.entries.swap(x, y);
    };
    let swap_cols = |d: &mut MatZ, v: &mut MatZ, x: usize, y: usize| {
        for r in &mut d.entries {
            r.swap(x, y);
        }
        for r in &mut v.entries {
            r.swap(x, y);
        }
    };
    // row_i -= q * row_t
    let row_sub = |d: &mut MatZ, u: &mut MatZ, i: usize, t: usize, q: &BigInt| {
        for j in 0..cols {
            let delta = q * &d.entries[t][j];
            d.entries[i][j] -= delta;
        }
        for j in 0..rows {
            let delta = q * &u.entries[t][j];
            u.entries[i][j] -= delta;
        }
    };
    // col_j -= q * col_t
    let col_sub = |d: &mut MatZ, v: &mut MatZ, j: usize, t: usize, q: &BigInt| {
        for i in 0..rows {
            let delta = q * &d.entries[i][t];
            d.entries[i][j] -= delta;
        }
        for i in 0..cols {
            let delta = q * &v.entries[i][t];
            v.entries[i][j] -= delta;
        }
    };
    let row_add = |d: &mut MatZ, u: &mut MatZ, t: usize, i: usize| {
        for j in 0..cols {
            let delta = d.entries[i][j].clone();
            d.entries[t][j] += delta;
        }
        for j in 0..rows {
            let delta = u.entries[i][j].clone();
            u.entries[t][j] += delta;
        }
    };

    for t in 0..rows.min(cols) {
        'step: loop {
            // smallest-magnitude nonzero pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d.entries[i][j].is_zero() {
                        continue;
                    }
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => {
                            d.entries[i][j].abs() < d.entries[pi][pj].abs()
                        }
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'step;
            };
            if pi != t {
                swap_rows(&mut d, &mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, t, pj);
            }
            // reduce column and row by the pivot; a nonzero remainder
            // becomes the strictly smaller pivot of the next pass
            let mut dirty = false;
            for i in t + 1..rows {
                if d.entries[i][t].is_zero() {
                    continue;
                }
                let q = &d.entries[i][t] / &d.entries[t][t];
                if !q.is_zero() {
                    row_sub(&mut d, &mut u, i, t, &q);
                }
                if !d.entries[i][t].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'step;
            }
            for j in t + 1..cols {
                if d.entries[t][j].is_zero() {
                    continue;
                }
                let q = &d.entries[t][j] / &d.entries[t][t];
                if !q.is_zero() {
                    col_sub(&mut d, &mut v, j, t, &q);
                }
                if !d.entries[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'step;
            }
            // divisibility fix-up: fold an offending row into the pivot row
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d.entries[i][j] % &d.entries[t][t]).is_zero() {
                        row_add(&mut d, &mut u, t, i);
                        continue 'step;
                    }
                }
            }
            break 'step;
        }
    }

    for t in 0..rows.min(cols) {
        if d.entries[t][t].is_negative() {
            for j in 0..cols {
                let e = -d.entries[t][j].clone();
                d.entries[t][j] = e;
            }
            for j in 0..rows {
                let e = -u.entries[t][j].clone();
                u.entries[t][j] = e;
            }
        }
    }

    SnfResult { u, d, v }
}

/// Chain complex over F₂: dims[i] is the rank in degree i and
/// differentials[i] maps degree i to degree i+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexF2 {
    pub dims: Vec<usize>,
    pub differentials: Vec<MatF2>,
}

/// Cohomology dimensions via rank-nullity, after validating the complex.
pub fn complex_cohomology(c: &ChainComplexF2) -> Result<Vec<usize>, HomologyError> {
    let k = c.dims.len();
    if k == 0 || c.differentials.len() + 1 != k {
        return Err(HomologyError::NotAComplex);
    }
    for (i, d) in c.differentials.iter().enumerate() {
        if d.cols() != c.dims[i] || d.rows() != c.dims[i + 1] {
            return Err(HomologyError::NotAComplex);
        }
    }
    for w in c.differentials.windows(2) {
        if !w[1].mul(&w[0]).is_zero() {
            return Err(HomologyError::NotAComplex);
        }
    }
    let ranks: Vec<usize> = c.differentials.iter().map(|d| rank_kernel_f2(d).0).collect();
    let mut h = Vec::with_capacity(k);
    for i in 0..k {
        let ker = if i < k - 1 { c.dims[i] - ranks[i] } else { c.dims[i] };
        let im = if i > 0 { ranks[i - 1] } else { 0 };
        h.push(ker - im);
    }
    Ok(h)
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_i64(r: &SnfResult) -> Vec<i64> {
        r.d.diagonal()
            .iter()
            .map(|d| i64::try_from(d).expect("small"))
            .collect()
    }

    fn check_snf(a: &MatZ) {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).mul(&r.v), r.d);
        assert_eq!(det(&r.u).abs(), BigInt::one());
        assert_eq!(det(&r.v).abs(), BigInt::one());
        let diag = r.d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for i in 0..r.d.rows() {
            for j in 0..r.d.cols() {
                if i != j {
                    assert!(r.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_unimodular_input() {
        let a = MatZ::from_i64(&[vec![0, 1], vec![1, 0]]);
        let r = smith_normal_form(&a);
        assert_eq!(diag_i64(&r), vec![1, 1]);
        check_snf(&a);
    }

    #[test]
    fn snf_hand_reduction() {
        let a = MatZ::from_i64(&[vec![2, 4], vec![6, 8]]);
        let r = smith_normal_form(&a);
        assert_eq!(diag_i64(&r), vec![2, 4]);
        assert_eq!(det(&a), BigInt::from(-8));
        check_snf(&a);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = MatZ::zeros(3, 2);
        let r = smith_normal_form(&a);
        assert_eq!(diag_i64(&r), vec![0, 0]);
        check_snf(&a);
    }

    #[test]
    fn snf_sign_normalization() {
        let a = MatZ::from_i64(&[vec![-6]]);
        let r = smith_normal_form(&a);
        assert_eq!(diag_i64(&r), vec![6]);
        check_snf(&a);
    }

    #[test]
    fn f2_rank_small_cases() {
        let zero = MatF2::zeros(4, 8);
        assert_eq!(rank_kernel_f2(&zero), (0, 8));
        let mut id = MatF2::zeros(4, 4);
        for i in 0..4 {
            id.set(i, i, 1);
        }
        assert_eq!(rank_kernel_f2(&id), (4, 0));
        let m = MatF2::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(rank_kernel_f2(&m), (2, 1));
    }

    #[test]
    fn cohomology_zero_differentials() {
        let c = ChainComplexF2 {
            dims: vec![4, 8, 4],
            differentials: vec![MatF2::zeros(8, 4), MatF2::zeros(4, 8)],
        };
        assert_eq!(complex_cohomology(&c).unwrap(), vec![4, 8, 4]);
    }

    #[test]
    fn cohomology_rejects_non_complexes() {
        let c = ChainComplexF2 {
            dims: vec![2, 2, 2],
            differentials: vec![
                MatF2::from_rows(&[vec![1, 0], vec![0, 1]]),
                MatF2::from_rows(&[vec![1, 0], vec![0, 1]]),
            ],
        };
        assert_eq!(complex_cohomology(&c), Err(HomologyError::NotAComplex));
        let bad_shape = ChainComplexF2 {
            dims: vec![2, 3],
            differentials: vec![MatF2::zeros(2, 2)],
        };
        assert_eq!(complex_cohomology(&bad_shape), Err(HomologyError::NotAComplex));
    }

    /// Independent elimination path: column echelon instead of row echelon.
    fn rank_by_columns(m: &MatF2) -> usize {
        let mut cols: Vec<Vec<u8>> = (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| m.get(i, j)).collect())
            .collect();
        let mut rank = 0;
        for row in 0..m.rows() {
            let Some(p) = (rank..cols.len()).find(|&j| cols[j][row] == 1) else {
                continue;
            };
            cols.swap(rank, p);
            for j in 0..cols.len() {
                if j != rank && cols[j][row] == 1 {
                    for i in 0..m.rows() {
                        cols[j][i] ^= cols[rank][i];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_random_matrices(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in prop::collection::vec(-9i64..10, 16),
        ) {
            let entries: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[(i * cols + j) % seed.len()]).collect())
                .collect();
            check_snf(&MatZ::from_i64(&entries));
        }

        #[test]
        fn random_complex_dims_agree_with_oracle(
            dims in prop::collection::vec(1usize..5, 3),
            bits in prop::collection::vec(0u8..2, 64),
        ) {
            // build d0 arbitrary, then force d1·d0 = 0 by picking d1 with
            // rows in the left kernel of d0
            let (c0, c1, c2) = (dims[0], dims[1], dims[2]);
            let mut d0 = MatF2::zeros(c1, c0);
            for i in 0..c1 {
                for j in 0..c0 {
                    d0.set(i, j, bits[(i * c0 + j) % bits.len()]);
                }
            }
            // left kernel via row reduction of the transpose
            let mut tr = MatF2::zeros(c0, c1);
            for i in 0..c1 {
                for j in 0..c0 {
                    tr.set(j, i, d0.get(i, j));
                }
            }
            let mut basis: Vec<Vec<u8>> = Vec::new();
            'cand: for mask in 1u32..(1 << c1) {
                let v: Vec<u8> = (0..c1).map(|i| ((mask >> i) & 1) as u8).collect();
                for j in 0..c0 {
                    let dot = (0..c1).map(|i| v[i] & tr.get(j, i)).fold(0, |a, b| a ^ b);
                    if dot != 0 {
                        continue 'cand;
                    }
                }
                basis.push(v);
                if basis.len() == c2 {
                    break;
                }
            }
            let mut d1 = MatF2::zeros(c2, c1);
            for (i, v) in basis.iter().enumerate() {
                for (j, &b) in v.iter().enumerate() {
                    d1.set(i, j, b);
                }
            }
            let c = ChainComplexF2 { dims: vec![c0, c1, c2], differentials: vec![d0.clone(), d1.clone()] };
            let h = complex_cohomology(&c).unwrap();
            let r0 = rank_by_columns(&d0);
            let r1 = rank_by_columns(&d1);
            prop_assert_eq!(h[0], c0 - r0);
            prop_assert_eq!(h[1], c1 - r1 - r0);
            prop_assert_eq!(h[2], c2 - r1);
            let alt: i64 = h[0] as i64 - h[1] as i64 + h[2] as i64;
            prop_assert_eq!(alt, c0 as i64 - c1 as i64 + c2 as i64);
        }
    }
}
