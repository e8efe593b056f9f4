//! Small dense exact linear algebra over a field context.

#![allow(clippy::needless_range_loop)]

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Matrix<E> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    debug_assert!(a.is_empty() || b.len() == a[0].len());
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = f.zero();
                    for (k, x) in row.iter().enumerate() {
                        acc = f.add(&acc, &f.mul(x, &b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn is_symmetric<F: Field>(_f: &F, m: &[Vec<F::Elem>]) -> bool {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return false;
            }
        }
    }
    true
}

fn symmetric_row_col_swap<E: Clone>(a: &mut Matrix<E>, i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += c · row_j together with the mirrored column operation.
fn symmetric_row_col_add<F: Field>(
    f: &F,
    a: &mut Matrix<F::Elem>,
    i: usize,
    j: usize,
    c: &F::Elem,
) {
    let n = a.len();
    for k in 0..n {
        let t = f.mul(c, &a[j][k]);
        a[i][k] = f.add(&a[i][k], &t);
    }
    for k in 0..n {
        let t = f.mul(c, &a[k][j]);
        a[k][i] = f.add(&a[k][i], &t);
    }
}

fn row_add<F: Field>(f: &F, m: &mut Matrix<F::Elem>, i: usize, j: usize, c: &F::Elem) {
    let cols = m[0].len();
    for k in 0..cols {
        let t = f.mul(c, &m[j][k]);
        m[i][k] = f.add(&m[i][k], &t);
    }
}

/// Congruence diagonalization: returns (d, q) with q·m·qᵀ = diag(d),
/// d of full length n including zeros, det(q) = ±1 up to scaling rows.
///
/// Pivots are taken from the diagonal first; a fully zero diagonal block
/// is repaired by adding a row and column, which needs 2 to be a unit.
pub fn congruence_diagonalize<F: Field>(
    f: &F,
    m: &[Vec<F::Elem>],
) -> (Vec<F::Elem>, Matrix<F::Elem>) {
    let n = m.len();
    let mut a: Matrix<F::Elem> = m.to_vec();
    let mut q = identity(f, n);
    for k in 0..n {
        if f.is_zero(&a[k][k]) {
            if let Some(r) = (k + 1..n).find(|&r| !f.is_zero(&a[r][r])) {
                symmetric_row_col_swap(&mut a, k, r);
                q.swap(k, r);
            } else {
                let mut found = None;
                'outer: for i in k..n {
                    for j in i + 1..n {
                        if !f.is_zero(&a[i][j]) {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        let one = f.one();
                        symmetric_row_col_add(f, &mut a, i, j, &one);
                        row_add(f, &mut q, i, j, &one);
                        if i != k {
                            symmetric_row_col_swap(&mut a, k, i);
                            q.swap(k, i);
                        }
                    }
                    None => break,
                }
            }
        }
        let pivot = a[k][k].clone();
        let inv = f.inv(&pivot).expect("pivot nonzero");
        for r in k + 1..n {
            if !f.is_zero(&a[r][k]) {
                let c = f.neg(&f.mul(&a[r][k], &inv));
                symmetric_row_col_add(f, &mut a, r, k, &c);
                row_add(f, &mut q, r, k, &c);
            }
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    (d, q)
}

/// Row-reduce in place; returns (rank, pivot column indices).
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> (usize, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("pivot nonzero");
        for k in 0..cols {
            m[r][k] = f.mul(&m[r][k], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for k in 0..cols {
                    let t = f.mul(&factor, &m[r][k]);
                    m[i][k] = f.sub(&m[i][k], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a = m.to_vec();
    rref(f, &mut a).0
}

/// Basis of {v : m·v = 0}, from the reduced row echelon form.
pub fn nullspace<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let (_, pivots) = rref(f, &mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[r][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let f = RationalField;
        let m = vec![
            vec![f.embed(0), f.embed(1)],
            vec![f.embed(1), f.embed(0)],
        ];
        let (d, q) = congruence_diagonalize(&f, &m);
        let qm = mat_mul(&f, &q, &m);
        let qmqt = mat_mul(&f, &qm, &transpose(&q));
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { d[i].clone() } else { f.zero() };
                assert_eq!(qmqt[i][j], want);
            }
        }
        assert!(!f.is_zero(&d[0]) && !f.is_zero(&d[1]));
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1u64, 2], vec![2, 4]];
        assert_eq!(rank(&f, &m), 1);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(f.add(&f.mul(&m[0][0], &v[0]), &f.mul(&m[0][1], &v[1])), 0);
    }

    #[test]
    fn rank_of_identity() {
        let f = RationalField;
        let id = identity(&f, 4);
        assert_eq!(rank(&f, &id), 4);
        assert!(nullspace(&f, &id).is_empty());
    }
}
