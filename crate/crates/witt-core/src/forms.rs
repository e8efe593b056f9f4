//! Symmetric bilinear forms as Gram matrices over a tagged field.
//!
//! Forms are diagonalized by congruence transformations; over 𝔽_p a
//! brute-force isotropy search peels off hyperbolic planes until the
//! anisotropic part remains.

use crate::field::{Field, PrimeField, RationalField};
use crate::mat::{self, Matrix};
use thiserror::Error;

/// Base field of a form: ℚ or 𝔽_p for an odd prime p.
///
/// Real and complex Witt data is derived from ℚ-forms elsewhere, keeping
/// all arithmetic exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    Fp(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("diagonal entries must be nonzero")]
    ZeroEntry,
    #[error("form is singular")]
    SingularForm,
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("isotropy search space exceeds the enforced bound")]
    SearchSpaceTooLarge,
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm<F: Field> {
    pub field: F,
    pub matrix: Matrix<F::Elem>,
}

impl<F: Field> GramForm<F> {
    pub fn new(field: F, matrix: Matrix<F::Elem>) -> Result<Self, FormError> {
        if !mat::is_symmetric(&field, &matrix) {
            return Err(FormError::NotSymmetric);
        }
        Ok(GramForm { field, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        mat::rank(&self.field, &self.matrix) == self.dim()
    }

    /// φ(v, w) = v·M·wᵀ.
    pub fn pair(&self, v: &[F::Elem], w: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                acc = f.add(&acc, &f.mul(&f.mul(vi, &self.matrix[i][j]), wj));
            }
        }
        acc
    }
}

/// Diagonal form ⟨a₁,…,a_r⟩ with every entry nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm<F: Field> {
    pub field: F,
    pub entries: Vec<F::Elem>,
}

impl<F: Field> DiagonalForm<F> {
    pub fn new(field: F, entries: Vec<F::Elem>) -> Result<Self, FormError> {
        if entries.iter().any(|a| field.is_zero(a)) {
            return Err(FormError::ZeroEntry);
        }
        Ok(DiagonalForm { field, entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum ⟨a₁,…⟩ ⊕ ⟨b₁,…⟩.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalForm {
            field: self.field.clone(),
            entries,
        }
    }

    pub fn gram(&self) -> GramForm<F>
    where
        F: Clone,
    {
        let f = &self.field;
        let n = self.entries.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            self.entries[i].clone()
                        } else {
                            f.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        GramForm {
            field: self.field.clone(),
            matrix,
        }
    }
}

/// Diagonalize by congruence: q·M·qᵀ = diag(d₁,…,d_r,0,…,0) with the
/// nonzero entries collected in the returned form.
pub fn diagonalize<F: Field>(f: &GramForm<F>) -> (DiagonalForm<F>, Matrix<F::Elem>) {
    let (d_full, q) = mat::congruence_diagonalize(&f.field, &f.matrix);
    let (mut nonzero_idx, mut zero_idx): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
    for (i, e) in d_full.iter().enumerate() {
        if f.field.is_zero(e) {
            zero_idx.push(i);
        } else {
            nonzero_idx.push(i);
        }
    }
    let entries = nonzero_idx.iter().map(|&i| d_full[i].clone()).collect();
    let q_sorted = nonzero_idx
        .into_iter()
        .chain(zero_idx)
        .map(|i| q[i].clone())
        .collect();
    (
        DiagonalForm {
            field: f.field.clone(),
            entries,
        },
        q_sorted,
    )
}

/// Basis of W⊥ = {v : φ(v, w) = 0 for all w ∈ W}.
pub fn orthogonal_complement<F: Field>(
    f: &GramForm<F>,
    w: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>, FormError> {
    if !f.is_nonsingular() {
        return Err(FormError::SingularForm);
    }
    if mat::rank(&f.field, w) < w.len() {
        return Err(FormError::DependentBasis);
    }
    let constraints = mat::mat_mul(&f.field, w, &f.matrix);
    Ok(mat::nullspace(&f.field, &constraints))
}

/// The 2m×2m split form [[0, I],[I, 0]]: an orthogonal sum of m
/// hyperbolic planes.
pub fn hyperbolic_form<F: Field>(field: F, m: usize) -> GramForm<F> {
    let n = 2 * m;
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + m == j || j + m == i {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
                .collect()
        })
        .collect();
    GramForm { field, matrix }
}

const SEARCH_BOUND: u64 = 10_000_000;

fn check_search_space(p: u64, dim: usize) -> Result<(), FormError> {
    let mut size: u64 = 1;
    for _ in 0..dim {
        size = size.saturating_mul(p);
        if size > SEARCH_BOUND {
            return Err(FormError::SearchSpaceTooLarge);
        }
    }
    Ok(())
}

/// Exhaustive isotropy search over projective representatives: a nonzero
/// v with φ(v,v) = 0, or None iff the form is anisotropic.
pub fn find_isotropic_fp(f: &GramForm<PrimeField>) -> Result<Option<Vec<u64>>, FormError> {
    let p = f.field.p();
    let n = f.dim();
    if !f.is_nonsingular() {
        return Err(FormError::SingularForm);
    }
    check_search_space(p, n)?;
    // First nonzero coordinate normalized to 1.
    for lead in 0..n {
        let tail = n - lead - 1;
        let mut counter = vec![0u64; tail];
        loop {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&counter);
            if f.field.is_zero(&f.pair(&v, &v)) {
                return Ok(Some(v));
            }
            let mut k = tail;
            loop {
                if k == 0 {
                    break;
                }
                counter[k - 1] += 1;
                if counter[k - 1] < p {
                    break;
                }
                counter[k - 1] = 0;
                k -= 1;
            }
            if k == 0 {
                break;
            }
        }
    }
    Ok(None)
}

/// Split off hyperbolic planes at isotropic vectors until the rest is
/// anisotropic; returns the diagonalized anisotropic part.
pub fn anisotropic_part_fp(f: &GramForm<PrimeField>) -> Result<DiagonalForm<PrimeField>, FormError> {
    let fld = f.field;
    let mut gram = f.matrix.clone();
    loop {
        let current = GramForm {
            field: fld,
            matrix: gram.clone(),
        };
        let Some(v) = find_isotropic_fp(&current)? else {
            let (d, _) = diagonalize(&current);
            return Ok(d);
        };
        let n = current.dim();
        let v_row: Vec<u64> = (0..n).map(|j| {
            let mut acc = 0u64;
            for (i, vi) in v.iter().enumerate() {
                acc = fld.add(&acc, &fld.mul(vi, &gram[i][j]));
            }
            acc
        }).collect();
        let j = (0..n)
            .find(|&j| !fld.is_zero(&v_row[j]))
            .expect("nonsingular form pairs v nontrivially");
        let c_inv = fld.inv(&v_row[j]).expect("nonzero");
        let mut w = vec![0u64; n];
        w[j] = c_inv;
        let w_row: Vec<u64> = (0..n).map(|k| fld.mul(&c_inv, &gram[j][k])).collect();
        let complement = mat::nullspace(&fld, &[v_row, w_row]);
        debug_assert_eq!(complement.len(), n - 2);
        let inter = mat::mat_mul(&fld, &complement, &gram);
        gram = mat::mat_mul(&fld, &inter, &mat::transpose(&complement));
    }
}

/// Convenience constructors for the two concrete scalar types.
pub fn gram_q(entries: Vec<Vec<crate::arith::Rational>>) -> Result<GramForm<RationalField>, FormError> {
    GramForm::new(RationalField, entries)
}

pub fn diag_q(entries: Vec<crate::arith::Rational>) -> Result<DiagonalForm<RationalField>, FormError> {
    DiagonalForm::new(RationalField, entries)
}
