//! Exact Witt-group invariants of symmetric bilinear forms over ℚ, ℝ, ℂ,
//! and 𝔽_p, residue homomorphisms, a monomial-lattice calculus on ℤ², and
//! the toric Gersten–Witt complex of the Hirzebruch surfaces H_n.
//!
//! All arithmetic is exact: rationals are arbitrary-precision, prime
//! fields are represented by reduced residues, and every lattice or
//! matrix computation is integer-only. The core is generic over a small
//! runtime field context ([`field::Field`]); the aliases below fix the
//! two concrete instantiations used throughout.

pub mod arith;
pub mod classes;
pub mod field;
pub mod forms;
pub mod hirzebruch;
pub mod homology;
pub mod json;
pub mod lattice;
pub mod mat;

pub use arith::{ArithError, Rational};
pub use classes::{
    class_c, class_fp, class_r, decompose_q, lift_residues, residue, witt_fp_structure,
    ClassError, FpStructure, ResidueIndex, WittC, WittClass, WittFp, WittFpRepr, WittQ, WittR,
};
pub use field::{Field, PrimeField, RationalField};
pub use forms::{
    anisotropic_part_fp, diag_q, diagonalize, find_isotropic_fp, gram_q, hyperbolic_form,
    orthogonal_complement, DiagonalForm, FieldTag, FormError, GramForm,
};
pub use hirzebruch::{
    atlas, build_d0, build_d1, cohomology, gw_complex, Chart, ChartAtlas, Divisor, FixedPoint,
    GWComplex, HirzebruchError,
};
pub use homology::{
    complex_cohomology, integer_lift, rank_kernel_f2, smith_normal_form, ChainComplexF2,
    HomologyError, MatF2, MatZ, SnfResult,
};
pub use lattice::{
    dual_lattice, ell, isotropic_reduce, max_integral_lattice, quotient_dim,
    residue_unary_class, AxisBound, Cone, Exponent, LatticeError, MonomialModule, QuotientDim,
    Region, UnaryClass,
};

/// Gram form over ℚ.
pub type QGram = GramForm<RationalField>;
/// Diagonal form over ℚ.
pub type QDiagonal = DiagonalForm<RationalField>;
/// Gram form over a prime field 𝔽_p.
pub type FpGram = GramForm<PrimeField>;
/// Diagonal form over a prime field 𝔽_p.
pub type FpDiagonal = DiagonalForm<PrimeField>;
