//! Canonical encodings of the Witt groups W(ℝ), W(ℂ), W(𝔽_p), W(ℚ),
//! the residue homomorphisms, and a constructive splitting of the
//! decomposition of W(ℚ).
//!
//! W(𝔽_p) is the Klein four-group for p ≡ 1 (mod 4), encoded as
//! (rank mod 2, discriminant bit), and ℤ/4 for p ≡ 3 (mod 4), encoded as
//! the difference of square and nonsquare entry counts.

use crate::arith::{is_odd_prime, padic_split, squarefree_part, FpElement, Rational};
use crate::field::{rational_sign, PrimeField, RationalField};
use crate::forms::DiagonalForm;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("classes live over different fields")]
    MixedFields,
}

/// W(ℝ) ≅ ℤ via the signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WittR {
    pub signature: i64,
}

/// W(ℂ) ≅ ℤ/2 via the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WittC {
    pub rank_mod2: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpStructure {
    KleinFour,
    Cyclic4,
}

pub fn witt_fp_structure(p: u64) -> Result<FpStructure, ClassError> {
    if !is_odd_prime(p) {
        return Err(ClassError::BadPrime(p));
    }
    Ok(if p % 4 == 1 {
        FpStructure::KleinFour
    } else {
        FpStructure::Cyclic4
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittFpRepr {
    /// (rank mod 2, discriminant bit), p ≡ 1 (mod 4).
    Klein { rank: u8, disc: u8 },
    /// (#squares − #nonsquares) mod 4, p ≡ 3 (mod 4).
    Cyclic(u8),
}

/// Element of W(𝔽_p) for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WittFp {
    pub p: u64,
    pub repr: WittFpRepr,
}

impl WittFp {
    pub fn zero(p: u64) -> Result<Self, ClassError> {
        Ok(WittFp {
            p,
            repr: match witt_fp_structure(p)? {
                FpStructure::KleinFour => WittFpRepr::Klein { rank: 0, disc: 0 },
                FpStructure::Cyclic4 => WittFpRepr::Cyclic(0),
            },
        })
    }

    /// Class built from the Legendre characters of the diagonal entries.
    fn from_chis(p: u64, chis: &[i8]) -> Self {
        debug_assert!(chis.iter().all(|&c| c == 1 || c == -1));
        let repr = if p % 4 == 1 {
            let nonsquares = chis.iter().filter(|&&c| c == -1).count();
            WittFpRepr::Klein {
                rank: (chis.len() % 2) as u8,
                disc: (nonsquares % 2) as u8,
            }
        } else {
            let balance: i64 = chis.iter().map(|&c| c as i64).sum();
            WittFpRepr::Cyclic(balance.rem_euclid(4) as u8)
        };
        WittFp { p, repr }
    }

    pub fn is_zero(&self) -> bool {
        matches!(
            self.repr,
            WittFpRepr::Klein { rank: 0, disc: 0 } | WittFpRepr::Cyclic(0)
        )
    }

    pub fn add(&self, other: &WittFp) -> Result<WittFp, ClassError> {
        if self.p != other.p {
            return Err(ClassError::MixedFields);
        }
        let repr = match (self.repr, other.repr) {
            (WittFpRepr::Klein { rank: r1, disc: d1 }, WittFpRepr::Klein { rank: r2, disc: d2 }) => {
                WittFpRepr::Klein {
                    rank: r1 ^ r2,
                    disc: d1 ^ d2,
                }
            }
            (WittFpRepr::Cyclic(a), WittFpRepr::Cyclic(b)) => WittFpRepr::Cyclic((a + b) % 4),
            _ => return Err(ClassError::MixedFields),
        };
        Ok(WittFp { p: self.p, repr })
    }

    pub fn neg(&self) -> WittFp {
        let repr = match self.repr {
            k @ WittFpRepr::Klein { .. } => k,
            WittFpRepr::Cyclic(a) => WittFpRepr::Cyclic((4 - a) % 4),
        };
        WittFp { p: self.p, repr }
    }
}

/// Witt class of a diagonal form over 𝔽_p.
pub fn class_fp(d: &DiagonalForm<PrimeField>) -> WittFp {
    let chis: Vec<i8> = d.entries.iter().map(|e| d.field.chi(*e)).collect();
    WittFp::from_chis(d.field.p(), &chis)
}

/// Element of W(ℚ): signature, the mod-2 dyadic component, and the
/// second residues at odd primes (zero classes omitted).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WittQ {
    pub signature: i64,
    pub dyadic: u8,
    pub residues: BTreeMap<u64, WittFp>,
}

impl WittQ {
    pub fn is_zero(&self) -> bool {
        self.signature == 0 && self.dyadic == 0 && self.residues.is_empty()
    }

    pub fn add(&self, other: &WittQ) -> WittQ {
        let mut residues = self.residues.clone();
        for (&p, r) in &other.residues {
            let merged = match residues.get(&p) {
                Some(mine) => mine.add(r).expect("same prime"),
                None => *r,
            };
            if merged.is_zero() {
                residues.remove(&p);
            } else {
                residues.insert(p, merged);
            }
        }
        WittQ {
            signature: self.signature + other.signature,
            dyadic: self.dyadic ^ other.dyadic,
            residues,
        }
    }

    pub fn neg(&self) -> WittQ {
        WittQ {
            signature: -self.signature,
            dyadic: self.dyadic,
            residues: self.residues.iter().map(|(&p, r)| (p, r.neg())).collect(),
        }
    }
}

/// A class in one of the supported Witt groups, for uniform group ops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WittClass {
    R(WittR),
    C(WittC),
    Fp(WittFp),
    Q(WittQ),
}

pub fn witt_add(a: &WittClass, b: &WittClass) -> Result<WittClass, ClassError> {
    Ok(match (a, b) {
        (WittClass::R(x), WittClass::R(y)) => WittClass::R(WittR {
            signature: x.signature + y.signature,
        }),
        (WittClass::C(x), WittClass::C(y)) => WittClass::C(WittC {
            rank_mod2: x.rank_mod2 ^ y.rank_mod2,
        }),
        (WittClass::Fp(x), WittClass::Fp(y)) => WittClass::Fp(x.add(y)?),
        (WittClass::Q(x), WittClass::Q(y)) => WittClass::Q(x.add(y)),
        _ => return Err(ClassError::MixedFields),
    })
}

pub fn witt_neg(a: &WittClass) -> WittClass {
    match a {
        WittClass::R(x) => WittClass::R(WittR {
            signature: -x.signature,
        }),
        WittClass::C(x) => WittClass::C(*x),
        WittClass::Fp(x) => WittClass::Fp(x.neg()),
        WittClass::Q(x) => WittClass::Q(x.neg()),
    }
}

pub fn witt_is_zero(a: &WittClass) -> bool {
    match a {
        WittClass::R(x) => x.signature == 0,
        WittClass::C(x) => x.rank_mod2 == 0,
        WittClass::Fp(x) => x.is_zero(),
        WittClass::Q(x) => x.is_zero(),
    }
}

/// Signature of a ℚ-form: W(ℝ) data.
pub fn class_r(d: &DiagonalForm<RationalField>) -> WittR {
    WittR {
        signature: d.entries.iter().map(|e| rational_sign(e) as i64).sum(),
    }
}

/// Rank mod 2 of a ℚ-form: W(ℂ) data.
pub fn class_c(d: &DiagonalForm<RationalField>) -> WittC {
    WittC {
        rank_mod2: (d.rank() % 2) as u8,
    }
}

/// Parity convention for the two residue maps at a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueIndex {
    First,
    Second,
}

impl ResidueIndex {
    fn takes(self, valuation: i64) -> bool {
        match self {
            // ⟨π^j u⟩ contributes ⟨ū⟩ exactly when j ≢ i (mod 2)
            ResidueIndex::First => valuation.rem_euclid(2) == 0,
            ResidueIndex::Second => valuation.rem_euclid(2) == 1,
        }
    }
}

fn residue_entries(entries: &[Rational], p: u64, i: ResidueIndex) -> Result<WittFp, ClassError> {
    if !is_odd_prime(p) {
        return Err(ClassError::BadPrime(p));
    }
    let mut chis = Vec::new();
    for a in entries {
        let (j, u) = padic_split(a, p).expect("entries nonzero, p prime");
        if i.takes(j) {
            let ubar = FpElement::from_rational(&u, p).expect("unit part is p-integral");
            chis.push(ubar.chi());
        }
    }
    Ok(WittFp::from_chis(p, &chis))
}

/// Residue homomorphism at the odd prime p with uniformizer π = p.
pub fn residue(
    d: &DiagonalForm<RationalField>,
    p: u64,
    i: ResidueIndex,
) -> Result<WittFp, ClassError> {
    residue_entries(&d.entries, p, i)
}

fn dyadic_bit(entries: &[Rational]) -> u8 {
    let odd_val = entries
        .iter()
        .filter(|a| {
            let (j, _) = padic_split(a, 2).expect("entries nonzero");
            j.rem_euclid(2) == 1
        })
        .count();
    (odd_val % 2) as u8
}

/// Full decomposition of the Witt class of a ℚ-form: signature, dyadic
/// bit, and all nonzero second residues.
pub fn decompose_q(d: &DiagonalForm<RationalField>) -> WittQ {
    let mut primes = BTreeSet::new();
    for a in &d.entries {
        let sq = squarefree_part(a).expect("entries nonzero");
        primes.extend(sq.primes.iter().copied().filter(|&p| p != 2));
    }
    let mut residues = BTreeMap::new();
    for p in primes {
        let r = residue_entries(&d.entries, p, ResidueIndex::Second).expect("odd prime");
        if !r.is_zero() {
            residues.insert(p, r);
        }
    }
    WittQ {
        signature: class_r(d).signature,
        dyadic: dyadic_bit(&d.entries),
        residues,
    }
}

/// Unary generators over 𝔽_p realizing a class, as least positive lifts.
fn unary_generators(c: &WittFp) -> Vec<u64> {
    let s = PrimeField::new(c.p).expect("valid prime").least_nonsquare();
    match c.repr {
        WittFpRepr::Klein { rank: 0, disc: 0 } | WittFpRepr::Cyclic(0) => vec![],
        WittFpRepr::Klein { rank: 1, disc: 0 } => vec![1],
        WittFpRepr::Klein { rank: 0, disc: 1 } => vec![1, s],
        WittFpRepr::Klein { rank: 1, disc: 1 } => vec![s],
        WittFpRepr::Klein { .. } => unreachable!("bits are 0 or 1"),
        WittFpRepr::Cyclic(1) => vec![1],
        WittFpRepr::Cyclic(2) => vec![1, 1],
        WittFpRepr::Cyclic(3) => vec![s],
        WittFpRepr::Cyclic(_) => unreachable!("counter is mod 4"),
    }
}

/// Constructive section of the residue decomposition: builds a diagonal
/// form over ℚ with decompose_q(result) = target.
///
/// Primes are handled from largest to smallest so that a lift ⟨p·u⟩,
/// whose unit u may involve smaller primes, is corrected by the later
/// rounds; primes polluted that way are queued even when the target is
/// silent about them. The dyadic bit and the signature are repaired
/// last, which cannot disturb any odd residue.
pub fn lift_residues(target: &WittQ) -> DiagonalForm<RationalField> {
    let mut entries: Vec<Rational> = Vec::new();
    let rational = |n: u64| Rational::from_integer(n.into());
    let mut pending: BTreeSet<u64> = target.residues.keys().copied().collect();
    while let Some(&p) = pending.iter().next_back() {
        pending.remove(&p);
        let want = match target.residues.get(&p) {
            Some(c) => *c,
            None => WittFp::zero(p).expect("odd prime key"),
        };
        let current =
            residue_entries(&entries, p, ResidueIndex::Second).expect("odd prime key");
        let needed = want.add(&current.neg()).expect("same prime");
        for u in unary_generators(&needed) {
            entries.push(rational(p) * rational(u));
            let unit = squarefree_part(&rational(u)).expect("nonzero unit");
            pending.extend(unit.primes.iter().copied().filter(|&q| q != 2 && q < p));
        }
    }
    if dyadic_bit(&entries) != target.dyadic {
        entries.push(rational(2));
    }
    let sig: i64 = entries.iter().map(|e| rational_sign(e) as i64).sum();
    let delta = target.signature - sig;
    let filler = Rational::from_integer(if delta >= 0 { 1 } else { -1 }.into());
    for _ in 0..delta.unsigned_abs() {
        entries.push(filler.clone());
    }
    DiagonalForm::new(RationalField, entries).expect("all pushed entries nonzero")
}
