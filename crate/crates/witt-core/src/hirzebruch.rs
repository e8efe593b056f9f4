//! The toric Gersten–Witt complex of the Hirzebruch surface H_n.
//!
//! Four affine charts σ₁..σ₄ glue along the rules z = 1/x, ȳ = 1/y,
//! w = 1/(xⁿy), w̄ = xⁿy. The four invariant divisors X, Y, Z, W and the
//! four fixed points carry the middle and right terms of the complex
//! W(k(H_n)) → ⊕ W(k(D)) → ⊕ W(k(pt)), and both boundary matrices are
//! synthesized from the monomial-lattice calculus alone.

use crate::homology::{complex_cohomology, ChainComplexF2, MatF2};
use crate::lattice::{
    coord, dual_lattice, isotropic_reduce, max_integral_lattice, quotient_dim,
    residue_unary_class, AxisBound, Exponent, MonomialModule, QuotientDim, Region, UnaryClass,
    AXIS_1, AXIS_2,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HirzebruchError {
    #[error("assembled differentials do not compose to zero")]
    ComplexInvalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    S1,
    S2,
    S3,
    S4,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::S1, Chart::S2, Chart::S3, Chart::S4];

    pub fn coords(self) -> (&'static str, &'static str) {
        match self {
            Chart::S1 => ("x", "y"),
            Chart::S2 => ("x", "ybar"),
            Chart::S3 => ("z", "w"),
            Chart::S4 => ("z", "wbar"),
        }
    }
}

type Mat2 = [[i64; 2]; 2];

fn apply(m: Mat2, e: Exponent) -> Exponent {
    (
        m[0][0] * e.0 + m[0][1] * e.1,
        m[1][0] * e.0 + m[1][1] * e.1,
    )
}

/// Chart atlas of H_n with exponent transition matrices relative to σ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartAtlas {
    n: u64,
}

pub fn atlas(n: i64) -> ChartAtlas {
    ChartAtlas { n: n.unsigned_abs() }
}

impl ChartAtlas {
    pub fn n(&self) -> u64 {
        self.n
    }

    fn out_of_s1(self, chart: Chart) -> Mat2 {
        let n = self.n as i64;
        match chart {
            Chart::S1 => [[1, 0], [0, 1]],
            Chart::S2 => [[1, 0], [0, -1]],
            Chart::S3 => [[-1, n], [0, -1]],
            Chart::S4 => [[-1, n], [0, 1]],
        }
    }

    fn into_s1(self, chart: Chart) -> Mat2 {
        let n = self.n as i64;
        match chart {
            Chart::S1 => [[1, 0], [0, 1]],
            Chart::S2 => [[1, 0], [0, -1]],
            Chart::S3 => [[-1, -n], [0, -1]],
            Chart::S4 => [[-1, n], [0, 1]],
        }
    }

    pub fn transport(&self, e: Exponent, from: Chart, to: Chart) -> Exponent {
        apply(self.out_of_s1(to), apply(self.into_s1(from), e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divisor {
    X,
    Y,
    Z,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPoint {
    Oxy,
    Ozwbar,
    Oxybar,
    Ozw,
}

impl FixedPoint {
    pub const ALL: [FixedPoint; 4] = [
        FixedPoint::Oxy,
        FixedPoint::Ozwbar,
        FixedPoint::Oxybar,
        FixedPoint::Ozw,
    ];

    pub fn chart(self) -> Chart {
        match self {
            FixedPoint::Oxy => Chart::S1,
            FixedPoint::Ozwbar => Chart::S4,
            FixedPoint::Oxybar => Chart::S2,
            FixedPoint::Ozw => Chart::S3,
        }
    }

    pub fn index(self) -> usize {
        FixedPoint::ALL.iter().position(|&p| p == self).expect("listed")
    }
}

/// Placement of a divisor inside one of its two charts: which coordinate
/// cuts it out and which one restricts to its torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartSeat {
    pub chart: Chart,
    pub eq_axis: usize,
    pub tor_axis: usize,
}

const fn seat(chart: Chart, eq_axis: usize) -> ChartSeat {
    ChartSeat { chart, eq_axis, tor_axis: 1 - eq_axis }
}

impl Divisor {
    pub const ALL: [Divisor; 4] = [Divisor::X, Divisor::Y, Divisor::Z, Divisor::W];

    /// The two charts meeting the divisor; the first is canonical (its
    /// torus coordinate names the residue basis).
    pub fn seats(self) -> [ChartSeat; 2] {
        match self {
            Divisor::X => [seat(Chart::S1, AXIS_2), seat(Chart::S4, AXIS_2)],
            Divisor::Y => [seat(Chart::S1, AXIS_1), seat(Chart::S2, AXIS_1)],
            Divisor::Z => [seat(Chart::S3, AXIS_2), seat(Chart::S2, AXIS_2)],
            Divisor::W => [seat(Chart::S3, AXIS_1), seat(Chart::S4, AXIS_1)],
        }
    }

    pub fn fixed_points(self) -> [FixedPoint; 2] {
        match self {
            Divisor::X => [FixedPoint::Oxy, FixedPoint::Ozwbar],
            Divisor::Y => [FixedPoint::Oxy, FixedPoint::Oxybar],
            Divisor::Z => [FixedPoint::Ozw, FixedPoint::Oxybar],
            Divisor::W => [FixedPoint::Ozw, FixedPoint::Ozwbar],
        }
    }

    pub fn seat_in(self, chart: Chart) -> Option<ChartSeat> {
        self.seats().into_iter().find(|s| s.chart == chart)
    }

    pub fn index(self) -> usize {
        Divisor::ALL.iter().position(|&d| d == self).expect("listed")
    }
}

pub const GENERATORS: [Exponent; 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

pub const GENERATOR_LABELS: [&str; 4] = ["<1>", "<x>", "<y>", "<xy>"];

pub const DIVISOR_BASIS_LABELS: [&str; 8] =
    ["<1_x>", "<x>", "<1_y>", "<y>", "<1_z>", "<z>", "<1_w>", "<w>"];

pub const POINT_LABELS: [&str; 4] = ["0_xy", "0_zwbar", "0_xybar", "0_zw"];

fn half_world(eq_axis: usize) -> MonomialModule {
    let mut mask = (AxisBound::Any, AxisBound::Any);
    if eq_axis == AXIS_1 {
        mask.0 = AxisBound::AtLeast;
    } else {
        mask.1 = AxisBound::AtLeast;
    }
    MonomialModule::cone((0, 0), mask)
}

/// Residue class of the generator u along one divisor, computed by the
/// full lattice pipeline in the chosen chart seat.
pub fn d0_class(n: i64, divisor: Divisor, seat_index: usize, u: Exponent) -> UnaryClass {
    let at = atlas(n);
    let s = divisor.seats()[seat_index];
    let e = at.transport(u, Chart::S1, s.chart);
    let classmod = half_world(s.eq_axis);
    let v = Region::of(classmod.clone());
    let ambient = Region::all();
    let lattice =
        max_integral_lattice(&classmod, e, &v, &ambient).expect("divisor world is feasible");
    let dual = dual_lattice(&lattice, e, &v, &ambient).expect("representable world");
    let (inner, outer) = isotropic_reduce(&lattice, &dual, e).expect("nested by integrality");
    let leftover = outer.minus(&inner);
    let levels = leftover
        .axis_levels(s.eq_axis)
        .expect("reduced quotient has bounded width");
    let class = match levels.len() {
        0 => UnaryClass::Zero,
        1 => {
            if coord(e, s.tor_axis).rem_euclid(2) == 0 {
                UnaryClass::One
            } else {
                UnaryClass::T
            }
        }
        _ => unreachable!("isotropic reduction leaves width at most 1"),
    };
    debug_assert_eq!(class, residue_unary_class(e, s.eq_axis, s.tor_axis));
    class
}

/// First boundary matrix: rows ⟨1_x⟩,⟨x⟩,⟨1_y⟩,⟨y⟩,⟨1_z⟩,⟨z⟩,⟨1_w⟩,⟨w⟩,
/// columns ⟨1⟩,⟨x⟩,⟨y⟩,⟨xy⟩.
pub fn build_d0(n: i64) -> MatF2 {
    let mut m = MatF2::zeros(8, 4);
    for (col, &u) in GENERATORS.iter().enumerate() {
        for divisor in Divisor::ALL {
            let row = match d0_class(n, divisor, 0, u) {
                UnaryClass::Zero => continue,
                UnaryClass::One => 2 * divisor.index(),
                UnaryClass::T => 2 * divisor.index() + 1,
            };
            m.set(row, col, 1);
        }
    }
    m
}

/// Second-residue dimension (mod 2 it is the d¹ entry) of the canonical
/// level-1 representative ⟨t·s^k⟩ of a divisor class at one of its fixed
/// points. None when the point does not lie on the divisor.
pub fn d1_dimension(n: i64, divisor: Divisor, k: i64, fp: FixedPoint) -> Option<u64> {
    let at = atlas(n);
    let canonical = divisor.seats()[0];
    let fp_seat = divisor.seat_in(fp.chart())?;
    if !divisor.fixed_points().contains(&fp) {
        return None;
    }
    let mut e0 = (0, 0);
    set_coord(&mut e0, canonical.eq_axis, 1);
    set_coord(&mut e0, canonical.tor_axis, k);
    let e = at.transport(e0, canonical.chart, fp_seat.chart);
    debug_assert_eq!(coord(e, fp_seat.eq_axis), 1, "pairing stays level 1");

    let carrier = MonomialModule::row(fp_seat.eq_axis, -1, None);
    #[cfg(debug_assertions)]
    for t in -3..=3 {
        let mut p = (0, 0);
        set_coord(&mut p, canonical.eq_axis, -1);
        set_coord(&mut p, canonical.tor_axis, t);
        let q = at.transport(p, canonical.chart, fp_seat.chart);
        debug_assert!(carrier.contains(q), "carrier transports to a level -1 row");
    }

    let origin_cone = half_world(fp_seat.eq_axis);
    let v = Region::with_minus(half_world(fp_seat.tor_axis), origin_cone.clone());
    let ambient = Region::with_minus(MonomialModule::plane(), origin_cone);
    let lattice =
        max_integral_lattice(&carrier, e, &v, &ambient).expect("level-1 world is feasible");
    let dual = dual_lattice(&lattice, e, &v, &ambient).expect("representable world");
    match quotient_dim(&lattice, &dual).expect("lattice sits inside its dual") {
        QuotientDim::Finite(d) => Some(d),
        QuotientDim::Infinite => unreachable!("fixed-point quotients are finite"),
    }
}

fn set_coord(e: &mut Exponent, axis: usize, value: i64) {
    if axis == AXIS_1 {
        e.0 = value;
    } else {
        e.1 = value;
    }
}

/// Second boundary matrix: rows 0_xy, 0_zw̄, 0_xȳ, 0_zw, columns the
/// divisor residue basis.
pub fn build_d1(n: i64) -> MatF2 {
    let mut m = MatF2::zeros(4, 8);
    for divisor in Divisor::ALL {
        for k in 0..2i64 {
            let col = 2 * divisor.index() + k as usize;
            for fp in divisor.fixed_points() {
                let dim = d1_dimension(n, divisor, k, fp).expect("incident point");
                m.set(fp.index(), col, (dim % 2) as u8);
            }
        }
    }
    m
}

/// The assembled complex for H_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWComplex {
    pub n: u64,
    pub d0: MatF2,
    pub d1: MatF2,
    pub cohomology: [usize; 3],
}

pub fn cohomology(n: i64) -> Result<(usize, usize, usize), HirzebruchError> {
    let complex = ChainComplexF2 {
        dims: vec![4, 8, 4],
        differentials: vec![build_d0(n), build_d1(n)],
    };
    let h = complex_cohomology(&complex).map_err(|_| HirzebruchError::ComplexInvalid)?;
    Ok((h[0], h[1], h[2]))
}

pub fn gw_complex(n: i64) -> Result<GWComplex, HirzebruchError> {
    let (h0, h1, h2) = cohomology(n)?;
    Ok(GWComplex {
        n: n.unsigned_abs(),
        d0: build_d0(n),
        d1: build_d1(n),
        cohomology: [h0, h1, h2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atlas_normalizes_sign() {
        assert_eq!(atlas(-3).n(), 3);
        assert_eq!(atlas(0).n(), 0);
    }

    #[test]
    fn transport_chart_table() {
        let at = atlas(2);
        assert_eq!(at.transport((0, 1), Chart::S1, Chart::S3), (2, -1));
        assert_eq!(at.transport((1, 0), Chart::S1, Chart::S3), (-1, 0));
        assert_eq!(at.transport((0, 0), Chart::S2, Chart::S4), (0, 0));
        let flat = atlas(0);
        assert_eq!(flat.transport((0, 1), Chart::S1, Chart::S3), (0, -1));
    }

    #[test]
    fn transitions_are_unimodular_and_consistent() {
        for n in 0..6 {
            let at = atlas(n);
            for c in Chart::ALL {
                let m = at.out_of_s1(c);
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                assert_eq!(det.abs(), 1);
            }
            for a in Chart::ALL {
                for b in Chart::ALL {
                    for e in [(0, 0), (1, 0), (0, 1), (3, -2), (-1, 4)] {
                        let there = at.transport(e, a, b);
                        assert_eq!(at.transport(there, b, a), e);
                        for c in Chart::ALL {
                            assert_eq!(
                                at.transport(at.transport(e, a, c), c, b),
                                there
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_points_lie_on_two_divisors() {
        for fp in FixedPoint::ALL {
            let count = Divisor::ALL
                .iter()
                .filter(|d| d.fixed_points().contains(&fp))
                .count();
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn d0_unit_column_is_zero() {
        for n in 0..8 {
            let d0 = build_d0(n);
            for row in 0..8 {
                assert_eq!(d0.get(row, 0), 0);
            }
        }
    }

    #[test]
    fn d0_y_column_even_and_odd() {
        // even: ⟨y⟩ hits ⟨1_x⟩ and ⟨1_z⟩; odd: ⟨1_x⟩, ⟨z⟩ and ⟨w⟩
        let even = build_d0(2);
        let y = 2;
        let ones: Vec<usize> = (0..8).filter(|&r| even.get(r, y) == 1).collect();
        assert_eq!(ones, vec![0, 4]);
        let odd = build_d0(3);
        let ones: Vec<usize> = (0..8).filter(|&r| odd.get(r, y) == 1).collect();
        assert_eq!(ones, vec![0, 5, 7]);
    }

    #[test]
    fn d1_even_and_odd_marker_rows() {
        let even = build_d1(2);
        // row 0_zw̄: ⟨x⟩ and ⟨w⟩
        let ones: Vec<usize> = (0..8).filter(|&c| even.get(1, c) == 1).collect();
        assert_eq!(ones, vec![1, 7]);
        let odd = build_d1(3);
        let ones: Vec<usize> = (0..8).filter(|&c| odd.get(1, c) == 1).collect();
        assert_eq!(ones, vec![0, 7]);
        for n in 0..6 {
            let d1 = build_d1(n);
            let ones: Vec<usize> = (0..8).filter(|&c| d1.get(3, c) == 1).collect();
            assert_eq!(ones, vec![5, 7], "row 0_zw is n-independent");
        }
    }

    #[test]
    fn complex_composes_to_zero() {
        for n in 0..9 {
            let d0 = build_d0(n);
            let d1 = build_d1(n);
            assert!(d1.mul(&d0).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn two_periodicity() {
        for n in 0..6 {
            assert_eq!(build_d0(n), build_d0(n + 2));
            assert_eq!(build_d1(n), build_d1(n + 2));
        }
    }

    #[test]
    fn cohomology_matches_parity() {
        assert_eq!(cohomology(2).unwrap(), (1, 2, 1));
        assert_eq!(cohomology(0).unwrap(), (1, 2, 1));
        assert_eq!(cohomology(3).unwrap(), (1, 1, 0));
        assert_eq!(cohomology(1).unwrap(), (1, 1, 0));
        assert_eq!(cohomology(-4).unwrap(), (1, 2, 1));
    }
}
