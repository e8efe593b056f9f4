//! Monomial-module calculus on ℤ².
//!
//! Modules are finite unions of axis-aligned boxes of exponents, with
//! bounds allowed to be infinite. Shifted cones (the ring-module shapes),
//! rows, and slabs all live in this class, and every operation reduces to
//! exact interval arithmetic: dual lattices, quotient point counts,
//! maximal integral lattices, layer lengths, and totally isotropic
//! reduction of finite quotients.

use thiserror::Error;

/// Exponent pair (i, j) of a monomial s^i t^j.
pub type Exponent = (i64, i64);

pub const AXIS_1: usize = 0;
pub const AXIS_2: usize = 1;

pub fn coord(e: Exponent, axis: usize) -> i64 {
    match axis {
        AXIS_1 => e.0,
        AXIS_2 => e.1,
        _ => panic!("axis out of range"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dual is not a finite union of cones")]
    NotRepresentable,
    #[error("inner module is not contained in the outer module")]
    NotNested,
    #[error("no integral lattice satisfies the shift constraints")]
    NoIntegralLattice,
    #[error("module is not torsion-free along the layer axis")]
    NotTorsionFree,
}

/// Closed interval of integers; `None` means unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Iv {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Iv {
    pub const FULL: Iv = Iv { lo: None, hi: None };

    pub fn at_least(a: i64) -> Iv {
        Iv { lo: Some(a), hi: None }
    }

    pub fn at_most(b: i64) -> Iv {
        Iv { lo: None, hi: Some(b) }
    }

    pub fn range(a: i64, b: i64) -> Iv {
        Iv { lo: Some(a), hi: Some(b) }
    }

    pub fn point(a: i64) -> Iv {
        Iv::range(a, a)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }

    fn contains(&self, x: i64) -> bool {
        self.lo.is_none_or(|a| x >= a) && self.hi.is_none_or(|b| x <= b)
    }

    fn intersect(&self, other: &Iv) -> Iv {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Iv { lo, hi }
    }

    fn covers(&self, other: &Iv) -> bool {
        let lo_ok = match (self.lo, other.lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a <= b,
        };
        let hi_ok = match (self.hi, other.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a >= b,
        };
        lo_ok && hi_ok
    }

    fn len(&self) -> Option<u64> {
        if self.is_empty() {
            return Some(0);
        }
        match (self.lo, self.hi) {
            (Some(a), Some(b)) => Some((b - a + 1) as u64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Box2 {
    iv: [Iv; 2],
}

impl Box2 {
    const FULL: Box2 = Box2 { iv: [Iv::FULL, Iv::FULL] };

    fn new(a: Iv, b: Iv) -> Box2 {
        Box2 { iv: [a, b] }
    }

    fn is_empty(&self) -> bool {
        self.iv[0].is_empty() || self.iv[1].is_empty()
    }

    fn contains(&self, p: Exponent) -> bool {
        self.iv[0].contains(p.0) && self.iv[1].contains(p.1)
    }

    fn intersect(&self, other: &Box2) -> Box2 {
        Box2::new(
            self.iv[0].intersect(&other.iv[0]),
            self.iv[1].intersect(&other.iv[1]),
        )
    }

    fn covers(&self, other: &Box2) -> bool {
        self.iv[0].covers(&other.iv[0]) && self.iv[1].covers(&other.iv[1])
    }

    /// Set difference as at most four disjoint boxes.
    fn minus(&self, other: &Box2) -> Vec<Box2> {
        let inter = self.intersect(other);
        if inter.is_empty() {
            return vec![*self];
        }
        let mut out = Vec::new();
        if let Some(l) = inter.iv[0].lo {
            let left = Iv { lo: self.iv[0].lo, hi: Some(l - 1) };
            if !left.is_empty() {
                out.push(Box2::new(left, self.iv[1]));
            }
        }
        if let Some(h) = inter.iv[0].hi {
            let right = Iv { lo: Some(h + 1), hi: self.iv[0].hi };
            if !right.is_empty() {
                out.push(Box2::new(right, self.iv[1]));
            }
        }
        if let Some(l) = inter.iv[1].lo {
            let below = Iv { lo: self.iv[1].lo, hi: Some(l - 1) };
            if !below.is_empty() {
                out.push(Box2::new(inter.iv[0], below));
            }
        }
        if let Some(h) = inter.iv[1].hi {
            let above = Iv { lo: Some(h + 1), hi: self.iv[1].hi };
            if !above.is_empty() {
                out.push(Box2::new(inter.iv[0], above));
            }
        }
        out
    }
}

/// Finite union of boxes, possibly overlapping.
#[derive(Debug, Clone)]
struct BoxSet {
    boxes: Vec<Box2>,
}

impl BoxSet {
    fn empty() -> BoxSet {
        BoxSet { boxes: Vec::new() }
    }

    fn of(boxes: Vec<Box2>) -> BoxSet {
        let mut s = BoxSet { boxes };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.boxes.retain(|b| !b.is_empty());
        let mut keep: Vec<Box2> = Vec::new();
        for b in &self.boxes {
            if keep.iter().any(|k| k.covers(b)) {
                continue;
            }
            keep.retain(|k| !b.covers(k));
            keep.push(*b);
        }
        self.boxes = keep;
    }

    fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    fn contains(&self, p: Exponent) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    fn union(&self, other: &BoxSet) -> BoxSet {
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().copied());
        BoxSet::of(boxes)
    }

    fn intersect(&self, other: &BoxSet) -> BoxSet {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                boxes.push(a.intersect(b));
            }
        }
        BoxSet::of(boxes)
    }

    fn minus(&self, other: &BoxSet) -> BoxSet {
        let mut pieces = self.boxes.clone();
        for b in &other.boxes {
            pieces = pieces.iter().flat_map(|p| p.minus(b)).collect();
        }
        BoxSet::of(pieces)
    }

    fn minus_box(&self, b: &Box2) -> BoxSet {
        BoxSet::of(self.boxes.iter().flat_map(|p| p.minus(b)).collect())
    }

    fn is_subset(&self, other: &BoxSet) -> bool {
        self.minus(other).is_empty()
    }

    fn set_eq(&self, other: &BoxSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    fn complement(&self) -> BoxSet {
        let mut out = BoxSet { boxes: vec![Box2::FULL] };
        for b in &self.boxes {
            out = out.minus_box(b);
        }
        out
    }

    fn saturate(&self, axis: usize) -> BoxSet {
        BoxSet::of(
            self.boxes
                .iter()
                .map(|b| {
                    let mut c = *b;
                    c.iv[axis] = Iv::FULL;
                    c
                })
                .collect(),
        )
    }

    /// Disjoint re-partition of the same point set.
    fn disjoint_pieces(&self) -> Vec<Box2> {
        let mut placed: Vec<Box2> = Vec::new();
        for b in &self.boxes {
            let mut pieces = vec![*b];
            for d in &placed {
                pieces = pieces.iter().flat_map(|p| p.minus(d)).collect();
            }
            placed.extend(pieces);
        }
        placed
    }

    fn count(&self) -> Option<u64> {
        let mut total = 0u64;
        for piece in self.disjoint_pieces() {
            let n = piece.iv[0].len()? .checked_mul(piece.iv[1].len()?)?;
            total += n;
        }
        Some(total)
    }

    /// Hull interval along one axis.
    fn bounding(&self, axis: usize) -> Iv {
        let mut lo: Option<i64> = None;
        let mut hi: Option<i64> = None;
        let mut lo_unbounded = false;
        let mut hi_unbounded = false;
        for b in &self.boxes {
            match b.iv[axis].lo {
                None => lo_unbounded = true,
                Some(a) => lo = Some(lo.map_or(a, |x: i64| x.min(a))),
            }
            match b.iv[axis].hi {
                None => hi_unbounded = true,
                Some(a) => hi = Some(hi.map_or(a, |x: i64| x.max(a))),
            }
        }
        Iv {
            lo: if lo_unbounded { None } else { lo },
            hi: if hi_unbounded { None } else { hi },
        }
    }

    fn two_sided(&self, axis: usize) -> bool {
        let b = self.bounding(axis);
        b.lo.is_none() && b.hi.is_none() && !self.is_empty()
    }

    /// Cross-section {other coordinate : (…, level, …) ∈ set} as merged intervals.
    fn section(&self, axis: usize, level: i64) -> Vec<Iv> {
        let other = 1 - axis;
        let mut ivs: Vec<Iv> = self
            .boxes
            .iter()
            .filter(|b| b.iv[axis].contains(level))
            .map(|b| b.iv[other])
            .collect();
        ivs.retain(|i| !i.is_empty());
        ivs.sort_by_key(|i| i.lo.unwrap_or(i64::MIN));
        let mut merged: Vec<Iv> = Vec::new();
        for iv in ivs {
            if let Some(last) = merged.last_mut() {
                let touches = match (last.hi, iv.lo) {
                    (None, _) => true,
                    (Some(h), Some(l)) => l <= h.saturating_add(1),
                    (Some(_), None) => true,
                };
                if touches {
                    last.hi = match (last.hi, iv.hi) {
                        (None, _) | (_, None) => None,
                        (Some(a), Some(b)) => Some(a.max(b)),
                    };
                    continue;
                }
            }
            merged.push(iv);
        }
        merged
    }
}

/// Per-axis constraint of a cone: bounded below by the shift, or free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisBound {
    AtLeast,
    Any,
}

/// Shifted cone {(i,j) : i ≥ shift.0 [, j ≥ shift.1]} with free axes
/// controlled by the mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cone {
    pub shift: Exponent,
    pub mask: (AxisBound, AxisBound),
}

impl Cone {
    fn to_box(self) -> Box2 {
        let a = match self.mask.0 {
            AxisBound::AtLeast => Iv::at_least(self.shift.0),
            AxisBound::Any => Iv::FULL,
        };
        let b = match self.mask.1 {
            AxisBound::AtLeast => Iv::at_least(self.shift.1),
            AxisBound::Any => Iv::FULL,
        };
        Box2::new(a, b)
    }
}

/// Union of finitely many boxes of exponents; cones, rows, and their
/// quotient leftovers are all instances.
#[derive(Debug, Clone)]
pub struct MonomialModule {
    set: BoxSet,
}

impl PartialEq for MonomialModule {
    fn eq(&self, other: &Self) -> bool {
        self.set.set_eq(&other.set)
    }
}

impl Eq for MonomialModule {}

impl MonomialModule {
    pub fn empty() -> Self {
        MonomialModule { set: BoxSet::empty() }
    }

    pub fn plane() -> Self {
        MonomialModule { set: BoxSet { boxes: vec![Box2::FULL] } }
    }

    pub fn from_cones(cones: &[Cone]) -> Self {
        MonomialModule {
            set: BoxSet::of(cones.iter().map(|c| c.to_box()).collect()),
        }
    }

    pub fn cone(shift: Exponent, mask: (AxisBound, AxisBound)) -> Self {
        Self::from_cones(&[Cone { shift, mask }])
    }

    /// Single line {p : p[axis] = level, p[other] ≥ from} (other axis free
    /// when `from` is None).
    pub fn row(axis: usize, level: i64, from: Option<i64>) -> Self {
        let mut iv = [Iv::FULL, Iv::FULL];
        iv[axis] = Iv::point(level);
        if let Some(a) = from {
            iv[1 - axis] = Iv::at_least(a);
        }
        MonomialModule { set: BoxSet { boxes: vec![Box2 { iv }] } }
    }

    /// Axis-aligned band {p : lo ≤ p[axis] ≤ hi, p[other] ≥ from}.
    pub fn slab(axis: usize, lo: i64, hi: i64, from: Option<i64>) -> Self {
        let mut iv = [Iv::FULL, Iv::FULL];
        iv[axis] = Iv::range(lo, hi);
        if let Some(a) = from {
            iv[1 - axis] = Iv::at_least(a);
        }
        MonomialModule { set: BoxSet::of(vec![Box2 { iv }]) }
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, p: Exponent) -> bool {
        self.set.contains(p)
    }

    pub fn union(&self, other: &Self) -> Self {
        MonomialModule { set: self.set.union(&other.set) }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        MonomialModule { set: self.set.intersect(&other.set) }
    }

    pub fn minus(&self, other: &Self) -> Self {
        MonomialModule { set: self.set.minus(&other.set) }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Distinct occupied levels along one axis; None when the module is
    /// unbounded along it.
    pub fn axis_levels(&self, axis: usize) -> Option<Vec<i64>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        let hull = self.set.bounding(axis);
        let (Some(lo), Some(hi)) = (hull.lo, hull.hi) else {
            return None;
        };
        Some(
            (lo..=hi)
                .filter(|&level| !self.set.section(axis, level).is_empty())
                .collect(),
        )
    }
}

/// Difference of two cone unions: membership = in `plus` and not in
/// `minus`. Value groups and localized worlds are described this way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub plus: MonomialModule,
    pub minus: MonomialModule,
}

impl Region {
    pub fn all() -> Self {
        Region { plus: MonomialModule::plane(), minus: MonomialModule::empty() }
    }

    pub fn of(plus: MonomialModule) -> Self {
        Region { plus, minus: MonomialModule::empty() }
    }

    pub fn with_minus(plus: MonomialModule, minus: MonomialModule) -> Self {
        Region { plus, minus }
    }

    pub fn set(&self) -> MonomialModule {
        self.plus.minus(&self.minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

/// Dual lattice {u : u + e + m ⊆ values} inside the ambient world.
///
/// The candidate range is the ambient-saturation of m along every axis
/// where the ambient world extends both ways; pairing values must land in
/// the value region or in one of the two zero zones (the subtracted parts
/// of v and of the ambient region, where classes die).
pub fn dual_lattice(
    m: &MonomialModule,
    e: Exponent,
    v: &Region,
    ambient: &Region,
) -> Result<MonomialModule, LatticeError> {
    let amb = ambient.set().set;
    let base = m.set.intersect(&amb);
    let mut u_range = base.clone();
    for axis in [AXIS_1, AXIS_2] {
        if amb.two_sided(axis) {
            u_range = u_range.saturate(axis);
        }
    }
    u_range = u_range.intersect(&amb);

    let allowed = v
        .plus
        .set
        .union(&v.minus.set)
        .union(&ambient.minus.set);
    let disallowed = allowed.complement();

    let mut dual = u_range;
    for c in &m.set.boxes {
        for b in &disallowed.boxes {
            // u is bad iff (u + e + c) meets b, a box condition per axis
            let bad = Box2::new(
                bad_interval(c.iv[0], b.iv[0], e.0),
                bad_interval(c.iv[1], b.iv[1], e.1),
            );
            dual = dual.minus_box(&bad);
        }
    }
    Ok(MonomialModule { set: dual })
}

/// {u : (u + e + c) ∩ b ≠ ∅} along one axis: [b.lo − e − c.hi, b.hi − e − c.lo].
fn bad_interval(c: Iv, b: Iv, e: i64) -> Iv {
    let lo = match (b.lo, c.hi) {
        (Some(bl), Some(ch)) => Some(bl - e - ch),
        _ => None,
    };
    let hi = match (b.hi, c.lo) {
        (Some(bh), Some(cl)) => Some(bh - e - cl),
        _ => None,
    };
    Iv { lo, hi }
}

/// Exact point count of outer \ inner.
pub fn quotient_dim(
    inner: &MonomialModule,
    outer: &MonomialModule,
) -> Result<QuotientDim, LatticeError> {
    if !inner.is_subset(outer) {
        return Err(LatticeError::NotNested);
    }
    Ok(match outer.set.minus(&inner.set).count() {
        Some(n) => QuotientDim::Finite(n),
        None => QuotientDim::Infinite,
    })
}

fn ceil_half(a: i64) -> i64 {
    (a + 1).div_euclid(2)
}

/// Shift-maximal sublattice of classmod that is integral for the pairing
/// e with values in v: per axis, the least shift α with 2α + e ≥ the
/// value bound; axes pinned by classmod stay pinned and are checked.
pub fn max_integral_lattice(
    classmod: &MonomialModule,
    e: Exponent,
    v: &Region,
    ambient: &Region,
) -> Result<MonomialModule, LatticeError> {
    let world = classmod.set.intersect(&ambient.set().set);
    let pieces = world.disjoint_pieces();
    if pieces.len() != 1 {
        return Err(LatticeError::NotRepresentable);
    }
    let cm = pieces[0];
    let vset = v.set().set;
    let mut iv = [Iv::FULL, Iv::FULL];
    for axis in [AXIS_1, AXIS_2] {
        let c = cm.iv[axis];
        let vb = vset.bounding(axis);
        let ea = coord(e, axis);
        iv[axis] = match (c.lo, c.hi) {
            (Some(t), Some(th)) if t == th => {
                if !vb.contains(2 * t + ea) {
                    return Err(LatticeError::NoIntegralLattice);
                }
                Iv::point(t)
            }
            _ => match vb.lo {
                Some(lo) => {
                    if vb.hi.is_some() {
                        return Err(LatticeError::NoIntegralLattice);
                    }
                    Iv::at_least(ceil_half(lo - ea))
                }
                None => {
                    if vb.hi.is_some() && c.hi.is_none() {
                        return Err(LatticeError::NoIntegralLattice);
                    }
                    c
                }
            },
        };
    }
    let lattice = Box2 { iv };
    // Minkowski check: lattice + lattice + e must land in the value set
    let sum = Box2::new(
        pair_sum(lattice.iv[0], e.0),
        pair_sum(lattice.iv[1], e.1),
    );
    let sum_set = BoxSet { boxes: vec![sum] };
    if !sum_set.is_subset(&vset) {
        return Err(LatticeError::NoIntegralLattice);
    }
    Ok(MonomialModule { set: BoxSet { boxes: vec![lattice] } })
}

fn pair_sum(iv: Iv, e: i64) -> Iv {
    Iv {
        lo: iv.lo.map(|a| 2 * a + e),
        hi: iv.hi.map(|b| 2 * b + e),
    }
}

/// Number of axis-layers of a torsion presentation; each layer must be a
/// free ray along the other axis.
pub fn ell(m: &MonomialModule, axis: usize) -> Result<u64, LatticeError> {
    let Some(levels) = m.axis_levels(axis) else {
        return Err(LatticeError::NotTorsionFree);
    };
    for &level in &levels {
        let section = m.set.section(axis, level);
        match section.len() {
            1 => {
                let ray = section[0];
                if ray.lo.is_none() || ray.hi.is_some() {
                    return Err(LatticeError::NotTorsionFree);
                }
            }
            _ => return Err(LatticeError::NotTorsionFree),
        }
    }
    Ok(levels.len() as u64)
}

fn single_box(m: &MonomialModule) -> Option<Box2> {
    let pieces = m.set.disjoint_pieces();
    if pieces.len() == 1 {
        Some(pieces[0])
    } else {
        None
    }
}

/// Split a maximal totally isotropic submodule N off the finite quotient
/// outer/inner and replace it by N⊥/N; the quotient width drops to 0 or 1
/// and its parity is preserved.
///
/// The pairing sends monomials m₁, m₂ to m₁ + m₂ + e, and a value is zero
/// in the quotient world exactly when its slab coordinate clears the
/// threshold ζ; since the quotient of a lattice by its dual is
/// nondegenerate, ζ is pinned to inner.lo + outer.lo + e on the slab axis.
pub fn isotropic_reduce(
    inner: &MonomialModule,
    outer: &MonomialModule,
    e: Exponent,
) -> Result<(MonomialModule, MonomialModule), LatticeError> {
    if !inner.is_subset(outer) {
        return Err(LatticeError::NotNested);
    }
    if outer.set.minus(&inner.set).is_empty() {
        return Ok((inner.clone(), outer.clone()));
    }
    let ib = single_box(inner).ok_or(LatticeError::NotRepresentable)?;
    let ob = single_box(outer).ok_or(LatticeError::NotRepresentable)?;
    let axis = [AXIS_1, AXIS_2]
        .into_iter()
        .find(|&ax| {
            ib.iv[1 - ax] == ob.iv[1 - ax]
                && ib.iv[ax].hi == ob.iv[ax].hi
                && ib.iv[ax].lo.is_some()
                && ob.iv[ax].lo.is_some()
                && ib.iv[ax].lo > ob.iv[ax].lo
        })
        .ok_or(LatticeError::NotRepresentable)?;
    let a = ob.iv[axis].lo.expect("checked");
    let inner_lo = ib.iv[axis].lo.expect("checked");
    let width = inner_lo - a;
    if width <= 1 {
        return Ok((inner.clone(), outer.clone()));
    }
    let ea = coord(e, axis);
    let zeta = inner_lo + a + ea;
    let n_lo = ceil_half(zeta - ea).clamp(a, inner_lo);
    let nperp_lo = (zeta - ea - n_lo).clamp(a, inner_lo);
    debug_assert_eq!(
        (width % 2) as u64,
        ((n_lo - nperp_lo).rem_euclid(2)) as u64,
        "isotropic reduction must preserve quotient parity"
    );
    let mut new_inner = ib;
    new_inner.iv[axis].lo = Some(n_lo);
    let mut new_outer = ob;
    new_outer.iv[axis].lo = Some(nperp_lo);
    Ok((
        MonomialModule { set: BoxSet { boxes: vec![new_inner] } },
        MonomialModule { set: BoxSet { boxes: vec![new_outer] } },
    ))
}

/// Residue class of the unary form s^e over a chart torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryClass {
    /// Even valuation along the divisor: the residue vanishes.
    Zero,
    /// Odd valuation, torus coordinate appearing evenly: ⟨1⟩.
    One,
    /// Odd valuation, torus coordinate appearing oddly: ⟨t⟩.
    T,
}

pub fn residue_unary_class(e: Exponent, divisor_axis: usize, residue_axis: usize) -> UnaryClass {
    assert_ne!(divisor_axis, residue_axis, "axes must differ");
    if coord(e, divisor_axis).rem_euclid(2) == 0 {
        UnaryClass::Zero
    } else if coord(e, residue_axis).rem_euclid(2) == 0 {
        UnaryClass::One
    } else {
        UnaryClass::T
    }
}
