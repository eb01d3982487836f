//! The symplectic polar space `W(2N-1, 2)` and its geometric hyperplanes.
//!
//! Points are the nonzero vectors of `F2^{2N}`, identified with their packed
//! integer value `1..2^{2N}`. Point sets are bitmasks of length `2^{2N}` indexed
//! by that value (bit 0 is always clear), so `⊞` is a couple of word XORs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::BitVector;
use crate::incidence::{self, PointLineGeometry};
use crate::pauli::{q0, symplectic_form_unchecked, PauliError, ProjectivePoint, SymplecticVector};

pub const MAX_POLAR_WIDTH: usize = 6;
/// Largest width for which Fano planes are materialized.
pub const MAX_PLANE_WIDTH: usize = 5;
/// Largest width for the Veldkamp census and the kernel oracle.
pub const MAX_VELDKAMP_WIDTH: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolarError {
    #[error("rank {0} outside supported range 1..={max}", max = MAX_POLAR_WIDTH)]
    WidthOutOfRange(usize),
    #[error("operation limited to N <= {max}, got N = {got}")]
    TooLarge { got: usize, max: usize },
    #[error("vector of width {got} does not belong to a space of rank {expected}")]
    WidthMismatch { got: usize, expected: usize },
    #[error("point set is not a geometric hyperplane")]
    NotAHyperplane,
    #[error("hyperplane matches none of the perp / hyperbolic / elliptic forms")]
    Unclassifiable,
    #[error("cannot form the Veldkamp sum of a hyperplane with itself")]
    SameHyperplane,
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub type Line = [u32; 3];
pub type Plane = [u32; 7];

#[derive(Debug, Clone)]
pub struct PolarSpace {
    width: usize,
    lines: Vec<Line>,
    planes: Option<Vec<Plane>>,
}

fn orthogonal(width: usize, a: u64, b: u64) -> bool {
    !symplectic_form_unchecked(
        SymplecticVector::from_packed_unchecked(width, a),
        SymplecticVector::from_packed_unchecked(width, b),
    )
}

/// Builds `W(2N-1, 2)`: all points, all totally isotropic lines and, for
/// `3 <= N <= 5`, all totally isotropic planes.
pub fn build_polar_space(width: usize) -> Result<PolarSpace, PolarError> {
    if width == 0 || width > MAX_POLAR_WIDTH {
        return Err(PolarError::WidthOutOfRange(width));
    }
    let n = 1u64 << (2 * width);
    // Each line is listed once as a < b < a^b.
    let lines: Vec<Line> = (1..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            ((a + 1)..n).filter_map(move |b| {
                let c = a ^ b;
                (c > b && orthogonal(width, a, b)).then_some([a as u32, b as u32, c as u32])
            })
        })
        .collect();
    let planes = (3..=MAX_PLANE_WIDTH)
        .contains(&width)
        .then(|| enumerate_planes(width, &lines));
    Ok(PolarSpace {
        width,
        lines,
        planes,
    })
}

// A plane is listed once: from its two smallest points a < b and the smallest
// point d outside the line {a, b, a^b}.
fn enumerate_planes(width: usize, lines: &[Line]) -> Vec<Plane> {
    let n = 1u32 << (2 * width);
    lines
        .par_iter()
        .flat_map_iter(|&[a, b, c]| {
            ((b + 1)..n).filter_map(move |d| {
                if d == c {
                    return None;
                }
                let rest = [d ^ a, d ^ b, d ^ c];
                if rest.iter().any(|&x| x < d) {
                    return None;
                }
                if !orthogonal(width, u64::from(a), u64::from(d))
                    || !orthogonal(width, u64::from(b), u64::from(d))
                {
                    return None;
                }
                let mut plane = [a, b, c, d, rest[0], rest[1], rest[2]];
                plane.sort_unstable();
                Some(plane)
            })
        })
        .collect()
}

impl PolarSpace {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Bitmask length, `2^{2N}`.
    pub fn capacity(&self) -> usize {
        1 << (2 * self.width)
    }

    pub fn num_points(&self) -> usize {
        self.capacity() - 1
    }

    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (1..self.capacity() as u64)
            .map(move |v| ProjectivePoint::new(self.vector(v)).expect("nonzero"))
    }

    pub fn vector(&self, packed: u64) -> SymplecticVector {
        SymplecticVector::from_packed_unchecked(self.width, packed)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Fano planes, or `None` when not materialized (`N < 3` has none; `N = 6` is not stored).
    pub fn planes(&self) -> Option<&[Plane]> {
        match (&self.planes, self.width) {
            (Some(p), _) => Some(p),
            (None, w) if w < 3 => Some(&[]),
            _ => None,
        }
    }

    pub fn full_set(&self) -> BitVector {
        BitVector::from_indices(self.capacity(), 1..self.capacity())
    }

    pub fn point_set<I: IntoIterator<Item = SymplecticVector>>(
        &self,
        vectors: I,
    ) -> Result<BitVector, PolarError> {
        let mut set = BitVector::zeros(self.capacity());
        for v in vectors {
            self.check(v)?;
            if !v.is_zero() {
                set.set(v.packed() as usize, true);
            }
        }
        Ok(set)
    }

    fn check(&self, v: SymplecticVector) -> Result<(), PolarError> {
        if v.width() != self.width {
            return Err(PolarError::WidthMismatch {
                got: v.width(),
                expected: self.width,
            });
        }
        Ok(())
    }

    pub fn orthogonal(&self, a: u64, b: u64) -> bool {
        orthogonal(self.width, a, b)
    }

    /// The point–line geometry with point `v` relabeled `v - 1`.
    pub fn to_geometry(&self) -> PointLineGeometry {
        PointLineGeometry::new(
            self.num_points(),
            self.lines
                .iter()
                .map(|l| l.iter().map(|&p| p as usize - 1).collect())
                .collect(),
        )
    }

    /// Lines of the space whose three points lie in `set`.
    pub fn lines_within<'a>(&'a self, set: &'a BitVector) -> impl Iterator<Item = &'a Line> + 'a {
        self.lines
            .iter()
            .filter(move |l| l.iter().all(|&p| set.get(p as usize)))
    }

    /// Every line meets `set` in one or three points, and `set` is a proper nonempty subset.
    pub fn is_hyperplane(&self, set: &BitVector) -> bool {
        if set.len() != self.capacity() || set.get(0) {
            return false;
        }
        let n = set.count_ones();
        if n == 0 || n == self.num_points() {
            return false;
        }
        self.lines.par_iter().all(|l| {
            let hits = l.iter().filter(|&&p| set.get(p as usize)).count();
            hits == 1 || hits == 3
        })
    }

    fn perp_bits(&self, q: u64) -> BitVector {
        let mut set = BitVector::zeros(self.capacity());
        for p in 1..self.capacity() as u64 {
            if self.orthogonal(p, q) {
                set.set(p as usize, true);
            }
        }
        set
    }

    fn quadric_bits(&self, q: u64) -> BitVector {
        let qv = self.vector(q);
        let mut set = BitVector::zeros(self.capacity());
        for p in 1..self.capacity() as u64 {
            let pv = self.vector(p);
            if !(q0(pv) ^ symplectic_form_unchecked(qv, pv)) {
                set.set(p as usize, true);
            }
        }
        set
    }

    pub fn perp_size(&self) -> usize {
        (1 << (2 * self.width - 1)) - 1
    }

    pub fn hyperbolic_size(&self) -> usize {
        (1 << (2 * self.width - 1)) + (1 << (self.width - 1)) - 1
    }

    pub fn elliptic_size(&self) -> usize {
        (1 << (2 * self.width - 1)) - (1 << (self.width - 1)) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperplaneTag {
    Perp,
    Hyperbolic,
    Elliptic,
}

impl fmt::Display for HyperplaneTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperplaneTag::Perp => "perp",
            HyperplaneTag::Hyperbolic => "hyperbolic",
            HyperplaneTag::Elliptic => "elliptic",
        })
    }
}

/// Which of the three families a hyperplane belongs to, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HyperplaneKind {
    /// `C_q = {p : ⟨p, q⟩ = 0}`.
    Perp(ProjectivePoint),
    /// `H_q = {p : Q_q(p) = 0}` with `Q_0(q) = 0`.
    Hyperbolic(SymplecticVector),
    /// `H_q` with `Q_0(q) = 1`.
    Elliptic(SymplecticVector),
}

impl HyperplaneKind {
    pub fn tag(self) -> HyperplaneTag {
        match self {
            HyperplaneKind::Perp(_) => HyperplaneTag::Perp,
            HyperplaneKind::Hyperbolic(_) => HyperplaneTag::Hyperbolic,
            HyperplaneKind::Elliptic(_) => HyperplaneTag::Elliptic,
        }
    }

    pub fn parameter(self) -> SymplecticVector {
        match self {
            HyperplaneKind::Perp(p) => p.vector(),
            HyperplaneKind::Hyperbolic(q) | HyperplaneKind::Elliptic(q) => q,
        }
    }

    pub fn label(self) -> String {
        match self {
            HyperplaneKind::Perp(p) => format!("C_{p}"),
            HyperplaneKind::Hyperbolic(q) | HyperplaneKind::Elliptic(q) => format!("H_{q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    points: BitVector,
    kind: HyperplaneKind,
}

impl Hyperplane {
    pub fn points(&self) -> &BitVector {
        &self.points
    }

    pub fn kind(&self) -> HyperplaneKind {
        self.kind
    }

    pub fn tag(&self) -> HyperplaneTag {
        self.kind.tag()
    }

    pub fn len(&self) -> usize {
        self.points.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_zero()
    }

    pub fn contains(&self, p: SymplecticVector) -> bool {
        !p.is_zero()
            && (p.packed() as usize) < self.points.len()
            && self.points.get(p.packed() as usize)
    }

    pub fn vectors(&self) -> impl Iterator<Item = u64> + '_ {
        self.points.ones().map(|i| i as u64)
    }
}

/// `C_q`: the operators commuting with `O_q`.
pub fn perp_set(space: &PolarSpace, q: ProjectivePoint) -> Result<Hyperplane, PolarError> {
    space.check(q.vector())?;
    Ok(Hyperplane {
        points: space.perp_bits(q.vector().packed()),
        kind: HyperplaneKind::Perp(q),
    })
}

/// `H_q`: the zero set of `Q_q` (any `q`, including zero).
pub fn quadric(space: &PolarSpace, q: SymplecticVector) -> Result<Hyperplane, PolarError> {
    space.check(q)?;
    let kind = if q0(q) {
        HyperplaneKind::Elliptic(q)
    } else {
        HyperplaneKind::Hyperbolic(q)
    };
    Ok(Hyperplane {
        points: space.quadric_bits(q.packed()),
        kind,
    })
}

pub fn is_hyperplane(space: &PolarSpace, set: &BitVector) -> bool {
    space.is_hyperplane(set)
}

/// Recovers the family and parameter of a hyperplane by scanning candidate parameters.
pub fn classify_hyperplane(
    space: &PolarSpace,
    set: &BitVector,
) -> Result<HyperplaneKind, PolarError> {
    if !space.is_hyperplane(set) {
        return Err(PolarError::NotAHyperplane);
    }
    let size = set.count_ones();
    let capacity = space.capacity() as u64;
    if size == space.perp_size() {
        let found = (1..capacity)
            .into_par_iter()
            .find_first(|&q| space.perp_bits(q) == *set);
        if let Some(q) = found {
            return Ok(HyperplaneKind::Perp(ProjectivePoint::new(space.vector(q))?));
        }
    }
    let elliptic = if size == space.hyperbolic_size() {
        false
    } else if size == space.elliptic_size() {
        true
    } else {
        return Err(PolarError::Unclassifiable);
    };
    let found = (0..capacity)
        .into_par_iter()
        .filter(|&q| q0(space.vector(q)) == elliptic)
        .find_first(|&q| space.quadric_bits(q) == *set);
    match found {
        Some(q) if elliptic => Ok(HyperplaneKind::Elliptic(space.vector(q))),
        Some(q) => Ok(HyperplaneKind::Hyperbolic(space.vector(q))),
        None => Err(PolarError::Unclassifiable),
    }
}

/// Wraps an arbitrary hyperplane point set with its classification.
pub fn hyperplane_from_set(space: &PolarSpace, set: BitVector) -> Result<Hyperplane, PolarError> {
    let kind = classify_hyperplane(space, &set)?;
    Ok(Hyperplane { points: set, kind })
}

/// `h1 ⊞ h2`, the third hyperplane on the Veldkamp line through `h1` and `h2`.
pub fn veldkamp_sum(
    space: &PolarSpace,
    h1: &Hyperplane,
    h2: &Hyperplane,
) -> Result<Hyperplane, PolarError> {
    if h1.points == h2.points {
        return Err(PolarError::SameHyperplane);
    }
    let set = incidence::boxplus(&h1.points, &h2.points, &space.full_set());
    hyperplane_from_set(space, set)
}

/// The kind of `h1 ⊞ h2` predicted from the kinds alone:
/// `C_p ⊞ C_q = C_{p+q}`, `H_p ⊞ H_q = C_{p+q}`, `C_p ⊞ H_q = H_{p+q}`.
pub fn predicted_sum(a: HyperplaneKind, b: HyperplaneKind) -> Result<HyperplaneKind, PolarError> {
    let s = a.parameter().try_add(b.parameter())?;
    let quadric_kind = |q: SymplecticVector| {
        if q0(q) {
            HyperplaneKind::Elliptic(q)
        } else {
            HyperplaneKind::Hyperbolic(q)
        }
    };
    match (
        a.tag() == HyperplaneTag::Perp,
        b.tag() == HyperplaneTag::Perp,
    ) {
        (true, true) | (false, false) => {
            let center = ProjectivePoint::new(s).map_err(|_| PolarError::SameHyperplane)?;
            Ok(HyperplaneKind::Perp(center))
        }
        _ => Ok(quadric_kind(s)),
    }
}

/// All hyperplanes from the three families: `C_q` for every point, then `H_q` for every vector.
/// The empty elliptic quadric of `W(1,2)` is dropped.
pub fn all_hyperplanes(space: &PolarSpace) -> Vec<Hyperplane> {
    let capacity = space.capacity() as u64;
    let perps = (1..capacity).into_par_iter().map(|q| Hyperplane {
        points: space.perp_bits(q),
        kind: HyperplaneKind::Perp(ProjectivePoint::new(space.vector(q)).expect("nonzero")),
    });
    let quadrics = (0..capacity).into_par_iter().map(|q| {
        let v = space.vector(q);
        Hyperplane {
            points: space.quadric_bits(q),
            kind: if q0(v) {
                HyperplaneKind::Elliptic(v)
            } else {
                HyperplaneKind::Hyperbolic(v)
            },
        }
    });
    perps
        .chain(quadrics)
        .filter(|h| !h.points.is_zero())
        .collect()
}

/// Hyperplanes enumerated from the incidence-matrix kernel, independent of the
/// `C_q` / `H_q` formulas. Sorted by bitmask.
pub fn hyperplanes_by_kernel(space: &PolarSpace) -> Result<Vec<BitVector>, PolarError> {
    if space.width() > MAX_VELDKAMP_WIDTH {
        return Err(PolarError::TooLarge {
            got: space.width(),
            max: MAX_VELDKAMP_WIDTH,
        });
    }
    let geometry = space.to_geometry();
    let mut out: Vec<BitVector> = if space.lines().is_empty() {
        // N = 1: no lines, so every proper nonempty subset qualifies.
        (1u32..(1 << space.num_points()) - 1)
            .map(|m| {
                BitVector::from_indices(
                    space.num_points(),
                    (0..space.num_points()).filter(|i| m >> i & 1 == 1),
                )
            })
            .collect()
    } else {
        geometry.hyperplanes()
    };
    for h in out.iter_mut() {
        *h = BitVector::from_indices(space.capacity(), h.ones().map(|i| i + 1));
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HyperplaneCensus {
    pub perp: usize,
    pub hyperbolic: usize,
    pub elliptic: usize,
    pub total: usize,
}

pub fn hyperplane_census(hyperplanes: &[Hyperplane]) -> HyperplaneCensus {
    let count = |t| hyperplanes.iter().filter(|h| h.tag() == t).count();
    HyperplaneCensus {
        perp: count(HyperplaneTag::Perp),
        hyperbolic: count(HyperplaneTag::Hyperbolic),
        elliptic: count(HyperplaneTag::Elliptic),
        total: hyperplanes.len(),
    }
}

/// Type of a Veldkamp line `{C_p, C_q, C_{p+q}}` or `{C_p, H_q, H_{p+q}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VeldkampLineType {
    /// Three perp sets whose centers form an isotropic line.
    PerpPerpPerpCollinear,
    /// Three perp sets whose centers pairwise anticommute.
    PerpPerpPerpNoncollinear,
    PerpHyperbolicHyperbolic,
    PerpHyperbolicElliptic,
    PerpEllipticElliptic,
}

impl VeldkampLineType {
    pub fn name(self) -> &'static str {
        match self {
            VeldkampLineType::PerpPerpPerpCollinear => "perp_perp_perp_collinear",
            VeldkampLineType::PerpPerpPerpNoncollinear => "perp_perp_perp_noncollinear",
            VeldkampLineType::PerpHyperbolicHyperbolic => "perp_hyperbolic_hyperbolic",
            VeldkampLineType::PerpHyperbolicElliptic => "perp_hyperbolic_elliptic",
            VeldkampLineType::PerpEllipticElliptic => "perp_elliptic_elliptic",
        }
    }

    pub fn of(space: &PolarSpace, kinds: [HyperplaneKind; 3]) -> Option<Self> {
        let mut tags = kinds.map(HyperplaneKind::tag);
        tags.sort();
        use HyperplaneTag::*;
        match tags {
            [Perp, Perp, Perp] => {
                let a = kinds[0].parameter().packed();
                let b = kinds[1].parameter().packed();
                Some(if space.orthogonal(a, b) {
                    VeldkampLineType::PerpPerpPerpCollinear
                } else {
                    VeldkampLineType::PerpPerpPerpNoncollinear
                })
            }
            [Perp, Hyperbolic, Hyperbolic] => Some(VeldkampLineType::PerpHyperbolicHyperbolic),
            [Perp, Hyperbolic, Elliptic] => Some(VeldkampLineType::PerpHyperbolicElliptic),
            [Perp, Elliptic, Elliptic] => Some(VeldkampLineType::PerpEllipticElliptic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VeldkampCensus {
    pub hyperplanes: Vec<Hyperplane>,
    /// Sorted index triples into `hyperplanes`.
    pub lines: Vec<[usize; 3]>,
    pub by_type: BTreeMap<VeldkampLineType, usize>,
}

/// All Veldkamp lines of `W(2N-1, 2)`, grouped by type. `N <= 4`.
pub fn veldkamp_lines(space: &PolarSpace) -> Result<VeldkampCensus, PolarError> {
    if space.width() > MAX_VELDKAMP_WIDTH {
        return Err(PolarError::TooLarge {
            got: space.width(),
            max: MAX_VELDKAMP_WIDTH,
        });
    }
    let hyperplanes = all_hyperplanes(space);
    let sets: Vec<BitVector> = hyperplanes.iter().map(|h| h.points.clone()).collect();
    let lines = incidence::veldkamp_triples(&sets, &space.full_set());
    let mut by_type = BTreeMap::new();
    for l in &lines {
        let kinds = l.map(|i| hyperplanes[i].kind);
        let t = VeldkampLineType::of(space, kinds).ok_or(PolarError::Unclassifiable)?;
        *by_type.entry(t).or_insert(0) += 1;
    }
    Ok(VeldkampCensus {
        hyperplanes,
        lines,
        by_type,
    })
}

/// The symplectic transvection `x ↦ x + ⟨x, v⟩ v`.
pub fn transvection(center: SymplecticVector, x: SymplecticVector) -> SymplecticVector {
    if symplectic_form_unchecked(x, center) {
        x + center
    } else {
        x
    }
}

/// Image of a point set under a transvection.
pub fn transvect_set(space: &PolarSpace, center: SymplecticVector, set: &BitVector) -> BitVector {
    let mut out = BitVector::zeros(set.len());
    for p in set.ones() {
        out.set(
            transvection(center, space.vector(p as u64)).packed() as usize,
            true,
        );
    }
    out
}

/// Lookup from a hyperplane point set to its index in `hyperplanes`.
pub fn index_hyperplanes(hyperplanes: &[Hyperplane]) -> HashMap<BitVector, usize> {
    hyperplanes
        .iter()
        .enumerate()
        .map(|(i, h)| (h.points.clone(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;

    fn v(s: &str) -> SymplecticVector {
        parse_pauli(s).unwrap().vector()
    }

    #[test]
    fn small_censuses() {
        let w1 = build_polar_space(1).unwrap();
        assert_eq!((w1.num_points(), w1.lines().len()), (3, 0));
        let w2 = build_polar_space(2).unwrap();
        assert_eq!((w2.num_points(), w2.lines().len()), (15, 15));
        assert_eq!(w2.planes().unwrap().len(), 0);
        let w3 = build_polar_space(3).unwrap();
        assert_eq!(w3.num_points(), 63);
        assert_eq!(w3.lines().len(), 315);
        assert_eq!(w3.planes().unwrap().len(), 135);
        assert!(build_polar_space(0).is_err());
        assert!(build_polar_space(7).is_err());
    }

    #[test]
    fn lines_are_isotropic_and_closed() {
        let w3 = build_polar_space(3).unwrap();
        for &[a, b, c] in w3.lines() {
            assert_eq!(a ^ b, c);
            assert!(w3.orthogonal(a.into(), b.into()));
        }
        for plane in w3.planes().unwrap() {
            for &x in plane {
                for &y in plane {
                    assert!(w3.orthogonal(x.into(), y.into()));
                    assert!(plane.contains(&(x ^ y)) || x == y);
                }
            }
        }
    }

    #[test]
    fn perp_set_examples() {
        let w2 = build_polar_space(2).unwrap();
        let xx = ProjectivePoint::new(v("XX")).unwrap();
        let c = perp_set(&w2, xx).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.contains(v("XX")));
        for l in w2
            .lines()
            .iter()
            .filter(|l| l.contains(&(xx.index() as u32)))
        {
            assert!(l.iter().all(|&p| c.points().get(p as usize)));
        }
        let w3 = build_polar_space(3).unwrap();
        let c = perp_set(&w3, ProjectivePoint::new(v("YYY")).unwrap()).unwrap();
        assert_eq!(c.len(), 31);
    }

    #[test]
    fn quadric_examples() {
        let w3 = build_polar_space(3).unwrap();
        let h0 = quadric(&w3, SymplecticVector::zero(3).unwrap()).unwrap();
        assert_eq!(h0.len(), 35);
        assert_eq!(h0.tag(), HyperplaneTag::Hyperbolic);
        let hy = quadric(&w3, v("YYY")).unwrap();
        assert_eq!(hy.len(), 27);
        assert_eq!(hy.tag(), HyperplaneTag::Elliptic);
        let w2 = build_polar_space(2).unwrap();
        assert_eq!(
            quadric(&w2, SymplecticVector::zero(2).unwrap())
                .unwrap()
                .len(),
            9
        );
        assert_eq!(quadric(&w2, v("YY")).unwrap().len(), 9);
        assert_eq!(quadric(&w2, v("YI")).unwrap().len(), 5);
        assert!(quadric(&w2, v("YYY")).is_err());
    }

    #[test]
    fn full_set_is_not_a_hyperplane() {
        let w2 = build_polar_space(2).unwrap();
        assert!(!is_hyperplane(&w2, &w2.full_set()));
        assert!(!is_hyperplane(&w2, &BitVector::zeros(16)));
        assert_eq!(
            classify_hyperplane(&w2, &w2.full_set()),
            Err(PolarError::NotAHyperplane)
        );
    }

    #[test]
    fn veldkamp_sum_rejects_equal_inputs() {
        let w2 = build_polar_space(2).unwrap();
        let h = quadric(&w2, v("XZ")).unwrap();
        assert_eq!(veldkamp_sum(&w2, &h, &h), Err(PolarError::SameHyperplane));
    }

    #[test]
    fn classify_round_trip() {
        for n in 1..=3 {
            let space = build_polar_space(n).unwrap();
            for h in all_hyperplanes(&space) {
                if n == 1 && h.tag() == HyperplaneTag::Perp {
                    // In W(1,2) a perp set is a single point, which coincides with an H_q.
                    continue;
                }
                assert_eq!(classify_hyperplane(&space, h.points()).unwrap(), h.kind());
            }
        }
    }

    #[test]
    fn hyperplane_sizes() {
        for n in 2..=3 {
            let space = build_polar_space(n).unwrap();
            for h in all_hyperplanes(&space) {
                let expected = match h.tag() {
                    HyperplaneTag::Perp => space.perp_size(),
                    HyperplaneTag::Hyperbolic => space.hyperbolic_size(),
                    HyperplaneTag::Elliptic => space.elliptic_size(),
                };
                assert_eq!(h.len(), expected);
            }
        }
    }

    #[test]
    fn w74_hyperplane_count() {
        let w4 = build_polar_space(4).unwrap();
        // 255 points, 63 lines through each.
        assert_eq!(w4.lines().len(), 255 * 63 / 3);
        assert_eq!(w4.planes().unwrap().len(), 255 * 315 / 7);
        let kernel = hyperplanes_by_kernel(&w4).unwrap();
        assert_eq!(kernel.len(), (1 << 9) - 1);
    }

    #[test]
    fn transvections_preserve_lines() {
        let w3 = build_polar_space(3).unwrap();
        let lines: std::collections::HashSet<Line> = w3.lines().iter().copied().collect();
        for center in ["XYZ", "ZII", "YYY"] {
            for &l in w3.lines() {
                let mut image =
                    l.map(|p| transvection(v(center), w3.vector(p.into())).packed() as u32);
                image.sort_unstable();
                assert!(lines.contains(&image));
            }
        }
    }
}
