//! The magic Veldkamp line of `W(5,2)` and the `A5` structure on its core doily.
//!
//! The line `(H_III, H_YYY, C_YYY)` has a 15-point core, the symmetric
//! three-qubit operators commuting with `YYY`. Labeling the core by duads
//! `{i, j} ⊂ {1..6}` turns it into the space of 6×6 skew matrices: the cubic
//! `Tr(Ω³)` of `Ω = Σ a_ij O_ij` becomes a multiple of `Pf(A)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::contextuality::{context_sign, ContextError};
use crate::gf2::{self, BitVector};
use crate::incidence::{self, PointLineGeometry};
use crate::pauli::{
    parse_pauli, q0, to_matrix_f64, PauliError, PauliOperator, ProjectivePoint, SymplecticVector,
};
use crate::polar::{self, Hyperplane, PolarError, PolarSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("operation requires W(5,2), got N = {0}")]
    WrongWidth(usize),
    #[error("point set is not a doily")]
    NotADoily,
    #[error("no duad isomorphism exists")]
    NoIsomorphism,
    #[error("sign system for the labeling is inconsistent")]
    SignSystem,
    #[error("{0} is not in the core")]
    NotInCore(String),
    #[error("root {0} is not skew-symmetric")]
    NonSkewRoot(String),
    #[error("at most 5 roots, got {0}")]
    TooManyRoots(usize),
    #[error("root {root}: {from} lowers to {to}, outside the core")]
    OrbitLeavesCore {
        root: usize,
        from: String,
        to: String,
    },
    #[error("duad {duad} reached as both {first} and {second}")]
    InconsistentOrbit {
        duad: Duad,
        first: String,
        second: String,
    },
    #[error("matrix is not square and skew-symmetric")]
    NotSkew,
    #[error("ratio Tr(Ω³)/Pf(A) varies: {first} vs {other}")]
    NotConstant { first: f64, other: f64 },
    #[error("Pf(A) vanished on a sample")]
    DegenerateSample,
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error(transparent)]
    Context(#[from] ContextError),
}

fn require_w52(space: &PolarSpace) -> Result<(), LieError> {
    match space.width() {
        3 => Ok(()),
        n => Err(LieError::WrongWidth(n)),
    }
}

fn op(label: &str) -> SymplecticVector {
    parse_pauli(label).expect("static label").vector()
}

#[derive(Debug, Clone)]
pub struct MagicVeldkampLine {
    pub perp: Hyperplane,
    pub elliptic: Hyperplane,
    pub hyperbolic: Hyperplane,
    pub core: BitVector,
}

impl MagicVeldkampLine {
    /// Packed vectors of the 15 core points, ascending.
    pub fn core_points(&self) -> Vec<u64> {
        self.core.ones().map(|p| p as u64).collect()
    }

    /// Each of the three hyperplanes is the ⊞-sum of the other two.
    pub fn is_veldkamp_line(&self, space: &PolarSpace) -> bool {
        let full = space.full_set();
        let [a, b, c] = [
            self.perp.points(),
            self.elliptic.points(),
            self.hyperbolic.points(),
        ];
        incidence::boxplus(a, b, &full) == *c
            && incidence::boxplus(b, c, &full) == *a
            && incidence::boxplus(a, c, &full) == *b
    }
}

/// `(C_YYY, H_YYY, H_III)` and their common core.
pub fn magic_veldkamp_line(space: &PolarSpace) -> Result<MagicVeldkampLine, LieError> {
    require_w52(space)?;
    let yyy = op("YYY");
    let perp = polar::perp_set(space, ProjectivePoint::new(yyy)?)?;
    let elliptic = polar::quadric(space, yyy)?;
    let hyperbolic = polar::quadric(space, SymplecticVector::zero(3)?)?;
    let core = BitVector::from_indices(
        space.capacity(),
        perp.points().ones().filter(|&p| hyperbolic.points().get(p)),
    );
    Ok(MagicVeldkampLine {
        perp,
        elliptic,
        hyperbolic,
        core,
    })
}

/// Restriction of `W(2N-1,2)` to a point set: the lines lying inside it,
/// relabeled on `0..|set|` in ascending point order.
pub fn induced_geometry(space: &PolarSpace, set: &BitVector) -> (Vec<u64>, PointLineGeometry) {
    let points: Vec<u64> = set.ones().map(|p| p as u64).collect();
    let index: BTreeMap<u64, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let lines = space
        .lines_within(set)
        .map(|l| l.iter().map(|&p| index[&u64::from(p)]).collect())
        .collect();
    (points, PointLineGeometry::new(index.len(), lines))
}

/// True iff the induced geometry on `set` is a generalized quadrangle `GQ(2,2)`.
pub fn is_doily(space: &PolarSpace, set: &BitVector) -> bool {
    if set.count_ones() != 15 {
        return false;
    }
    let (_, g) = induced_geometry(space, set);
    g.lines().len() == 15 && g.gq_order() == Some((2, 2)) && g.is_triangle_free()
}

pub fn core_is_doily(space: &PolarSpace, line: &MagicVeldkampLine) -> bool {
    is_doily(space, &line.core)
}

/// The symmetric operators of `H_III` split by commutation with `YYY`:
/// the 15 that commute (the core) and the 20 that anticommute.
pub fn partition_35(space: &PolarSpace) -> Result<(BitVector, BitVector), LieError> {
    require_w52(space)?;
    let yyy = op("YYY").packed();
    let hyperbolic = polar::quadric(space, SymplecticVector::zero(3)?)?;
    let mut commuting = BitVector::zeros(space.capacity());
    let mut anticommuting = BitVector::zeros(space.capacity());
    for p in hyperbolic.vectors() {
        if space.orthogonal(p, yyy) {
            commuting.set(p as usize, true);
        } else {
            anticommuting.set(p as usize, true);
        }
    }
    Ok((commuting, anticommuting))
}

/// A 2-subset `{i, j}` of `{0..5}`, `i < j`. Displayed 1-based as `ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Duad(pub u8, pub u8);

impl Duad {
    pub fn new(a: u8, b: u8) -> Self {
        assert!(a != b && a < 6 && b < 6, "invalid duad {{{a},{b}}}");
        Duad(a.min(b), a.max(b))
    }

    /// All 15 duads in lexicographic order.
    pub fn all() -> Vec<Duad> {
        let mut out = Vec::with_capacity(15);
        for i in 0..6 {
            for j in (i + 1)..6 {
                out.push(Duad(i, j));
            }
        }
        out
    }

    /// Position in [`Duad::all`].
    pub fn index(self) -> usize {
        let (i, j) = (self.0 as usize, self.1 as usize);
        i * (11 - i) / 2 + (j - i - 1)
    }

    pub fn contains(self, k: u8) -> bool {
        self.0 == k || self.1 == k
    }

    pub fn is_disjoint(self, other: Duad) -> bool {
        !other.contains(self.0) && !other.contains(self.1)
    }
}

impl fmt::Display for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0 + 1, self.1 + 1)
    }
}

/// Sign of the perfect matching `{(i1,j1),(i2,j2),(i3,j3)}` as a term of the Pfaffian.
pub fn matching_sign(matching: [Duad; 3]) -> i8 {
    let perm: Vec<u8> = matching.iter().flat_map(|d| [d.0, d.1]).collect();
    let inversions = (0..6)
        .flat_map(|a| ((a + 1)..6).map(move |b| (a, b)))
        .filter(|&(a, b)| perm[a] > perm[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Disjoint-duad bijections onto the commutation graph of a doily.
///
/// Duads are assigned in lexicographic order; candidate points in ascending order.
fn duad_isomorphisms(
    points: &[u64],
    geometry: &PointLineGeometry,
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let duads = Duad::all();
    let n = points.len();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| geometry.collinear(a, b)).collect())
        .collect();
    let mut out = Vec::new();
    let mut assignment: Vec<usize> = Vec::with_capacity(15);
    let mut used = vec![false; n];

    fn recurse(
        duads: &[Duad],
        adj: &[Vec<bool>],
        assignment: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let k = assignment.len();
        if k == duads.len() {
            out.push(assignment.clone());
            return;
        }
        for p in 0..used.len() {
            if used[p] {
                continue;
            }
            let fits = (0..k).all(|j| duads[j].is_disjoint(duads[k]) == adj[assignment[j]][p]);
            if fits {
                used[p] = true;
                assignment.push(p);
                recurse(duads, adj, assignment, used, out, limit);
                assignment.pop();
                used[p] = false;
            }
        }
    }

    recurse(&duads, &adj, &mut assignment, &mut used, &mut out, limit);
    out
}

/// Number of duad labelings of a doily (the order of its automorphism group).
pub fn count_duad_labelings(space: &PolarSpace, core: &BitVector) -> Result<usize, LieError> {
    if !is_doily(space, core) {
        return Err(LieError::NotADoily);
    }
    let (points, g) = induced_geometry(space, core);
    Ok(duad_isomorphisms(&points, &g, None).len())
}

/// Signed operators indexed by duad, such that disjoint duads label commuting
/// (collinear) operators and `Tr(Ω³)` is a positive multiple of `Pf(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuadLabeling {
    ops: Vec<PauliOperator>,
}

impl DuadLabeling {
    pub fn operator(&self, duad: Duad) -> PauliOperator {
        self.ops[duad.index()]
    }

    pub fn operators(&self) -> &[PauliOperator] {
        &self.ops
    }

    /// Copy with one entry replaced, e.g. to flip a sign.
    pub fn with_operator(&self, duad: Duad, op: PauliOperator) -> Self {
        let mut ops = self.ops.clone();
        ops[duad.index()] = op;
        DuadLabeling { ops }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Duad, PauliOperator)> + '_ {
        Duad::all().into_iter().zip(self.ops.iter().copied())
    }

    /// Disjointness of duads matches commutation of their operators for all pairs.
    pub fn is_compatible(&self) -> bool {
        let duads = Duad::all();
        duads.iter().all(|&a| {
            duads.iter().all(|&b| {
                a == b
                    || a.is_disjoint(b)
                        == self
                            .operator(a)
                            .commutes_with(self.operator(b))
                            .expect("same width")
            })
        })
    }

    /// `Ω = Σ_{i<j} a_ij · O_ij` as an 8×8 complex matrix.
    pub fn omega(&self, a: &DMatrix<f64>) -> Result<DMatrix<Complex64>, LieError> {
        let mut omega = DMatrix::<Complex64>::zeros(8, 8);
        for (d, o) in self.entries() {
            omega += to_matrix_f64(o)? * Complex64::new(a[(d.0 as usize, d.1 as usize)], 0.0);
        }
        Ok(omega)
    }
}

/// Finds the first duad isomorphism and fixes operator signs so that each
/// line's signed product matches the Pfaffian sign of its matching.
pub fn find_duad_labeling(space: &PolarSpace, core: &BitVector) -> Result<DuadLabeling, LieError> {
    if !is_doily(space, core) {
        return Err(LieError::NotADoily);
    }
    let (points, g) = induced_geometry(space, core);
    let iso = duad_isomorphisms(&points, &g, Some(1))
        .pop()
        .ok_or(LieError::NoIsomorphism)?;
    let duads = Duad::all();
    let base: Vec<PauliOperator> = iso
        .iter()
        .map(|&p| PauliOperator::hermitian(space.vector(points[p])))
        .collect();
    let slot_of_point: BTreeMap<usize, usize> =
        iso.iter().enumerate().map(|(d, &p)| (p, d)).collect();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for line in g.lines() {
        let slots: Vec<usize> = line.iter().map(|p| slot_of_point[p]).collect();
        let mut matching = [duads[slots[0]], duads[slots[1]], duads[slots[2]]];
        matching.sort();
        let ops: Vec<PauliOperator> = slots.iter().map(|&s| base[s]).collect();
        let product_sign = context_sign(&ops)?;
        rows.push(BitVector::from_indices(15, slots.iter().copied()));
        rhs.push(product_sign != matching_sign(matching));
    }
    let solution = gf2::solve(&rows, &rhs, 15);
    let flips = solution.particular.ok_or(LieError::SignSystem)?;
    let ops = base
        .iter()
        .enumerate()
        .map(|(i, o)| if flips.get(i) { o.negate() } else { *o })
        .collect();
    Ok(DuadLabeling { ops })
}

/// `Σ` over perfect matchings, by expansion along the first row.
pub fn pfaffian<T>(a: &DMatrix<T>) -> Result<T, LieError>
where
    T: nalgebra::Scalar + Zero + One + Copy + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let n = a.nrows();
    if a.ncols() != n || (0..n).any(|i| (0..n).any(|j| a[(i, j)] != -a[(j, i)])) {
        return Err(LieError::NotSkew);
    }
    let indices: Vec<usize> = (0..n).collect();
    Ok(pfaffian_rec(a, &indices))
}

fn pfaffian_rec<T>(a: &DMatrix<T>, idx: &[usize]) -> T
where
    T: nalgebra::Scalar + Zero + One + Copy + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    if idx.is_empty() {
        return T::one();
    }
    if idx.len() % 2 == 1 {
        return T::zero();
    }
    let first = idx[0];
    let mut total = T::zero();
    for k in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != idx[k]).collect();
        let term = a[(first, idx[k])] * pfaffian_rec(a, &rest);
        total = if k % 2 == 1 {
            total + term
        } else {
            total + -term
        };
    }
    total
}

/// Random real skew-symmetric 6×6 matrix with entries in `[-1, 1]`.
pub fn random_skew(rng: &mut impl Rng) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(6, 6);
    for i in 0..6 {
        for j in (i + 1)..6 {
            let x: f64 = rng.gen_range(-1.0..=1.0);
            a[(i, j)] = x;
            a[(j, i)] = -x;
        }
    }
    a
}

pub const PFAFFIAN_TOLERANCE: f64 = 1e-9;

/// Measures `c` with `Tr(Ω³) = c·Pf(A)` on `samples` random skew matrices,
/// requiring agreement to relative tolerance `1e-9`.
pub fn trace_cube_pfaffian_check(
    labeling: &DuadLabeling,
    samples: usize,
    seed: u64,
) -> Result<f64, LieError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant: Option<f64> = None;
    for _ in 0..samples.max(1) {
        let a = random_skew(&mut rng);
        let ratio = trace_cube_ratio(labeling, &a)?;
        match constant {
            None => constant = Some(ratio),
            Some(c) if (ratio - c).abs() <= PFAFFIAN_TOLERANCE * c.abs() => {}
            Some(c) => {
                return Err(LieError::NotConstant {
                    first: c,
                    other: ratio,
                })
            }
        }
    }
    Ok(constant.expect("at least one sample"))
}

/// `Tr(Ω³)/Pf(A)` for one matrix; errors if the ratio has an imaginary part.
pub fn trace_cube_ratio(labeling: &DuadLabeling, a: &DMatrix<f64>) -> Result<f64, LieError> {
    let omega = labeling.omega(a)?;
    let trace = (&omega * &omega * &omega).trace();
    let pf = pfaffian(a)?;
    if pf.abs() < 1e-12 {
        return Err(LieError::DegenerateSample);
    }
    if trace.im.abs() > PFAFFIAN_TOLERANCE * trace.norm().max(1.0) {
        return Err(LieError::NotConstant {
            first: trace.re / pf,
            other: trace.im / pf,
        });
    }
    Ok(trace.re / pf)
}

/// `A5` weight diagram: nodes labeled by duads and projective operators,
/// edges `(from, to, k)` for lowering by root `α_k` (1-based `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    pub nodes: Vec<(Duad, SymplecticVector)>,
    pub edges: Vec<(usize, usize, u8)>,
    pub highest: SymplecticVector,
    pub roots: Vec<SymplecticVector>,
}

impl WeightDiagram {
    pub fn node_set(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.nodes.iter().map(|(_, o)| o.packed()).collect();
        v.sort_unstable();
        v
    }
}

pub fn highest_weight_duad() -> Duad {
    Duad(0, 1)
}

type PackedOrbit = (Vec<Option<u64>>, Vec<(Duad, Duad, u8)>);

/// Orbit of packed vectors: duad-indexed labels, or the first failure.
fn orbit_packed(core: &BitVector, roots: &[u64], highest: u64) -> Result<PackedOrbit, LieError> {
    let mut label: Vec<Option<u64>> = vec![None; 15];
    let mut edges = Vec::new();
    let start = highest_weight_duad();
    label[start.index()] = Some(highest);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        let here = label[d.index()].expect("queued duads are labeled");
        for (k, &root) in roots.iter().enumerate() {
            let k = k as u8;
            let child = match (d.contains(k), d.contains(k + 1)) {
                (true, false) if d.0 == k => Duad::new(k + 1, d.1),
                (true, false) => Duad::new(d.0, k + 1),
                _ => continue,
            };
            let next = here ^ root;
            if next == 0 || !core.get(next as usize) {
                return Err(LieError::OrbitLeavesCore {
                    root: k as usize + 1,
                    from: SymplecticVector::from_packed(3, here)?.label(),
                    to: SymplecticVector::from_packed(3, next)?.label(),
                });
            }
            match label[child.index()] {
                Some(prev) if prev != next => {
                    return Err(LieError::InconsistentOrbit {
                        duad: child,
                        first: SymplecticVector::from_packed(3, prev)?.label(),
                        second: SymplecticVector::from_packed(3, next)?.label(),
                    })
                }
                Some(_) => {}
                None => {
                    label[child.index()] = Some(next);
                    queue.push_back(child);
                }
            }
            edges.push((d, child, k + 1));
        }
    }
    Ok((label, edges))
}

/// Closure of `highest` under lowering by the roots. Root `α_k` acts on a duad
/// containing `k` but not `k+1` by replacing `k` with `k+1`, and on the
/// operator by projective multiplication.
pub fn weight_orbit(
    space: &PolarSpace,
    roots: &[PauliOperator],
    highest: PauliOperator,
) -> Result<WeightDiagram, LieError> {
    let line = magic_veldkamp_line(space)?;
    if roots.len() > 5 {
        return Err(LieError::TooManyRoots(roots.len()));
    }
    if let Some(r) = roots.iter().find(|r| r.width() != 3 || !q0(r.vector())) {
        return Err(LieError::NonSkewRoot(r.to_string()));
    }
    let h = highest.vector().packed();
    if highest.width() != 3 || h == 0 || !line.core.get(h as usize) {
        return Err(LieError::NotInCore(highest.to_string()));
    }
    let packed: Vec<u64> = roots.iter().map(|r| r.vector().packed()).collect();
    let (labels, edges) = orbit_packed(&line.core, &packed, h)?;
    let mut seen = BTreeMap::new();
    for (d, l) in Duad::all().into_iter().zip(&labels) {
        if let Some(v) = l {
            if let Some(prev) = seen.insert(*v, d) {
                return Err(LieError::InconsistentOrbit {
                    duad: d,
                    first: prev.to_string(),
                    second: SymplecticVector::from_packed(3, *v)?.label(),
                });
            }
        }
    }
    let order: Vec<Duad> = Duad::all()
        .into_iter()
        .filter(|d| labels[d.index()].is_some())
        .collect();
    let position = |d: Duad| order.iter().position(|&x| x == d).expect("labeled duad");
    let nodes = order
        .iter()
        .map(|&d| (d, space.vector(labels[d.index()].expect("labeled"))))
        .collect();
    Ok(WeightDiagram {
        nodes,
        edges: edges
            .into_iter()
            .map(|(a, b, k)| (position(a), position(b), k))
            .collect(),
        highest: highest.vector(),
        roots: roots.iter().map(|r| r.vector()).collect(),
    })
}

/// The 28 skew-symmetric (odd `Y`-count) points of `W(5,2)`, ascending.
pub fn skew_operators(space: &PolarSpace) -> Vec<u64> {
    (1..space.capacity() as u64)
        .filter(|&p| q0(space.vector(p)))
        .collect()
}

fn cartan_compatible(space: &PolarSpace, roots: &[u64], next: u64) -> bool {
    let k = roots.len();
    roots.iter().enumerate().all(|(j, &r)| {
        let adjacent = j + 1 == k;
        r != next && space.orthogonal(r, next) != adjacent
    })
}

/// All ordered root quintuples, in lexicographic order of packed vectors, for
/// which consecutive roots anticommute, others commute, and the orbit of
/// `highest` is 15 distinct core points.
pub fn find_root_quintuples(
    space: &PolarSpace,
    highest: PauliOperator,
) -> Result<Vec<[SymplecticVector; 5]>, LieError> {
    let line = magic_veldkamp_line(space)?;
    let h = highest.vector().packed();
    if !line.core.get(h as usize) {
        return Err(LieError::NotInCore(highest.to_string()));
    }
    let skew = skew_operators(space);

    fn extend(
        space: &PolarSpace,
        core: &BitVector,
        skew: &[u64],
        h: u64,
        roots: &mut Vec<u64>,
        out: &mut Vec<[u64; 5]>,
    ) {
        if roots.len() == 5 {
            if let Ok((labels, _)) = orbit_packed(core, roots, h) {
                let mut vals: Vec<u64> = labels.iter().flatten().copied().collect();
                vals.sort_unstable();
                vals.dedup();
                if vals.len() == 15 {
                    out.push([roots[0], roots[1], roots[2], roots[3], roots[4]]);
                }
            }
            return;
        }
        for &r in skew {
            if !cartan_compatible(space, roots, r) {
                continue;
            }
            roots.push(r);
            if orbit_packed(core, roots, h).is_ok() {
                extend(space, core, skew, h, roots, out);
            }
            roots.pop();
        }
    }

    let found: Vec<Vec<[u64; 5]>> = skew
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut roots = vec![first];
            if orbit_packed(&line.core, &roots, h).is_ok() {
                extend(space, &line.core, &skew, h, &mut roots, &mut out);
            }
            out
        })
        .collect();
    Ok(found
        .into_iter()
        .flatten()
        .map(|q| q.map(|p| space.vector(p)))
        .collect())
}

/// First root quintuple for highest weight `ZIZ`.
pub fn default_roots(space: &PolarSpace) -> Result<[PauliOperator; 5], LieError> {
    let zz = parse_pauli("ZIZ")?;
    let all = find_root_quintuples(space, zz)?;
    let first = all.first().ok_or(LieError::NoIsomorphism)?;
    Ok(first.map(PauliOperator::hermitian))
}
