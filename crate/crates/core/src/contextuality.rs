//! Contexts, point–context configurations and magic (Kochen–Specker) certificates.
//!
//! A context is a set of pairwise commuting Pauli operators whose product is
//! `±I`. A configuration is magic when no assignment of `±1` to its points
//! reproduces every context sign, i.e. when the F2 system `M·x = s` (incidence
//! matrix `M`, `s_c = 1` for a negative context) has no solution.

use std::collections::{BTreeSet, HashSet};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitVector};
use crate::pauli::{parse_pauli, to_matrix, PauliError, PauliOperator, ProjectivePoint};
use crate::polar::{self, HyperplaneTag, PolarError, PolarSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("context must hold 2 to 4 operators, got {0}")]
    ContextSize(usize),
    #[error("operators {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("operator vectors do not sum to zero; product is not a multiple of the identity")]
    NonzeroProduct,
    #[error("context product is {0}·I, expected ±I")]
    ImaginaryProduct(&'static str),
    #[error("point index {0} out of range")]
    PointIndex(usize),
    #[error("points {0} and {1} are projectively equal")]
    DuplicatePoint(usize, usize),
    #[error("duplicate context {0:?}")]
    DuplicateContext(Vec<usize>),
    #[error("context {index}: declared sign {declared} but operators give {computed}")]
    SignMismatch {
        index: usize,
        declared: i8,
        computed: i8,
    },
    #[error("configuration is not a 3x3 row/column square")]
    NotASquare,
    #[error("expected {expected} signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("operation requires N = {expected}, got N = {got}")]
    WrongWidth { expected: usize, got: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Polar(#[from] PolarError),
}

/// Sign of the product of pairwise commuting operators whose vectors sum to zero.
pub fn context_sign(ops: &[PauliOperator]) -> Result<i8, ContextError> {
    if !(2..=4).contains(&ops.len()) {
        return Err(ContextError::ContextSize(ops.len()));
    }
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if !a.commutes_with(*b)? {
                return Err(ContextError::NonCommuting(a.to_string(), b.to_string()));
            }
        }
    }
    let mut product = PauliOperator::identity(ops[0].width())?;
    for op in ops {
        product = product.multiply(*op)?;
    }
    if !product.vector().is_zero() {
        return Err(ContextError::NonzeroProduct);
    }
    match product.phase().sign() {
        Some(s) => Ok(s),
        None if product.phase().exponent() == 1 => Err(ContextError::ImaginaryProduct("i")),
        None => Err(ContextError::ImaginaryProduct("-i")),
    }
}

/// The same sign computed from dense matrices; `None` if the product is not `±I`.
pub fn context_sign_by_matrix(ops: &[PauliOperator]) -> Result<Option<i8>, PauliError> {
    let mut m = to_matrix(ops[0])?;
    for op in &ops[1..] {
        m *= to_matrix(*op)?;
    }
    let dim = m.nrows();
    let id = nalgebra::DMatrix::<num_complex::Complex<i64>>::identity(dim, dim);
    if m == id {
        Ok(Some(1))
    } else if m == -id {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    /// Indices into the configuration's points, sorted.
    pub points: Vec<usize>,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<PauliOperator>,
    contexts: Vec<Context>,
}

impl Configuration {
    /// Validates the contexts and computes their signs from the operators.
    pub fn new(
        points: Vec<PauliOperator>,
        contexts: Vec<Vec<usize>>,
    ) -> Result<Self, ContextError> {
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].vector() == points[j].vector() {
                    return Err(ContextError::DuplicatePoint(i, j));
                }
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(contexts.len());
        for mut ctx in contexts {
            ctx.sort_unstable();
            if let Some(&bad) = ctx.iter().find(|&&i| i >= points.len()) {
                return Err(ContextError::PointIndex(bad));
            }
            if !seen.insert(ctx.clone()) {
                return Err(ContextError::DuplicateContext(ctx));
            }
            let ops: Vec<PauliOperator> = ctx.iter().map(|&i| points[i]).collect();
            let sign = context_sign(&ops)?;
            out.push(Context { points: ctx, sign });
        }
        Ok(Configuration {
            points,
            contexts: out,
        })
    }

    /// Parses operator strings and builds the configuration.
    pub fn from_labels(labels: &[&str], contexts: &[&[usize]]) -> Result<Self, ContextError> {
        let points = labels
            .iter()
            .map(|s| parse_pauli(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points, contexts.iter().map(|c| c.to_vec()).collect())
    }

    pub fn points(&self) -> &[PauliOperator] {
        &self.points
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context_operators(&self, index: usize) -> Vec<PauliOperator> {
        self.contexts[index]
            .points
            .iter()
            .map(|&i| self.points[i])
            .collect()
    }

    pub fn negative_contexts(&self) -> impl Iterator<Item = &Context> {
        self.contexts.iter().filter(|c| c.sign < 0)
    }

    /// Number of contexts through each point.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.points.len()];
        for c in &self.contexts {
            for &p in &c.points {
                d[p] += 1;
            }
        }
        d
    }

    /// Rows of the context × point incidence matrix over F2.
    pub fn incidence_rows(&self) -> Vec<BitVector> {
        self.contexts
            .iter()
            .map(|c| BitVector::from_indices(self.points.len(), c.points.iter().copied()))
            .collect()
    }

    /// Replaces context signs with an arbitrary pattern. The result describes an
    /// abstract sign assignment and need not be realizable by the operators.
    pub fn with_signs(&self, signs: &[i8]) -> Result<Self, ContextError> {
        if signs.len() != self.contexts.len() {
            return Err(ContextError::SignCount {
                expected: self.contexts.len(),
                got: signs.len(),
            });
        }
        let mut out = self.clone();
        for (c, &s) in out.contexts.iter_mut().zip(signs) {
            c.sign = if s < 0 { -1 } else { 1 };
        }
        Ok(out)
    }

    /// Replaces point `index` by its negative and recomputes context signs.
    pub fn negate_point(&self, index: usize) -> Result<Self, ContextError> {
        let mut points = self.points.clone();
        let op = points
            .get_mut(index)
            .ok_or(ContextError::PointIndex(index))?;
        *op = op.negate();
        Self::new(
            points,
            self.contexts.iter().map(|c| c.points.clone()).collect(),
        )
    }

    /// Checks declared signs against the operator product (used for external input).
    pub fn check_signs(&self, declared: &[Option<i8>]) -> Result<(), ContextError> {
        for (index, (c, d)) in self.contexts.iter().zip(declared).enumerate() {
            if let Some(d) = *d {
                if d != c.sign {
                    return Err(ContextError::SignMismatch {
                        index,
                        declared: d,
                        computed: c.sign,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ConfigurationJson {
        ConfigurationJson {
            points: self.points.iter().map(|p| p.to_string()).collect(),
            contexts: self
                .contexts
                .iter()
                .map(|c| ContextJson {
                    points: c.points.clone(),
                    operators: Some(
                        c.points
                            .iter()
                            .map(|&i| self.points[i].to_string())
                            .collect(),
                    ),
                    sign: Some(c.sign),
                })
                .collect(),
        }
    }

    /// Builds a configuration from JSON. Declared signs must match the operators.
    pub fn from_json(json: &ConfigurationJson) -> Result<Self, ContextError> {
        let points = json
            .points
            .iter()
            .map(|s| parse_pauli(s))
            .collect::<Result<Vec<_>, _>>()?;
        let config = Self::new(
            points,
            json.contexts.iter().map(|c| c.points.clone()).collect(),
        )?;
        let declared: Vec<Option<i8>> = json.contexts.iter().map(|c| c.sign).collect();
        config.check_signs(&declared)?;
        Ok(config)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub points: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub points: Vec<String>,
    pub contexts: Vec<ContextJson>,
}

/// True iff no `±1` assignment to the points reproduces all context signs.
pub fn is_magic(config: &Configuration) -> bool {
    let rows = config.incidence_rows();
    let rhs: Vec<bool> = config.contexts.iter().map(|c| c.sign < 0).collect();
    gf2::solve(&rows, &rhs, config.points.len())
        .particular
        .is_none()
}

/// When every point lies on an even number of contexts, the configuration is
/// magic exactly when the product of all context signs is `-1`. `None` otherwise.
pub fn parity_certificate(config: &Configuration) -> Option<bool> {
    if config.degrees().iter().any(|d| d % 2 != 0) {
        return None;
    }
    let negatives = config.negative_contexts().count();
    Some(negatives % 2 == 1)
}

const SQUARE_POINTS: [&str; 9] = ["IZ", "ZI", "ZZ", "XI", "IX", "XX", "XZ", "ZX", "YY"];

/// The Mermin–Peres square: rows then columns of the grid
/// `IZ ZI ZZ / XI IX XX / XZ ZX YY`.
pub fn mermin_square_canonical() -> Configuration {
    Configuration::from_labels(
        &SQUARE_POINTS,
        &[
            &[0, 1, 2],
            &[3, 4, 5],
            &[6, 7, 8],
            &[0, 3, 6],
            &[1, 4, 7],
            &[2, 5, 8],
        ],
    )
    .expect("canonical square is valid")
}

/// The Mermin pentagram on `XXX, XZZ, ZXZ, ZZX, XII, IXI, IIX, ZII, IZI, IIZ`.
pub fn mermin_pentagram_canonical() -> Configuration {
    Configuration::from_labels(
        &[
            "XXX", "XZZ", "ZXZ", "ZZX", "XII", "IXI", "IIX", "ZII", "IZI", "IIZ",
        ],
        &[
            &[0, 1, 2, 3],
            &[0, 4, 5, 6],
            &[1, 4, 8, 9],
            &[2, 7, 5, 9],
            &[3, 7, 8, 6],
        ],
    )
    .expect("canonical pentagram is valid")
}

fn require_width(space: &PolarSpace, n: usize) -> Result<(), ContextError> {
    if space.width() != n {
        return Err(ContextError::WrongWidth {
            expected: n,
            got: space.width(),
        });
    }
    Ok(())
}

/// Configuration whose points are the given vectors (Hermitian, `+` sign) and
/// whose contexts are given as sets of packed vectors.
fn configuration_from_vectors(
    space: &PolarSpace,
    points: &[u64],
    contexts: &[Vec<u64>],
) -> Result<Configuration, ContextError> {
    let ops: Vec<PauliOperator> = points
        .iter()
        .map(|&v| PauliOperator::hermitian(space.vector(v)))
        .collect();
    let ctx = contexts
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| {
                    points
                        .iter()
                        .position(|p| p == v)
                        .expect("context point listed")
                })
                .collect()
        })
        .collect();
    Configuration::new(ops, ctx)
}

/// All 3×3 grids of the doily: each hyperbolic quadric with its six internal lines.
pub fn enumerate_grids(space: &PolarSpace) -> Result<Vec<Configuration>, ContextError> {
    require_width(space, 2)?;
    polar::all_hyperplanes(space)
        .into_iter()
        .filter(|h| h.tag() == HyperplaneTag::Hyperbolic)
        .map(|h| {
            let points: Vec<u64> = h.vectors().collect();
            let lines: Vec<Vec<u64>> = space
                .lines_within(h.points())
                .map(|l| l.iter().map(|&p| u64::from(p)).collect())
                .collect();
            configuration_from_vectors(space, &points, &lines)
        })
        .collect()
}

/// A Mermin pentagram in `W(5,2)`: five 4-point contexts, pairwise meeting in
/// exactly one point, covering ten distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pentagram {
    /// Packed point vectors of each context, each sorted; contexts sorted.
    contexts: [[u8; 4]; 5],
}

impl Pentagram {
    pub fn from_contexts(mut contexts: [[u8; 4]; 5]) -> Self {
        for c in contexts.iter_mut() {
            c.sort_unstable();
        }
        contexts.sort_unstable();
        Pentagram { contexts }
    }

    pub fn contexts(&self) -> &[[u8; 4]; 5] {
        &self.contexts
    }

    pub fn points(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .contexts
            .iter()
            .flatten()
            .map(|&p| u64::from(p))
            .collect();
        set.into_iter().collect()
    }

    pub fn point_mask(&self) -> u64 {
        self.contexts.iter().flatten().fold(0, |m, &p| m | 1 << p)
    }

    pub fn to_configuration(&self, space: &PolarSpace) -> Result<Configuration, ContextError> {
        let contexts: Vec<Vec<u64>> = self
            .contexts
            .iter()
            .map(|c| c.iter().map(|&p| u64::from(p)).collect())
            .collect();
        configuration_from_vectors(space, &self.points(), &contexts)
    }

    /// Checks the pentagram incidence from scratch.
    pub fn is_valid(&self, space: &PolarSpace) -> bool {
        let masks: Vec<u64> = self
            .contexts
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &p| m | 1 << p))
            .collect();
        let pairwise =
            (0..5).all(|i| ((i + 1)..5).all(|j| (masks[i] & masks[j]).count_ones() == 1));
        let ctx_ok = self.contexts.iter().all(|c| {
            c.iter().fold(0, |x, &p| x ^ p) == 0
                && c.iter()
                    .all(|&a| c.iter().all(|&b| space.orthogonal(a.into(), b.into())))
                && masks_distinct(c)
        });
        pairwise && ctx_ok && self.point_mask().count_ones() == 10
    }
}

fn masks_distinct(c: &[u8; 4]) -> bool {
    c.windows(2).all(|w| w[0] != w[1]) && c.iter().all(|&p| p != 0)
}

/// The 945 four-point contexts `{a, b, c, a+b+c}` of `W(5,2)`, as point bitmasks, sorted.
pub fn four_point_contexts(space: &PolarSpace) -> Result<Vec<u64>, ContextError> {
    require_width(space, 3)?;
    let planes = space.planes().expect("planes are materialized at N = 3");
    let mut out: Vec<u64> = planes
        .iter()
        .flat_map(|plane| {
            let full = plane.iter().fold(0u64, |m, &p| m | 1 << p);
            // Complements of the seven lines of the plane.
            let mut masks = Vec::with_capacity(7);
            for i in 0..7 {
                for j in (i + 1)..7 {
                    let k = plane[i] ^ plane[j];
                    if k > plane[j] {
                        masks.push(full & !(1 << plane[i] | 1 << plane[j] | 1 << k));
                    }
                }
            }
            masks
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn mask_points(mask: u64) -> [u8; 4] {
    let mut out = [0u8; 4];
    let mut m = mask;
    for slot in out.iter_mut() {
        *slot = m.trailing_zeros() as u8;
        m &= m - 1;
    }
    out
}

/// All Mermin pentagrams of `W(5,2)`.
///
/// Depth-first clique search on the 945 contexts, where two contexts are
/// adjacent when they share exactly one point; a partial clique of `k`
/// contexts must cover `4k - k(k-1)/2` points (no three contexts concurrent).
/// Work is split over the first context and merged in order.
pub fn enumerate_pentagrams(space: &PolarSpace) -> Result<Vec<Pentagram>, ContextError> {
    let contexts = four_point_contexts(space)?;
    let n = contexts.len();
    let words = n.div_ceil(64);
    let adjacency: Vec<Vec<u64>> = contexts
        .par_iter()
        .map(|&a| {
            let mut row = vec![0u64; words];
            for (j, &b) in contexts.iter().enumerate() {
                if (a & b).count_ones() == 1 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    let found: Vec<Vec<[usize; 5]>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut candidates = adjacency[first].clone();
            clear_up_to(&mut candidates, first);
            let mut stack = [first; 5];
            extend(
                &contexts,
                &adjacency,
                &mut stack,
                1,
                contexts[first],
                &candidates,
                &mut out,
            );
            out
        })
        .collect();

    Ok(found
        .into_iter()
        .flatten()
        .map(|idx| Pentagram::from_contexts(idx.map(|i| mask_points(contexts[i]))))
        .collect())
}

fn clear_up_to(bits: &mut [u64], index: usize) {
    for (w, word) in bits.iter_mut().enumerate() {
        let lo = w * 64;
        if index >= lo + 63 {
            *word = 0;
        } else if index >= lo {
            *word &= !((1u64 << (index - lo + 1)) - 1);
        }
    }
}

fn extend(
    contexts: &[u64],
    adjacency: &[Vec<u64>],
    stack: &mut [usize; 5],
    depth: usize,
    union: u64,
    candidates: &[u64],
    out: &mut Vec<[usize; 5]>,
) {
    if depth == 5 {
        out.push(*stack);
        return;
    }
    let expected = 4 * (depth + 1) - depth * (depth + 1) / 2;
    for (w, &word) in candidates.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let j = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let next_union = union | contexts[j];
            if next_union.count_ones() as usize != expected {
                continue;
            }
            let mut next: Vec<u64> = candidates
                .iter()
                .zip(&adjacency[j])
                .map(|(a, b)| a & b)
                .collect();
            clear_up_to(&mut next, j);
            stack[depth] = j;
            extend(
                contexts,
                adjacency,
                stack,
                depth + 1,
                next_union,
                &next,
                out,
            );
        }
    }
}

/// Pentagrams whose ten points all lie in `set` (a point bitmask of `W(5,2)`).
pub fn pentagrams_inside(pentagrams: &[Pentagram], set: &BitVector) -> Vec<Pentagram> {
    let mask = set.ones().fold(0u64, |m, p| m | 1 << p);
    pentagrams
        .iter()
        .filter(|p| p.point_mask() & !mask == 0)
        .cloned()
        .collect()
}

pub fn pentagrams_within(pentagrams: &[Pentagram], set: &BitVector) -> usize {
    pentagrams_inside(pentagrams, set).len()
}

/// Convenience wrapper: enumerate and count inside `set`.
pub fn count_pentagrams_within(space: &PolarSpace, set: &BitVector) -> Result<usize, ContextError> {
    Ok(pentagrams_within(&enumerate_pentagrams(space)?, set))
}

/// Summary of a full pentagram enumeration with magic certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PentagramCensus {
    pub count: usize,
    pub all_magic: bool,
}

pub fn certify_pentagrams(
    space: &PolarSpace,
    pentagrams: &[Pentagram],
) -> Result<PentagramCensus, ContextError> {
    let magic: Vec<bool> = pentagrams
        .par_iter()
        .map(|p| p.to_configuration(space).map(|c| is_magic(&c)))
        .collect::<Result<_, _>>()?;
    Ok(PentagramCensus {
        count: pentagrams.len(),
        all_magic: magic.iter().all(|&m| m),
    })
}

/// Sign constraints of the two-player square game: Alice answers row `r` with a
/// `±1` triple whose product is `row_signs[r]`, Bob answers column `c` with a
/// triple whose product is `col_signs[c]`; they win when Alice's entry `c`
/// equals Bob's entry `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareGame {
    pub row_signs: [i8; 3],
    pub col_signs: [i8; 3],
}

impl SquareGame {
    /// Odd number of `-1` for every row, even for every column.
    pub fn standard() -> Self {
        SquareGame {
            row_signs: [-1; 3],
            col_signs: [1; 3],
        }
    }

    /// Reads the row/column structure from a 9-point, 6-context configuration.
    pub fn from_configuration(config: &Configuration) -> Result<Self, ContextError> {
        let (rows, cols) = square_structure(config).ok_or(ContextError::NotASquare)?;
        let sign = |i: usize| config.contexts()[i].sign;
        Ok(SquareGame {
            row_signs: rows.map(sign),
            col_signs: cols.map(sign),
        })
    }

    /// Maximum winning probability over deterministic strategies, uniform questions.
    pub fn classical_value(&self) -> Ratio<u32> {
        let alice: Vec<[[i8; 3]; 3]> = strategies(self.row_signs);
        let bob: Vec<[[i8; 3]; 3]> = strategies(self.col_signs);
        let best = alice
            .par_iter()
            .map(|a| {
                bob.iter()
                    .map(|b| {
                        (0..3)
                            .flat_map(|r| (0..3).map(move |c| (r, c)))
                            .filter(|&(r, c)| a[r][c] == b[c][r])
                            .count()
                    })
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0);
        Ratio::new(best as u32, 9)
    }
}

// Per question, the four ±1 triples with the required product.
fn strategies(signs: [i8; 3]) -> Vec<[[i8; 3]; 3]> {
    let answers = |s: i8| -> Vec<[i8; 3]> {
        let mut v = Vec::with_capacity(4);
        for a in [1i8, -1] {
            for b in [1i8, -1] {
                v.push([a, b, a * b * s]);
            }
        }
        v
    };
    let per: Vec<Vec<[i8; 3]>> = signs.iter().map(|&s| answers(s)).collect();
    let mut out = Vec::with_capacity(64);
    for x in &per[0] {
        for y in &per[1] {
            for z in &per[2] {
                out.push([*x, *y, *z]);
            }
        }
    }
    out
}

/// Splits six 3-point contexts on nine points into rows and columns, with
/// `config.points` positions ordered so that row `r`, column `c` share one point.
fn square_structure(config: &Configuration) -> Option<([usize; 3], [usize; 3])> {
    let ctx = config.contexts();
    if config.points().len() != 9 || ctx.len() != 6 || ctx.iter().any(|c| c.points.len() != 3) {
        return None;
    }
    let disjoint = |a: usize, b: usize| ctx[a].points.iter().all(|p| !ctx[b].points.contains(p));
    let meet_once = |a: usize, b: usize| {
        ctx[a]
            .points
            .iter()
            .filter(|p| ctx[b].points.contains(p))
            .count()
            == 1
    };
    let rows: Vec<usize> = std::iter::once(0)
        .chain((1..6).filter(|&j| disjoint(0, j)))
        .collect();
    let cols: Vec<usize> = (0..6).filter(|j| !rows.contains(j)).collect();
    if rows.len() != 3 || cols.len() != 3 {
        return None;
    }
    let ok = rows
        .iter()
        .all(|&r| rows.iter().all(|&s| r == s || disjoint(r, s)))
        && cols
            .iter()
            .all(|&c| cols.iter().all(|&d| c == d || disjoint(c, d)))
        && rows.iter().all(|&r| cols.iter().all(|&c| meet_once(r, c)));
    ok.then(|| ([rows[0], rows[1], rows[2]], [cols[0], cols[1], cols[2]]))
}

/// Classical value of the square game defined by a square-shaped configuration.
pub fn classical_game_value(config: &Configuration) -> Result<Ratio<u32>, ContextError> {
    Ok(SquareGame::from_configuration(config)?.classical_value())
}

/// Projective points of a configuration.
pub fn projective_points(config: &Configuration) -> Result<Vec<ProjectivePoint>, ContextError> {
    Ok(config
        .points()
        .iter()
        .map(|p| p.projective())
        .collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;
    use crate::polar::build_polar_space;

    fn ops(labels: &[&str]) -> Vec<PauliOperator> {
        labels.iter().map(|s| parse_pauli(s).unwrap()).collect()
    }

    #[test]
    fn context_sign_examples() {
        assert_eq!(context_sign(&ops(&["IZ", "ZI", "ZZ"])).unwrap(), 1);
        assert_eq!(context_sign(&ops(&["ZZ", "XX", "YY"])).unwrap(), -1);
        assert_eq!(
            context_sign(&ops(&["XXX", "XZZ", "ZXZ", "ZZX"])).unwrap(),
            -1
        );
        for case in [
            &["IZ", "ZI", "ZZ"][..],
            &["ZZ", "XX", "YY"],
            &["XXX", "XZZ", "ZXZ", "ZZX"],
        ] {
            let o = ops(case);
            assert_eq!(
                context_sign_by_matrix(&o).unwrap(),
                Some(context_sign(&o).unwrap())
            );
        }
    }

    #[test]
    fn context_sign_errors() {
        assert!(matches!(
            context_sign(&ops(&["X", "Z", "Y"])),
            Err(ContextError::NonCommuting(..))
        ));
        assert_eq!(
            context_sign(&ops(&["ZI", "IZ", "XX"])),
            Err(ContextError::NonCommuting("ZI".into(), "XX".into()))
        );
        assert_eq!(
            context_sign(&ops(&["ZI", "IZ", "ZI"])),
            Err(ContextError::NonzeroProduct)
        );
        assert!(matches!(
            context_sign(&ops(&["iZI", "IZ", "ZZ"])),
            Err(ContextError::ImaginaryProduct(_))
        ));
        assert_eq!(
            context_sign(&ops(&["Z"])),
            Err(ContextError::ContextSize(1))
        );
    }

    #[test]
    fn canonical_square() {
        let sq = mermin_square_canonical();
        assert!(is_magic(&sq));
        assert!(sq.degrees().iter().all(|&d| d == 2));
        let negative: Vec<_> = sq.negative_contexts().collect();
        assert_eq!(negative.len(), 1);
        let labels: Vec<String> = negative[0]
            .points
            .iter()
            .map(|&i| sq.points()[i].to_string())
            .collect();
        assert_eq!(labels, vec!["ZZ", "XX", "YY"]);
        let flipped = sq.with_signs(&[1; 6]).unwrap();
        assert!(!is_magic(&flipped));
    }

    #[test]
    fn canonical_pentagram() {
        let p = mermin_pentagram_canonical();
        assert!(is_magic(&p));
        assert_eq!(p.negative_contexts().count(), 1);
        assert_eq!(
            p.negative_contexts().next().unwrap().points,
            vec![0, 1, 2, 3]
        );
        assert!(p.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn negating_a_point_keeps_magic() {
        let sq = mermin_square_canonical();
        for i in 0..9 {
            let flipped = sq.negate_point(i).unwrap();
            assert_eq!(is_magic(&flipped), is_magic(&sq));
            assert_eq!(flipped.negative_contexts().count() % 2, 1);
        }
    }

    #[test]
    fn configuration_validation() {
        assert!(matches!(
            Configuration::from_labels(&["XI", "-XI"], &[]),
            Err(ContextError::DuplicatePoint(0, 1))
        ));
        assert!(matches!(
            Configuration::from_labels(&["IZ", "ZI", "ZZ"], &[&[0, 1, 2], &[2, 1, 0]]),
            Err(ContextError::DuplicateContext(_))
        ));
        assert!(matches!(
            Configuration::from_labels(&["IZ", "ZI", "ZZ"], &[&[0, 1, 5]]),
            Err(ContextError::PointIndex(5))
        ));
    }

    #[test]
    fn json_round_trip_and_sign_check() {
        let sq = mermin_square_canonical();
        let json = sq.to_json();
        assert_eq!(Configuration::from_json(&json).unwrap(), sq);
        let mut bad = json.clone();
        bad.contexts[0].sign = Some(-1);
        assert!(matches!(
            Configuration::from_json(&bad),
            Err(ContextError::SignMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn square_game_values() {
        let sq = mermin_square_canonical();
        assert_eq!(classical_game_value(&sq).unwrap(), Ratio::new(8, 9));
        assert_eq!(SquareGame::standard().classical_value(), Ratio::new(8, 9));
        let trivial = sq.with_signs(&[1; 6]).unwrap();
        assert_eq!(
            classical_game_value(&trivial).unwrap(),
            Ratio::from_integer(1)
        );
        assert_eq!(
            classical_game_value(&mermin_pentagram_canonical()),
            Err(ContextError::NotASquare)
        );
    }

    #[test]
    fn game_value_below_one_iff_magic() {
        let sq = mermin_square_canonical();
        for pattern in 0u32..64 {
            let signs: Vec<i8> = (0..6)
                .map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let cfg = sq.with_signs(&signs).unwrap();
            let value = classical_game_value(&cfg).unwrap();
            assert_eq!(
                value < Ratio::from_integer(1),
                is_magic(&cfg),
                "pattern {pattern:06b}"
            );
            assert_eq!(parity_certificate(&cfg), Some(is_magic(&cfg)));
        }
    }

    #[test]
    fn doily_grids() {
        let w2 = build_polar_space(2).unwrap();
        let grids = enumerate_grids(&w2).unwrap();
        assert_eq!(grids.len(), 10);
        for g in &grids {
            assert_eq!(g.points().len(), 9);
            assert_eq!(g.contexts().len(), 6);
            assert!(is_magic(g));
            assert_eq!(parity_certificate(g), Some(true));
            assert!(SquareGame::from_configuration(g).is_ok());
        }
        assert!(enumerate_grids(&build_polar_space(3).unwrap()).is_err());
    }

    #[test]
    fn context_count() {
        let w3 = build_polar_space(3).unwrap();
        let ctx = four_point_contexts(&w3).unwrap();
        assert_eq!(ctx.len(), 945);
        for &c in &ctx {
            let pts = mask_points(c);
            assert_eq!(pts.iter().fold(0, |x, &p| x ^ p), 0);
        }
    }
}
