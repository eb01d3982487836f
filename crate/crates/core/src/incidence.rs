//! Finite point–line geometries, their geometric hyperplanes and Veldkamp lines.
//!
//! A subset `H` is a geometric hyperplane when every line meets it in one
//! point or lies inside it. For geometries with three points per line this is
//! equivalent to the complement of `H` meeting every line in an even number of
//! points, i.e. the indicator of the complement lies in the F2 kernel of the
//! line–point incidence matrix. That kernel gives an enumeration of all
//! hyperplanes that does not depend on any algebraic description of them.

use std::collections::{BTreeMap, HashMap};

use crate::gf2::{self, BitVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLineGeometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
}

impl PointLineGeometry {
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Self {
        for line in &lines {
            assert!(
                line.iter().all(|&p| p < num_points),
                "line point out of range"
            );
        }
        PointLineGeometry { num_points, lines }
    }

    /// The 3×3 grid `GQ(2,1)`: point `3r + c`, three rows followed by three columns.
    pub fn grid() -> Self {
        let mut lines = Vec::with_capacity(6);
        for r in 0..3 {
            lines.push((0..3).map(|c| 3 * r + c).collect());
        }
        for c in 0..3 {
            lines.push((0..3).map(|r| 3 * r + c).collect());
        }
        Self::new(9, lines)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.lines.iter().filter(move |l| l.contains(&p))
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        p != q && self.lines.iter().any(|l| l.contains(&p) && l.contains(&q))
    }

    pub fn full_set(&self) -> BitVector {
        BitVector::from_indices(self.num_points, 0..self.num_points)
    }

    /// Every line is contained in `set` or meets it in exactly one point;
    /// `set` must be a proper nonempty subset.
    pub fn is_hyperplane(&self, set: &BitVector) -> bool {
        let n = set.count_ones();
        if n == 0 || n == self.num_points {
            return false;
        }
        self.lines.iter().all(|line| {
            let hits = line.iter().filter(|&&p| set.get(p)).count();
            hits == 1 || hits == line.len()
        })
    }

    /// All geometric hyperplanes, found from the F2 kernel of the incidence
    /// matrix. Requires three points on every line.
    pub fn hyperplanes(&self) -> Vec<BitVector> {
        assert!(
            self.lines.iter().all(|l| l.len() == 3),
            "kernel enumeration needs three points per line"
        );
        let rows: Vec<BitVector> = self
            .lines
            .iter()
            .map(|l| BitVector::from_indices(self.num_points, l.iter().copied()))
            .collect();
        let solution = gf2::solve(&rows, &vec![false; rows.len()], self.num_points);
        let full = self.full_set();
        let mut out: Vec<BitVector> = gf2::span(&solution.kernel, self.num_points)
            .into_iter()
            .filter(|c| !c.is_zero() && *c != full)
            .map(|mut c| {
                c.xor_assign(&full);
                c
            })
            .collect();
        out.sort();
        out
    }

    /// Number of lines fully contained in `set`.
    pub fn lines_inside(&self, set: &BitVector) -> usize {
        self.lines
            .iter()
            .filter(|l| l.iter().all(|&p| set.get(p)))
            .count()
    }

    /// `(s, t)` if the geometry is a generalized quadrangle `GQ(s, t)`.
    pub fn gq_order(&self) -> Option<(usize, usize)> {
        let s = self.lines.first()?.len().checked_sub(1)?;
        if self.lines.iter().any(|l| l.len() != s + 1) {
            return None;
        }
        let mut through = vec![0usize; self.num_points];
        for l in &self.lines {
            for &p in l {
                through[p] += 1;
            }
        }
        let t = through.first()?.checked_sub(1)?;
        if through.iter().any(|&c| c != t + 1) {
            return None;
        }
        // Each point off a line is collinear with exactly one point of it.
        for line in &self.lines {
            for p in (0..self.num_points).filter(|p| !line.contains(p)) {
                if line.iter().filter(|&&q| self.collinear(p, q)).count() != 1 {
                    return None;
                }
            }
        }
        Some((s, t))
    }

    /// True if no three pairwise collinear points fail to share a line.
    pub fn is_triangle_free(&self) -> bool {
        let n = self.num_points;
        let mut adj = vec![vec![false; n]; n];
        let mut line_id = HashMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for &a in l {
                for &b in l {
                    if a != b {
                        adj[a][b] = true;
                        line_id.insert((a, b), i);
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if !adj[a][b] {
                    continue;
                }
                for c in (b + 1)..n {
                    if adj[a][c] && adj[b][c] && line_id[&(a, b)] != line_id[&(a, c)] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `H1 ⊞ H2`, the complement of the symmetric difference.
pub fn boxplus(h1: &BitVector, h2: &BitVector, full: &BitVector) -> BitVector {
    let mut out = h1.clone();
    out.xor_assign(h2);
    out.xor_assign(full);
    out
}

/// Unordered triples `{H1, H2, H1 ⊞ H2}` among the given hyperplanes, as sorted
/// index triples. Pairs whose sum is not in the list are skipped.
pub fn veldkamp_triples(hyperplanes: &[BitVector], full: &BitVector) -> Vec<[usize; 3]> {
    let index: HashMap<&BitVector, usize> = hyperplanes
        .iter()
        .enumerate()
        .map(|(i, h)| (h, i))
        .collect();
    let mut out = Vec::new();
    for i in 0..hyperplanes.len() {
        for j in (i + 1)..hyperplanes.len() {
            let sum = boxplus(&hyperplanes[i], &hyperplanes[j], full);
            if let Some(&k) = index.get(&sum) {
                if k > j {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Veldkamp line through `h1` and `h2` from the intersection definition:
/// `h1`, `h2`, and every hyperplane `H` with `h1 ∩ H = h2 ∩ H`.
pub fn veldkamp_line_by_definition(hyperplanes: &[BitVector], h1: usize, h2: usize) -> Vec<usize> {
    let mut line: Vec<usize> = (0..hyperplanes.len())
        .filter(|&k| {
            if k == h1 || k == h2 {
                return true;
            }
            let h = &hyperplanes[k];
            let a: Vec<usize> = hyperplanes[h1].ones().filter(|&p| h.get(p)).collect();
            let b: Vec<usize> = hyperplanes[h2].ones().filter(|&p| h.get(p)).collect();
            a == b
        })
        .collect();
    line.sort_unstable();
    line
}

/// Hyperplane types of the grid `GQ(2,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GridHyperplaneKind {
    /// Union of the two lines through a point.
    Perp,
    /// Line-free: three mutually non-collinear points.
    Ovoid,
}

pub fn classify_grid_hyperplane(
    grid: &PointLineGeometry,
    set: &BitVector,
) -> Option<GridHyperplaneKind> {
    if !grid.is_hyperplane(set) {
        return None;
    }
    match (set.count_ones(), grid.lines_inside(set)) {
        (5, 2) => Some(GridHyperplaneKind::Perp),
        (3, 0) => Some(GridHyperplaneKind::Ovoid),
        _ => None,
    }
}

pub fn grid_hyperplane_census(grid: &PointLineGeometry) -> BTreeMap<GridHyperplaneKind, usize> {
    let mut census = BTreeMap::new();
    for h in grid.hyperplanes() {
        if let Some(kind) = classify_grid_hyperplane(grid, &h) {
            *census.entry(kind).or_insert(0) += 1;
        }
    }
    census
}
