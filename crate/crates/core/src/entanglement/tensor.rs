use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::EntanglementError;

/// Amplitudes `a_{i1…in}` of a vector in `C^{d1} ⊗ … ⊗ C^{dn}`, row-major
/// (first index most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct StateTensor {
    format: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

/// On-disk form `{"format": [...], "re": [...], "im": [...]}`; `im` may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub format: Vec<usize>,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl StateTensor {
    pub fn new(format: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self, EntanglementError> {
        if format.is_empty() || format.contains(&0) {
            return Err(EntanglementError::BadFormat);
        }
        let expected: usize = format.iter().product();
        if amplitudes.len() != expected {
            return Err(EntanglementError::AmplitudeCount {
                format,
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(StateTensor { format, amplitudes })
    }

    pub fn from_real(format: Vec<usize>, re: &[f64]) -> Result<Self, EntanglementError> {
        Self::new(format, re.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Sum of basis states given as digit strings, e.g. `["000", "111"]`, unnormalized.
    pub fn from_basis_sum(format: Vec<usize>, kets: &[&str]) -> Result<Self, EntanglementError> {
        let mut t = Self::new(
            format.clone(),
            vec![Complex64::new(0.0, 0.0); format.iter().product()],
        )?;
        for ket in kets {
            let idx: Vec<usize> = ket
                .chars()
                .map(|c| c.to_digit(10).expect("ket digit") as usize)
                .collect();
            let flat = t.flat_index(&idx);
            t.amplitudes[flat] += Complex64::new(1.0, 0.0);
        }
        Ok(t)
    }

    pub fn from_json(json: &StateJson) -> Result<Self, EntanglementError> {
        let im = if json.im.is_empty() {
            vec![0.0; json.re.len()]
        } else {
            json.im.clone()
        };
        if im.len() != json.re.len() {
            return Err(EntanglementError::RealImagLength {
                re: json.re.len(),
                im: im.len(),
            });
        }
        Self::new(
            json.format.clone(),
            json.re
                .iter()
                .zip(&im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect(),
        )
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            format: self.format.clone(),
            re: self.amplitudes.iter().map(|a| a.re).collect(),
            im: self.amplitudes.iter().map(|a| a.im).collect(),
        }
    }

    pub fn format(&self) -> &[usize] {
        &self.format
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn num_factors(&self) -> usize {
        self.format.len()
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.format).fold(0, |acc, (&i, &d)| {
            assert!(i < d, "index {i} out of range {d}");
            acc * d + i
        })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.format.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.format).rev() {
            *slot = flat % d;
            flat /= d;
        }
        idx
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.amplitudes[self.flat_index(index)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|a| *a == Complex64::new(0.0, 0.0))
    }

    pub fn normalized(&self) -> Result<Self, EntanglementError> {
        let n = self.norm();
        if n == 0.0 {
            return Err(EntanglementError::ZeroTensor);
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        StateTensor {
            format: self.format.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
        }
    }

    /// `d_k × (Π_{i≠k} d_i)` matrix with rows indexed by the `k`-th index.
    pub fn flattening(&self, k: usize) -> DMatrix<Complex64> {
        let rows = self.format[k];
        let cols = self.amplitudes.len() / rows;
        let mut m = DMatrix::zeros(rows, cols);
        let mut col_counter = vec![0usize; rows];
        for (flat, a) in self.amplitudes.iter().enumerate() {
            let idx = self.multi_index(flat);
            let r = idx[k];
            m[(r, col_counter[r])] = *a;
            col_counter[r] += 1;
        }
        m
    }

    /// `(g_1 ⊗ … ⊗ g_n) · t`.
    pub fn apply_local(&self, gs: &[DMatrix<Complex64>]) -> Result<Self, EntanglementError> {
        if gs.len() != self.format.len() {
            return Err(EntanglementError::TransformCount {
                expected: self.format.len(),
                got: gs.len(),
            });
        }
        let mut current = self.amplitudes.clone();
        let total = current.len();
        let mut stride = total;
        for (k, g) in gs.iter().enumerate() {
            let d = self.format[k];
            assert_eq!(
                (g.nrows(), g.ncols()),
                (d, d),
                "local transform {k} has wrong shape"
            );
            stride /= d;
            let mut next = vec![Complex64::new(0.0, 0.0); total];
            for (flat, slot) in next.iter_mut().enumerate() {
                let i = (flat / stride) % d;
                let base = flat - i * stride;
                *slot = (0..d).map(|j| g[(i, j)] * current[base + j * stride]).sum();
            }
            current = next;
        }
        Ok(StateTensor {
            format: self.format.clone(),
            amplitudes: current,
        })
    }
}

/// Number of singular values above `eps · σ_max`; zero for a zero matrix.
pub fn numeric_rank(m: &DMatrix<Complex64>, eps: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > eps * max).count()
}

/// Rank by Gaussian elimination with full pivoting, threshold `eps · max|a_ij|`.
/// Faster than an SVD on the tall sparse systems of the Milnor computation.
pub(crate) fn elimination_rank(mut rows: Vec<Vec<Complex64>>, eps: f64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let scale = rows.iter().flatten().map(|a| a.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let tol = eps * scale;
    let mut rank = 0;
    let mut col_perm: Vec<usize> = (0..ncols).collect();
    while rank < rows.len() && rank < ncols {
        let mut best = (rank, rank, 0.0);
        for (r, row) in rows.iter().enumerate().skip(rank) {
            for (c, &pc) in col_perm.iter().enumerate().skip(rank) {
                let v = row[pc].norm();
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        rows.swap(rank, best.0);
        col_perm.swap(rank, best.1);
        let pc = col_perm[rank];
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[pc];
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[pc] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        let t = StateTensor::from_basis_sum(vec![2, 3, 2], &["021"]).unwrap();
        assert_eq!(t.flat_index(&[0, 2, 1]), 5);
        assert_eq!(t.multi_index(5), vec![0, 2, 1]);
        assert_eq!(t.get(&[0, 2, 1]), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let t = StateTensor::new(
            vec![2, 2],
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(StateTensor::from_json(&t.to_json()).unwrap(), t);
        let bad = StateJson {
            format: vec![2, 2],
            re: vec![1.0; 3],
            im: vec![],
        };
        assert!(matches!(
            StateTensor::from_json(&bad),
            Err(EntanglementError::AmplitudeCount { .. })
        ));
    }

    #[test]
    fn flattenings_of_b1() {
        // |0> ⊗ (|00> + |11>)
        let t = StateTensor::from_basis_sum(vec![2, 2, 2], &["000", "011"]).unwrap();
        let ranks: Vec<usize> = (0..3)
            .map(|k| numeric_rank(&t.flattening(k), 1e-8))
            .collect();
        assert_eq!(ranks, vec![1, 2, 2]);
    }

    #[test]
    fn local_identity_and_swap() {
        let t = StateTensor::from_basis_sum(vec![2, 2], &["01"]).unwrap();
        let id = DMatrix::<Complex64>::identity(2, 2);
        let x =
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(|v| Complex64::new(v, 0.0)));
        assert_eq!(t.apply_local(&[id.clone(), id.clone()]).unwrap(), t);
        let flipped = t.apply_local(&[x, id]).unwrap();
        assert_eq!(
            flipped,
            StateTensor::from_basis_sum(vec![2, 2], &["11"]).unwrap()
        );
    }

    #[test]
    fn elimination_matches_svd() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0].map(|v| Complex64::new(v, 0.0)),
        );
        let rows: Vec<Vec<Complex64>> =
            (0..3).map(|i| m.row(i).iter().copied().collect()).collect();
        assert_eq!(elimination_rank(rows, 1e-10), 2);
        assert_eq!(numeric_rank(&m, 1e-10), 2);
    }
}
