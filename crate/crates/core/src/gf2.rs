//! Dense linear algebra over F2 with bit-packed rows.

/// A bit-packed vector over F2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Outcome of Gaussian elimination on an augmented system.
#[derive(Debug, Clone)]
pub struct Solution {
    pub rank: usize,
    /// One particular solution (free variables set to 0), if the system is consistent.
    pub particular: Option<BitVector>,
    /// A basis of the null space of the coefficient matrix.
    pub kernel: Vec<BitVector>,
}

/// Solves `rows · x = rhs` over F2.
///
/// Every row must have length `columns`.
pub fn solve(rows: &[BitVector], rhs: &[bool], columns: usize) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<(BitVector, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..columns {
        let Some(p) = (r..m.len()).find(|&i| m[i].0.get(c)) else {
            continue;
        };
        m.swap(r, p);
        let (pivot_row, pivot_rhs) = m[r].clone();
        for (i, (row, b)) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let consistent = m[r..].iter().all(|(_, b)| !b);
    let particular = consistent.then(|| {
        let mut x = BitVector::zeros(columns);
        for (i, &c) in pivots.iter().enumerate() {
            x.set(c, m[i].1);
        }
        x
    });
    let mut is_pivot = vec![false; columns];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..columns)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = BitVector::zeros(columns);
            x.set(f, true);
            for (i, &c) in pivots.iter().enumerate() {
                if m[i].0.get(f) {
                    x.set(c, true);
                }
            }
            x
        })
        .collect();
    Solution {
        rank: pivots.len(),
        particular,
        kernel,
    }
}

pub fn rank(rows: &[BitVector], columns: usize) -> usize {
    solve(rows, &vec![false; rows.len()], columns).rank
}

/// All `2^k` elements of the span of `basis`, in Gray-code order starting at zero.
pub fn span(basis: &[BitVector], len: usize) -> Vec<BitVector> {
    assert!(
        basis.len() < 32,
        "span of {} vectors is too large",
        basis.len()
    );
    let mut out = Vec::with_capacity(1 << basis.len());
    let mut current = BitVector::zeros(len);
    out.push(current.clone());
    for i in 1u32..(1 << basis.len()) {
        current.xor_assign(&basis[i.trailing_zeros() as usize]);
        out.push(current.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVector {
        BitVector::from_indices(bits.len(), (0..bits.len()).filter(|&i| bits[i] == 1))
    }

    fn mat_vec(rows: &[BitVector], x: &BitVector) -> Vec<bool> {
        rows.iter()
            .map(|r| r.ones().filter(|&i| x.get(i)).count() % 2 == 1)
            .collect()
    }

    #[test]
    fn consistent_system() {
        let rows = vec![bv(&[1, 1, 0]), bv(&[0, 1, 1])];
        let rhs = vec![true, false];
        let s = solve(&rows, &rhs, 3);
        assert_eq!(s.rank, 2);
        let x = s.particular.unwrap();
        assert_eq!(mat_vec(&rows, &x), rhs);
        assert_eq!(s.kernel.len(), 1);
        assert_eq!(mat_vec(&rows, &s.kernel[0]), vec![false, false]);
    }

    #[test]
    fn inconsistent_system() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 + x2 = 0 sums to 0 = 1.
        let rows = vec![bv(&[1, 1, 0]), bv(&[0, 1, 1]), bv(&[1, 0, 1])];
        let s = solve(&rows, &[true, false, false], 3);
        assert!(s.particular.is_none());
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn span_enumerates_all() {
        let basis = vec![bv(&[1, 0, 0, 1]), bv(&[0, 1, 1, 0])];
        let all = span(&basis, 4);
        assert_eq!(all.len(), 4);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
    }

    #[test]
    fn bit_vector_ops() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 129]);
        v.set(0, false);
        assert!(!v.get(0));
        assert!(!v.is_zero());
    }
}
