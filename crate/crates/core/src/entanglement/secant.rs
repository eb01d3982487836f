//! Terracini estimates: `dim σ_k(X)` is the dimension of the span of the
//! affine tangent spaces at `k` general points of `X`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::Polynomial;
use super::tensor::numeric_rank;
use super::DEFAULT_EPSILON;

fn random_vector(rng: &mut impl Rng, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn kron(vectors: &[Vec<Complex64>]) -> Vec<Complex64> {
    vectors
        .iter()
        .fold(vec![Complex64::new(1.0, 0.0)], |acc, v| {
            acc.iter()
                .flat_map(|a| v.iter().map(move |b| a * b))
                .collect()
        })
}

/// Affine dimension of `σ_k` of the Segre variety of `format`, from the rank
/// of the stacked tangent spaces `Σ_i x1 ⊗ … ⊗ C^{d_i} ⊗ … ⊗ xn` at `k` random points.
pub fn secant_dimension_estimate(format: &[usize], k: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient: usize = format.iter().product();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for _ in 0..k {
        let point: Vec<Vec<Complex64>> =
            format.iter().map(|&d| random_vector(&mut rng, d)).collect();
        for (i, &d) in format.iter().enumerate() {
            for j in 0..d {
                let mut factors = point.clone();
                factors[i] = (0..d)
                    .map(|l| Complex64::new(if l == j { 1.0 } else { 0.0 }, 0.0))
                    .collect();
                rows.push(kron(&factors));
            }
        }
    }
    rank_of_rows(&rows, ambient)
}

fn rank_of_rows(rows: &[Vec<Complex64>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]);
    numeric_rank(&m, DEFAULT_EPSILON)
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Affine dimension of `σ_k` of the Veronese `v_degree(P^{n-1})`, `n = nvars`.
/// The cone over `v_d` at `ℓ^d` has tangent space spanned by `ℓ^{d-1}·x_j`.
pub fn veronese_secant_dimension(nvars: usize, degree: u32, k: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = monomials(nvars, degree);
    let mut rows = Vec::new();
    for _ in 0..k {
        let l = random_vector(&mut rng, nvars);
        let mut linear = Polynomial::zero(nvars);
        for (i, &li) in l.iter().enumerate() {
            linear = &linear + &Polynomial::var(nvars, i).scale(li);
        }
        let power = linear.pow(degree.saturating_sub(1));
        for j in 0..nvars {
            let t = &power * &Polynomial::var(nvars, j);
            rows.push(basis.iter().map(|e| t.coefficient(e)).collect());
        }
    }
    rank_of_rows(&rows, basis.len())
}

/// Projective dimensions for Zak's dichotomy on `σ_2(X)`: either
/// `dim σ_2 = 2d + 1` and the tangential variety is a proper subvariety
/// (branch 1), or `dim σ_2 < 2d + 1` and `τ(X) = σ_2(X)` (branch 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZakReport {
    pub dim_x: usize,
    pub expected: usize,
    pub actual: usize,
    pub ambient: usize,
    pub tau_equals_sigma: bool,
    pub branch: u8,
}

impl ZakReport {
    fn new(dim_x: usize, affine_sigma2: usize, ambient: usize) -> Self {
        let expected = 2 * dim_x + 1;
        let actual = affine_sigma2.saturating_sub(1);
        let deficient = actual < expected;
        ZakReport {
            dim_x,
            expected,
            actual,
            ambient,
            tau_equals_sigma: deficient,
            branch: if deficient { 2 } else { 1 },
        }
    }
}

pub fn zak_dichotomy(format: &[usize], seed: u64) -> ZakReport {
    let dim_x = format.iter().map(|d| d - 1).sum();
    let ambient = format.iter().product::<usize>() - 1;
    ZakReport::new(dim_x, secant_dimension_estimate(format, 2, seed), ambient)
}

pub fn zak_dichotomy_veronese(nvars: usize, degree: u32, seed: u64) -> ZakReport {
    let ambient = monomials(nvars, degree).len() - 1;
    ZakReport::new(
        nvars - 1,
        veronese_secant_dimension(nvars, degree, 2, seed),
        ambient,
    )
}
