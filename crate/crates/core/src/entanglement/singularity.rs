use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::poly::{LocalGerm, Polynomial};
use super::tensor::{elimination_rank, numeric_rank};
use super::{EntanglementError, DEFAULT_EPSILON};

pub const DEFAULT_D_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityAnalysis {
    pub is_singular: bool,
    pub value_abs: f64,
    pub gradient_norm: f64,
    pub hessian_corank: usize,
    pub milnor_number: usize,
    /// `|disc| / max|coef|⁴` of the cubic term on the Hessian kernel, when the corank is 2.
    pub kernel_cubic_discriminant: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SingularityType {
    A1,
    A2,
    A3,
    D4,
    #[serde(rename = "OTHER")]
    Other,
}

impl SingularityType {
    pub fn name(self) -> &'static str {
        match self {
            SingularityType::A1 => "A1",
            SingularityType::A2 => "A2",
            SingularityType::A3 => "A3",
            SingularityType::D4 => "D4",
            SingularityType::Other => "OTHER",
        }
    }
}

fn coefficient_scale(p: &Polynomial) -> f64 {
    p.terms()
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max)
        .max(1.0)
}

fn monomials_below(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(nvars, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bound > 0 {
        rec(nvars, bound - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim C[[x]] / (∂f)` for a germ at the origin.
///
/// With `J` the Jacobian ideal and `m` the maximal ideal, `μ_D = dim O/(J + m^D)`
/// is computed from the span of truncated `x^α ∂_i f`. Once `μ_D = μ_{D+1}`,
/// Nakayama gives `m^D ⊂ J`, so `μ = μ_D`.
pub fn milnor_number(f: &Polynomial, eps: f64, d_max: usize) -> Result<usize, EntanglementError> {
    let n = f.nvars();
    let gradient = f.gradient();
    let mut previous: Option<usize> = None;
    for bound in 1..=d_max as u32 + 1 {
        let basis = monomials_below(n, bound);
        let index: HashMap<&Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for g in &gradient {
            for alpha in &basis {
                let shift: u32 = alpha.iter().sum();
                let mut row = vec![Complex64::default(); basis.len()];
                let mut nonzero = false;
                for (e, v) in g.terms() {
                    if e.iter().sum::<u32>() + shift >= bound {
                        continue;
                    }
                    let m: Vec<u32> = e.iter().zip(alpha).map(|(a, b)| a + b).collect();
                    row[index[&m]] += *v;
                    nonzero = true;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let mu = basis.len() - elimination_rank(rows, eps);
        if previous == Some(mu) {
            return Ok(mu);
        }
        previous = Some(mu);
    }
    Err(EntanglementError::NonIsolated(d_max))
}

/// Hessian at the origin: second derivatives read off the quadratic part.
fn hessian_at_origin(f: &Polynomial) -> DMatrix<Complex64> {
    let n = f.nvars();
    DMatrix::from_fn(n, n, |i, j| {
        let mut e = vec![0; n];
        e[i] += 1;
        e[j] += 1;
        let c = f.coefficient(&e);
        if i == j {
            c * 2.0
        } else {
            c
        }
    })
}

fn hessian_kernel(h: &DMatrix<Complex64>, eps: f64) -> Vec<Vec<Complex64>> {
    let n = h.nrows();
    let svd = h.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^*");
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    (0..n)
        .filter(|&k| max == 0.0 || svd.singular_values[k] <= eps * max)
        .map(|k| (0..n).map(|i| v_t[(k, i)].conj()).collect())
        .collect()
}

/// Discriminant of `p s³ + q s² t + r s t² + u t³`.
pub fn binary_cubic_discriminant(
    p: Complex64,
    q: Complex64,
    r: Complex64,
    u: Complex64,
) -> Complex64 {
    q * q * r * r - 4.0 * p * r * r * r - 4.0 * q * q * q * u - 27.0 * p * p * u * u
        + 18.0 * p * q * r * u
}

fn kernel_cubic_discriminant(f: &Polynomial, kernel: &[Vec<Complex64>]) -> f64 {
    let cubic = f.homogeneous_part(3);
    let at = |s: f64, t: f64| -> Complex64 {
        let x: Vec<Complex64> = (0..f.nvars())
            .map(|i| kernel[0][i] * s + kernel[1][i] * t)
            .collect();
        cubic.eval(&x)
    };
    let p = at(1.0, 0.0);
    let u = at(0.0, 1.0);
    let plus = at(1.0, 1.0) - p - u;
    let minus = p - u - at(1.0, -1.0);
    let q = (plus + minus) / 2.0;
    let r = (plus - minus) / 2.0;
    let scale = [p, q, r, u].iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    binary_cubic_discriminant(p, q, r, u).norm() / scale.powi(4)
}

pub fn singular_point_analysis(germ: &LocalGerm) -> Result<SingularityAnalysis, EntanglementError> {
    singular_point_analysis_with(germ, DEFAULT_EPSILON, DEFAULT_D_MAX)
}

/// Gradient, Hessian corank and Milnor number of `germ` at its basepoint.
pub fn singular_point_analysis_with(
    germ: &LocalGerm,
    eps: f64,
    d_max: usize,
) -> Result<SingularityAnalysis, EntanglementError> {
    let n = germ.polynomial.nvars();
    if germ.basepoint.len() != n {
        return Err(EntanglementError::BasepointLength {
            expected: n,
            got: germ.basepoint.len(),
        });
    }
    let shifted = germ.polynomial.translate(&germ.basepoint);
    let scale = coefficient_scale(&shifted);
    let f = shifted.pruned(eps * scale);
    let origin = vec![Complex64::default(); n];
    let value_abs = shifted.eval(&origin).norm();
    let gradient_norm = shifted
        .gradient()
        .iter()
        .map(|g| g.eval(&origin).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if gradient_norm > eps * scale {
        return Err(EntanglementError::NotCritical(gradient_norm));
    }
    let hessian = hessian_at_origin(&f);
    let corank = n - numeric_rank(&hessian, eps);
    // Constant and linear terms do not affect the local algebra.
    let germ_part = &f - &f.truncate_below(2);
    let milnor = milnor_number(&germ_part, eps, d_max)?;
    let kernel_cubic_discriminant = (corank == 2).then(|| {
        let kernel = hessian_kernel(&hessian, eps);
        kernel_cubic_discriminant(&f, &kernel)
    });
    Ok(SingularityAnalysis {
        is_singular: value_abs <= eps * scale,
        value_abs,
        gradient_norm,
        hessian_corank: corank,
        milnor_number: milnor,
        kernel_cubic_discriminant,
    })
}

/// Simple-singularity type from corank, Milnor number and, for corank 2, the
/// kernel cubic.
pub fn singularity_type(analysis: &SingularityAnalysis) -> SingularityType {
    match (analysis.hessian_corank, analysis.milnor_number) {
        (0, 1) => SingularityType::A1,
        (1, 2) => SingularityType::A2,
        (1, 3) => SingularityType::A3,
        (2, 4)
            if analysis
                .kernel_cubic_discriminant
                .is_some_and(|d| d > DEFAULT_EPSILON) =>
        {
            SingularityType::D4
        }
        _ => SingularityType::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(nvars: usize, terms: &[(f64, &[u32])]) -> LocalGerm {
        LocalGerm::new(Polynomial::from_terms(nvars, terms))
    }

    #[test]
    fn monomial_basis_sizes() {
        assert_eq!(monomials_below(2, 3).len(), 6);
        assert_eq!(monomials_below(4, 1).len(), 1);
        assert_eq!(monomials_below(3, 0).len(), 0);
    }

    #[test]
    fn morse_point() {
        let g = germ(
            4,
            &[
                (1.0, &[2, 0, 0, 0]),
                (1.0, &[0, 2, 0, 0]),
                (1.0, &[0, 0, 2, 0]),
                (1.0, &[0, 0, 0, 2]),
            ],
        );
        let a = singular_point_analysis(&g).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (0, 1));
        assert_eq!(singularity_type(&a), SingularityType::A1);
        assert!(a.is_singular);
    }

    #[test]
    fn a2_and_a3() {
        let a2 = germ(
            4,
            &[
                (1.0, &[3, 0, 0, 0]),
                (1.0, &[0, 2, 0, 0]),
                (1.0, &[0, 0, 2, 0]),
                (1.0, &[0, 0, 0, 2]),
            ],
        );
        let a = singular_point_analysis(&a2).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (1, 2));
        assert_eq!(singularity_type(&a), SingularityType::A2);
        let a3 = germ(2, &[(1.0, &[4, 0]), (1.0, &[0, 2])]);
        let a = singular_point_analysis(&a3).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (1, 3));
        assert_eq!(singularity_type(&a), SingularityType::A3);
    }

    #[test]
    fn d4_normal_form() {
        let d4 = germ(2, &[(1.0, &[3, 0]), (1.0, &[1, 2])]);
        let a = singular_point_analysis(&d4).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (2, 4));
        assert_eq!(singularity_type(&a), SingularityType::D4);
    }

    #[test]
    fn degenerate_cubic_is_not_d4() {
        // x^2 y + y^4: corank 2 with a repeated root in the cubic (D5, μ = 5).
        let d5 = germ(2, &[(1.0, &[2, 1]), (1.0, &[0, 4])]);
        let a = singular_point_analysis(&d5).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (2, 5));
        assert_eq!(singularity_type(&a), SingularityType::Other);
    }

    #[test]
    fn errors() {
        let smooth = germ(2, &[(1.0, &[1, 0]), (1.0, &[0, 2])]);
        assert!(matches!(
            singular_point_analysis(&smooth),
            Err(EntanglementError::NotCritical(_))
        ));
        let line = germ(2, &[(1.0, &[2, 0])]);
        assert_eq!(
            singular_point_analysis(&line),
            Err(EntanglementError::NonIsolated(DEFAULT_D_MAX))
        );
    }

    #[test]
    fn basepoint_translation() {
        // (x-1)^2 + y^2 at (1, 0).
        let mut g = germ(
            2,
            &[
                (1.0, &[2, 0]),
                (-2.0, &[1, 0]),
                (1.0, &[0, 0]),
                (1.0, &[0, 2]),
            ],
        );
        g.basepoint = vec![Complex64::new(1.0, 0.0), Complex64::default()];
        let a = singular_point_analysis(&g).unwrap();
        assert_eq!((a.hessian_corank, a.milnor_number), (0, 1));
        assert!(a.is_singular);
    }

    #[test]
    fn discriminant_formula() {
        // s t (s - t): distinct roots.
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::default();
        assert!(binary_cubic_discriminant(zero, one, -one, zero).norm() > 0.5);
        // s^2 t: double root.
        assert_eq!(binary_cubic_discriminant(zero, one, zero, zero).norm(), 0.0);
    }
}
