use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::tensor::{numeric_rank, StateTensor};
use super::EntanglementError;

fn require_format(t: &StateTensor, format: &[usize]) -> Result<(), EntanglementError> {
    if t.format() != format {
        return Err(EntanglementError::Format {
            expected: format.to_vec(),
            got: t.format().to_vec(),
        });
    }
    Ok(())
}

/// `|a00·a11 − a01·a10| ≤ ε‖t‖²`.
pub fn two_qubit_separable(t: &StateTensor, eps: f64) -> Result<bool, EntanglementError> {
    require_format(t, &[2, 2])?;
    if t.is_zero() {
        return Err(EntanglementError::ZeroTensor);
    }
    let a = t.amplitudes();
    let det = a[0] * a[3] - a[1] * a[2];
    Ok(det.norm() <= eps * t.norm().powi(2))
}

/// Numeric ranks of the three `2×4` flattenings.
pub fn flattening_ranks(t: &StateTensor, eps: f64) -> Result<[usize; 3], EntanglementError> {
    require_format(t, &[2, 2, 2])?;
    if t.is_zero() {
        return Err(EntanglementError::ZeroTensor);
    }
    Ok([0, 1, 2].map(|k| numeric_rank(&t.flattening(k), eps)))
}

/// Cayley's hyperdeterminant of a `2×2×2` tensor.
pub fn cayley_hyperdet(t: &StateTensor) -> Result<Complex64, EntanglementError> {
    require_format(t, &[2, 2, 2])?;
    let a = |i: usize, j: usize, k: usize| t.amplitudes()[4 * i + 2 * j + k];
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));
    let squares = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let pairs = a000 * a001 * a110 * a111
        + a000 * a010 * a101 * a111
        + a000 * a100 * a011 * a111
        + a001 * a010 * a101 * a110
        + a001 * a100 * a011 * a110
        + a010 * a100 * a011 * a101;
    let quads = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
    Ok(squares - 2.0 * pairs + 4.0 * quads)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SloccClass3Qubit {
    Zero,
    Sep,
    B1,
    B2,
    B3,
    W,
    Ghz,
}

impl SloccClass3Qubit {
    pub fn name(self) -> &'static str {
        match self {
            SloccClass3Qubit::Zero => "ZERO",
            SloccClass3Qubit::Sep => "SEP",
            SloccClass3Qubit::B1 => "B1",
            SloccClass3Qubit::B2 => "B2",
            SloccClass3Qubit::B3 => "B3",
            SloccClass3Qubit::W => "W",
            SloccClass3Qubit::Ghz => "GHZ",
        }
    }
}

/// Class together with the quantities it was decided from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: SloccClass3Qubit,
    pub hyperdet_abs: f64,
    /// `|Δ| / ‖t‖⁴`, the scale-free quantity compared against `ε`.
    pub hyperdet_scaled: f64,
    pub flattening_ranks: Option<[usize; 3]>,
}

pub fn classify_3qubit(t: &StateTensor, eps: f64) -> Result<Classification, EntanglementError> {
    require_format(t, &[2, 2, 2])?;
    let norm = t.norm();
    let delta = cayley_hyperdet(t)?.norm();
    if norm == 0.0 {
        return Ok(Classification {
            class: SloccClass3Qubit::Zero,
            hyperdet_abs: 0.0,
            hyperdet_scaled: 0.0,
            flattening_ranks: None,
        });
    }
    let scaled = delta / norm.powi(4);
    let ranks = flattening_ranks(t, eps)?;
    let class = if scaled > eps {
        SloccClass3Qubit::Ghz
    } else {
        match ranks {
            [1, 1, 1] => SloccClass3Qubit::Sep,
            [1, 2, 2] => SloccClass3Qubit::B1,
            [2, 1, 2] => SloccClass3Qubit::B2,
            [2, 2, 1] => SloccClass3Qubit::B3,
            _ => SloccClass3Qubit::W,
        }
    };
    Ok(Classification {
        class,
        hyperdet_abs: delta,
        hyperdet_scaled: scaled,
        flattening_ranks: Some(ranks),
    })
}

/// Random `d×d` matrix with entries uniform in the unit disk, scaled to determinant 1.
/// Redraws in the (measure-zero) event of a vanishing determinant.
pub fn random_slocc(rng: &mut impl Rng, d: usize) -> DMatrix<Complex64> {
    loop {
        let m = DMatrix::from_fn(d, d, |_, _| loop {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.norm_sqr() <= 1.0 {
                break z;
            }
        });
        let det = m.determinant();
        if det.norm() > 1e-12 {
            return m / det.powf(1.0 / d as f64);
        }
    }
}
