//! SLOCC classification of few-qubit states, secant varieties of Segre and
//! Veronese embeddings, and singularities of the hyperplane sections `f_ψ`.

mod poly;
mod secant;
mod singularity;
mod slocc;
mod tensor;

pub use poly::{hyperplane_section_poly, LocalGerm, MultilinearForm, Polynomial};
pub use secant::{
    secant_dimension_estimate, veronese_secant_dimension, zak_dichotomy, zak_dichotomy_veronese,
    ZakReport,
};
pub use singularity::{
    binary_cubic_discriminant, milnor_number, singular_point_analysis, singularity_type,
    SingularityAnalysis, SingularityType, DEFAULT_D_MAX,
};
pub use slocc::{
    cayley_hyperdet, classify_3qubit, flattening_ranks, random_slocc, two_qubit_separable,
    Classification, SloccClass3Qubit,
};
pub use tensor::{numeric_rank, StateJson, StateTensor};

use thiserror::Error;

/// Default relative tolerance for numeric ranks and vanishing tests.
pub const DEFAULT_EPSILON: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntanglementError {
    #[error("tensor is zero")]
    ZeroTensor,
    #[error("expected format {expected:?}, got {got:?}")]
    Format {
        expected: Vec<usize>,
        got: Vec<usize>,
    },
    #[error("format must be nonempty with every dimension at least 1")]
    BadFormat,
    #[error("format {format:?} needs {expected} amplitudes, got {got}")]
    AmplitudeCount {
        format: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("re and im arrays differ in length ({re} vs {im})")]
    RealImagLength { re: usize, im: usize },
    #[error("chart has {got} entries for {expected} factors")]
    ChartLength { expected: usize, got: usize },
    #[error("chart index {index} out of range for factor {factor} of dimension {dim}")]
    ChartIndex {
        factor: usize,
        index: usize,
        dim: usize,
    },
    #[error("basepoint has {got} coordinates, polynomial has {expected} variables")]
    BasepointLength { expected: usize, got: usize },
    #[error("basepoint is not critical: |grad f| = {0:e}")]
    NotCritical(f64),
    #[error("singularity is not isolated (no stabilization up to degree {0})")]
    NonIsolated(usize),
    #[error("local transform list has {got} entries for {expected} factors")]
    TransformCount { expected: usize, got: usize },
}
