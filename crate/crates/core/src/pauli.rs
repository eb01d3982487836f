//! Phase-tracked arithmetic in the N-qubit Pauli group.
//!
//! Operators are stored in the canonical form `i^λ · Z^μ1 X^ν1 ⊗ … ⊗ Z^μN X^νN`.
//! The symplectic part is bit-packed into a `u64`, interleaved as
//! `(μ1, ν1, …, μN, νN)` with `μ1` in the most significant used bit, so the
//! natural integer order of vectors is the lexicographic order of bit tuples.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of qubits representable by the packed `u64` layout.
pub const MAX_WIDTH: usize = 32;

/// Largest number of qubits accepted by the dense matrix oracle.
pub const MAX_MATRIX_WIDTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("width {0} outside supported range 1..={max}", max = MAX_WIDTH)]
    WidthOutOfRange(usize),
    #[error("width {0} too large for the dense matrix oracle (max {max})", max = MAX_MATRIX_WIDTH)]
    MatrixTooLarge(usize),
    #[error("bit vector has {got} entries, expected {expected}")]
    BitCount { got: usize, expected: usize },
    #[error("invalid bit value {0} (expected 0 or 1)")]
    InvalidBit(u8),
    #[error("the zero vector has no projective point")]
    ZeroVector,
}

/// A power of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exponent: u32) -> Self {
        Phase((exponent % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `±1` for real phases.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex<i64> {
        match self.0 {
            0 => Complex::new(1, 0),
            1 => Complex::new(0, 1),
            2 => Complex::new(-1, 0),
            _ => Complex::new(0, -1),
        }
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// An element of `F2^{2N}` laid out as `(μ1, ν1, …, μN, νN)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    width: u8,
    bits: u64,
}

impl SymplecticVector {
    pub fn zero(width: usize) -> Result<Self, PauliError> {
        Self::from_packed(width, 0)
    }

    /// Builds a vector from its packed integer form (`μ1` is the most significant bit).
    pub fn from_packed(width: usize, bits: u64) -> Result<Self, PauliError> {
        if width == 0 || width > MAX_WIDTH {
            return Err(PauliError::WidthOutOfRange(width));
        }
        Ok(SymplecticVector {
            width: width as u8,
            bits: bits & Self::mask(width),
        })
    }

    pub(crate) fn from_packed_unchecked(width: usize, bits: u64) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&width));
        SymplecticVector {
            width: width as u8,
            bits,
        }
    }

    /// Builds a vector from an explicit `(μ1, ν1, …)` tuple.
    pub fn from_bits(bits: &[u8]) -> Result<Self, PauliError> {
        if bits.is_empty() || !bits.len().is_multiple_of(2) || bits.len() > 2 * MAX_WIDTH {
            return Err(PauliError::BitCount {
                got: bits.len(),
                expected: 2 * bits.len().div_ceil(2).max(1),
            });
        }
        let mut packed = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(PauliError::InvalidBit(b));
            }
            packed = (packed << 1) | u64::from(b);
        }
        Self::from_packed(bits.len() / 2, packed)
    }

    fn mask(width: usize) -> u64 {
        if width == MAX_WIDTH {
            u64::MAX
        } else {
            (1u64 << (2 * width)) - 1
        }
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn packed(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// `μ_j` for qubit `j` (0-based).
    pub fn mu(self, qubit: usize) -> bool {
        (self.bits >> (2 * (self.width() - 1 - qubit) + 1)) & 1 == 1
    }

    /// `ν_j` for qubit `j` (0-based).
    pub fn nu(self, qubit: usize) -> bool {
        (self.bits >> (2 * (self.width() - 1 - qubit))) & 1 == 1
    }

    pub fn to_bits(self) -> Vec<u8> {
        (0..2 * self.width())
            .rev()
            .map(|shift| ((self.bits >> shift) & 1) as u8)
            .collect()
    }

    // Even positions of the packed word hold ν, odd positions hold μ.
    fn nu_mask(self) -> u64 {
        0x5555_5555_5555_5555 & Self::mask(self.width())
    }

    fn mu_word(self) -> u64 {
        (self.bits >> 1) & self.nu_mask()
    }

    fn nu_word(self) -> u64 {
        self.bits & self.nu_mask()
    }

    fn check_width(self, other: Self) -> Result<(), PauliError> {
        if self.width != other.width {
            return Err(PauliError::WidthMismatch {
                left: self.width(),
                right: other.width(),
            });
        }
        Ok(())
    }

    pub fn try_add(self, other: Self) -> Result<Self, PauliError> {
        self.check_width(other)?;
        Ok(self + other)
    }

    /// Number of qubits on which the operator is `Y` (μ = ν = 1).
    pub fn y_count(self) -> u32 {
        (self.mu_word() & self.nu_word()).count_ones()
    }

    /// Number of qubits on which the operator is not the identity.
    pub fn weight(self) -> u32 {
        (self.mu_word() | self.nu_word()).count_ones()
    }

    /// Single-qubit letter at `qubit`.
    pub fn letter(self, qubit: usize) -> char {
        match (self.mu(qubit), self.nu(qubit)) {
            (false, false) => 'I',
            (false, true) => 'X',
            (true, true) => 'Y',
            (true, false) => 'Z',
        }
    }

    pub fn label(self) -> String {
        (0..self.width()).map(|q| self.letter(q)).collect()
    }
}

impl std::ops::Add for SymplecticVector {
    type Output = SymplecticVector;

    /// Componentwise XOR. Widths must agree (checked in debug builds).
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.width, rhs.width);
        SymplecticVector {
            width: self.width,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `⟨u, v⟩ = Σ_j (μ_j ν'_j + μ'_j ν_j) mod 2`.
pub fn symplectic_form(u: SymplecticVector, v: SymplecticVector) -> Result<bool, PauliError> {
    u.check_width(v)?;
    Ok(symplectic_form_unchecked(u, v))
}

pub(crate) fn symplectic_form_unchecked(u: SymplecticVector, v: SymplecticVector) -> bool {
    let cross = (u.mu_word() & v.nu_word()) ^ (v.mu_word() & u.nu_word());
    cross.count_ones() % 2 == 1
}

/// `Q_0(v) = Σ_j μ_j ν_j`, i.e. the parity of the number of `Y`s.
pub fn q0(v: SymplecticVector) -> bool {
    v.y_count() % 2 == 1
}

/// `Q_q(p) = Q_0(p) + ⟨q, p⟩`.
pub fn qq(q: SymplecticVector, p: SymplecticVector) -> Result<bool, PauliError> {
    Ok(q0(p) ^ symplectic_form(q, p)?)
}

/// An element of the N-qubit Pauli group in canonical `i^λ Z^μ X^ν` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    phase: Phase,
    vector: SymplecticVector,
}

impl PauliOperator {
    pub fn new(phase: Phase, vector: SymplecticVector) -> Self {
        PauliOperator { phase, vector }
    }

    pub fn identity(width: usize) -> Result<Self, PauliError> {
        Ok(Self::new(Phase::ONE, SymplecticVector::zero(width)?))
    }

    /// The Hermitian operator spelled by the letters of `vector` with a `+` sign.
    ///
    /// Each `Y = -i·ZX` contributes `λ = 3`.
    pub fn hermitian(vector: SymplecticVector) -> Self {
        Self::new(Phase::new(3 * vector.y_count()), vector)
    }

    pub fn phase(self) -> Phase {
        self.phase
    }

    pub fn vector(self) -> SymplecticVector {
        self.vector
    }

    pub fn width(self) -> usize {
        self.vector.width()
    }

    /// The phase relative to the literal tensor product of letters.
    pub fn literal_phase(self) -> Phase {
        self.phase * Phase::new(self.vector.y_count())
    }

    pub fn is_hermitian(self) -> bool {
        self.literal_phase().is_real()
    }

    pub fn negate(self) -> Self {
        Self::new(self.phase * Phase::MINUS_ONE, self.vector)
    }

    pub fn multiply(self, rhs: Self) -> Result<Self, PauliError> {
        self.vector.check_width(rhs.vector)?;
        Ok(self.multiply_unchecked(rhs))
    }

    pub(crate) fn multiply_unchecked(self, rhs: Self) -> Self {
        // Moving X^ν past Z^μ' picks up (-1)^{ν μ'} on each qubit.
        let swaps = (self.vector.nu_word() & rhs.vector.mu_word()).count_ones();
        let phase = self.phase * rhs.phase * Phase::new(2 * swaps);
        Self::new(phase, self.vector + rhs.vector)
    }

    pub fn commutes_with(self, other: Self) -> Result<bool, PauliError> {
        Ok(!symplectic_form(self.vector, other.vector)?)
    }

    pub fn projective(self) -> Result<ProjectivePoint, PauliError> {
        ProjectivePoint::new(self.vector)
    }

    pub fn to_json(self) -> PauliJson {
        PauliJson {
            phase_exponent: self.phase.exponent(),
            bits: self.vector.to_bits(),
        }
    }

    pub fn from_json(json: &PauliJson) -> Result<Self, PauliError> {
        if json.phase_exponent > 3 {
            return Err(PauliError::Parse {
                position: 0,
                message: format!("phase exponent {} not in 0..=3", json.phase_exponent),
            });
        }
        Ok(Self::new(
            Phase::new(u32::from(json.phase_exponent)),
            SymplecticVector::from_bits(&json.bits)?,
        ))
    }
}

/// Parses `["-"]["i"] ("I"|"X"|"Y"|"Z"){N}`.
pub fn parse_pauli(text: &str) -> Result<PauliOperator, PauliError> {
    let mut chars = text.char_indices().peekable();
    let mut phase = Phase::ONE;
    if let Some(&(_, '-')) = chars.peek() {
        phase = phase * Phase::MINUS_ONE;
        chars.next();
    }
    if let Some(&(_, 'i')) = chars.peek() {
        phase = phase * Phase::I;
        chars.next();
    }
    let mut packed = 0u64;
    let mut width = 0usize;
    let mut y_count = 0u32;
    for (position, c) in chars {
        let pair = match c {
            'I' => 0b00,
            'X' => 0b01,
            'Y' => {
                y_count += 1;
                0b11
            }
            'Z' => 0b10,
            other => {
                return Err(PauliError::Parse {
                    position,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        width += 1;
        if width > MAX_WIDTH {
            return Err(PauliError::Parse {
                position,
                message: format!("more than {MAX_WIDTH} qubits"),
            });
        }
        packed = (packed << 2) | pair;
    }
    if width == 0 {
        return Err(PauliError::Parse {
            position: text.len(),
            message: "expected at least one of I, X, Y, Z".into(),
        });
    }
    let vector = SymplecticVector::from_packed_unchecked(width, packed);
    Ok(PauliOperator::new(phase * Phase::new(3 * y_count), vector))
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pauli(s)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.literal_phase().prefix(),
            self.vector.label()
        )
    }
}

/// JSON wire form of an operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliJson {
    pub phase_exponent: u8,
    pub bits: Vec<u8>,
}

/// A point of `PG(2N-1, 2)`: a nonzero symplectic vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(SymplecticVector);

impl ProjectivePoint {
    pub fn new(vector: SymplecticVector) -> Result<Self, PauliError> {
        if vector.is_zero() {
            return Err(PauliError::ZeroVector);
        }
        Ok(ProjectivePoint(vector))
    }

    pub fn parse(text: &str) -> Result<Self, PauliError> {
        parse_pauli(text)?.projective()
    }

    pub fn vector(self) -> SymplecticVector {
        self.0
    }

    pub fn index(self) -> usize {
        self.0.packed() as usize
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact Gaussian-integer dense matrix, the oracle representation of an operator.
pub type ExactMatrix = DMatrix<Complex<i64>>;

fn letter_matrix(mu: bool, nu: bool) -> ExactMatrix {
    let one = Complex::new(1, 0);
    let zero = Complex::new(0, 0);
    let z = if mu {
        DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one])
    } else {
        DMatrix::identity(2, 2)
    };
    let x = if nu {
        DMatrix::from_row_slice(2, 2, &[zero, one, one, zero])
    } else {
        DMatrix::identity(2, 2)
    };
    z * x
}

/// Literal Kronecker product `i^λ · ⊗_j Z^μj X^νj`.
pub fn to_matrix(op: PauliOperator) -> Result<ExactMatrix, PauliError> {
    let width = op.width();
    if width > MAX_MATRIX_WIDTH {
        return Err(PauliError::MatrixTooLarge(width));
    }
    let v = op.vector();
    let mut m = DMatrix::from_element(1, 1, op.phase().to_complex());
    for q in 0..width {
        m = m.kronecker(&letter_matrix(v.mu(q), v.nu(q)));
    }
    Ok(m)
}

/// Complex floating-point version of [`to_matrix`].
pub fn to_matrix_f64(op: PauliOperator) -> Result<DMatrix<Complex<f64>>, PauliError> {
    Ok(to_matrix(op)?.map(|z| Complex::new(z.re as f64, z.im as f64)))
}
