//! Pauli groups, symplectic polar spaces `W(2N-1, 2)` and the finite geometry
//! of quantum contextuality, with tools for three-qubit entanglement classes
//! and hypersurface singularities of multilinear forms.
//!
//! Module map:
//!
//! * [`pauli`]: phased Pauli operators, symplectic vectors, quadratic forms.
//! * [`gf2`]: bit-packed linear algebra over F2.
//! * [`incidence`]: generic point–line geometries and their hyperplanes.
//! * [`polar`]: `W(2N-1, 2)`, its hyperplanes and Veldkamp lines.
//! * [`contextuality`]: contexts, Mermin squares and pentagrams, magic tests.
//! * [`entanglement`]: SLOCC classes, hyperdeterminant, Terracini, Milnor numbers.
//! * [`lie`]: the magic Veldkamp line, duad labelings, `A5` weights, Pfaffians.

pub mod cli;
pub mod contextuality;
pub mod entanglement;
pub mod export;
pub mod gf2;
pub mod incidence;
pub mod lie;
pub mod pauli;
pub mod polar;

pub use pauli::{parse_pauli, PauliOperator, Phase, ProjectivePoint, SymplecticVector};
pub use polar::{build_polar_space, PolarSpace};
