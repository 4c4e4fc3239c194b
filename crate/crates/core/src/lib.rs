//! Second-order exchange amplitudes for spin-1/2 and spin-1 particles,
//! parametrized by the momentum transfer in Lobachevsky (mass-hyperboloid)
//! space.
//!
//! The crate is organized bottom-up:
//!
//! * [`kinematics`]: on-shell momenta, the Lobachevsky difference `k(-)p`,
//!   the momentum half-transfer and covariant two-particle momenta.
//! * [`spin_algebra`]: spin matrices, Wigner time-reversal operators, the
//!   6x6 Barut–Muzinich–Williams matrices and the Dirac matrices.
//! * [`representations`]: boosts in the `(j,0)⊕(0,j)` representation,
//!   Weinberg spinors, the Pauli–Lubanski vector, Wigner rotations and the
//!   boost-sandwich identities together with their convention prober.
//! * [`currents`]: the spin-1 vertex and the one-particle currents with the
//!   Wigner rotations separated out.
//! * [`amplitudes`]: the fermion–fermion and boson–boson T-matrices, the
//!   full matrix element, spin-structure decomposition and the
//!   fermion/boson comparison.
//! * [`verify`]: seeded property suites behind the `verify` command.
//!
//! Natural units throughout. Internally all four-vectors use the Minkowski
//! metric `(+,-,-,-)`; Euclidean components (`x4 = i x0`) only appear in
//! [`spin_algebra`] and the code that contracts against the 6x6 matrices.

pub mod amplitudes;
pub mod currents;
mod error;
pub mod kinematics;
pub mod linalg;
pub mod representations;
pub mod spin_algebra;
pub mod verify;

pub use error::{Error, Result};
pub use kinematics::FourMomentum;
pub use linalg::{CMat, Vec3};
pub use spin_algebra::Spin;
