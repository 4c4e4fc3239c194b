//! Boosts in the `(j,0)⊕(0,j)` representation and the objects built on them.

mod boost;
mod pauli_lubanski;
mod sandwich;
mod spinor;
mod wigner;

pub use boost::{boost, boost_half, boost_spin1, BoostMatrix};
pub use pauli_lubanski::{pauli_lubanski, PauliLubanski};
pub use sandwich::{
    probe_conventions, sandwich_identities, sandwich_residuals, BracketReading, ChiralitySign,
    ConventionVariant, ProbeOutcome, SandwichResiduals, TimeComponent, VariantResult,
    FROZEN_SPIN_HALF, FROZEN_SPIN_ONE,
};
pub use spinor::{spinor_u, spinor_v, SpinorKind, WeinbergSpinor};
pub use wigner::{
    intertwine_residual, wigner_closed, wigner_oracle, wigner_rotation, WignerRotation,
};

