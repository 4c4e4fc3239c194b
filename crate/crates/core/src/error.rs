use thiserror::Error;

use crate::amplitudes::StructureCoefficients;
use crate::representations::ProbeOutcome;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("mass mismatch: {0} vs {1}")]
    MassMismatch(f64, f64),

    #[error("invalid mass {0}: masses must be finite and positive")]
    InvalidMass(f64),

    #[error("non-finite momentum component")]
    NonFinite,

    /// The evaluated formula has a pole at the forward point. The payload
    /// names the vanishing denominator.
    #[error("forward singularity: {0} vanishes")]
    ForwardSingularity(&'static str),

    #[error("invalid two-particle system: total momentum squared {0} is not positive")]
    InvalidSystem(f64),

    #[error("unsupported spin 2j = {0} (only j = 1/2 and j = 1 are implemented)")]
    Unsupported(u32),

    #[error("spin projection 2*sigma = {twice_sigma} is not allowed for 2j = {twice_j}")]
    InvalidProjection { twice_j: u32, twice_sigma: i32 },

    /// A Wigner-rotation extraction left an off-block-diagonal residual.
    #[error("boost composition is not block diagonal (residual {0:.3e})")]
    ConventionMismatch(f64),

    /// No (or more than one) reading of the sandwich identities matched.
    #[error("sandwich identities: {} convention variants passed, expected exactly one", .0.passing().len())]
    SandwichConvention(Box<ProbeOutcome>),

    /// The four-structure basis is rank deficient (forward or collinear
    /// kinematics). A reduced decomposition over the surviving structures is
    /// attached.
    #[error("degenerate structure basis (collinear or forward kinematics)")]
    DegenerateBasis(Box<StructureCoefficients>),

    #[error("inelastic kinematics: total momentum differs by {0:.3e}")]
    KinematicsMismatch(f64),

    #[error("invalid couplings: {0}")]
    InvalidCouplings(String),
}
