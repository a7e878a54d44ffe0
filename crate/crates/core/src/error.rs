use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands carry different (a, b) contexts")]
    ContextMismatch,
    #[error("operation leaves the exponential-polynomial algebra: {0}")]
    OutsideAlgebra(String),
    #[error("divergent integral: power {power} with decay rate {rate}")]
    DivergentIntegral { power: f64, rate: f64 },
    #[error("radius must be positive, got {0}")]
    Domain(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no bound states: p_z*k (or b) must be positive")]
    NoBoundStates,
    #[error("negative radicand {0} in the Dirac spectrum")]
    NegativeRadicand(f64),
    #[error("degenerate denominator for family {family} at level {level}: d = 0")]
    DegenerateDenominator { family: char, level: u32 },
    #[error("superpotential matrix is singular at rho = {rho}")]
    SingularXi { rho: f64 },
    #[error("grid too coarse: lowest eigenvalue moved by {shift:e} under refinement")]
    GridTooCoarse { shift: f64 },
    #[error("integrand tail not decayed: |f g| at rho_max is {ratio:e} of its maximum")]
    TailNotDecayed { ratio: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
