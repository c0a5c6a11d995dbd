use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-physical material: {0}")]
    InvalidMaterial(String),

    #[error("reverse constitutive form is singular: {0}")]
    ReverseFormSingular(&'static str),

    #[error("singular coefficient: {0}")]
    SingularCoefficient(&'static str),

    #[error("matrix is not symmetric positive definite: {0}")]
    NotPositiveDefinite(&'static str),

    #[error("matrix is not symmetric (relative asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("pencil is singular: det(A - lambda B) vanishes identically")]
    SingularPencil,

    #[error("eigen-iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("linear system is singular (reciprocal condition estimate {rcond:.3e})")]
    SingularSystem { rcond: f64 },

    #[error("stiffness cannot be symmetrised by any sign choice (best relative asymmetry {asymmetry:.3e})")]
    SignFixFailure { asymmetry: f64 },

    #[error("spectrum has complex or non-positive eigenvalue {value:.6e} (relative imaginary part {imag:.3e})")]
    ComplexSpectrum { value: f64, imag: f64 },

    #[error("no physical eigenvalues in the discrete spectrum")]
    NoPhysicalEigenvalues,

    #[error("driving frequency {omega:.6e} rad/s is at a resonance")]
    Resonance { omega: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),
}
