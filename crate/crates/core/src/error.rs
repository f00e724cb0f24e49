use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateIndex(usize),

    #[error("qubit count mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0} qubits exceeds the configured maximum of {max}", max = crate::tensorspace::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("rotation generator must have unit coefficient, got {0}")]
    NonUnitCoefficient(String),

    #[error("wrong particle statistics: {0}")]
    WrongStatistics(&'static str),

    #[error("invalid generator coefficients: {0}")]
    InvalidGenerator(String),

    #[error("integrals violate required symmetry: {0}")]
    AsymmetricIntegrals(String),

    #[error("unsupported basis: {0}")]
    UnsupportedBasis(String),

    #[error("SCF did not converge in {iterations} iterations (commutator norm {residual:e})")]
    ScfNotConverged { iterations: usize, residual: f64 },

    #[error("overlap matrix is singular (smallest eigenvalue {0:e})")]
    SingularOverlap(f64),

    #[error("state is not in the {expected}-particle sector (measured {measured})")]
    WrongSector { expected: usize, measured: f64 },

    #[error("empty determinant sector: N={n_electrons}, 2Sz={ms2}, r={num_spin_orbitals}")]
    EmptySector { n_electrons: usize, ms2: i32, num_spin_orbitals: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
