use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("reducible modulus: factor {0}")]
    Reducible(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("lattice rows are dependent (rank {rank} < {rows})")]
    Rank { rank: usize, rows: usize },
    #[error("recognition failed: {0}")]
    RecognitionFailed(String),
    #[error("singular curve")]
    Singular,
    #[error("bad reduction at {p}: discriminant valuation {valuation}")]
    BadReduction { p: u64, valuation: u32 },
    #[error("enumeration too large: {0} points")]
    TooLarge(u128),
    #[error("morphism check failed, residual {0}")]
    NotMorphism(String),
    #[error("incompatible curves: {0}")]
    Incompatible(String),
    #[error("constant map")]
    ConstantMap,
    #[error("non-convergence: {0}")]
    NoConvergence(String),
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("insufficient coefficients: need X >= {0}")]
    InsufficientCoefficients(usize),
    #[error("rank mismatch: analytic {analytic}, algebraic {algebraic}")]
    RankMismatch { analytic: usize, algebraic: usize },
    #[error("missing citation for {0}")]
    CitationRequired(String),
    #[error("stage {stage} failed: {msg}")]
    Stage { stage: String, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
