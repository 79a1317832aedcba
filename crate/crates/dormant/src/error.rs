use thiserror::Error;

/// Every mathematical failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid level parameters: {0}")]
    InvalidParams(String),
    #[error("non-integral coefficient {0}")]
    IntegralityViolation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("module relations violated at {0} (j, j') pairs")]
    RelationFailure(usize),
    #[error("t^{j} does not divide A_{j}")]
    EtaNotDivisible { j: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("module is not dormant")]
    NotDormant,
    #[error("module is not regular at t = 0")]
    NotRegularAtZero,
    #[error("a log module is required")]
    NotLog,
    #[error("a non-log module is required")]
    NotNonLog,
    #[error("fiber operators are not simultaneously diagonalizable over F_p")]
    NotDiagonalizable,
    #[error("radius needs odd p")]
    EvenCharacteristic,
    #[error("dormant module of rank {rank} > p^(m+1) = {bound} has no cyclic vector")]
    NoCyclicVector { rank: usize, bound: usize },
    #[error("cyclic vector search stalled at wronskian rank {0}")]
    AlgorithmStall(usize),
    #[error("vector is not cyclic")]
    NotCyclic,
    #[error("rank {rank} outside 0 < n < {bound}")]
    RankOutOfRange { rank: usize, bound: usize },
    #[error("horizontal sections have dimension {found}, expected {expected}")]
    DescentRankDeficient { found: usize, expected: usize },
    #[error("triple has even sum")]
    ParityError,
    #[error("search budget {budget} exceeded after {explored} nodes")]
    SearchBudgetExceeded { budget: u64, explored: u64 },
    #[error("radii collide for triples {0} and {1}")]
    RadiiCollision(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine tag used in JSON output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::Shape(_) => "Shape",
            Error::RelationFailure(_) => "RelationFailure",
            Error::EtaNotDivisible { .. } => "EtaNotDivisible",
            Error::Singular => "Singular",
            Error::NotDormant => "NotDormant",
            Error::NotRegularAtZero => "NotRegularAtZero",
            Error::NotLog => "NotLog",
            Error::NotNonLog => "NotNonLog",
            Error::NotDiagonalizable => "NotDiagonalizable",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::NoCyclicVector { .. } => "NoCyclicVector",
            Error::AlgorithmStall(_) => "AlgorithmStall",
            Error::NotCyclic => "NotCyclic",
            Error::RankOutOfRange { .. } => "RankOutOfRange",
            Error::DescentRankDeficient { .. } => "DescentRankDeficient",
            Error::ParityError => "ParityError",
            Error::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            Error::RadiiCollision(..) => "RadiiCollision",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
