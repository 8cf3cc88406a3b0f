use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tower vanishes at level {level}: Res(t^(p^{level})-1, f) = 0")]
    VanishingTower { level: u32 },

    #[error("infinite homology (Betti growth): the polynomial vanishes at a root of unity of order {n}")]
    InfiniteHomology { n: u64 },

    #[error("division by a p-adic zero known only modulo p^{precision}")]
    DivisionByZero { precision: i64 },

    #[error("p-adic domain error: {0}")]
    PadicDomain(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("estimated size {} exceeds the exact-computation budget {budget}", if *estimate == u64::MAX { "over 2^64".to_string() } else { estimate.to_string() })]
    BudgetExceeded { estimate: u64, budget: u64 },

    #[error("no distinguished part: lambda = 0")]
    NoDistinguishedPart,

    #[error("hypothesis not satisfied: {0}")]
    HypothesisViolated(String),

    #[error("singular curve: 4a^3 + 27b^2 = 0 mod {l}")]
    SingularCurve { l: u64 },

    #[error("engines disagree: agreement on {agreement} digits, {required} required")]
    EngineDisagreement { agreement: u32, required: u32 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted(_) | Error::BudgetExceeded { .. } => 2,
            Error::Parse { .. } => 64,
            _ => 1,
        }
    }
}
