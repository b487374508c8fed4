use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid action: {0}")]
    BadAction(String),
    #[error("invalid central identification: {0}")]
    BadIdentification(String),
    #[error("closure exceeded {limit} elements")]
    ClosureTooLarge { limit: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("coprimality violated: {0}")]
    CoprimalityViolated(String),
    #[error("not a p-group (order {order})")]
    NotAPGroup { order: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid Frobenius kernel: {0}")]
    BadKernel(String),
    #[error("group is abelian")]
    AbelianGroup,
    #[error("graph is not an F-graph")]
    NotFGraph,
    #[error("automorphism search exceeded budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("no theorem branch matches: {0}")]
    NoBranchMatches(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
