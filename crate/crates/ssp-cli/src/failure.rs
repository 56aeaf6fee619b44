use subset_search::Error;

/// Why a command could not produce a result.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    KindGap(String),
}

impl Failure {
    /// 2 parse or usage, 3 kind or family mismatch, 4 overflow,
    /// 5 budget, 6 undefined regret.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Read { .. } | Failure::Usage(_) => 2,
            Failure::Write { .. } => 1,
            Failure::KindGap(_) => 3,
            Failure::Core(e) => match e {
                Error::Parse(_)
                | Error::Invalid(_)
                | Error::Unknown { .. }
                | Error::ForeignElement(_)
                | Error::Precondition(_) => 2,
                Error::KindMismatch { .. } | Error::FamilyMismatch { .. } | Error::PrefixMismatch(_) | Error::NotAnLop(_) => 3,
                Error::ConstructionOverflow(_) => 4,
                Error::BudgetExceeded(_) | Error::CapExceeded { .. } => 5,
                Error::UndefinedRegret => 6,
            },
        }
    }
}
