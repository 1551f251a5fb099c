use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("action matrices are inconsistent: {0}")]
    ActionInconsistent(String),
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] extcohom_core::Error),
}

pub type Result<T> = std::result::Result<T, WorkbenchError>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

impl WorkbenchError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        use extcohom_core::Error as E;
        match self {
            WorkbenchError::Core(E::SizeBudgetExceeded { .. }) => EXIT_BUDGET,
            WorkbenchError::Core(
                E::InvalidGroup(_)
                | E::InvalidModule(_)
                | E::ActionNotHomomorphic(_)
                | E::DimensionMismatch(_)
                | E::NotNormal
                | E::InvalidMorphism(_)
                | E::DegreeOutOfRange(_),
            ) => EXIT_INPUT,
            WorkbenchError::Core(_) => EXIT_VERIFICATION_FAILED,
            _ => EXIT_INPUT,
        }
    }

    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        use extcohom_core::Error as E;
        match self {
            WorkbenchError::UnknownPreset(_) => "unknown_preset",
            WorkbenchError::BadParams(_) => "bad_params",
            WorkbenchError::ActionInconsistent(_) => "action_inconsistent",
            WorkbenchError::Parse(_) => "parse",
            WorkbenchError::Io(_) => "io",
            WorkbenchError::Core(e) => match e {
                E::SizeBudgetExceeded { .. } => "size_budget_exceeded",
                E::NotInvariant => "not_invariant",
                E::InvariantViolation => "invariant_violation",
                E::EtaUnsolvable => "eta_unsolvable",
                E::FPrimeUnsolvable => "f_prime_unsolvable",
                E::NotInKernelOfRestriction => "not_in_kernel_of_restriction",
                E::ModuleNotNInvariant => "module_not_n_invariant",
                E::Consistency(_) => "consistency",
                _ => "invalid_input",
            },
        }
    }
}
