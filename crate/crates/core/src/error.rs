use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action is not a homomorphism: {0}")]
    ActionNotHomomorphic(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("computation needs {needed} cells, budget is {budget}")]
    SizeBudgetExceeded { needed: u128, budget: u128 },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("operation requires a finite module")]
    InfiniteModule,
    #[error("invalid section: {0}")]
    SectionInvalid(String),
    #[error("class does not lie in the kernel of restriction")]
    NotInKernelOfRestriction,
    #[error("map is not a module morphism: {0}")]
    NotModuleMorphism(String),
    #[error("complement is not invariant up to equivalence")]
    InvariantViolation,
    #[error("map is not a partial splitting: {0}")]
    NotPartiallySplit(String),
    #[error("derivation class is not invariant under the quotient")]
    NotInvariant,
    #[error("no normalizing value exists for the twisted derivation")]
    EtaUnsolvable,
    #[error("derivation combination is not inner")]
    FPrimeUnsolvable,
    #[error("module is not invariant under the normal subgroup")]
    ModuleNotNInvariant,
    #[error("not a morphism of extensions: {0}")]
    NotAMorphismOfExtensions(String),
    #[error("not a derivation: {0}")]
    NotADerivation(String),
    #[error("element does not belong to the subgroup")]
    NotInSubgroup,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
