use thiserror::Error;

/// Errors raised by group constructors and table operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("generator is not a bijection on the permutation domain")]
    InvalidPermutation,
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("the given subgroup is not normal")]
    NotNormal,
    #[error("generator-image assignment does not extend to an automorphism of the base")]
    NotAnAutomorphism,
    #[error("semidirect action is not a homomorphism from the actor")]
    ActionNotHomomorphic,
    #[error("constructed table violates group law: {0}")]
    InvalidTable(String),
}

/// Errors from Todd-Coxeter coset enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("coset enumeration exceeded the limit of {0} cosets")]
    CosetLimitExceeded(usize),
    #[error("word references undeclared generator `{0}`")]
    UnboundGenerator(String),
}

/// Errors from Beauville-structure analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeauvilleError {
    #[error("group has no generating pair (not 2-generated)")]
    NotTwoGenerated,
    #[error("the trivial group has no meaningful Beauville dimension")]
    DegenerateTrivialGroup,
    #[error("pair ({0}, {1}) does not generate the group")]
    NotGenerating(u32, u32),
    #[error("structure family is empty")]
    EmptyFamily,
    #[error("lift premise failed: {0}")]
    PremiseFailed(String),
    #[error("image pairs do not form a generalised Beauville structure in the quotient")]
    ImagesNotStructure,
}
