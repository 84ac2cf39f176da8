use alloc::string::String;

/// Everything that can go wrong inside the core computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero in cyclotomic arithmetic")]
    DivisionByZero,

    #[error("cyclotomic order {order} exceeds the configured cap {cap}")]
    OrderOverflow { order: u64, cap: u64 },

    #[error(
        "quadratic form is not well defined on residues: shifting generator {generator} by its order changes the value"
    )]
    NotWellDefined { generator: usize },

    #[error("associated form is not bilinear at generator {generator}")]
    NotBilinear { generator: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element {0} does not belong to the group")]
    NotInGroup(String),

    #[error("enumeration of {size} candidates exceeds the cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },

    #[error("invalid pointed spin-modular data: {0}")]
    InvalidPointed(String),

    #[error("inconsistent spin-modular summary: {0}")]
    InconsistentSummary(String),

    #[error("Gauss sum {0} is not an eighth root of unity")]
    GaussMilgram(String),

    #[error("lattice data invalid: {0}")]
    InvalidLattice(String),

    #[error("characteristic class vanishes mod 2; the lattice data is not spin")]
    NotSpin,

    #[error("quotient is infinite")]
    InfiniteQuotient,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
