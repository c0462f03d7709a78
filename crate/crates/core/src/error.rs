use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An exact computation would enumerate more support variables than allowed.
    #[error("formula support {support} exceeds cap {cap} for exact computation")]
    SupportTooLarge { support: usize, cap: usize },

    /// Full seed enumeration would exceed the configured cap.
    #[error("seed space of {bits} bits exceeds enumeration cap of {cap_bits} bits")]
    SeedSpaceTooLarge { bits: u32, cap_bits: u32 },

    /// An assignment had the wrong number of bits.
    #[error("assignment has {got} bits, formula expects {expected}")]
    AssignmentLength { expected: usize, got: usize },

    /// Two formulas that must share a variable count do not.
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    /// An operation that requires a unate formula was given a mixed one.
    #[error("formula is not unate: variable {var} occurs with both polarities")]
    NotUnate { var: usize },

    /// A reduction step found no usable quasi-sunflower.
    #[error("no quasi-sunflower meeting the target was found (best gamma: {best_gamma:?})")]
    NoQuasiSunflower { best_gamma: Option<f64> },

    /// Parity bias is only defined for non-empty index sets.
    #[error("parity index set must be non-empty")]
    EmptyParitySet,

    /// Limited-independence samplers require p = 2^-a.
    #[error("survival probability {p} is not of the form 2^-a")]
    NonDyadicProbability { p: f64 },

    /// A restriction composition was applied outside the live set.
    #[error("inner restriction fixes variable {var} outside the outer live set")]
    DomainMismatch { var: usize },

    /// A multi-round restriction schedule cannot be realized.
    #[error("restriction schedule infeasible: {reason}")]
    InfeasibleSchedule { reason: String },

    /// The operation counter passed the configured budget.
    #[error("work budget of {budget} operations exceeded")]
    BudgetExceeded { budget: u128 },

    /// Field size outside the embedded irreducible-polynomial table.
    #[error("GF(2^l) only supported for 1 <= l <= 32, got {0}")]
    FieldLogOutOfRange(u32),

    /// Parameter validation failure.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
