use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Invalid(String),
    #[error("row {0} of the rack table is not a bijection")]
    NotBijective(usize),
    #[error("self-distributivity fails at ({0}, {1}, {2})")]
    NotSelfDistributive(usize, usize, usize),
    #[error("seed permutation is not an element of the group")]
    SeedNotInGroup,
    #[error("group closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("cocycle entry q[{0}][{1}] is zero")]
    ZeroEntry(usize, usize),
    #[error("cocycle law fails at ({0}, {1}, {2})")]
    CocycleLawFails(usize, usize, usize),
    #[error("the chi cocycle is only defined on the transposition rack of S_n")]
    WrongRackForChi,
    #[error("degree budget exceeded: {0}")]
    DegreeBudgetExceeded(String),
    #[error("class is not in R'")]
    NotInRprime,
    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),
    #[error("parameter indices do not match the rack: {0}")]
    IndexMismatch(String),
    #[error("quotient is zero for parameters {0}")]
    NonzeroCheckFailed(String),
    #[error("e_C = e_xx for (class {class}, x = {x})")]
    ConditionViolated { class: usize, x: usize },
    #[error("copointed parameters violate normalization: {0}")]
    NormalizationViolated(String),
    #[error("action is not by algebra maps: {0}")]
    NotModuleAlgebra(String),
}

impl Error {
    /// Budget errors are reported with their own CLI exit code.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::ClosureBudgetExceeded(_)
                | Error::DegreeBudgetExceeded(_)
                | Error::ResourceBudgetExceeded(_)
        )
    }
}
