use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set of size {m} exceeds the supported capacity of {max} elements")]
    CapacityExceeded { m: usize, max: usize },

    #[error("{what}: needs {needed}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("element {element} is not in a ground set of size {m}")]
    InvalidElement { element: usize, m: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("subset {0:#x} is not a cycle")]
    NotACycle(u64),

    #[error("subset {0:#x} is not a circuit of the requested side")]
    NotACircuit(u64),

    #[error("element {0} is a coloop; reduce the matroid first")]
    Coloop(usize),

    #[error("elements {0} and {1} are coparallel; reduce the matroid first")]
    Coparallel(usize, usize),

    #[error("class of subset {0:#x} has no representative of size at most 2k")]
    ClassNotFound(u64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("unknown zoo entry `{0}`")]
    UnknownZoo(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CapacityExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
