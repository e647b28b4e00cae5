use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a function of L: odd power of L^(1/2) present")]
    OddPower,

    #[error("pole at the evaluation point")]
    Pole,

    #[error("constant term must be {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("series shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid partition sigma: {0}")]
    InvalidSigma(String),

    #[error("vertex {0} carries a loop; it is not a diagonal of a parallelogram")]
    LoopVertex(usize),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown arrow {0}")]
    UnknownArrow(String),

    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("cut validity check failed for arrow {0}")]
    InvalidCut(String),

    #[error("quiver has no cut attached")]
    MissingCut,

    #[error("stability parameter is not generic: orthogonal to root {root:?}")]
    NotGeneric { root: Vec<u32> },

    #[error("imaginary root has no parity")]
    ImaginaryRoot,

    #[error("monomial {0:?} is not expressible in the point/curve variables")]
    NotCurveMonomial(Vec<u32>),

    #[error("search space of {estimate} tuples exceeds budget {budget}")]
    BudgetExceeded { estimate: f64, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
