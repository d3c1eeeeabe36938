use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime power supported as a field order (q <= 4096)")]
    InvalidFieldOrder(u64),
    #[error("operands live over different fields (q={left} vs q={right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a non-constant polynomial is required")]
    ConstantPolynomial,
    #[error("a monic polynomial is required")]
    NotMonic,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("cannot parse polynomial text `{0}`")]
    Parse(String),
    #[error("the trivial character has no L-polynomial (zeta_A has a pole)")]
    TrivialCharacter,
    #[error("a primitive character is required")]
    NotPrimitive,
    #[error("modulus has no primitive characters")]
    NoPrimitiveCharacters,
    #[error("argument lies on the branch cut or at zero")]
    BranchCut,
    #[error("root finder did not converge: {0}")]
    RootFinding(String),
    #[error("evaluation point is a zero of the L-function")]
    AtZero,
    #[error("evaluation point is a pole")]
    Pole,
    #[error("A1*A2*A3 != B1*B2*B3")]
    ProductMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
