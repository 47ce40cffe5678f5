use gcover_group::GroupError;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CalcError {
    #[error("label lists differ in length: {expected} cut labels, {found} lift labels")]
    Arity { expected: usize, found: usize },
    #[error("cut labels of an arity-{0} block do not multiply to the identity")]
    ProductNotIdentity(usize),
    #[error("slot {slot} out of range for a block of arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("no block b{0}")]
    MissingBlock(u32),
    #[error("no cut c{0}")]
    MissingCut(u32),
    #[error("cut c{0} does not join a last slot to a first slot")]
    NotInPosition(u32),
    #[error("cut c{cut} cannot be erased: {reason}")]
    NotErasable { cut: u32, reason: String },
    #[error("cut c{cut} is unmatched: lift labels {left} and {right} differ")]
    Unmatched { cut: u32, left: String, right: String },
    #[error("bad split position {k} for a block of arity {arity}")]
    BadSplit { k: usize, arity: usize },
    #[error("bad index {i} for braiding a block of arity {arity}")]
    BadBraid { i: usize, arity: usize },
    #[error("bad slot ranges: {0}")]
    BadRange(String),
    #[error("move {0} is not defined on a closed sphere")]
    ClosedSphere(String),
    #[error("{0}")]
    NoInverse(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structurally invalid parameterization: {0}")]
    Structure(String),
    #[error("target is not realizable: {0}")]
    Unrealizable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
