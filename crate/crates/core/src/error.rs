use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter violates a family's parity, divisibility or range precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The enclosure is too wide for the requested reconstruction; retry with
    /// more precision.
    #[error("precision exhausted: interval width exceeds reconstruction requirement at {precision_bits} bits")]
    PrecisionExhausted { precision_bits: u32 },

    #[error("ambiguous reconstruction: scaled interval admits more than one integer")]
    AmbiguousReconstruction,

    /// No integer lies in the scaled enclosure: the denominator bound is wrong,
    /// which points to a formula bug.
    #[error("no integer within the scaled interval (denominator bound {bound})")]
    NoIntegerNearby { bound: String },

    /// Two evaluation routes of the same identity disagree.
    #[error("identity mismatch in {what} at order {order}")]
    IdentityMismatch { what: &'static str, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
