use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q^m - 1 does not fit in 63 bits (q = {q}, m = {m})")]
    Overflow { q: u64, m: u32 },

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i128,
        lo: i128,
        hi: i128,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// A closed form was asked for outside the hypotheses it is proved under.
    #[error("closed form inapplicable: {0}")]
    ClosedFormInapplicable(String),

    #[error("Bose distance at delta = {delta} (the upper end of the closed-form range) is not covered by a closed form")]
    DeferredToPriorWork { delta: u64 },

    #[error("reduction to narrow sense needs b(q-1)+1 <= delta <= bound+1-b (b = {b}, delta = {delta}, q = {q})")]
    ReductionInapplicable { b: u64, delta: u64, q: u64 },

    #[error("n = {n} exceeds the desk-scale limit {limit}")]
    DeskScaleExceeded { n: u64, limit: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn out_of_range(
        what: &'static str,
        value: impl Into<i128>,
        lo: impl Into<i128>,
        hi: impl Into<i128>,
    ) -> Self {
        Error::OutOfRange {
            what,
            value: value.into(),
            lo: lo.into(),
            hi: hi.into(),
        }
    }

    /// True for the errors that mean "use the oracle instead".
    pub fn is_closed_form_gap(&self) -> bool {
        matches!(
            self,
            Error::ClosedFormInapplicable(_)
                | Error::DeferredToPriorWork { .. }
                | Error::ReductionInapplicable { .. }
                | Error::OutOfRange { .. }
        )
    }
}
