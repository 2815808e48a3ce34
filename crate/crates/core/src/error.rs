use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function it was passed to.
    #[error("{name} = {value} is outside the valid domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(&'static str),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(&'static str),

    /// The edge-angle objective has no + to - sign change of the radius
    /// derivative on the scanned interval.
    #[error("no optimal edge elevation angle exists for e_r = {e_r}")]
    NoOptimum { e_r: f64 },

    #[error("{0} requires at least one point")]
    Empty(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
