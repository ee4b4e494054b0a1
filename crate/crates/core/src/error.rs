use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different recursion tables")]
    TableMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("declared inverse of `{0}` does not cancel it")]
    BadInverse(char),

    #[error("section closure exceeded the state budget of {budget} words")]
    StateBudget { budget: usize },

    #[error("ball enumeration exceeded {limit} elements (last complete radius {last_complete_radius})")]
    BallBudget {
        limit: usize,
        last_complete_radius: u32,
    },

    #[error("element is not in the level-{level} stabilizer")]
    NotInStabilizer { level: u32 },

    #[error("element is not in the ball of radius {radius}")]
    NotInBall { radius: u32 },

    #[error("geodesic set truncated at {cap} words")]
    GeodesicTruncated { cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for the errors caused by a configured resource limit.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::StateBudget { .. } | Error::BallBudget { .. } | Error::GeodesicTruncated { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
