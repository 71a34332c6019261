use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("card `{card_id}` failed validation: {}", .violations.join("; "))]
    InvalidCard {
        card_id: String,
        violations: Vec<String>,
    },

    #[error("unknown model spec `{family_id}/{spec_id}`")]
    UnknownSpec { family_id: String, spec_id: String },

    #[error("prediction outside the domain of `{spec_id}`: {reason}")]
    Domain { spec_id: String, reason: String },

    #[error("candidate `{0}` is unfittable: every point is outside the model domain")]
    Unfittable(String),

    #[error("input mismatch: {0}")]
    Input(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown obstruction term `{0}`")]
    UnknownTerm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
