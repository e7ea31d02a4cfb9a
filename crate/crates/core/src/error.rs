use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{name} = {value} is outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("delay gradient is undefined for two samples at the same window ({window})")]
    UndefinedGradient { window: f64 },

    #[error("delay-doubling rule has no delay measured at window 1")]
    MissingBaseline,

    #[error("unknown scenario `{name}`; valid names are: {}", valid.join(", "))]
    UnknownScenario {
        name: String,
        valid: Vec<&'static str>,
    },

    #[error("trace is empty")]
    EmptyTrace,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("scenario file: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("scenario serialization: {0}")]
    TomlSer(#[from] toml::ser::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
