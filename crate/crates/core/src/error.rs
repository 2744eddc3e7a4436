use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("leading minor of order {order} is degenerate ({value:e})")]
    DegenerateMinor { order: usize, value: f64 },

    #[error("matrix size {0} is not supported here")]
    UnsupportedSize(usize),

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("not a proper rotation: {0}")]
    NotARotation(&'static str),

    #[error("Bloch vector norm {0} exceeds the unit ball")]
    RangeViolation(f64),

    #[error("sample of size {0} is too small for the asymptotic Kolmogorov distribution (need at least 100)")]
    SampleTooSmall(usize),

    #[error("empty sample")]
    EmptySample,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_domain(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            lo,
            hi,
        })
    }
}
