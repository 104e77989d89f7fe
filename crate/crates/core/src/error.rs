use core::fmt;

/// Errors raised by grid construction, configuration and time stepping.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Spatial dimension outside `1..=3`.
    InvalidDimension(usize),
    /// Number of per-axis cell counts does not match the dimension.
    CellCountMismatch {
        /// requested dimension
        dim: usize,
        /// number of cell counts supplied
        given: usize,
    },
    /// An axis has fewer than two interior cells.
    TooFewCells {
        /// offending axis (0 = x)
        axis: usize,
        /// cell count supplied
        cells: usize,
    },
    /// A configuration parameter that must be strictly positive was not.
    NonPositive {
        /// parameter name as used in config files
        name: &'static str,
        /// offending value
        value: f64,
    },
    /// `floor(T / k) < 2`; the two-step method needs at least two steps.
    TooFewSteps {
        /// number of whole steps that fit into the final time
        steps: usize,
    },
    /// Two fields living on different grids were combined.
    GridMismatch,
    /// A verification study was set up outside its valid regime.
    InvalidStudy(&'static str),
    /// Projection hit a point where the intermediate field is (nearly) zero.
    ProjectionFailure {
        /// time step index at which the failure happened (0 when unknown)
        step: usize,
        /// interior multi-index (1-based, ghost layer at 0)
        index: [usize; 3],
        /// |m̃| at that point
        magnitude: f64,
    },
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(d) => write!(f, "dimension must be 1, 2 or 3 (got {d})"),
            Error::CellCountMismatch { dim, given } => {
                write!(f, "expected {dim} cell counts, got {given}")
            }
            Error::TooFewCells { axis, cells } => {
                write!(f, "axis {axis} has {cells} cells; at least 2 are required")
            }
            Error::NonPositive { name, value } => write!(f, "{name} must be positive (got {value})"),
            Error::TooFewSteps { steps } => {
                write!(f, "T/dt allows only {steps} whole step(s); at least 2 are required")
            }
            Error::InvalidStudy(why) => write!(f, "invalid study: {why}"),
            Error::GridMismatch => f.write_str("fields live on different grids"),
            Error::ProjectionFailure { step, index, magnitude } => write!(
                f,
                "projection failed at step {step}, point {index:?}: |m~| = {magnitude:e}"
            ),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}
