use rclg::coloring::ColoringError;
use rclg::io::ParseError;
use rclg::line_graph::LineGraphError;
use rclg::triangles::TriangleError;
use rclg::verify::VerifyError;
use rclg::GraphError;
use thiserror::Error;

/// A command failure, carrying the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, unmet preconditions.
    #[error("input error: {0}")]
    Input(String),
    /// A configured cap or time budget was reached.
    #[error("resource limit: {0}")]
    Limit(String),
    /// A construction could not be certified.
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 2,
            CliError::Input(_) => 3,
            CliError::Limit(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LineGraphError> for CliError {
    fn from(e: LineGraphError) -> Self {
        match e {
            LineGraphError::TooManyCliques(_) => CliError::Limit(e.to_string()),
            LineGraphError::Edgeless(_) => CliError::Input(e.to_string()),
        }
    }
}

impl From<TriangleError> for CliError {
    fn from(e: TriangleError) -> Self {
        match e {
            TriangleError::TooManyTriangles { .. } => CliError::Limit(e.to_string()),
            TriangleError::Invariant(_) => CliError::Failed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::TooManyColors { .. } | VerifyError::LimitExceeded { .. } => {
                CliError::Limit(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::Graph(e) => e.into(),
            ColoringError::LineGraph(e) => e.into(),
            ColoringError::Triangle(e) => e.into(),
            ColoringError::Verify(e) => e.into(),
            ColoringError::Invariant(_) | ColoringError::TraceMismatch(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}
