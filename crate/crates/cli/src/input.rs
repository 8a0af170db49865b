use std::fs;
use std::path::Path;

use mixent::states::DensityMatrix;
use mixent::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{describe_invalid_state, CliError};

/// On-disk matrix: real and imaginary parts as 4x4 row-major arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix4) -> Self {
        let rows = m.rows();
        Self {
            re: rows.iter().map(|r| r.iter().map(|z| z.re).collect()).collect(),
            im: rows.iter().map(|r| r.iter().map(|z| z.im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix4, CliError> {
        let grid = |name: &str, a: &[Vec<f64>]| -> Result<[[f64; 4]; 4], CliError> {
            if a.len() != 4 || a.iter().any(|r| r.len() != 4) {
                return Err(CliError::Validation(format!("parse: \"{name}\" must be a 4x4 array")));
            }
            Ok(std::array::from_fn(|i| std::array::from_fn(|j| a[i][j])))
        };
        Ok(Matrix4::from_parts(grid("re", &self.re)?, grid("im", &self.im)?))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain arrays serialise")
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix4, CliError> {
    let parsed: MatrixJson =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("parse: {e}")))?;
    parsed.to_matrix()
}

pub fn validate(m: Matrix4) -> Result<DensityMatrix, CliError> {
    DensityMatrix::new(m).map_err(|e| CliError::Validation(describe_invalid_state(&e)))
}

/// Reads and validates a state file; parse and invariant failures are both
/// input-validation errors.
pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    validate(parse_matrix(&text)?)
}
