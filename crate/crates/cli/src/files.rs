//! On-disk JSON formats. Complex entries are `[re, im]` pairs, matrices are
//! row-major arrays of rows.

use opgns::{BipartiteStateF64, CMat, Effect, HermitianOperator, ObservableF64, Tolerances, C};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Largest local dimension the commands accept.
pub const MAX_DIM: usize = 8;

pub type Entry = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub schema_version: String,
    pub dim: usize,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolFile {
    pub schema_version: String,
    pub dim: usize,
    /// Each observable is a list of effect matrices.
    pub observables: Vec<Vec<Vec<Vec<Entry>>>>,
}

pub fn check_dim(dim: usize) -> Result<(), CliError> {
    if dim == 0 {
        return Err(CliError::Usage("dimension must be at least 1".into()));
    }
    if dim > MAX_DIM {
        return Err(CliError::Usage(format!(
            "dimension {dim} exceeds the limit of {MAX_DIM}"
        )));
    }
    Ok(())
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

fn check_schema(version: &str) -> Result<(), CliError> {
    if version != SCHEMA_VERSION {
        return Err(CliError::Parse(format!(
            "schema_version: expected \"{SCHEMA_VERSION}\", found \"{version}\""
        )));
    }
    Ok(())
}

pub fn matrix_from_rows(rows: &[Vec<Entry>], n: usize, field: &str) -> Result<CMat<f64>, CliError> {
    if rows.len() != n {
        return Err(CliError::Parse(format!(
            "{field}: expected {n} rows, found {}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Parse(format!(
                "{field}[{i}]: expected {n} entries, found {}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|z| !z[0].is_finite() || !z[1].is_finite()) {
            return Err(CliError::Parse(format!("{field}[{i}][{j}]: entry is not finite")));
        }
    }
    Ok(CMat::from_fn(n, n, |i, j| C::new(rows[i][j][0], rows[i][j][1])))
}

pub fn matrix_to_rows(m: &CMat<f64>) -> Vec<Vec<Entry>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

impl StateFile {
    pub fn from_state(phi: &BipartiteStateF64) -> Self {
        StateFile {
            schema_version: SCHEMA_VERSION.into(),
            dim: phi.dim(),
            matrix: matrix_to_rows(phi.matrix()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: StateFile = parse_json(text)?;
        check_schema(&file.schema_version)?;
        check_dim(file.dim)?;
        Ok(file)
    }

    pub fn to_matrix(&self) -> Result<CMat<f64>, CliError> {
        matrix_from_rows(&self.matrix, self.dim * self.dim, "matrix")
    }

    pub fn to_state(&self, tol: &Tolerances<f64>) -> Result<BipartiteStateF64, CliError> {
        BipartiteStateF64::new_with_tol(self.dim, self.to_matrix()?, tol)
            .map_err(|e| CliError::Parse(format!("matrix: {e}")))
    }
}

impl PoolFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: PoolFile = parse_json(text)?;
        check_schema(&file.schema_version)?;
        check_dim(file.dim)?;
        if file.observables.is_empty() {
            return Err(CliError::Parse("observables: pool is empty".into()));
        }
        Ok(file)
    }

    pub fn to_observables(&self, tol: &Tolerances<f64>) -> Result<Vec<ObservableF64>, CliError> {
        self.observables
            .iter()
            .enumerate()
            .map(|(k, effects)| {
                let ops = effects
                    .iter()
                    .enumerate()
                    .map(|(e, rows)| {
                        let field = format!("observables[{k}][{e}]");
                        let m = matrix_from_rows(rows, self.dim, &field)?;
                        HermitianOperator::new_with_tol(m, tol)
                            .and_then(|h| Effect::new_with_tol(h, tol))
                            .map_err(|err| CliError::Parse(format!("{field}: {err}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ObservableF64::new_with_tol(ops, tol)
                    .map_err(|err| CliError::Parse(format!("observables[{k}]: {err}")))
            })
            .collect()
    }
}
