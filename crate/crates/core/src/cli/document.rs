//! The JSON state document read by `analyze` and written by `generate`.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::linalg::{max_abs_diff, CMatrix};
use crate::states::{matrix_from_rows, matrix_to_rows, ComplexRows, StateSpec};
use crate::symmetric::symmetric_isometry;
use crate::tensor::DensityMatrix;

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable that replaces the seed of random state specs.
pub const SEED_ENV: &str = "SYMPPT_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub schema_version: String,
    /// Number of qubits, `N = 2j`.
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dicke_matrix: Option<ComplexRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<StateSpec>,
    /// `2^N × 2^N` matrix; only read when computational input is enabled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computational_matrix: Option<ComplexRows>,
    /// Provenance of a generated matrix. Not a representation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_from: Option<StateSpec>,
}

/// A document turned into a validated state.
#[derive(Debug, Clone)]
pub struct ResolvedState {
    pub rho: DensityMatrix,
    pub source: &'static str,
    pub spec: Option<StateSpec>,
    /// `‖ρ - Π ρ Π‖_max` for computational input, `Π` the symmetric projector.
    pub projection_residual: Option<f64>,
    pub warnings: Vec<String>,
}

impl StateDocument {
    pub fn from_matrix(rho: &DensityMatrix, generated_from: Option<StateSpec>) -> Self {
        StateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: rho.n_qubits(),
            dicke_matrix: Some(matrix_to_rows(rho.matrix())),
            spec: None,
            computational_matrix: None,
            generated_from,
        }
    }

    pub fn from_spec(spec: StateSpec) -> Result<Self> {
        let n = spec
            .n_qubits()
            .ok_or_else(|| Error::Validation("spec does not determine N".into()))?;
        Ok(StateDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n,
            dicke_matrix: None,
            spec: Some(spec),
            computational_matrix: None,
            generated_from: None,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn resolve(&self, allow_computational: bool, seed_override: Option<u64>) -> Result<ResolvedState> {
        if self.schema_version != SCHEMA_VERSION {
            return validation(format!("unsupported schema_version '{}'", self.schema_version));
        }
        let present = [self.dicke_matrix.is_some(), self.spec.is_some(), self.computational_matrix.is_some()]
            .iter()
            .filter(|&&p| p)
            .count();
        if present != 1 {
            return validation(format!(
                "document must carry exactly one of dicke_matrix, spec, computational_matrix (found {present})"
            ));
        }
        if self.n == 0 {
            return validation("N must be at least 1");
        }
        if let Some(rows) = &self.dicke_matrix {
            if rows.len() != self.n + 1 {
                return validation(format!("dicke_matrix has {} rows, expected N+1 = {}", rows.len(), self.n + 1));
            }
            let rho = DensityMatrix::new(matrix_from_rows(rows)?)?;
            return Ok(ResolvedState { rho, source: "dicke_matrix", spec: None, projection_residual: None, warnings: vec![] });
        }
        if let Some(spec) = &self.spec {
            let spec = match seed_override {
                Some(seed) => spec.clone().with_seed(seed),
                None => spec.clone(),
            };
            if spec.n_qubits() != Some(self.n) {
                return validation(format!("spec describes N={:?} but document says N={}", spec.n_qubits(), self.n));
            }
            let rho = spec.build()?;
            return Ok(ResolvedState { rho, source: "spec", spec: Some(spec), projection_residual: None, warnings: vec![] });
        }
        let rows = self.computational_matrix.as_ref().expect("checked above");
        if !allow_computational {
            return validation("computational_matrix input requires --computational");
        }
        if self.n > 12 {
            return validation(format!("N={} is too large for computational input", self.n));
        }
        if rows.len() != 1 << self.n {
            return validation(format!("computational_matrix has {} rows, expected 2^N = {}", rows.len(), 1usize << self.n));
        }
        let full = matrix_from_rows(rows)?;
        let (rho, residual) = project_to_symmetric(&full, self.n)?;
        let mut warnings = vec![];
        if residual > 1e-12 {
            warnings.push(format!(
                "input is not symmetric; projected onto the symmetric subspace (residual {residual:.3e})"
            ));
        }
        Ok(ResolvedState {
            rho,
            source: "computational_matrix",
            spec: None,
            projection_residual: Some(residual),
            warnings,
        })
    }
}

/// Compresses a computational-basis state to the Dicke basis and reports how
/// far it was from its symmetric projection. The compressed matrix is
/// renormalized if the projection lost weight.
pub fn project_to_symmetric(full: &CMatrix, n: usize) -> Result<(DensityMatrix, f64)> {
    let p = symmetric_isometry(n)?;
    let compressed = p.compress_operator(full);
    let residual = max_abs_diff(full, &p.embed_operator(&compressed));
    let rho = DensityMatrix::normalized(compressed)?;
    Ok((rho, residual))
}
