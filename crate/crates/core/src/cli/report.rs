//! The `analyze` report and its text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::correlations::correlation_matrix;
use crate::error::Result;
use crate::ppt::{evaluate_criteria_with, BipartitionResult};
use crate::states::StateSpec;
use crate::tensor::{contraction_check, tensor_from_state, SymmetricTensor};

use super::document::ResolvedState;

/// Rounds to 12 significant digits so the text and JSON forms print the same
/// numbers.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Text form of a report number, spelled exactly as the JSON writer spells it.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub check_similarity: bool,
    pub correlations: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { tol: crate::ppt::DEFAULT_TOL, check_similarity: true, correlations: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<StateSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorSummary {
    /// `X_{a 0...0}` for `a = 1, 2, 3`: the mean spin direction.
    pub first_moments: [f64; 3],
    /// `X_{ab 0...0}` for `a, b = 1..3`, when `N >= 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_moments: Option<[[f64; 3]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction_violation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PptEntry {
    pub r: usize,
    pub lambda: f64,
    pub min_eigenvalue: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similarity_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationEntry {
    pub r: usize,
    /// Minimum eigenvalue of the lower-right block of `C^(r)`.
    pub min_eigenvalue: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub input: InputEcho,
    pub n: usize,
    pub tol: f64,
    pub tensor_summary: TensorSummary,
    pub ppt: Vec<PptEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlations: Option<Vec<CorrelationEntry>>,
    pub overall: Verdict,
    /// The criteria are necessary and sufficient for classicality (N = 2, 3).
    pub sufficient: bool,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn passes(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "symmetric state: N = {} qubits (j = {})", self.n, self.n as f64 / 2.0);
        let _ = writeln!(s, "input: {}", self.input.source);
        if let Some(res) = self.input.projection_residual {
            let _ = writeln!(s, "projection residual: {}", num(res));
        }
        let fm = self.tensor_summary.first_moments;
        let _ = writeln!(s, "first moments: [{}, {}, {}]", num(fm[0]), num(fm[1]), num(fm[2]));
        if let Some(sm) = self.tensor_summary.second_moments {
            for row in sm {
                let _ = writeln!(s, "second moments: [{}, {}, {}]", num(row[0]), num(row[1]), num(row[2]));
            }
        }
        if let Some(cv) = self.tensor_summary.contraction_violation {
            let _ = writeln!(s, "contraction violation: {}", num(cv));
        }
        let _ = writeln!(s, "tolerance: {}", num(self.tol));
        for p in &self.ppt {
            let _ = write!(
                s,
                "PT({}:{}) r={} lambda={} min_eigenvalue={} {}",
                self.n - p.r,
                p.r,
                p.r,
                num(p.lambda),
                num(p.min_eigenvalue),
                p.verdict.as_str()
            );
            if let Some(res) = p.similarity_residual {
                let _ = write!(s, " similarity_residual={}", num(res));
            }
            s.push('\n');
        }
        if let Some(cs) = &self.correlations {
            for c in cs {
                let _ = writeln!(s, "C({}) min_eigenvalue={} {}", c.r, num(c.min_eigenvalue), c.verdict.as_str());
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "overall: {}", self.overall.as_str());
        let _ = writeln!(
            s,
            "sufficient: {} ({})",
            self.sufficient,
            if self.sufficient {
                "PPT is necessary and sufficient for N = 2, 3"
            } else {
                "criteria are necessary only; PPT-entangled symmetric states exist for N >= 4"
            }
        );
        s
    }
}

fn tensor_summary(x: &SymmetricTensor) -> Result<TensorSummary> {
    let n = x.rank();
    let with_rest = |mut key: [usize; 4]| {
        key[0] += n - key.iter().sum::<usize>();
        x.get(key)
    };
    let unit = |a: usize| {
        let mut k = [0; 4];
        k[a] = 1;
        k
    };
    let first_moments = [1, 2, 3].map(|a| sig12(with_rest(unit(a))));
    let (second_moments, contraction_violation) = if n >= 2 {
        let sm = [1, 2, 3].map(|a| {
            [1, 2, 3].map(|b| {
                let mut k = unit(a);
                k[b] += 1;
                sig12(with_rest(k))
            })
        });
        (Some(sm), Some(sig12(contraction_check(x)?)))
    } else {
        (None, None)
    };
    Ok(TensorSummary { first_moments, second_moments, contraction_violation })
}

/// Runs the PPT and correlation criteria on a resolved state.
pub fn analyze(state: &ResolvedState, opts: &AnalyzeOptions) -> Result<ReportDocument> {
    let rho = &state.rho;
    let n = rho.n_qubits();
    let x = tensor_from_state(rho)?;
    let criteria = evaluate_criteria_with(rho, opts.tol, opts.check_similarity)?;
    let ppt: Vec<PptEntry> = criteria
        .bipartitions
        .iter()
        .map(|b: &BipartitionResult| PptEntry {
            r: b.r,
            lambda: sig12(b.lambda),
            min_eigenvalue: sig12(b.min_eigenvalue),
            verdict: Verdict::from_bool(b.pass),
            similarity_residual: b.similarity_residual.map(sig12),
        })
        .collect();
    let correlations = if opts.correlations {
        let mut out = Vec::new();
        for r in 1..=n / 2 {
            let min = correlation_matrix(&x, r)?.schur_block().min_eigenvalue();
            out.push(CorrelationEntry { r, min_eigenvalue: sig12(min), verdict: Verdict::from_bool(min >= -opts.tol) });
        }
        Some(out)
    } else {
        None
    };
    let mut warnings = state.warnings.clone();
    if n % 2 == 1 && opts.correlations && n >= 3 {
        warnings.push("N is odd: correlation criteria are reported but only tied to PPT of even reduced states".into());
    }
    let all_pass = criteria.all_pass()
        && correlations.as_ref().is_none_or(|cs| cs.iter().all(|c| c.verdict == Verdict::Pass));
    Ok(ReportDocument {
        schema_version: super::document::SCHEMA_VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input: InputEcho {
            source: state.source.to_string(),
            spec: state.spec.clone(),
            projection_residual: state.projection_residual.map(sig12),
        },
        n,
        tol: opts.tol,
        tensor_summary: tensor_summary(&x)?,
        ppt,
        correlations,
        overall: Verdict::from_bool(all_pass),
        sufficient: criteria.sufficient,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_twelve_digits() {
        assert_eq!(sig12(0.1234567890123456), 0.123456789012);
        assert_eq!(sig12(-2.5e-17), -2.5e-17);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(num(1e-10), "1e-10");
        assert_eq!(num(-4.0), "-4.0");
    }
}
