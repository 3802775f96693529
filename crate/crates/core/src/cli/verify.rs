//! Batch runner over the library's numerical invariants.

use nalgebra::DMatrix;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::schur_equivalence_check;
use crate::error::{domain, Result};
use crate::linalg::{hermitian_eigenvalues, unitarity_residual, RealMatrix};
use crate::ppt::{evaluate_criteria, partial_transpose_state, r_matrix, similarity_residual, t_matrix, trace_identity_check};
use crate::states::{classical_density, random_classical, random_density, seeded_rng};
use crate::tensor::{contraction_check, state_from_tensor, tensor_from_state, DensityMatrix};

use super::report::{num, sig12};

pub const MAX_N: usize = 10;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub seeds: usize,
    pub tol: f64,
    pub base_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    /// Largest residual seen, or the disagreement count for verdict checks.
    pub max_residual: f64,
    pub threshold: f64,
    pub cases: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub n_max: usize,
    pub seeds: usize,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

impl VerifySummary {
    pub fn to_text(&self) -> String {
        let mut s = format!("verify: N <= {}, {} seeds per case\n", self.n_max, self.seeds);
        for p in &self.properties {
            s.push_str(&format!(
                "{:<28} {} max_residual={} threshold={} cases={}\n",
                p.name,
                if p.pass { "PASS" } else { "FAIL" },
                num(p.max_residual),
                num(p.threshold),
                p.cases
            ));
        }
        s.push_str(&format!("overall: {}\n", if self.pass { "PASS" } else { "FAIL" }));
        s
    }
}

fn property(name: &str, residuals: &[f64], threshold: f64) -> PropertyResult {
    let max = residuals.iter().copied().fold(0.0, f64::max);
    PropertyResult {
        name: name.to_string(),
        max_residual: sig12(max),
        threshold,
        cases: residuals.len(),
        pass: residuals.iter().all(|r| *r <= threshold),
    }
}

fn cuts(n_max: usize) -> Vec<(usize, usize)> {
    (2..=n_max).flat_map(|n| (1..=n / 2).map(move |r| (n, r))).collect()
}

fn spectrum_gap(rho: &DensityMatrix, r: usize) -> Result<f64> {
    let pt = hermitian_eigenvalues(&partial_transpose_state(rho, r)?);
    let t = t_matrix(&tensor_from_state(rho)?, r)?;
    let lambda = t.lambda();
    Ok(pt
        .iter()
        .zip(t.eigenvalues())
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max))
}

fn random_admissible_y(seed: u64) -> RealMatrix {
    let mut rng = seeded_rng(seed);
    let mut y = DMatrix::from_fn(4, 4, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
    y = (&y + y.transpose()) * 0.5;
    y[(0, 0)] = y[(1, 1)] + y[(2, 2)] + y[(3, 3)];
    y
}

/// Runs every property and, if given, the similarity check on one extra state.
pub fn run_verify(opts: &VerifyOptions, fixture: Option<&DensityMatrix>) -> Result<VerifySummary> {
    if opts.n_max > MAX_N {
        return domain(format!(
            "N_max={} exceeds {MAX_N}; dense 2^N matrices beyond that do not fit the memory budget",
            opts.n_max
        ));
    }
    if opts.n_max < 2 {
        return domain("N_max must be at least 2");
    }
    if opts.seeds == 0 {
        return domain("need at least one seed");
    }
    let seeds: Vec<u64> = (0..opts.seeds as u64).map(|s| opts.base_seed.wrapping_add(s)).collect();
    let cases: Vec<(usize, usize, u64)> = cuts(opts.n_max)
        .into_iter()
        .flat_map(|(n, r)| seeds.iter().map(move |&s| (n, r, s)))
        .collect();

    let sim: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(n, r, s)| {
            let rho = random_density(n, s)?;
            Ok((similarity_residual(&rho, r)?, spectrum_gap(&rho, r)?))
        })
        .collect::<Result<_>>()?;
    let unitarity: Vec<f64> = cuts(opts.n_max)
        .par_iter()
        .map(|&(n, r)| Ok(unitarity_residual(r_matrix(n, r)?.matrix())))
        .collect::<Result<_>>()?;

    let states: Vec<(usize, u64)> = (2..=opts.n_max).flat_map(|n| seeds.iter().map(move |&s| (n, s))).collect();
    let tensor_checks: Vec<(f64, f64)> = states
        .par_iter()
        .map(|&(n, s)| {
            let rho = random_density(n, s)?;
            let x = tensor_from_state(&rho)?;
            let back = state_from_tensor(&x)?;
            let round_trip = crate::linalg::max_abs_diff(back.matrix(), rho.matrix());
            Ok((round_trip, contraction_check(&x)?))
        })
        .collect::<Result<_>>()?;

    let even: Vec<(usize, usize, u64)> = (2..=opts.n_max)
        .filter(|n| n % 2 == 0)
        .flat_map(|n| (1..=n / 2).flat_map(move |r| (0..2u64).map(move |kind| (n, r, kind))))
        .flat_map(|(n, r, kind)| seeds.iter().map(move |&s| (n, r, s * 2 + kind)))
        .collect();
    let schur: Vec<f64> = even
        .par_iter()
        .map(|&(n, r, s)| {
            // alternate entangled random states and classical mixtures
            let rho = if s % 2 == 0 {
                random_density(n, s)?
            } else {
                classical_density(n, &random_classical(n, 20, s)?)?.0
            };
            let e = schur_equivalence_check(&rho, r, opts.tol)?;
            Ok(if e.decisive && !e.agree { 1.0 } else { 0.0 })
        })
        .collect::<Result<_>>()?;

    let trace_id: Vec<f64> = seeds
        .iter()
        .map(|&s| trace_identity_check(&random_admissible_y(s)))
        .collect::<Result<_>>()?;

    let classical: Vec<f64> = states
        .par_iter()
        .map(|&(n, s)| {
            let (rho, _) = classical_density(n, &random_classical(n, 50, s)?)?;
            let report = evaluate_criteria(&rho, opts.tol)?;
            Ok(if report.all_pass() { 0.0 } else { 1.0 })
        })
        .collect::<Result<_>>()?;

    let mut properties = vec![
        property("similarity", &sim.iter().map(|p| p.0).collect::<Vec<_>>(), 1e-11),
        property("spectrum_equivalence", &sim.iter().map(|p| p.1).collect::<Vec<_>>(), 1e-10),
        property("r_unitarity", &unitarity, 1e-12),
        property("tensor_round_trip", &tensor_checks.iter().map(|p| p.0).collect::<Vec<_>>(), 1e-11),
        property("contraction", &tensor_checks.iter().map(|p| p.1).collect::<Vec<_>>(), 1e-12),
        property("schur_equivalence", &schur, 0.0),
        property("trace_identity", &trace_id, 1e-13),
        property("classical_necessity", &classical, 0.0),
    ];
    if let Some(rho) = fixture {
        let n = rho.n_qubits();
        let res: Vec<f64> = (1..=n / 2).map(|r| similarity_residual(rho, r)).collect::<Result<_>>()?;
        properties.push(property("fixture_similarity", &res, 1e-11));
    }
    let pass = properties.iter().all(|p| p.pass);
    Ok(VerifySummary { n_max: opts.n_max, seeds: opts.seeds, properties, pass })
}
