//! Partial transposition and its tensor form.
//!
//! For a symmetric state of `N` qubits and a cut into the first `N - r` and
//! the last `r` qubits, the partial transpose on the last `r` qubits satisfies
//!
//! ```text
//! R^(r)† ρ^PT R^(r) = 2^{-(N-r)} T^(r)
//! ```
//!
//! where `T^(r)` is built from tensor entries alone and `R^(r)` is a fixed
//! unitary made of Kronecker deltas and Pauli entries. `T^(r) ⪰ 0` is therefore
//! the PPT criterion for that cut.
//!
//! Both `T^(r)` and the columns of `R^(r)` are indexed by `(mu, i)` with
//! `mu = (mu_1..mu_r)` in base 4 and `i = (i_1..i_{N-2r})` in base 2, `mu`-major.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::linalg::{
    c, hermitian_eigenvalues, max_abs_diff, CMatrix, RealMatrix, ONE, ZERO,
};
use crate::states::embed_density;
use crate::symmetric::{MultisetKey, PauliIndex};
use crate::tensor::{tensor_from_state, DensityMatrix, SymmetricTensor};

/// Default pass/fail tolerance on the minimum eigenvalue.
pub const DEFAULT_TOL: f64 = 1e-10;

#[inline]
fn bit(x: usize, width: usize, k: usize) -> usize {
    // k is 0-based from the most significant end
    (x >> (width - 1 - k)) & 1
}

fn check_cut(n: usize, r: usize) -> Result<()> {
    if n < 2 || r == 0 || r > n / 2 {
        return domain(format!("bipartition size r={r} not in 1..={} for N={n}", n / 2));
    }
    Ok(())
}

/// Transposes the last `r` qubits of a `2^N × 2^N` operator.
pub fn partial_transpose(op: &CMatrix, n: usize, r: usize) -> Result<CMatrix> {
    let dim = 1usize << n;
    if op.nrows() != dim || op.ncols() != dim {
        return domain(format!("operator of shape {:?} is not {n}-qubit", op.shape()));
    }
    if r > n {
        return domain(format!("cannot transpose {r} of {n} qubits"));
    }
    let lo = (1usize << r) - 1;
    let hi = !lo;
    Ok(CMatrix::from_fn(dim, dim, |a, b| op[((a & hi) | (b & lo), (b & hi) | (a & lo))]))
}

/// Partial transpose `PT(N-r : r)` of a Dicke-basis state after embedding.
pub fn partial_transpose_state(rho: &DensityMatrix, r: usize) -> Result<CMatrix> {
    let n = rho.n_qubits();
    partial_transpose(&embed_density(rho)?, n, r)
}

/// Unitary `R^(r)` conjugating the partial transpose into `λ T^(r)`.
#[derive(Debug, Clone)]
pub struct RMatrix {
    matrix: CMatrix,
    n: usize,
    r: usize,
}

impl RMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

/// `R^(r)_{a, (mu, i)} = 2^{-r/2} Π_{k<=N-2r} δ(a_k, i_k) Π_{k<=r} σ^{mu_k}_{a_{N-2r+k}, a_{N-r+k}}`.
pub fn r_matrix(n: usize, r: usize) -> Result<RMatrix> {
    check_cut(n, r)?;
    let pairing: Vec<(usize, usize)> = (0..r).map(|k| (n - 2 * r + k, n - r + k)).collect();
    r_matrix_with_pairing(n, r, &pairing)
}

/// `R^(r)` with an explicit pairing: `pairing[k] = (p, q)` puts `σ^{mu_k}` on
/// qubits `p` (untransposed) and `q` (transposed), 0-based. The untransposed
/// qubits not named in the pairing carry the deltas, in ascending order.
pub fn r_matrix_with_pairing(n: usize, r: usize, pairing: &[(usize, usize)]) -> Result<RMatrix> {
    check_cut(n, r)?;
    if pairing.len() != r {
        return domain(format!("pairing has {} pairs, expected {r}", pairing.len()));
    }
    let mut used = vec![false; n];
    for &(p, q) in pairing {
        if p >= n - r || q < n - r || q >= n || used[p] || used[q] {
            return domain(format!("invalid pairing {pairing:?} for N={n}, r={r}"));
        }
        used[p] = true;
        used[q] = true;
    }
    let delta_qubits: Vec<usize> = (0..n - r).filter(|&q| !used[q]).collect();
    let free = n - 2 * r;
    let dim = 1usize << n;
    let norm = 2f64.powf(-(r as f64) / 2.0);
    let mut matrix = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mu_block = col >> free;
        let i_block = col & ((1 << free) - 1);
        let mus: Vec<PauliIndex> = (0..r)
            .map(|k| PauliIndex::try_from((mu_block >> (2 * (r - 1 - k))) & 3).expect("base-4 digit"))
            .collect();
        'rows: for a in 0..dim {
            for (k, &q) in delta_qubits.iter().enumerate() {
                if bit(a, n, q) != bit(i_block, free, k) {
                    continue 'rows;
                }
            }
            let mut v = c(norm, 0.0);
            for (k, &(p, q)) in pairing.iter().enumerate() {
                v *= mus[k].entry(bit(a, n, p), bit(a, n, q));
                if v == ZERO {
                    continue 'rows;
                }
            }
            matrix[(a, col)] = v;
        }
    }
    Ok(RMatrix { matrix, n, r })
}

/// The matrix `T^(r)` of a symmetric tensor.
#[derive(Debug, Clone)]
pub struct TMatrix {
    matrix: CMatrix,
    n: usize,
    r: usize,
}

impl TMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Similarity factor `λ = 2^{-(N-r)}`.
    pub fn lambda(&self) -> f64 {
        lambda(self.n, self.r)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Real part, for equal bipartitions where `T` is real symmetric.
    pub fn real_part(&self) -> RealMatrix {
        self.matrix.map(|z| z.re)
    }
}

pub fn lambda(n: usize, r: usize) -> f64 {
    2f64.powi(-((n - r) as i32))
}

/// Pauli weights `Π_k σ^{τ_k}_{i_k, i'_k}` for fixed bit strings `i`, `i'`,
/// grouped by the multiset of `τ`. Only two `τ` values survive per position.
fn tau_weights(i: usize, ip: usize, width: usize) -> Vec<(MultisetKey, Complex64)> {
    let mut acc: BTreeMap<MultisetKey, Complex64> = BTreeMap::new();
    acc.insert([0; 4], ONE);
    for k in 0..width {
        let (a, b) = (bit(i, width, k), bit(ip, width, k));
        let options: [(usize, Complex64); 2] = if a == b {
            [(0, ONE), (3, PauliIndex::Z.entry(a, b))]
        } else {
            [(1, ONE), (2, PauliIndex::Y.entry(a, b))]
        };
        let mut next: BTreeMap<MultisetKey, Complex64> = BTreeMap::new();
        for (key, w) in &acc {
            for &(tau, coeff) in &options {
                let mut k2 = *key;
                k2[tau] += 1;
                *next.entry(k2).or_insert(ZERO) += w * coeff;
            }
        }
        acc = next;
    }
    acc.into_iter().filter(|(_, w)| *w != ZERO).collect()
}

fn digits_key(block: usize, r: usize) -> MultisetKey {
    let mut key = [0usize; 4];
    for k in 0..r {
        key[(block >> (2 * k)) & 3] += 1;
    }
    key
}

/// `T^(r)_{(mu,i),(nu,i')} = Σ_τ X_{τ_1..τ_{N-2r} mu nu} Π_k σ^{τ_k}_{i_k, i'_k}`.
pub fn t_matrix(x: &SymmetricTensor, r: usize) -> Result<TMatrix> {
    let n = x.rank();
    check_cut(n, r)?;
    let free = n - 2 * r;
    let blocks = 1usize << (2 * r);
    let bits = 1usize << free;
    let dim = blocks * bits;
    let mu_keys: Vec<MultisetKey> = (0..blocks).map(|b| digits_key(b, r)).collect();
    let mut matrix = CMatrix::zeros(dim, dim);
    for i in 0..bits {
        for ip in 0..bits {
            let weights = tau_weights(i, ip, free);
            for mu in 0..blocks {
                for nu in 0..blocks {
                    let mut v = ZERO;
                    for (tau_key, w) in &weights {
                        let key: MultisetKey = std::array::from_fn(|s| tau_key[s] + mu_keys[mu][s] + mu_keys[nu][s]);
                        v += w * x.get(key);
                    }
                    matrix[(mu * bits + i, nu * bits + ip)] = v;
                }
            }
        }
    }
    Ok(TMatrix { matrix, n, r })
}

/// `‖R† ρ^PT R - λ T^(r)‖_max` with `λ = 2^{-(N-r)}`.
pub fn similarity_residual(rho: &DensityMatrix, r: usize) -> Result<f64> {
    let n = rho.n_qubits();
    check_cut(n, r)?;
    let x = tensor_from_state(rho)?;
    let embedded = embed_density(rho)?;
    similarity_residual_parts(&embedded, &x, r)
}

fn similarity_residual_parts(embedded: &CMatrix, x: &SymmetricTensor, r: usize) -> Result<f64> {
    let n = x.rank();
    let pt = partial_transpose(embedded, n, r)?;
    let rm = r_matrix(n, r)?;
    let t = t_matrix(x, r)?;
    let lhs = rm.matrix().adjoint() * pt * rm.matrix();
    Ok(max_abs_diff(&lhs, &t.matrix().scale(t.lambda())))
}

/// Largest violation of `(1/4) Σ_{τ,τ'} y_{ττ'} tr(σ^mu σ^τ σ^nu σ^τ') = y_{mu nu}`
/// over all `mu, nu`, for real symmetric `y` with `Σ_a y_aa = y_00`.
pub fn trace_identity_check(y: &RealMatrix) -> Result<f64> {
    if y.shape() != (4, 4) {
        return domain(format!("expected a 4×4 matrix, got {:?}", y.shape()));
    }
    let scale = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if (y - y.transpose()).iter().any(|v| v.abs() > 1e-12 * scale) {
        return domain("matrix is not symmetric");
    }
    let gap = y[(1, 1)] + y[(2, 2)] + y[(3, 3)] - y[(0, 0)];
    if gap.abs() > 1e-12 * scale {
        return domain(format!("trace condition violated by {gap:.3e}"));
    }
    let sigma: Vec<CMatrix> = PauliIndex::ALL.iter().map(|&p| crate::symmetric::pauli(p)).collect();
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut lhs = ZERO;
            for tau in 0..4 {
                for taup in 0..4 {
                    let prod = &sigma[mu] * &sigma[tau] * &sigma[nu] * &sigma[taup];
                    lhs += (prod[(0, 0)] + prod[(1, 1)]) * y[(tau, taup)];
                }
            }
            worst = worst.max((lhs * 0.25 - c(y[(mu, nu)], 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Verdict for one bipartition `PT(N-r : r)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartitionResult {
    pub r: usize,
    pub lambda: f64,
    pub min_eigenvalue: f64,
    pub pass: bool,
    pub similarity_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub tol: f64,
    /// PPT across `1 : N-1` is also sufficient for classicality (N = 2, 3).
    pub sufficient: bool,
    pub bipartitions: Vec<BipartitionResult>,
}

impl CriterionReport {
    pub fn all_pass(&self) -> bool {
        self.bipartitions.iter().all(|b| b.pass)
    }

    pub fn get(&self, r: usize) -> Option<&BipartitionResult> {
        self.bipartitions.iter().find(|b| b.r == r)
    }
}

/// Evaluates `T^(r) ⪰ 0` for every `1 <= r <= N/2`, including the similarity
/// residual against the explicit partial transpose.
pub fn evaluate_criteria(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    evaluate_criteria_with(rho, tol, true)
}

pub fn evaluate_criteria_with(rho: &DensityMatrix, tol: f64, check_similarity: bool) -> Result<CriterionReport> {
    if tol.is_nan() || tol <= 0.0 {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let n = rho.n_qubits();
    let x = tensor_from_state(rho)?;
    let embedded = if check_similarity && n >= 2 { Some(embed_density(rho)?) } else { None };
    let bipartitions = (1..=n / 2)
        .into_par_iter()
        .map(|r| {
            let t = t_matrix(&x, r)?;
            let min_eigenvalue = t.eigenvalues()[0];
            let similarity_residual = match &embedded {
                Some(e) => Some(similarity_residual_parts(e, &x, r)?),
                None => None,
            };
            Ok(BipartitionResult {
                r,
                lambda: t.lambda(),
                min_eigenvalue,
                pass: min_eigenvalue >= -tol,
                similarity_residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionReport { n, tol, sufficient: n == 2 || n == 3, bipartitions })
}
