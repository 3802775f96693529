//! Correlation matrices `C^(r)` and their Schur-complement block `S^(r)`.
//!
//! `C^(r)_{mu,nu} = X_{mu nu 0...0} - X_{mu 0...0} X_{nu 0...0}` is the Schur
//! complement of the upper-left `4^r` block of `T` with respect to its corner
//! entry `1`, so `C^(r) ⪰ 0` iff the reduced `2r`-qubit state is PPT across
//! its equal cut.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::linalg::{min_symmetric_eigenvalue, RealMatrix};
use crate::ppt::{t_matrix, TMatrix};
use crate::symmetric::MultisetKey;
use crate::tensor::{partial_trace_tensor, tensor_from_state, DensityMatrix, SymmetricTensor};

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    matrix: RealMatrix,
    r: usize,
}

/// Lower-right `(4^r - 1) × (4^r - 1)` block of a correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurBlock {
    matrix: RealMatrix,
}

impl SchurBlock {
    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_symmetric_eigenvalue(&self.matrix)
    }
}

impl CorrelationMatrix {
    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn schur_block(&self) -> SchurBlock {
        let d = self.matrix.nrows() - 1;
        SchurBlock { matrix: self.matrix.view((1, 1), (d, d)).into_owned() }
    }
}

fn base4_key(block: usize, r: usize) -> MultisetKey {
    let mut key = [0usize; 4];
    for k in 0..r {
        key[(block >> (2 * k)) & 3] += 1;
    }
    key
}

pub fn correlation_matrix(x: &SymmetricTensor, r: usize) -> Result<CorrelationMatrix> {
    let n = x.rank();
    if r == 0 || 2 * r > n {
        return domain(format!("correlation order r={r} not in 1..={} for N={n}", n / 2));
    }
    let dim = 1usize << (2 * r);
    let keys: Vec<MultisetKey> = (0..dim).map(|b| base4_key(b, r)).collect();
    let first_moment: Vec<f64> = keys
        .iter()
        .map(|k| {
            let mut k = *k;
            k[0] += n - r;
            x.get(k)
        })
        .collect();
    let matrix = RealMatrix::from_fn(dim, dim, |mu, nu| {
        let mut key: MultisetKey = std::array::from_fn(|s| keys[mu][s] + keys[nu][s]);
        key[0] += n - 2 * r;
        x.get(key) - first_moment[mu] * first_moment[nu]
    });
    Ok(CorrelationMatrix { matrix, r })
}

/// Upper-left `4^r × 4^r` block of an equal-bipartition `T`.
pub fn reduced_block_extract(t: &TMatrix, r: usize) -> Result<RealMatrix> {
    if t.n_qubits() != 2 * t.r() {
        return domain("block extraction needs T of an equal bipartition (N even, r = N/2)");
    }
    if r == 0 || r > t.r() {
        return domain(format!("block order r={r} not in 1..={}", t.r()));
    }
    let d = 1usize << (2 * r);
    Ok(t.real_part().view((0, 0), (d, d)).into_owned())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurEquivalence {
    pub r: usize,
    /// Minimum eigenvalue of `T` for the reduced `2r`-qubit state.
    pub block_min_eigenvalue: f64,
    /// Minimum eigenvalue of `S^(r)`.
    pub schur_min_eigenvalue: f64,
    pub block_pass: bool,
    pub correlation_pass: bool,
    pub agree: bool,
    /// Both eigenvalues are farther than `tol` from zero, so `agree` must hold.
    pub decisive: bool,
}

pub fn schur_equivalence_check(rho: &DensityMatrix, r: usize, tol: f64) -> Result<SchurEquivalence> {
    schur_equivalence_from_tensor(&tensor_from_state(rho)?, r, tol)
}

pub fn schur_equivalence_from_tensor(x: &SymmetricTensor, r: usize, tol: f64) -> Result<SchurEquivalence> {
    let c = correlation_matrix(x, r)?;
    let reduced = partial_trace_tensor(x, 2 * r)?;
    let block = t_matrix(&reduced, r)?.real_part();
    let block_min = min_symmetric_eigenvalue(&block);
    let schur_min = c.schur_block().min_eigenvalue();
    let block_pass = block_min >= -tol;
    let correlation_pass = schur_min >= -tol;
    Ok(SchurEquivalence {
        r,
        block_min_eigenvalue: block_min,
        schur_min_eigenvalue: schur_min,
        block_pass,
        correlation_pass,
        agree: block_pass == correlation_pass,
        decisive: block_min.abs() > tol && schur_min.abs() > tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{classical_density, coherent_state, ghz, random_classical, BlochVector};

    fn coherent(n: usize) -> DensityMatrix {
        DensityMatrix::pure(&coherent_state(n, &BlochVector::new(1.1, -0.4)).unwrap()).unwrap()
    }

    #[test]
    fn coherent_state_has_no_covariance() {
        for n in [2, 4, 5, 6] {
            let x = tensor_from_state(&coherent(n)).unwrap();
            for r in 1..=n / 2 {
                let c = correlation_matrix(&x, r).unwrap();
                assert!(c.matrix().amax() < 1e-12, "N={n} r={r}");
            }
        }
    }

    #[test]
    fn bell_correlations() {
        // X = diag(1, 1, -1, 1), first moments (1, 0, 0, 0)
        let x = tensor_from_state(&ghz(2).unwrap()).unwrap();
        let s = correlation_matrix(&x, 1).unwrap().schur_block();
        let want = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, 1.0]));
        assert!((s.matrix() - want).amax() < 1e-14);
    }

    #[test]
    fn maximally_mixed_correlations() {
        // first moments vanish, so S = second moments X_{ab}
        let x = tensor_from_state(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        let c = correlation_matrix(&x, 1).unwrap();
        for a in 1..4 {
            for b in 1..4 {
                assert!((c.matrix()[(a, b)] - x.at(&[a, b])).abs() < 1e-14);
            }
        }
        assert!((x.at(&[1, 1]) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn first_row_and_column_vanish() {
        let x = tensor_from_state(&crate::states::random_density(6, 2).unwrap()).unwrap();
        for r in 1..=3 {
            let c = correlation_matrix(&x, r).unwrap();
            assert!(c.matrix().row(0).amax() < 1e-13);
            assert!(c.matrix().column(0).amax() < 1e-13);
        }
    }

    #[test]
    fn block_extract_matches_reduced_state() {
        let x = tensor_from_state(&crate::states::random_density(4, 8).unwrap()).unwrap();
        let t = t_matrix(&x, 2).unwrap();
        let block = reduced_block_extract(&t, 1).unwrap();
        let reduced = t_matrix(&partial_trace_tensor(&x, 2).unwrap(), 1).unwrap().real_part();
        assert!((block - reduced).amax() < 1e-12);
        assert_eq!(reduced_block_extract(&t, 2).unwrap(), t.real_part());

        let odd = t_matrix(&tensor_from_state(&crate::states::random_density(5, 8).unwrap()).unwrap(), 2).unwrap();
        assert!(reduced_block_extract(&odd, 1).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let mix = random_classical(4, 20, 4).unwrap();
        let (rho, _) = classical_density(4, &mix).unwrap();
        let e = schur_equivalence_check(&rho, 1, 1e-10).unwrap();
        assert!(e.block_pass && e.correlation_pass && e.agree);

        let e = schur_equivalence_check(&ghz(4).unwrap(), 2, 1e-10).unwrap();
        assert!(!e.block_pass && !e.correlation_pass && e.agree && e.decisive);

        for r in 1..=3 {
            let e = schur_equivalence_check(&coherent(6), r, 1e-10).unwrap();
            assert!(e.block_pass && e.correlation_pass);
        }
    }

    #[test]
    fn out_of_range_orders() {
        let x = tensor_from_state(&ghz(4).unwrap()).unwrap();
        assert!(correlation_matrix(&x, 0).is_err());
        assert!(correlation_matrix(&x, 3).is_err());
    }
}
