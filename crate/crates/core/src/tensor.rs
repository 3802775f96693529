//! Density matrices in the Dicke basis and their real symmetric tensor
//! representation `X_{mu_1...mu_N} = tr(ρ S_{mu_1...mu_N})`.

use crate::error::{domain, validation, Error, Result};
use crate::linalg::{
    c, hermiticity_residual, min_hermitian_eigenvalue, multinomial, trace, CMatrix,
};
use crate::symmetric::{s_operator, MultiIndex, MultisetKey};

/// Hermiticity and trace tolerance for density matrices.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Allowed negative eigenvalue slack for density matrices.
pub const PSD_SLACK: f64 = 1e-10;
/// Imaginary part of `tr(ρS)` above which the tensor is rejected.
const IMAGINARY_LIMIT: f64 = 1e-9;

/// A spin-j state written in the Dicke basis, `(N+1) × (N+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    n: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return validation(format!("density matrix is {rows}×{cols}, not square"));
        }
        if rows < 2 {
            return validation("density matrix needs dimension N+1 >= 2");
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return validation("density matrix has non-finite entries");
        }
        let herm = hermiticity_residual(&matrix);
        if herm > CONSTRUCTION_TOL {
            return validation(format!("density matrix is not Hermitian (residual {herm:.3e})"));
        }
        let tr = trace(&matrix);
        if (tr - c(1.0, 0.0)).norm() > CONSTRUCTION_TOL {
            return validation(format!("density matrix trace is {} + {}i, not 1", tr.re, tr.im));
        }
        let min_eig = min_hermitian_eigenvalue(&matrix);
        if min_eig < -PSD_SLACK {
            return validation(format!("density matrix has negative eigenvalue {min_eig:.3e}"));
        }
        Ok(DensityMatrix { n: rows - 1, matrix })
    }

    /// Hermitizes and trace-normalizes before validating. Meant for matrices
    /// produced by arithmetic that is exact up to rounding.
    pub fn normalized(matrix: CMatrix) -> Result<Self> {
        let h = crate::linalg::hermitize(&matrix);
        let tr = trace(&h).re;
        if tr.is_nan() || tr <= 0.0 {
            return validation("cannot normalize a matrix with non-positive trace");
        }
        Self::new(h.unscale(tr))
    }

    /// Rank-one state `|ψ><ψ| / <ψ|ψ>` for a Dicke-basis amplitude vector.
    pub fn pure(psi: &crate::linalg::CVector) -> Result<Self> {
        Self::normalized(psi * psi.adjoint())
    }

    /// `I / (N+1)`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("maximally mixed state needs N >= 1");
        }
        Self::new(CMatrix::identity(n + 1, n + 1).unscale((n + 1) as f64))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Convex combination `w ρ + (1 - w) σ`.
    pub fn mix(&self, w: f64, other: &DensityMatrix) -> Result<Self> {
        if self.n != other.n {
            return domain("cannot mix states of different qubit counts");
        }
        if !(0.0..=1.0).contains(&w) {
            return domain(format!("mixing weight {w} not in [0, 1]"));
        }
        Self::normalized(self.matrix.scale(w) + other.matrix.scale(1.0 - w))
    }
}

/// Rank-N real fully symmetric tensor over `{0,1,2,3}`, one value per
/// multiset of indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensor {
    n: usize,
    // dense over (k1, k2, k3) in [0, n]^3; entries with k1+k2+k3 > n unused
    values: Vec<f64>,
}

impl SymmetricTensor {
    /// Zero tensor of rank `n`.
    pub fn zeros(n: usize) -> Self {
        SymmetricTensor { n, values: vec![0.0; (n + 1).pow(3)] }
    }

    /// Builds a tensor by evaluating `f` on every multiset key.
    pub fn from_fn(n: usize, mut f: impl FnMut(MultisetKey) -> f64) -> Self {
        let mut t = Self::zeros(n);
        for key in multiset_keys(n) {
            let v = f(key);
            t.set(key, v);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, key: &MultisetKey) -> usize {
        let m = self.n + 1;
        (key[1] * m + key[2]) * m + key[3]
    }

    /// Value at a multiset key. Panics if the key's total differs from the rank.
    #[inline]
    pub fn get(&self, key: MultisetKey) -> f64 {
        debug_assert_eq!(key.iter().sum::<usize>(), self.n, "key {key:?} has wrong rank");
        self.values[self.slot(&key)]
    }

    pub fn set(&mut self, key: MultisetKey, value: f64) {
        assert_eq!(key.iter().sum::<usize>(), self.n, "key {key:?} has wrong rank");
        let s = self.slot(&key);
        self.values[s] = value;
    }

    /// Value at an ordered index, e.g. `&[0, 3, 3]`.
    pub fn at(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.n, "index length differs from tensor rank");
        self.get(crate::symmetric::key_of(index.iter().copied()))
    }

    /// All `(key, value)` pairs in a fixed order.
    pub fn entries(&self) -> impl Iterator<Item = (MultisetKey, f64)> + '_ {
        multiset_keys(self.n).map(move |k| (k, self.get(k)))
    }

    pub fn max_abs_diff(&self, other: &SymmetricTensor) -> f64 {
        assert_eq!(self.n, other.n, "rank mismatch");
        self.entries()
            .map(|(k, v)| (v - other.get(k)).abs())
            .fold(0.0, f64::max)
    }

    /// `a self + b other`, entrywise.
    pub fn linear_combination(&self, a: f64, other: &SymmetricTensor, b: f64) -> SymmetricTensor {
        assert_eq!(self.n, other.n, "rank mismatch");
        SymmetricTensor::from_fn(self.n, |k| a * self.get(k) + b * other.get(k))
    }
}

/// Every multiset key `(k0, k1, k2, k3)` with total `n`, ordered by
/// `(k1, k2, k3)` lexicographically.
pub fn multiset_keys(n: usize) -> impl Iterator<Item = MultisetKey> {
    (0..=n).flat_map(move |k1| {
        (0..=n - k1).flat_map(move |k2| (0..=n - k1 - k2).map(move |k3| [n - k1 - k2 - k3, k1, k2, k3]))
    })
}

/// `X_key = tr(ρ S_key)` for every multiset.
pub fn tensor_from_state(rho: &DensityMatrix) -> Result<SymmetricTensor> {
    let n = rho.n_qubits();
    let m = rho.matrix();
    let mut out = SymmetricTensor::zeros(n);
    for key in multiset_keys(n) {
        let s = s_operator(&MultiIndex::from_key(key))?;
        let s = s.matrix();
        // tr(ρ S) = Σ_ij ρ_ij S_ji
        let mut acc = c(0.0, 0.0);
        for i in 0..=n {
            for j in 0..=n {
                acc += m[(i, j)] * s[(j, i)];
            }
        }
        if acc.im.abs() > IMAGINARY_LIMIT {
            return Err(Error::Consistency(format!(
                "tensor entry {key:?} has imaginary part {:.3e}",
                acc.im
            )));
        }
        out.set(key, acc.re);
    }
    Ok(out)
}

/// `ρ = 2^{-N} Σ X_{mu} S_{mu}` over all `4^N` ordered indices, evaluated as a
/// multiplicity-weighted sum over multisets.
pub fn state_from_tensor(x: &SymmetricTensor) -> Result<DensityMatrix> {
    let n = x.rank();
    if n == 0 {
        return domain("tensor rank must be at least 1");
    }
    let norm = x.get([n, 0, 0, 0]);
    if (norm - 1.0).abs() > CONSTRUCTION_TOL {
        return validation(format!("tensor is not normalized: X_0...0 = {norm}"));
    }
    let mut acc = CMatrix::zeros(n + 1, n + 1);
    for (key, value) in x.entries() {
        if value == 0.0 {
            continue;
        }
        let weight = multinomial(key) as f64 * value;
        let s = s_operator(&MultiIndex::from_key(key))?;
        acc += s.matrix().scale(weight);
    }
    let rho = acc.unscale(2f64.powi(n as i32));
    DensityMatrix::new(crate::linalg::hermitize(&rho))
}

/// Largest violation of `Σ_{a=1..3} X_{a a mu...} = X_{0 0 mu...}`.
pub fn contraction_check(x: &SymmetricTensor) -> Result<f64> {
    let n = x.rank();
    if n < 2 {
        return domain(format!("contraction needs rank >= 2, got {n}"));
    }
    let mut worst = 0.0f64;
    for rest in multiset_keys(n - 2) {
        let with = |a: usize| {
            let mut k = rest;
            k[a] += 2;
            x.get(k)
        };
        let lhs = with(1) + with(2) + with(3);
        worst = worst.max((lhs - with(0)).abs());
    }
    Ok(worst)
}

/// Tensor of the state reduced to `k` qubits: `X_{mu_1...mu_k 0...0}`.
pub fn partial_trace_tensor(x: &SymmetricTensor, k: usize) -> Result<SymmetricTensor> {
    let n = x.rank();
    if k == 0 || k > n {
        return domain(format!("reduced rank {k} not in 1..={n}"));
    }
    Ok(SymmetricTensor::from_fn(k, |mut key| {
        key[0] += n - k;
        x.get(key)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, CVector};

    fn bell_dicke() -> DensityMatrix {
        // (|00> + |11>)/√2 = (D_0 + D_2)/√2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&CVector::from_vec(vec![c(s, 0.0), c(0.0, 0.0), c(s, 0.0)])).unwrap()
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(3, 3)).is_err());
        let mut m = CMatrix::identity(2, 2).unscale(2.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.2, 0.0), c(-0.2, 0.0)]));
        assert!(DensityMatrix::new(m).is_err());
        assert!(DensityMatrix::maximally_mixed(3).is_ok());
    }

    #[test]
    fn bell_tensor() {
        let x = tensor_from_state(&bell_dicke()).unwrap();
        // <σμ⊗σν> on (|00>+|11>)/√2: <II> = <XX> = <ZZ> = 1, <YY> = -1
        assert!((x.at(&[0, 0]) - 1.0).abs() < 1e-14);
        assert!((x.at(&[1, 1]) - 1.0).abs() < 1e-14);
        assert!((x.at(&[2, 2]) + 1.0).abs() < 1e-14);
        assert!((x.at(&[3, 3]) - 1.0).abs() < 1e-14);
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert!(x.at(&[a, b]).abs() < 1e-14);
        }
        assert!(contraction_check(&x).unwrap() < 1e-14);
        let back = state_from_tensor(&x).unwrap();
        assert!(max_abs_diff(back.matrix(), bell_dicke().matrix()) < 1e-12);

        let reduced = partial_trace_tensor(&x, 1).unwrap();
        assert!((reduced.at(&[0]) - 1.0).abs() < 1e-14);
        for a in 1..4 {
            assert!(reduced.at(&[a]).abs() < 1e-14);
        }
    }

    #[test]
    fn maximally_mixed_round_trip() {
        for n in 1..=6 {
            let rho = DensityMatrix::maximally_mixed(n).unwrap();
            let x = tensor_from_state(&rho).unwrap();
            assert!((x.get([n, 0, 0, 0]) - 1.0).abs() < 1e-14);
            let back = state_from_tensor(&x).unwrap();
            assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn single_qubit_bloch() {
        let x = SymmetricTensor::from_fn(1, |k| if k[1] + k[2] == 0 { 1.0 } else { 0.0 });
        let rho = state_from_tensor(&x).unwrap();
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        assert!(max_abs_diff(rho.matrix(), &want) < 1e-15);
    }

    #[test]
    fn unnormalized_tensor_rejected() {
        let x = SymmetricTensor::zeros(2);
        assert!(matches!(state_from_tensor(&x), Err(Error::Validation(_))));
    }

    #[test]
    fn rank_errors() {
        let x = SymmetricTensor::from_fn(1, |_| 1.0);
        assert!(contraction_check(&x).is_err());
        let x = tensor_from_state(&bell_dicke()).unwrap();
        assert!(partial_trace_tensor(&x, 0).is_err());
        assert!(partial_trace_tensor(&x, 3).is_err());
        assert_eq!(partial_trace_tensor(&x, 2).unwrap(), x);
    }

    #[test]
    fn key_enumeration() {
        for n in 0..8 {
            let count = multiset_keys(n).count() as u64;
            assert_eq!(count, crate::linalg::binomial(n + 3, 3));
            let total: u64 = multiset_keys(n).map(multinomial).sum();
            assert_eq!(total, 4u64.pow(n as u32));
        }
    }
}
