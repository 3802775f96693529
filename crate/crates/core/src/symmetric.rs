//! Pauli matrices, Dicke states, the isometry onto the symmetric subspace and
//! the S-operators `S_{mu_1...mu_N} = P† (σ^{mu_1} ⊗ ... ⊗ σ^{mu_N}) P`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{binomial, c, CMatrix, CVector, I, ONE, ZERO};

/// Index of a Pauli matrix: 0 is the identity, 1, 2, 3 are x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const ID: PauliIndex = PauliIndex(0);
    pub const X: PauliIndex = PauliIndex(1);
    pub const Y: PauliIndex = PauliIndex(2);
    pub const Z: PauliIndex = PauliIndex(3);
    pub const ALL: [PauliIndex; 4] = [Self::ID, Self::X, Self::Y, Self::Z];

    pub fn new(value: u8) -> Result<Self> {
        if value > 3 {
            return domain(format!("Pauli index {value} not in 0..=3"));
        }
        Ok(PauliIndex(value))
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }

    /// Entry `σ^mu_{a,b}` for bits `a`, `b`.
    #[inline]
    pub fn entry(self, a: usize, b: usize) -> Complex64 {
        PAULI_ENTRIES[self.0 as usize][a][b]
    }
}

impl TryFrom<usize> for PauliIndex {
    type Error = crate::Error;
    fn try_from(v: usize) -> Result<Self> {
        if v > 3 {
            return domain(format!("Pauli index {v} not in 0..=3"));
        }
        Ok(PauliIndex(v as u8))
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const PAULI_ENTRIES: [[[Complex64; 2]; 2]; 4] = [
    [[ONE, ZERO], [ZERO, ONE]],
    [[ZERO, ONE], [ONE, ZERO]],
    [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]],
    [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]],
];

/// The 2×2 Pauli matrix `σ^mu`.
pub fn pauli(mu: PauliIndex) -> CMatrix {
    let e = &PAULI_ENTRIES[mu.value()];
    CMatrix::from_row_slice(2, 2, &[e[0][0], e[0][1], e[1][0], e[1][1]])
}

/// An ordered tensor index `(mu_1, ..., mu_N)`.
///
/// Equality and hashing use the ordered entries; use [`MultiIndex::key`] to
/// compare up to permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<PauliIndex>,
}

/// Occupation counts `(k0, k1, k2, k3)` of a multi-index.
pub type MultisetKey = [usize; 4];

impl MultiIndex {
    pub fn new(entries: Vec<PauliIndex>) -> Self {
        MultiIndex { entries }
    }

    pub fn from_values(values: &[usize]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&v| PauliIndex::try_from(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex { entries })
    }

    /// Canonical representative of a multiset: sorted ascending.
    pub fn from_key(key: MultisetKey) -> Self {
        let mut entries = Vec::with_capacity(key.iter().sum());
        for (mu, &count) in key.iter().enumerate() {
            entries.extend(std::iter::repeat_n(PauliIndex(mu as u8), count));
        }
        MultiIndex { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PauliIndex] {
        &self.entries
    }

    pub fn key(&self) -> MultisetKey {
        key_of(self.entries.iter().map(|p| p.value()))
    }
}

pub fn key_of(values: impl IntoIterator<Item = usize>) -> MultisetKey {
    let mut key = [0usize; 4];
    for v in values {
        key[v] += 1;
    }
    key
}

/// Computational-basis state with `k` excitations spread evenly over `n` qubits.
pub fn dicke_state(n: usize, k: usize) -> Result<CVector> {
    if k > n {
        return domain(format!("Dicke excitation {k} exceeds qubit count {n}"));
    }
    if n > 30 {
        return domain(format!("{n} qubits is too many for a dense vector"));
    }
    let amp = c(1.0 / (binomial(n, k) as f64).sqrt(), 0.0);
    Ok(CVector::from_fn(1 << n, |b, _| {
        if (b as u32).count_ones() as usize == k {
            amp
        } else {
            ZERO
        }
    }))
}

/// The `2^N × (N+1)` isometry whose columns are the Dicke states.
#[derive(Debug, Clone)]
pub struct SymmetricIsometry {
    matrix: CMatrix,
    n: usize,
}

impl SymmetricIsometry {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// `P v`.
    pub fn embed_vector(&self, v: &CVector) -> CVector {
        &self.matrix * v
    }

    /// `P ρ P†`.
    pub fn embed_operator(&self, rho: &CMatrix) -> CMatrix {
        &self.matrix * rho * self.matrix.adjoint()
    }

    /// `P† A P`.
    pub fn compress_operator(&self, a: &CMatrix) -> CMatrix {
        self.matrix.adjoint() * a * &self.matrix
    }
}

pub fn symmetric_isometry(n: usize) -> Result<SymmetricIsometry> {
    if n == 0 {
        return domain("symmetric isometry needs at least one qubit");
    }
    if n > 16 {
        return domain(format!("{n} qubits is too many for a dense isometry"));
    }
    let dim = 1usize << n;
    let mut matrix = CMatrix::zeros(dim, n + 1);
    for b in 0..dim {
        let k = (b as u32).count_ones() as usize;
        matrix[(b, k)] = c(1.0 / (binomial(n, k) as f64).sqrt(), 0.0);
    }
    Ok(SymmetricIsometry { matrix, n })
}

/// Projection of a Pauli string onto the symmetric subspace.
#[derive(Debug, Clone)]
pub struct SOperator {
    matrix: CMatrix,
    index: MultiIndex,
}

impl SOperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

/// Action of the Pauli string on a basis state: `σ|b> = phase |flipped>`.
/// Qubit `q` (0-based from the left) lives in bit `n - 1 - q`.
#[inline]
fn pauli_string_action(entries: &[PauliIndex], b: usize) -> (usize, Complex64) {
    let n = entries.len();
    let mut out = b;
    let mut phase = ONE;
    for (q, mu) in entries.iter().enumerate() {
        let shift = n - 1 - q;
        let bit = (b >> shift) & 1;
        match mu.0 {
            0 => {}
            1 => out ^= 1 << shift,
            2 => {
                out ^= 1 << shift;
                // σy|0> = i|1>, σy|1> = -i|0>
                phase *= if bit == 0 { I } else { -I };
            }
            _ => {
                if bit == 1 {
                    phase = -phase;
                }
            }
        }
    }
    (out, phase)
}

/// Dense `2^N × 2^N` matrix of `σ^{mu_1} ⊗ ... ⊗ σ^{mu_N}`.
pub fn pauli_string_matrix(index: &MultiIndex) -> CMatrix {
    let dim = 1usize << index.len();
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        let (a, phase) = pauli_string_action(index.entries(), b);
        m[(a, b)] = phase;
    }
    m
}

/// `S_index = P† (σ^{mu_1} ⊗ ... ⊗ σ^{mu_N}) P`.
///
/// Pauli strings are monomial, so each basis state contributes one term and
/// the projection costs `O(2^N)`.
pub fn s_operator(index: &MultiIndex) -> Result<SOperator> {
    let n = index.len();
    if n == 0 {
        return domain("S-operator needs a non-empty index");
    }
    if n > 20 {
        return domain(format!("{n} qubits is too many for S-operator construction"));
    }
    // phase sums are Gaussian integers; dividing once keeps S_{0...0} exactly I
    let mut sums = CMatrix::zeros(n + 1, n + 1);
    for b in 0..(1usize << n) {
        let (a, phase) = pauli_string_action(index.entries(), b);
        let col = (b as u32).count_ones() as usize;
        let row = (a as u32).count_ones() as usize;
        sums[(row, col)] += phase;
    }
    let matrix = CMatrix::from_fn(n + 1, n + 1, |row, col| {
        sums[(row, col)].unscale(((binomial(n, row) * binomial(n, col)) as f64).sqrt())
    });
    Ok(SOperator { matrix, index: index.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermiticity_residual, max_abs_diff, max_abs_diff_vec};

    #[test]
    fn pauli_matrices() {
        assert_eq!(pauli(PauliIndex::ID), CMatrix::identity(2, 2));
        assert_eq!(pauli(PauliIndex::Z), CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]));
        assert_eq!(pauli(PauliIndex::Y), CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]));
        for mu in PauliIndex::ALL {
            let p = pauli(mu);
            assert_eq!(&p * &p, CMatrix::identity(2, 2));
            assert_eq!(p.adjoint(), p);
        }
        assert!(PauliIndex::new(4).is_err());
    }

    #[test]
    fn dicke_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let d = dicke_state(2, 1).unwrap();
        assert!(max_abs_diff_vec(&d, &CVector::from_vec(vec![ZERO, c(s, 0.0), c(s, 0.0), ZERO])) < 1e-15);

        let d = dicke_state(3, 0).unwrap();
        assert_eq!(d[0], ONE);
        assert_eq!(d.iter().filter(|x| x.norm() > 0.0).count(), 1);

        // enumerate the C(4,2) = 6 bitstrings independently
        let d = dicke_state(4, 2).unwrap();
        let expected: Vec<usize> = vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100];
        for b in 0..16 {
            let want = if expected.contains(&b) { 1.0 / 6f64.sqrt() } else { 0.0 };
            assert!((d[b] - c(want, 0.0)).norm() < 1e-15);
        }
        assert!(dicke_state(2, 3).is_err());
    }

    #[test]
    fn isometry_small_cases() {
        assert_eq!(symmetric_isometry(1).unwrap().matrix(), &CMatrix::identity(2, 2));
        let p = symmetric_isometry(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = CMatrix::from_row_slice(
            4,
            3,
            &[ONE, ZERO, ZERO, ZERO, c(s, 0.0), ZERO, ZERO, c(s, 0.0), ZERO, ZERO, ZERO, ONE],
        );
        assert!(max_abs_diff(p.matrix(), &want) < 1e-15);
        for n in 1..=8 {
            let p = symmetric_isometry(n).unwrap();
            let gram = p.matrix().adjoint() * p.matrix();
            assert!(max_abs_diff(&gram, &CMatrix::identity(n + 1, n + 1)) < 1e-14);
            for k in 0..=n {
                assert!(max_abs_diff_vec(&p.matrix().column(k).into(), &dicke_state(n, k).unwrap()) < 1e-15);
            }
        }
        assert!(symmetric_isometry(0).is_err());
    }

    #[test]
    fn s_operator_examples() {
        let s = s_operator(&MultiIndex::from_values(&[0, 0]).unwrap()).unwrap();
        assert_eq!(s.matrix(), &CMatrix::identity(3, 3));

        let s = s_operator(&MultiIndex::from_values(&[3]).unwrap()).unwrap();
        assert_eq!(s.matrix(), &pauli(PauliIndex::Z));

        // zz|00> = |00>, zz|01> = -|01>, zz|11> = |11>, so P†(zz)P = diag(1, -1, 1).
        // S_11 + S_22 + S_33 = S_00 then forces S_11, S_22 to carry the triplet weight.
        let idx = MultiIndex::from_values(&[3, 3]).unwrap();
        let p = symmetric_isometry(2).unwrap();
        let dense = p.compress_operator(&pauli_string_matrix(&idx));
        let s = s_operator(&idx).unwrap();
        assert!(max_abs_diff(s.matrix(), &dense) < 1e-15);
        let diag: Vec<f64> = (0..3).map(|i| s.matrix()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn s_operator_matches_dense_projection() {
        for values in [vec![1, 2, 0], vec![2, 2, 3], vec![1, 1, 1, 2], vec![0, 3, 2, 1, 1]] {
            let idx = MultiIndex::from_values(&values).unwrap();
            let p = symmetric_isometry(idx.len()).unwrap();
            let dense = p.compress_operator(&pauli_string_matrix(&idx));
            let s = s_operator(&idx).unwrap();
            assert!(max_abs_diff(s.matrix(), &dense) < 1e-14);
            assert!(hermiticity_residual(s.matrix()) < 1e-14);
        }
    }

    #[test]
    fn pauli_string_matrix_is_kronecker_product() {
        let idx = MultiIndex::from_values(&[2, 0, 1]).unwrap();
        let dense = pauli(PauliIndex::Y).kronecker(&pauli(PauliIndex::ID)).kronecker(&pauli(PauliIndex::X));
        assert_eq!(pauli_string_matrix(&idx), dense);
    }

    #[test]
    fn keys_and_representatives() {
        let idx = MultiIndex::from_values(&[3, 1, 3, 0]).unwrap();
        assert_eq!(idx.key(), [1, 1, 0, 2]);
        let canon = MultiIndex::from_key(idx.key());
        assert_eq!(canon.entries().iter().map(|p| p.value()).collect::<Vec<_>>(), vec![0, 1, 3, 3]);
    }
}
