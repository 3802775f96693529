//! Generators for the states the criteria are exercised on: spin coherent
//! states, classical mixtures of them, GHZ and Dicke fixtures, and seeded
//! random density matrices.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, validation, Result};
use crate::linalg::{binomial, c, CMatrix, CVector, ZERO};
use crate::symmetric::symmetric_isometry;
use crate::tensor::{DensityMatrix, SymmetricTensor};

/// Direction on the Bloch sphere, `n = (1, sinθ cosφ, sinθ sinφ, cosθ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub fn new(theta: f64, phi: f64) -> Self {
        BlochVector { theta, phi }
    }

    /// Direction of a non-zero Cartesian vector.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        let r = (x * x + y * y + z * z).sqrt();
        BlochVector { theta: (z / r).clamp(-1.0, 1.0).acos(), phi: y.atan2(x) }
    }

    /// The four-vector `(1, n_x, n_y, n_z)`.
    pub fn n(&self) -> [f64; 4] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [1.0, st * cp, st * sp, ct]
    }

    /// Single-qubit state `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`, whose Pauli
    /// expectation values are `n`.
    pub fn qubit(&self) -> CVector {
        let (s, co) = (self.theta / 2.0).sin_cos();
        CVector::from_vec(vec![c(co, 0.0), Complex64::from_polar(s, self.phi)])
    }
}

/// Spin coherent state in the Dicke basis (`k = j - m`, so `k = 0` is `m = j`).
///
/// Amplitude on `k` is `sqrt(C(N,k)) cos(θ/2)^{N-k} (e^{iφ} sin(θ/2))^k`.
pub fn coherent_state(n: usize, b: &BlochVector) -> Result<CVector> {
    if n == 0 {
        return domain("coherent state needs N >= 1");
    }
    let (s, co) = (b.theta / 2.0).sin_cos();
    let down = Complex64::from_polar(s, b.phi);
    Ok(CVector::from_fn(n + 1, |k, _| {
        c(co.powi((n - k) as i32) * (binomial(n, k) as f64).sqrt(), 0.0) * down.powi(k as i32)
    }))
}

/// `P ψ` for a Dicke-basis vector of length `N+1`.
pub fn embed_vector(psi: &CVector, n: usize) -> Result<CVector> {
    if psi.len() != n + 1 {
        return domain(format!("vector of length {} is not an N={n} Dicke vector", psi.len()));
    }
    Ok(symmetric_isometry(n)?.embed_vector(psi))
}

/// `P ρ P†` in the `2^N` computational basis.
pub fn embed_density(rho: &DensityMatrix) -> Result<CMatrix> {
    embed_operator(rho.matrix(), rho.n_qubits())
}

pub fn embed_operator(op: &CMatrix, n: usize) -> Result<CMatrix> {
    if op.nrows() != n + 1 || op.ncols() != n + 1 {
        return domain(format!("operator of shape {:?} is not (N+1)×(N+1) for N={n}", op.shape()));
    }
    Ok(symmetric_isometry(n)?.embed_operator(op))
}

/// A convex combination of coherent states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalMixture {
    components: Vec<MixtureComponent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    #[serde(flatten)]
    pub direction: BlochVector,
}

impl ClassicalMixture {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return validation("classical mixture needs at least one component");
        }
        if let Some(bad) = components.iter().find(|c| c.weight.is_nan() || c.weight < 0.0) {
            return validation(format!("mixture weight {} is negative", bad.weight));
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return validation(format!("mixture weights sum to {total}, not 1"));
        }
        Ok(ClassicalMixture { components })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }
}

/// The mixture's density matrix `Σ w |α><α|` and, independently, its tensor
/// `X = Σ w n_{mu_1} ... n_{mu_N}`.
pub fn classical_density(n: usize, mixture: &ClassicalMixture) -> Result<(DensityMatrix, SymmetricTensor)> {
    let mut rho = CMatrix::zeros(n + 1, n + 1);
    for comp in mixture.components() {
        let psi = coherent_state(n, &comp.direction)?;
        rho += (&psi * psi.adjoint()).scale(comp.weight);
    }
    let rho = DensityMatrix::normalized(rho)?;
    let tensor = classical_tensor(n, mixture);
    Ok((rho, tensor))
}

fn classical_tensor(n: usize, mixture: &ClassicalMixture) -> SymmetricTensor {
    SymmetricTensor::from_fn(n, |key| {
        mixture
            .components()
            .iter()
            .map(|comp| {
                let nv = comp.direction.n();
                comp.weight * (1..4).map(|mu| nv[mu].powi(key[mu] as i32)).product::<f64>()
            })
            .sum()
    })
}

/// Seeded random full-rank state `G G† / tr(G G†)` with complex Gaussian `G`.
pub fn random_density(n: usize, seed: u64) -> Result<DensityMatrix> {
    if n == 0 {
        return domain("random state needs N >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(n + 1, n + 1, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        c(re, im)
    });
    DensityMatrix::normalized(&g * g.adjoint())
}

/// `m` directions uniform on the sphere with flat Dirichlet weights.
pub fn random_classical(n: usize, m: usize, seed: u64) -> Result<ClassicalMixture> {
    if n == 0 || m == 0 {
        return domain("random classical mixture needs N >= 1 and m >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = Vec::with_capacity(m);
    for _ in 0..m {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let weight: f64 = Exp1.sample(&mut rng);
        components.push(MixtureComponent { weight, direction: BlochVector::from_cartesian(v[0], v[1], v[2]) });
    }
    let total: f64 = components.iter().map(|c| c.weight).sum();
    for comp in &mut components {
        comp.weight /= total;
    }
    // renormalizing can leave the sum a few ulps off 1
    let drift = 1.0 - components.iter().map(|c| c.weight).sum::<f64>();
    components[0].weight += drift;
    ClassicalMixture::new(components)
}

/// `(|k=0> + |k=N>) / √2` in the Dicke basis, i.e. `(|0...0> + |1...1>)/√2`.
pub fn ghz_vector(n: usize) -> Result<CVector> {
    if n < 2 {
        return domain("GHZ state needs N >= 2");
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::from_element(n + 1, ZERO);
    v[0] = c(s, 0.0);
    v[n] = c(s, 0.0);
    Ok(v)
}

/// Dicke-basis unit vector `e_k`.
pub fn dicke_vector(n: usize, k: usize) -> Result<CVector> {
    if k > n {
        return domain(format!("Dicke excitation {k} exceeds N={n}"));
    }
    let mut v = CVector::from_element(n + 1, ZERO);
    v[k] = c(1.0, 0.0);
    Ok(v)
}

pub fn ghz(n: usize) -> Result<DensityMatrix> {
    DensityMatrix::pure(&ghz_vector(n)?)
}

pub fn dicke(n: usize, k: usize) -> Result<DensityMatrix> {
    DensityMatrix::pure(&dicke_vector(n, k)?)
}

/// Rows of `[re, im]` pairs.
pub type ComplexRows = Vec<Vec<[f64; 2]>>;

pub fn matrix_from_rows(rows: &ComplexRows) -> Result<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return validation("matrix rows must form a non-empty square array");
    }
    Ok(CMatrix::from_fn(n, n, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

pub fn matrix_to_rows(m: &CMatrix) -> ComplexRows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Declarative description of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    Coherent { n: usize, theta: f64, phi: f64 },
    Dicke { n: usize, k: usize },
    Ghz { n: usize },
    ClassicalMixture { n: usize, components: Vec<MixtureComponent> },
    RandomDensity { n: usize, seed: u64 },
    RandomClassical { n: usize, m: usize, seed: u64 },
    Explicit { matrix: ComplexRows },
}

impl StateSpec {
    pub fn n_qubits(&self) -> Option<usize> {
        match self {
            StateSpec::Coherent { n, .. }
            | StateSpec::Dicke { n, .. }
            | StateSpec::Ghz { n }
            | StateSpec::ClassicalMixture { n, .. }
            | StateSpec::RandomDensity { n, .. }
            | StateSpec::RandomClassical { n, .. } => Some(*n),
            StateSpec::Explicit { matrix } => matrix.len().checked_sub(1),
        }
    }

    /// Replaces the seed of random variants.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            StateSpec::RandomDensity { n, .. } => StateSpec::RandomDensity { n, seed },
            StateSpec::RandomClassical { n, m, .. } => StateSpec::RandomClassical { n, m, seed },
            other => other,
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Coherent { n, theta, phi } => {
                DensityMatrix::pure(&coherent_state(*n, &BlochVector::new(*theta, *phi))?)
            }
            StateSpec::Dicke { n, k } => dicke(*n, *k),
            StateSpec::Ghz { n } => ghz(*n),
            StateSpec::ClassicalMixture { n, components } => {
                let mixture = ClassicalMixture::new(components.clone())?;
                Ok(classical_density(*n, &mixture)?.0)
            }
            StateSpec::RandomDensity { n, seed } => random_density(*n, *seed),
            StateSpec::RandomClassical { n, m, seed } => {
                Ok(classical_density(*n, &random_classical(*n, *m, *seed)?)?.0)
            }
            StateSpec::Explicit { matrix } => DensityMatrix::new(matrix_from_rows(matrix)?),
        }
    }
}

/// Uniformly random direction, for tests and examples.
pub fn random_bloch(rng: &mut impl rand::Rng) -> BlochVector {
    let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
    BlochVector::from_cartesian(v[0], v[1], v[2])
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::linalg::{kron_vec, max_abs_diff, max_abs_diff_vec};
    use crate::symmetric::{pauli, PauliIndex};
    use crate::tensor::tensor_from_state;

    #[test]
    fn coherent_examples() {
        let v = coherent_state(4, &BlochVector::new(0.0, 1.3)).unwrap();
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(v.iter().skip(1).all(|z| z.norm() < 1e-15));

        let v = coherent_state(2, &BlochVector::new(PI, 0.0)).unwrap();
        assert!((v[2].norm() - 1.0).abs() < 1e-15);
        assert!(v[0].norm() < 1e-15 && v[1].norm() < 1e-15);

        // cos²(π/4) = 1/2, √2 cos(π/4) sin(π/4) = 1/√2, sin²(π/4) = 1/2
        let v = coherent_state(2, &BlochVector::new(PI / 2.0, 0.0)).unwrap();
        let want = CVector::from_vec(vec![c(0.5, 0.0), c(0.5f64.sqrt(), 0.0), c(0.5, 0.0)]);
        assert!(max_abs_diff_vec(&v, &want) < 1e-15);
    }

    #[test]
    fn embedding_examples() {
        let v = embed_vector(&coherent_state(3, &BlochVector::new(0.0, 0.0)).unwrap(), 3).unwrap();
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-15);

        let b = BlochVector::new(PI / 2.0, 0.0);
        let v = embed_vector(&coherent_state(2, &b).unwrap(), 2).unwrap();
        let plus = b.qubit();
        assert!(max_abs_diff_vec(&v, &kron_vec(&plus, &plus)) < 1e-12);

        for k in 0..=4 {
            let e = embed_vector(&dicke_vector(4, k).unwrap(), 4).unwrap();
            assert!(max_abs_diff_vec(&e, &crate::symmetric::dicke_state(4, k).unwrap()) < 1e-15);
        }
        assert!(embed_vector(&CVector::zeros(3), 3).is_err());
    }

    #[test]
    fn qubit_moments_match_bloch_vector() {
        let mut rng = seeded_rng(11);
        for _ in 0..50 {
            let b = random_bloch(&mut rng);
            let q = b.qubit();
            let n = b.n();
            for mu in PauliIndex::ALL {
                let m = (q.adjoint() * pauli(mu) * &q)[(0, 0)];
                assert!((m - c(n[mu.value()], 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn classical_routes_agree() {
        let mix = ClassicalMixture::new(vec![MixtureComponent { weight: 1.0, direction: BlochVector::new(0.0, 0.0) }])
            .unwrap();
        let (rho, x) = classical_density(3, &mix).unwrap();
        for (key, v) in x.entries() {
            let want = if key[1] + key[2] == 0 { 1.0 } else { 0.0 };
            assert_eq!(v, want);
        }
        assert!((rho.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);

        // antipodal pair, N = 2
        let mix = ClassicalMixture::new(vec![
            MixtureComponent { weight: 0.5, direction: BlochVector::new(0.0, 0.0) },
            MixtureComponent { weight: 0.5, direction: BlochVector::new(PI, 0.0) },
        ])
        .unwrap();
        let (rho, x) = classical_density(2, &mix).unwrap();
        assert!((x.at(&[0, 0]) - 1.0).abs() < 1e-15);
        assert!((x.at(&[3, 3]) - 1.0).abs() < 1e-15);
        assert!(x.at(&[0, 3]).abs() < 1e-15);
        assert!(x.at(&[1, 1]).abs() < 1e-15 && x.at(&[2, 2]).abs() < 1e-15);
        assert!(tensor_from_state(&rho).unwrap().max_abs_diff(&x) < 1e-12);

        for seed in 0..10 {
            let mix = random_classical(4, 12, seed).unwrap();
            let (rho, x) = classical_density(4, &mix).unwrap();
            assert!(tensor_from_state(&rho).unwrap().max_abs_diff(&x) < 1e-12);
        }
    }

    #[test]
    fn mixture_validation() {
        let bad = vec![
            MixtureComponent { weight: 1.5, direction: BlochVector::new(0.0, 0.0) },
            MixtureComponent { weight: -0.5, direction: BlochVector::new(1.0, 0.0) },
        ];
        assert!(ClassicalMixture::new(bad).is_err());
        let short = vec![MixtureComponent { weight: 0.9, direction: BlochVector::new(0.0, 0.0) }];
        assert!(ClassicalMixture::new(short).is_err());
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_density(3, 5).unwrap(), random_density(3, 5).unwrap());
        assert_ne!(random_density(3, 5).unwrap(), random_density(3, 6).unwrap());
        let m = random_classical(4, 10, 9).unwrap();
        assert_eq!(m, random_classical(4, 10, 9).unwrap());
        assert!(m.components().iter().all(|c| c.weight >= 0.0));
        assert!((m.components().iter().map(|c| c.weight).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn named_fixtures() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = embed_vector(&ghz_vector(2).unwrap(), 2).unwrap();
        assert!(max_abs_diff_vec(&bell, &CVector::from_vec(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)])) < 1e-15);
        let triplet = embed_vector(&dicke_vector(2, 1).unwrap(), 2).unwrap();
        assert!(max_abs_diff_vec(&triplet, &CVector::from_vec(vec![ZERO, c(s, 0.0), c(s, 0.0), ZERO])) < 1e-15);
        let g4 = embed_vector(&ghz_vector(4).unwrap(), 4).unwrap();
        for b in 0..16 {
            let want = if b == 0 || b == 15 { s } else { 0.0 };
            assert!((g4[b] - c(want, 0.0)).norm() < 1e-15);
        }
        let rho = embed_density(&ghz(4).unwrap()).unwrap();
        assert!(max_abs_diff(&rho, &(&g4 * g4.adjoint())) < 1e-15);
        assert!(ghz_vector(1).is_err());
    }

    #[test]
    fn spec_round_trip_through_serde() {
        let spec = StateSpec::RandomClassical { n: 4, m: 3, seed: 1 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"kind":"random_classical","n":4,"m":3,"seed":1}"#);
        let back: StateSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        assert!(back.build().is_ok());
    }
}
