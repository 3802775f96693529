use proptest::prelude::*;

use symppt::linalg::{hermitian_eigenvalues, max_abs_diff, partial_trace, CMatrix};
use symppt::ppt::{partial_transpose, r_matrix_with_pairing, t_matrix};
use symppt::states::{coherent_state, embed_density, random_density, BlochVector};
use symppt::symmetric::{pauli_string_matrix, s_operator, symmetric_isometry, MultiIndex};
use symppt::tensor::{partial_trace_tensor, state_from_tensor, tensor_from_state, DensityMatrix};

fn pauli_values(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_operator_ignores_index_order(values in pauli_values(5), shift in 0usize..5) {
        let mut rotated = values.clone();
        rotated.rotate_left(shift % values.len());
        let mut reversed = values.clone();
        reversed.reverse();
        let s = s_operator(&MultiIndex::from_values(&values).unwrap()).unwrap();
        for other in [rotated, reversed] {
            let t = s_operator(&MultiIndex::from_values(&other).unwrap()).unwrap();
            prop_assert!(max_abs_diff(s.matrix(), t.matrix()) < 1e-14);
        }
    }

    #[test]
    fn s_operator_is_compressed_pauli_string(values in pauli_values(5)) {
        let index = MultiIndex::from_values(&values).unwrap();
        let p = symmetric_isometry(values.len()).unwrap();
        let want = p.compress_operator(&pauli_string_matrix(&index));
        prop_assert!(max_abs_diff(s_operator(&index).unwrap().matrix(), &want) < 1e-13);
    }

    #[test]
    fn tensor_round_trip(n in 1usize..=6, seed in any::<u64>()) {
        let rho = random_density(n, seed).unwrap();
        let back = state_from_tensor(&tensor_from_state(&rho).unwrap()).unwrap();
        prop_assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-11);
    }

    #[test]
    fn tensor_is_linear(n in 1usize..=5, s1 in any::<u64>(), s2 in any::<u64>(), w in 0.0f64..=1.0) {
        let a = random_density(n, s1).unwrap();
        let b = random_density(n, s2).unwrap();
        let mixed = tensor_from_state(&a.mix(w, &b).unwrap()).unwrap();
        let combined = tensor_from_state(&a).unwrap().linear_combination(w, &tensor_from_state(&b).unwrap(), 1.0 - w);
        prop_assert!(mixed.max_abs_diff(&combined) < 1e-12);
    }

    #[test]
    fn partial_trace_matches_full_trace(n in 2usize..=5, k in 1usize..=4, seed in any::<u64>()) {
        let k = 1 + (k - 1) % (n - 1);
        let rho = random_density(n, seed).unwrap();
        let x = tensor_from_state(&rho).unwrap();
        let keep: Vec<usize> = (0..k).collect();
        let reduced_full = partial_trace(&embed_density(&rho).unwrap(), n, &keep);
        let reduced = DensityMatrix::new(symmetric_isometry(k).unwrap().compress_operator(&reduced_full)).unwrap();
        let want = tensor_from_state(&reduced).unwrap();
        prop_assert!(partial_trace_tensor(&x, k).unwrap().max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn coherent_moments_factorize(n in 1usize..=6, theta in 0.0f64..std::f64::consts::PI, phi in -3.2f64..3.2) {
        let b = BlochVector::new(theta, phi);
        let nv = b.n();
        let x = tensor_from_state(&DensityMatrix::pure(&coherent_state(n, &b).unwrap()).unwrap()).unwrap();
        for (key, value) in x.entries() {
            let want: f64 = (0..4).map(|s| nv[s].powi(key[s] as i32)).product();
            prop_assert!((value - want).abs() < 1e-13);
        }
    }

    /// Transposing the first `r` qubits gives the same spectrum as
    /// transposing the last `r`.
    #[test]
    fn cut_side_does_not_matter(n in 2usize..=6, r in 1usize..=3, seed in any::<u64>()) {
        let r = 1 + (r - 1) % (n / 2);
        let full = embed_density(&random_density(n, seed).unwrap()).unwrap();
        let last = hermitian_eigenvalues(&partial_transpose(&full, n, r).unwrap());
        // transposing the first r qubits is the full transpose of PT on the last N - r
        let first = partial_transpose(&full, n, n - r).unwrap().transpose();
        let first = hermitian_eigenvalues(&first);
        let gap = last.iter().zip(&first).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(gap < 1e-10);
    }

    /// Any pairing of transposed and untransposed qubits conjugates ρ^PT into
    /// the same T.
    #[test]
    fn pairing_choice_is_irrelevant(seed in any::<u64>(), perm in 0usize..6) {
        let (n, r) = (4, 2);
        let rho = random_density(n, seed).unwrap();
        let pt = partial_transpose(&embed_density(&rho).unwrap(), n, r).unwrap();
        let t = t_matrix(&tensor_from_state(&rho).unwrap(), r).unwrap();
        let untransposed = [[0, 1], [1, 0]][perm % 2];
        let transposed = [[2, 3], [3, 2]][perm / 3 % 2];
        let pairing = [(untransposed[0], transposed[0]), (untransposed[1], transposed[1])];
        let rm = r_matrix_with_pairing(n, r, &pairing).unwrap();
        let lhs = rm.matrix().adjoint() * &pt * rm.matrix();
        let rhs: CMatrix = t.matrix() * num_complex::Complex64::new(t.lambda(), 0.0);
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }
}

/// The criteria engine works from the tensor alone and never goes through
/// the basis-family tables.
#[test]
fn criteria_engine_does_not_use_basis_tables() {
    for source in [include_str!("../src/ppt.rs"), include_str!("../src/correlations.rs"), include_str!("../src/tensor.rs")] {
        assert!(!source.contains("BasisFamily"));
        assert!(!source.contains("basis_family"));
        assert!(!source.contains("crate::magic"));
    }
}
