//! Spin coherent states and convex mixtures of them.

use symppt::linalg::{kron_vec, max_abs_diff_vec};
use symppt::ppt::evaluate_criteria;
use symppt::states::{classical_density, coherent_state, embed_vector, random_classical, BlochVector};
use symppt::tensor::{tensor_from_state, DensityMatrix};

fn main() -> symppt::Result<()> {
    let b = BlochVector::new(1.0, 0.3);
    let n = 3;
    let psi = coherent_state(n, &b)?;
    println!("coherent state along {:?} in the Dicke basis:", b.n());
    for (k, a) in psi.iter().enumerate() {
        println!("  k={k}: {a:.6}");
    }

    // the same state as a tensor power of one qubit
    let q = b.qubit();
    let power = kron_vec(&kron_vec(&q, &q), &q);
    println!("|| P psi - q⊗q⊗q || = {:.3e}", max_abs_diff_vec(&embed_vector(&psi, n)?, &power));

    let x = tensor_from_state(&DensityMatrix::pure(&psi)?)?;
    let nv = b.n();
    println!("X_123 = {:.9}, n1 n2 n3 = {:.9}", x.at(&[1, 2, 3]), nv[1] * nv[2] * nv[3]);

    let mix = random_classical(6, 25, 7)?;
    let (rho, x_direct) = classical_density(6, &mix)?;
    let x_route = tensor_from_state(&rho)?;
    println!("mixture of {} coherent states, N = 6", mix.components().len());
    println!("tensor from density vs sum of tensor powers: {:.3e}", x_route.max_abs_diff(&x_direct));
    let report = evaluate_criteria(&rho, 1e-10)?;
    for b in &report.bipartitions {
        println!("  r={} min eigenvalue of T = {:.6e} pass={}", b.r, b.min_eigenvalue, b.pass);
    }
    Ok(())
}
