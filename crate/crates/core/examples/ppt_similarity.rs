//! The partial transpose of a symmetric state is unitarily similar to a
//! matrix built from its tensor entries.

use symppt::linalg::{hermitian_eigenvalues, unitarity_residual};
use symppt::ppt::{lambda, partial_transpose_state, r_matrix, similarity_residual, t_matrix};
use symppt::states::{dicke, random_density};
use symppt::tensor::tensor_from_state;

fn main() -> symppt::Result<()> {
    println!("{:>2} {:>2} {:>10} {:>12}", "N", "r", "lambda", "residual");
    for n in 2..=6 {
        let rho = random_density(n, n as u64)?;
        for r in 1..=n / 2 {
            println!("{n:>2} {r:>2} {:>10} {:>12.3e}", lambda(n, r), similarity_residual(&rho, r)?);
        }
    }

    let rm = r_matrix(4, 2)?;
    println!("R(4,2) unitarity residual: {:.3e}", unitarity_residual(rm.matrix()));

    let rho = dicke(4, 2)?;
    let t = t_matrix(&tensor_from_state(&rho)?, 2)?;
    let pt = hermitian_eigenvalues(&partial_transpose_state(&rho, 2)?);
    let scaled: Vec<f64> = t.eigenvalues().iter().map(|e| e * t.lambda()).collect();
    println!("Dicke(4,2) smallest PT eigenvalue {:.6}, lambda * min eig T {:.6}", pt[0], scaled[0]);
    Ok(())
}
