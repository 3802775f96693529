//! Correlation matrices and their equivalence with PPT of reduced states.

use symppt::correlations::{correlation_matrix, schur_equivalence_check};
use symppt::states::{classical_density, ghz, random_classical, random_density};
use symppt::tensor::tensor_from_state;

fn main() -> symppt::Result<()> {
    let tol = 1e-10;
    let classical = classical_density(4, &random_classical(4, 12, 3)?)?.0;
    let states = [("GHZ(4)", ghz(4)?), ("random", random_density(4, 9)?), ("classical", classical)];
    for (name, rho) in &states {
        let x = tensor_from_state(rho)?;
        for r in 1..=2 {
            let s = correlation_matrix(&x, r)?.schur_block();
            let e = schur_equivalence_check(rho, r, tol)?;
            println!(
                "{name:>9} r={r}: min eig S = {:+.6e}, min eig T(rho_2r) = {:+.6e}, agree = {}",
                s.min_eigenvalue(),
                e.block_min_eigenvalue,
                e.agree
            );
        }
    }
    Ok(())
}
