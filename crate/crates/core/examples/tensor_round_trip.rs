//! Expand a random symmetric state in Pauli moments and rebuild it.

use symppt::linalg::max_abs_diff;
use symppt::states::random_density;
use symppt::tensor::{contraction_check, partial_trace_tensor, state_from_tensor, tensor_from_state};

fn main() -> symppt::Result<()> {
    let n = 4;
    let rho = random_density(n, 2024)?;
    let x = tensor_from_state(&rho)?;

    println!("N = {n}: {} independent tensor entries", x.entries().count());
    println!("X_0000 = {}", x.at(&[0, 0, 0, 0]));
    println!("mean spin direction: ({:.6}, {:.6}, {:.6})", x.at(&[1, 0, 0, 0]), x.at(&[2, 0, 0, 0]), x.at(&[3, 0, 0, 0]));
    println!("X_1233 = {:.6}", x.at(&[1, 2, 3, 3]));

    let back = state_from_tensor(&x)?;
    println!("round trip error: {:.3e}", max_abs_diff(back.matrix(), rho.matrix()));
    println!("contraction violation: {:.3e}", contraction_check(&x)?);

    // tracing out qubits only drops trailing zeros
    let two = partial_trace_tensor(&x, 2)?;
    println!("two-qubit marginal X_33 = {:.6}", two.at(&[3, 3]));
    Ok(())
}
