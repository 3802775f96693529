//! Bell and magic bases from the columns of R, and concurrence.

use symppt::linalg::{c, CVector};
use symppt::magic::{basis_family, concurrence_magic, format_entry, generalized_concurrence_magic, wootters_oracle, PhaseConvention};

fn main() -> symppt::Result<()> {
    for conv in [PhaseConvention::RawR, PhaseConvention::BellTilde, PhaseConvention::Magic] {
        let fam = basis_family(2, conv)?;
        println!("N = 2, {conv}:");
        for (v, label) in fam.vectors().iter().zip(fam.labels()) {
            let entries: Vec<String> = v.iter().map(|z| format_entry(*z)).collect();
            println!("  mu={label:?}: [{}]", entries.join(", "));
        }
    }

    let t: f64 = 0.4;
    let psi = CVector::from_vec(vec![c(t.cos(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, t.sin())]);
    println!("concurrence via magic basis: {:.12}", concurrence_magic(&psi)?);
    println!("concurrence via spin flip:   {:.12}", wootters_oracle(&psi)?);
    println!("expected sin(2t):            {:.12}", (2.0 * t).sin());

    let fam = basis_family(4, PhaseConvention::Magic)?;
    let e = &fam.vectors()[5];
    println!("generalized concurrence of magic vector {:?}: {:.12}", fam.labels()[5], generalized_concurrence_magic(e)?);
    Ok(())
}
