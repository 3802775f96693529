//! Bell and magic bases read off the columns of `R^(r)` for equal cuts, and
//! the concurrence formulas they support.
//!
//! Phase conventions:
//! - `RawR`: the columns of `R^(N/2)` as they are, `σ^{mu_1} ⊗ ... / 2^{N/4}`.
//! - `BellTilde`: every `σ^2` factor replaced by `iσ^2`, giving real Bell-type
//!   vectors.
//! - `Magic`: for `N = 2`, the last three raw columns times `-i`. For `N = 4`,
//!   the tilde columns times `i` whenever `mu_1 - mu_2` is odd.
//!
//! The four-qubit rule is the product of the two-qubit magic phases on the
//! qubit pairs (1,3) and (2,4): relative to the tilde columns each factor
//! picks up `i` for `mu ∈ {1, 3}`, so exactly the eight labels with one odd
//! entry get a factor `i`. The six labels with `|mu_1 - mu_2| = 1` alone do
//! not give a magic basis; the labels (0,3) and (3,0) are needed too. The
//! concurrence tests pin this down.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, validation, Error, Result};
use crate::linalg::{partial_trace, CMatrix, CVector, I, ONE};
use crate::ppt::r_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseConvention {
    RawR,
    BellTilde,
    Magic,
}

impl FromStr for PhaseConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" | "raw_r" => Ok(PhaseConvention::RawR),
            "bell" | "bell_tilde" => Ok(PhaseConvention::BellTilde),
            "magic" => Ok(PhaseConvention::Magic),
            other => Err(Error::Unsupported(format!("unknown phase convention '{other}'"))),
        }
    }
}

impl fmt::Display for PhaseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseConvention::RawR => "raw",
            PhaseConvention::BellTilde => "bell",
            PhaseConvention::Magic => "magic",
        })
    }
}

/// An orthonormal basis of maximally entangled `N`-qubit vectors labelled by
/// `(mu_1, ..., mu_{N/2})`.
#[derive(Debug, Clone)]
pub struct BasisFamily {
    n: usize,
    vectors: Vec<CVector>,
    labels: Vec<Vec<usize>>,
    convention: PhaseConvention,
}

impl BasisFamily {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn convention(&self) -> PhaseConvention {
        self.convention
    }

    /// Basis vectors as columns.
    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_columns(&self.vectors)
    }

    /// Coefficients `<e_i|ψ>`.
    pub fn coefficients(&self, psi: &CVector) -> Vec<Complex64> {
        self.vectors.iter().map(|e| e.dotc(psi)).collect()
    }

    /// Reduced state of vector `idx` on the first `N/2` qubits.
    pub fn reduced_state(&self, idx: usize) -> CMatrix {
        let v = &self.vectors[idx];
        let keep: Vec<usize> = (0..self.n / 2).collect();
        partial_trace(&(v * v.adjoint()), self.n, &keep)
    }
}

fn labels_for(r: usize) -> Vec<Vec<usize>> {
    (0..1usize << (2 * r))
        .map(|b| (0..r).map(|k| (b >> (2 * (r - 1 - k))) & 3).collect())
        .collect()
}

fn column_phase(label: &[usize], convention: PhaseConvention) -> Complex64 {
    let tilde = || label.iter().filter(|&&mu| mu == 2).fold(ONE, |acc, _| acc * I);
    match convention {
        PhaseConvention::RawR => ONE,
        PhaseConvention::BellTilde => tilde(),
        PhaseConvention::Magic => match label {
            [mu] => {
                if *mu == 0 {
                    ONE
                } else {
                    -I
                }
            }
            [mu1, mu2] => {
                if (mu1 + mu2) % 2 == 1 {
                    tilde() * I
                } else {
                    tilde()
                }
            }
            _ => unreachable!("magic phases are only defined for N = 2, 4"),
        },
    }
}

pub fn basis_family(n: usize, convention: PhaseConvention) -> Result<BasisFamily> {
    if n < 2 || n % 2 == 1 {
        return domain(format!("basis families need an even N >= 2, got {n}"));
    }
    if n > 8 {
        return domain(format!("N={n} is too large for a dense basis family"));
    }
    if convention == PhaseConvention::Magic && n != 2 && n != 4 {
        return Err(Error::Unsupported(format!("magic phases are only defined for N = 2 and N = 4, not {n}")));
    }
    let r = n / 2;
    let rm = r_matrix(n, r)?;
    let labels = labels_for(r);
    let vectors = labels
        .iter()
        .enumerate()
        .map(|(col, label)| rm.matrix().column(col).into_owned() * column_phase(label, convention))
        .collect();
    Ok(BasisFamily { n, vectors, labels, convention })
}

fn check_unit(psi: &CVector, len: usize) -> Result<()> {
    if psi.len() != len {
        return domain(format!("expected a {len}-component state, got {}", psi.len()));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return validation(format!("state norm is {norm}, not 1"));
    }
    Ok(())
}

fn sum_of_squares(family: &BasisFamily, psi: &CVector) -> f64 {
    family.coefficients(psi).iter().map(|a| a * a).sum::<Complex64>().norm()
}

/// Two-qubit concurrence `|Σ α_i²|` with `α` the magic-basis coefficients.
pub fn concurrence_magic(psi: &CVector) -> Result<f64> {
    check_unit(psi, 4)?;
    Ok(sum_of_squares(&basis_family(2, PhaseConvention::Magic)?, psi))
}

/// Generalized concurrence `|Σ_{i=1}^{16} α_i²|` of a four-qubit state in the
/// generalized magic basis (cut (1,2) : (3,4)).
pub fn generalized_concurrence_magic(psi: &CVector) -> Result<f64> {
    check_unit(psi, 16)?;
    Ok(sum_of_squares(&basis_family(4, PhaseConvention::Magic)?, psi))
}

/// `|<ψ| σy ⊗ σy |ψ*>|`, computed directly in the computational basis.
pub fn wootters_oracle(psi: &CVector) -> Result<f64> {
    check_unit(psi, 4)?;
    // σy ⊗ σy maps |00>→-|11>, |01>→|10>, |10>→|01>, |11>→-|00>
    let flipped = CVector::from_vec(vec![-psi[3].conj(), psi[2].conj(), psi[1].conj(), -psi[0].conj()]);
    Ok(psi.dotc(&flipped).norm())
}

/// Text form of an entry: exact for `0`, `±1`, `±1/√2`, `±1/2` and their `i`
/// multiples, decimal otherwise.
pub fn format_entry(z: Complex64) -> String {
    const EPS: f64 = 1e-12;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let named = |x: f64| -> Option<&'static str> {
        [(1.0, "1"), (s, "1/√2"), (0.5, "1/2")]
            .iter()
            .find(|(v, _)| (x.abs() - v).abs() < EPS)
            .map(|(_, name)| *name)
    };
    let sign = |x: f64| if x < 0.0 { "-" } else { "" };
    if z.norm() < EPS {
        return "0".to_string();
    }
    if z.im.abs() < EPS {
        if let Some(name) = named(z.re) {
            return format!("{}{}", sign(z.re), name);
        }
        return format!("{:.12}", z.re);
    }
    if z.re.abs() < EPS {
        if let Some(name) = named(z.im) {
            return if name == "1" { format!("{}i", sign(z.im)) } else { format!("{}i{}", sign(z.im), name) };
        }
        return format!("{:.12}i", z.im);
    }
    format!("{:.12}{:+.12}i", z.re, z.im)
}
