//! Command-line front end: `analyze`, `generate`, `bases`, `verify`.
//!
//! Exit codes: 0 when every criterion passes, 2 when some criterion fails,
//! 1 on any input or validation error.

pub mod document;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{validation, Error, Result};
use crate::magic::{basis_family, format_entry, PhaseConvention};
use crate::states::{random_classical, MixtureComponent, StateSpec};
use crate::tensor::DensityMatrix;

use document::{StateDocument, SEED_ENV};
use report::{analyze, AnalyzeOptions};
use verify::{run_verify, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "symppt", version, about = "Classicality criteria for symmetric multi-qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the PPT and correlation criteria on a state document.
    Analyze(AnalyzeArgs),
    /// Write a state document with an explicit Dicke-basis matrix.
    Generate(GenerateArgs),
    /// Print a Bell or magic basis family.
    Bases(BasesArgs),
    /// Run the numerical property suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// State document path, or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, default_value_t = crate::ppt::DEFAULT_TOL)]
    pub tol: f64,
    /// Skip the brute-force similarity residual.
    #[arg(long)]
    pub no_similarity: bool,
    /// Skip the correlation-matrix criteria.
    #[arg(long)]
    pub no_correlations: bool,
    /// Accept a `computational_matrix` and project it onto the symmetric subspace.
    #[arg(long)]
    pub computational: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Report path; stdout when omitted or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: GenerateKind,
    /// Output path, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Spin coherent state along (theta, phi).
    Coherent {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi: f64,
    },
    /// Dicke state with k excitations.
    Dicke {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Ghz {
        #[arg(long)]
        n: usize,
    },
    /// Random full-rank symmetric state.
    RandomDensity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random mixture of m coherent states.
    RandomClassical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mixture of coherent states given as `weight:theta:phi` triples.
    Mixture {
        #[arg(long)]
        n: usize,
        #[arg(long = "component", required = true, allow_hyphen_values = true)]
        components: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct BasesArgs {
    #[arg(long)]
    pub n: usize,
    /// raw, bell or magic.
    #[arg(long, default_value = "bell")]
    pub convention: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    /// Random states per case.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
    #[arg(long, default_value_t = crate::ppt::DEFAULT_TOL)]
    pub tol: f64,
    /// Extra state document whose similarity residual is checked too.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Generate(g) => cmd_generate(&g),
        Command::Bases(b) => cmd_bases(&b),
        Command::Verify(v) => cmd_verify(&v),
    }
}

fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Validation(format!("{SEED_ENV}='{s}' is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::write(p, text)?),
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        validation(format!("--tol must be positive, got {tol}"))
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<i32> {
    check_tol(a.tol)?;
    let doc = StateDocument::parse(&read_input(&a.input)?)?;
    let state = doc.resolve(a.computational, seed_override()?)?;
    let opts = AnalyzeOptions { tol: a.tol, check_similarity: !a.no_similarity, correlations: !a.no_correlations };
    let report = analyze(&state, &opts)?;
    let text = match a.format {
        Format::Json => with_newline(report.to_json()?),
        Format::Text => report.to_text(),
    };
    write_output(a.out.as_deref(), &text)?;
    Ok(if report.passes() { EXIT_PASS } else { EXIT_FAIL })
}

fn parse_component(s: &str) -> Result<MixtureComponent> {
    let parts: Vec<&str> = s.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Validation(format!("component '{s}' is not weight:theta:phi")))?;
    match nums[..] {
        [weight, theta, phi] => Ok(MixtureComponent { weight, direction: crate::states::BlochVector::new(theta, phi) }),
        _ => validation(format!("component '{s}' is not weight:theta:phi")),
    }
}

fn generate_spec(kind: &GenerateKind, seed: Option<u64>) -> Result<StateSpec> {
    let spec = match kind {
        GenerateKind::Coherent { n, theta, phi } => StateSpec::Coherent { n: *n, theta: *theta, phi: *phi },
        GenerateKind::Dicke { n, k } => StateSpec::Dicke { n: *n, k: *k },
        GenerateKind::Ghz { n } => StateSpec::Ghz { n: *n },
        GenerateKind::RandomDensity { n, seed } => StateSpec::RandomDensity { n: *n, seed: *seed },
        GenerateKind::RandomClassical { n, m, seed } => {
            // validate early so a bad m is reported as such
            random_classical(*n, *m, *seed)?;
            StateSpec::RandomClassical { n: *n, m: *m, seed: *seed }
        }
        GenerateKind::Mixture { n, components } => StateSpec::ClassicalMixture {
            n: *n,
            components: components.iter().map(|c| parse_component(c)).collect::<Result<_>>()?,
        },
    };
    Ok(match seed {
        Some(s) => spec.with_seed(s),
        None => spec,
    })
}

fn cmd_generate(g: &GenerateArgs) -> Result<i32> {
    let spec = generate_spec(&g.kind, seed_override()?)?;
    let rho = spec.build()?;
    let doc = StateDocument::from_matrix(&rho, Some(spec));
    write_output(Some(&g.out), &with_newline(doc.to_json()?))?;
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct BasisColumn {
    label: Vec<usize>,
    /// Amplitudes over the computational basis, qubit 1 most significant.
    amplitudes: Vec<[f64; 2]>,
    exact: Vec<String>,
}

#[derive(Serialize)]
struct BasisTable {
    n: usize,
    convention: String,
    columns: Vec<BasisColumn>,
}

fn cmd_bases(b: &BasesArgs) -> Result<i32> {
    let conv: PhaseConvention = b.convention.parse()?;
    let fam = basis_family(b.n, conv)?;
    let n = fam.n_qubits();
    match b.format {
        Format::Json => {
            let table = BasisTable {
                n,
                convention: conv.to_string(),
                columns: fam
                    .vectors()
                    .iter()
                    .zip(fam.labels())
                    .map(|(v, l)| BasisColumn {
                        label: l.clone(),
                        amplitudes: v.iter().map(|z| [z.re, z.im]).collect(),
                        exact: v.iter().map(|z| format_entry(*z)).collect(),
                    })
                    .collect(),
            };
            write_output(None, &with_newline(serde_json::to_string_pretty(&table)?))?;
        }
        Format::Text => {
            let mut s = format!("N = {n}, convention = {conv}\n");
            for (v, l) in fam.vectors().iter().zip(fam.labels()) {
                let label: Vec<String> = l.iter().map(|m| m.to_string()).collect();
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm() > 1e-14)
                    .map(|(i, z)| format!("{} |{:0width$b}>", format_entry(*z), i, width = n))
                    .collect();
                let mut line = terms.join(" + ").replace("+ -", "- ");
                if let Some(rest) = line.strip_prefix('-') {
                    line = format!("- {rest}");
                }
                s.push_str(&format!("({}): {line}\n", label.join(",")));
            }
            write_output(None, &s)?;
        }
    }
    Ok(EXIT_PASS)
}

fn load_fixture(path: &Path) -> Result<DensityMatrix> {
    let doc = StateDocument::parse(&read_input(path)?)?;
    Ok(doc.resolve(false, seed_override()?)?.rho)
}

fn cmd_verify(v: &VerifyArgs) -> Result<i32> {
    check_tol(v.tol)?;
    let fixture = v.fixture.as_deref().map(load_fixture).transpose()?;
    let opts = VerifyOptions { n_max: v.n_max, seeds: v.seeds, tol: v.tol, base_seed: seed_override()?.unwrap_or(0) };
    let summary = run_verify(&opts, fixture.as_ref())?;
    let text = match v.format {
        Format::Json => with_newline(serde_json::to_string_pretty(&summary)?),
        Format::Text => summary.to_text(),
    };
    write_output(None, &text)?;
    Ok(if summary.pass { EXIT_PASS } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_components_parse() {
        let c = parse_component("0.25:1.0:-0.5").unwrap();
        assert_eq!(c.weight, 0.25);
        assert_eq!(c.direction, crate::states::BlochVector::new(1.0, -0.5));
        assert!(parse_component("0.25:1.0").is_err());
        assert!(parse_component("a:b:c").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn verify_guards_n_max() {
        assert_eq!(run(["symppt", "verify", "--n-max", "11"]), EXIT_ERROR);
        assert_eq!(run(["symppt", "verify", "--n-max", "1"]), EXIT_ERROR);
    }
}
