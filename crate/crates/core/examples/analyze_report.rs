//! Build the same report the `analyze` command prints, from library calls.

use symppt::cli::document::StateDocument;
use symppt::cli::report::{analyze, AnalyzeOptions};
use symppt::states::StateSpec;

fn main() -> symppt::Result<()> {
    let doc = StateDocument::from_spec(StateSpec::Dicke { n: 4, k: 2 })?;
    println!("{}", doc.to_json()?);
    let state = doc.resolve(false, None)?;
    let report = analyze(&state, &AnalyzeOptions::default())?;
    print!("{}", report.to_text());

    let coherent = StateDocument::from_spec(StateSpec::Coherent { n: 5, theta: 1.0, phi: 0.3 })?;
    let report = analyze(&coherent.resolve(false, None)?, &AnalyzeOptions { check_similarity: false, ..Default::default() })?;
    println!("{}", report.to_json()?);
    Ok(())
}
