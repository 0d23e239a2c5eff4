//! A small cross-validation run from an inline manifest.

use std::path::Path;

use cutcraft::bench::{run as run_manifest, Manifest};
use cutcraft::Result;

const MANIFEST: &str = r#"
seed = 1
algorithms = ["twdp", "rank", "cutcount", "twincover", "cliquewidth"]
repeats = 15

[[instances]]
kind = "exhaustive"
n_max = 5

[[instances]]
kind = "random"
n = 10
p = 0.3
count = 5
"#;

pub fn run() -> Result<()> {
    let manifest = Manifest::from_toml(MANIFEST)?;
    let outcome = run_manifest(&manifest, Path::new("."))?;
    println!("{}", outcome.summary_json());
    assert_eq!(outcome.summary.disagreements, 0);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
