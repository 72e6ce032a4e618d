//! Runs the bundled check suite against the fixture workspace.

use std::path::Path;

use separable::cli::{execute, Command, Options};

fn main() -> separable::Result<()> {
    let ws = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/workspace.json");
    let opts = Options { seed: 1, ..Options::default() };
    let (report, witnesses) = execute(&ws, &Command::Suite("smoke".into()), &opts)?;
    for c in &report.checks {
        println!("{:<11} {}", format!("{:?}", c.status), c.id);
    }
    for (file, _) in &witnesses {
        println!("witness: {file}");
    }
    println!("exit code {}", report.exit_code());
    Ok(())
}
