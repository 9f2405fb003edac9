// Writes frame and symbol files, runs the same verification bundle as
// `framemult multiplier --verify-all`, and prints the JSON report.

use std::error::Error;

use framemult::cli::run;
use framemult::frames::FiniteFrame;
use framemult::Symbol;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("framemult-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let r5 = 5f64.sqrt();
    let files = [
        ("phi.json", FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[-1.0]])?.to_json()),
        ("psi.json", FiniteFrame::from_real(1, &[&[1.0], &[1.0], &[1.0]])?.to_json()),
        (
            "symbol.json",
            Symbol::from_real(&[(5.0 + 2.0 * r5) / 5.0, (5.0 - 2.0 * r5) / 5.0, 1.0])?.to_json(),
        ),
    ];
    for (name, text) in &files {
        std::fs::write(dir.join(name), text)?;
    }
    let path = |name: &str| dir.join(name).display().to_string();
    let out = run([
        "framemult".to_string(),
        "--pretty".into(),
        "multiplier".into(),
        "--symbol".into(),
        path("symbol.json"),
        "--phi".into(),
        path("phi.json"),
        "--psi".into(),
        path("psi.json"),
        "--verify-all".into(),
    ]);
    print!("{}", out.stdout);
    std::fs::remove_dir_all(&dir)?;
    if out.code != 0 {
        return Err(out.stderr.into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verification_report failed");
}
