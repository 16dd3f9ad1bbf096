//! Drive the command-line workflows from a configuration string.
//!
//! cargo run --release --example run_config [OUT_DIR]

use nhtrack::cli::{parse_config, run, Command};

const EXPERIMENT: &str = "\
# shorter horizon, heavier terminal weight
T = 3
steps = 3000
epsilon = 3
omega = 2
reference = constant-z-line
reference_x = 0.8
";

fn main() -> nhtrack::Result<()> {
    let mut cfg = parse_config(EXPERIMENT)?;
    cfg.output_dir = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("nhtrack-run-config"));
    for command in [Command::Analytic, Command::Track] {
        let outcome = run(command, &cfg)?;
        println!("{command:?}: exit {} -> {:?}", outcome.exit.code(), outcome.files);
        if command == Command::Track {
            print!("{}", outcome.stdout);
        }
    }
    Ok(())
}
