use chordcycles_cli::{run, RunConfig};
use clap::Parser;

fn main() {
    let config = RunConfig::parse();
    let code = run(
        &config,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
