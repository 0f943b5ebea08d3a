use clap::Parser;
use morderstats_cli::{run, Cli};

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("morderstats: {e}");
        std::process::exit(e.exit_code());
    }
}
