use clap::Parser;
use treegeo::cli::{emit, run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli).and_then(|text| emit(&cli, &text)) {
        eprintln!("error: {e}");
        std::process::exit(e.code);
    }
}
