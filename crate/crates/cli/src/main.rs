use braidsim_cli::{run_cli, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(report) => {
            if !cli.quiet {
                println!("{}", report.summary);
            }
        }
        Err(e) => {
            eprintln!("braidsim: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
