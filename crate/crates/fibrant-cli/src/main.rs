use clap::Parser;

use fibrant_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
        }
        Err(e) => {
            eprintln!("fibrant: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
