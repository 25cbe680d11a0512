use clap::Parser;
use tropbn_cli::{render, run, Cli, CliError};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => println!("{}", render(&v)),
        Err(e) => {
            if let CliError::Failed { payload, .. } = &e {
                println!("{}", render(payload));
            }
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
