use clap::Parser;

use itphi_cli::runner::{execute, summary_line, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let (report, code) = execute(cli, argv);
    println!("{}", report.render());
    eprintln!("{}", summary_line(&report, code));
    std::process::exit(code);
}
