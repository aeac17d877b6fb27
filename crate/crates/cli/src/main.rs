use clap::Parser;

fn main() {
    let cli = semihom_cli::Cli::parse();
    let code = semihom_cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
