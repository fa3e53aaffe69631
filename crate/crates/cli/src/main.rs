use clap::Parser;

fn main() {
    let cli = lexspectra::Cli::parse();
    let mut stdout = std::io::stdout();
    let code = lexspectra::run(cli, &mut stdout);
    std::process::exit(code);
}
