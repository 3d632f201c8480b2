use clap::Parser;

fn main() {
    let cli = bidihuff::cli::Cli::parse();
    if let Err(message) = bidihuff::cli::run(cli) {
        eprintln!("error: {message}");
        std::process::exit(1);
    }
}
