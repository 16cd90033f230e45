use clap::Parser;

fn main() {
    std::process::exit(torsor::cli::run(torsor::cli::Cli::parse()));
}
