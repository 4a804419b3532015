use clap::Parser;

fn main() {
    let cli = netcurv_cli::Cli::parse();
    if let Err(err) = netcurv_cli::run(cli) {
        eprintln!("netcurv: {err}");
        std::process::exit(err.exit_code());
    }
}
