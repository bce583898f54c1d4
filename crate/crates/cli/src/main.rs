use clap::Parser;
use fracolloc_cli::{execute, Args};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FRACOLLOC_LOG", "warn")).init();
    let args = Args::parse();
    if let Err(e) = args.run_config().and_then(|cfg| execute(&cfg)) {
        eprintln!("fracolloc: {e}");
        std::process::exit(e.exit_code());
    }
}
