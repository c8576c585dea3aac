use clap::Parser;

fn main() {
    let cli = fillcurve_cli::Cli::parse();
    match fillcurve_cli::run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": err.code(), "message": err.to_string() })
            );
            std::process::exit(1);
        }
    }
}
