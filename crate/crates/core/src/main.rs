use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let env_config = std::env::var(enriques_stab::cli::CONFIG_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = enriques_stab::cli::run(&argv, env_config.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
