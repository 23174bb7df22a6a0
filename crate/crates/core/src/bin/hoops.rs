fn main() {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .init();
    let code = hoops::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
