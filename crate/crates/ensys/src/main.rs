fn main() {
    env_logger::Builder::from_env(
        env_logger::Env::default().default_filter_or("warn,en_search=info"),
    )
    .init();
    let outcome = ensys::run(std::env::args());
    print!("{}", outcome.report);
    std::process::exit(outcome.exit_code);
}
