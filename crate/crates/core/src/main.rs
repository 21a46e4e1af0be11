fn main() {
    let args: Vec<String> = std::env::args().collect();
    let outcome = manifold_census::cli::run(&args);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
