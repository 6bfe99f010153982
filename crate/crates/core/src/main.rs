fn main() {
    let args = std::env::args().collect();
    let status = pcalab::cli::main_with(args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(status);
}
