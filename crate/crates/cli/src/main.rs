fn main() {
    let code = orbsplice_cli::run(std::env::args().skip(1));
    std::process::exit(code);
}
