fn main() {
    let (code, out, err) = witt12::cli::run(std::env::args());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
