//! Thin entry point; all logic lives in the library.

fn main() {
    std::process::exit(theory_shift::cli::run(std::env::args_os()));
}
