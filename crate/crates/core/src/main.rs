fn main() { std::process::exit(stabprob::cli::main_exit()); }
