fn main() { std::process::exit(equistream::cli::run(std::env::args_os())); }
